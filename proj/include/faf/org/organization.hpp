#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "faf/fuzzy/degree.hpp"

namespace faf::org {

struct Role {
    std::string id;
    std::string description;

    bool operator==(const Role&) const = default;
};

// A group of agents sharing an objective. The objective determines the main
// role; members are kept in joining order.
struct Community {
    std::string id;
    std::vector<std::string> members;
    std::string main_role;
    std::string objective;

    bool operator==(const Community&) const = default;
};

struct RoleAssignment {
    std::string agent;
    std::string role;
    fuzzy::Degree degree{0.0};

    bool operator==(const RoleAssignment&) const = default;
};

struct OrganizationSettings {
    fuzzy::Degree activation_threshold{0.0};
    double decay = 0.95;                      // per-tick factor, 1.0 disables
    fuzzy::Degree reinforcement{0.0};         // intra-community step, 0 disables
    fuzzy::Degree initial_main_degree{1.0};   // granted at registration

    bool operator==(const OrganizationSettings&) const = default;
};

// One observable change to a role degree.
struct RoleUpdate {
    std::string agent;
    std::string role;
    std::string community;
    fuzzy::Degree degree{0.0};
    std::string cause; // "registration" | "propagation" | "reinforcement" | "decay"

    bool operator==(const RoleUpdate&) const = default;
};

struct OrganizationSnapshot {
    std::vector<Role> roles;
    std::vector<Community> communities;
    std::vector<RoleAssignment> assignments;        // sorted by (agent, role)
    std::map<std::string, std::string> reference;   // agent -> reference community
    OrganizationSettings settings;

    bool operator==(const OrganizationSnapshot&) const = default;
};

class OrganizationState {
public:
    OrganizationState(std::vector<Role> roles, std::vector<Community> communities,
                      OrganizationSettings settings);

    // First registration fixes the agent's reference community and grants its
    // main role at the initial degree. Registering twice is an error.
    RoleUpdate register_agent(const std::string& agent, const std::string& community);

    // Secondary membership: the agent joins another community's member list.
    // No role is granted by joining.
    void join_community(const std::string& agent, const std::string& community);

    bool has_community(const std::string& id) const;
    const Community& community(const std::string& id) const;
    const std::vector<Community>& communities() const { return communities_; }
    const std::vector<Role>& roles() const { return roles_; }
    const OrganizationSettings& settings() const { return settings_; }

    bool is_registered(const std::string& agent) const;
    std::optional<std::string> reference_community(const std::string& agent) const;

    // Current degree of the agent in the role; 0 when never assigned.
    fuzzy::Degree degree(const std::string& agent, const std::string& role) const;

    // Roles at or above the threshold; a zero threshold means strictly
    // positive, so dormant roles never count as active.
    std::set<std::string> active_roles(const std::string& agent, fuzzy::Degree threshold) const;
    std::set<std::string> active_roles(const std::string& agent) const;

    // A positive-valued act from source to target working in another
    // reference community pulls the source toward the target's main role:
    // new = max(old, min(act value, target's degree in that role)).
    // Within one reference community the act instead reinforces the source's
    // degree in the shared main role by the configured step (disabled at 0).
    // Returns the updates that actually changed a degree.
    std::vector<RoleUpdate> propagate_role(const std::string& source, const std::string& target,
                                           fuzzy::Degree act_value);

    // Multiply every degree by decay^dt, except each agent's main role, which
    // never drops below the initial main-role degree.
    std::vector<RoleUpdate> decay_roles(int dt);

    OrganizationSnapshot snapshot() const;
    static OrganizationState from_snapshot(const OrganizationSnapshot& snap);

private:
    Community& community_mut(const std::string& id);
    bool is_reference_main_role(const std::string& agent, const std::string& role) const;
    void set_degree(const std::string& agent, const std::string& role, fuzzy::Degree d);

    std::vector<Role> roles_;
    std::vector<Community> communities_;
    OrganizationSettings settings_;
    std::map<std::pair<std::string, std::string>, fuzzy::Degree> assignments_;
    std::map<std::string, std::string> reference_;
};

// The structural invariant of a well-formed organization: every registered
// agent has exactly one reference community and a strictly positive degree in
// that community's main role.
bool reference_invariant_holds(const OrganizationState& org);

} // namespace faf::org
