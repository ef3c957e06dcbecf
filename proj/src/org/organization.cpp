#include "faf/org/organization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace faf::org {

OrganizationState::OrganizationState(std::vector<Role> roles, std::vector<Community> communities,
                                     OrganizationSettings settings)
    : roles_(std::move(roles)), communities_(std::move(communities)), settings_(settings) {
    if (settings_.decay <= 0.0 || settings_.decay > 1.0) {
        throw std::invalid_argument("decay factor must be in (0, 1]");
    }
    if (settings_.initial_main_degree.value() <= 0.0) {
        throw std::invalid_argument("initial main-role degree must be positive");
    }
    std::set<std::string> role_ids;
    for (const auto& r : roles_) {
        if (r.id.empty() || !role_ids.insert(r.id).second) {
            throw std::invalid_argument("role ids must be unique and non-empty");
        }
    }
    std::set<std::string> community_ids;
    for (const auto& c : communities_) {
        if (c.id.empty() || !community_ids.insert(c.id).second) {
            throw std::invalid_argument("community ids must be unique and non-empty");
        }
        if (!role_ids.count(c.main_role)) {
            throw std::invalid_argument("community '" + c.id + "' names unregistered main role '" +
                                        c.main_role + "'");
        }
    }
}

Community& OrganizationState::community_mut(const std::string& id) {
    for (auto& c : communities_) {
        if (c.id == id) return c;
    }
    throw std::invalid_argument("unknown community '" + id + "'");
}

bool OrganizationState::has_community(const std::string& id) const {
    return std::any_of(communities_.begin(), communities_.end(),
                       [&](const Community& c) { return c.id == id; });
}

const Community& OrganizationState::community(const std::string& id) const {
    for (const auto& c : communities_) {
        if (c.id == id) return c;
    }
    throw std::invalid_argument("unknown community '" + id + "'");
}

bool OrganizationState::is_registered(const std::string& agent) const {
    return reference_.count(agent) > 0;
}

std::optional<std::string> OrganizationState::reference_community(const std::string& agent) const {
    const auto it = reference_.find(agent);
    if (it == reference_.end()) return std::nullopt;
    return it->second;
}

RoleUpdate OrganizationState::register_agent(const std::string& agent,
                                             const std::string& community_id) {
    if (is_registered(agent)) {
        throw std::invalid_argument("agent '" + agent + "' is already registered");
    }
    Community& c = community_mut(community_id);
    c.members.push_back(agent);
    reference_.emplace(agent, community_id);
    set_degree(agent, c.main_role, settings_.initial_main_degree);
    return RoleUpdate{agent, c.main_role, community_id, settings_.initial_main_degree,
                      "registration"};
}

void OrganizationState::join_community(const std::string& agent, const std::string& community_id) {
    if (!is_registered(agent)) {
        throw std::invalid_argument("agent '" + agent + "' must register before joining");
    }
    Community& c = community_mut(community_id);
    if (std::find(c.members.begin(), c.members.end(), agent) != c.members.end()) {
        throw std::invalid_argument("agent '" + agent + "' is already a member of '" +
                                    community_id + "'");
    }
    c.members.push_back(agent);
}

fuzzy::Degree OrganizationState::degree(const std::string& agent, const std::string& role) const {
    const auto it = assignments_.find({agent, role});
    if (it == assignments_.end()) return fuzzy::Degree(0.0);
    return it->second;
}

void OrganizationState::set_degree(const std::string& agent, const std::string& role,
                                   fuzzy::Degree d) {
    assignments_[{agent, role}] = d;
}

std::set<std::string> OrganizationState::active_roles(const std::string& agent,
                                                      fuzzy::Degree threshold) const {
    std::set<std::string> out;
    for (const auto& [key, degree] : assignments_) {
        if (key.first != agent) continue;
        const bool active = threshold.value() == 0.0 ? degree.value() > 0.0
                                                     : degree.value() >= threshold.value();
        if (active) out.insert(key.second);
    }
    return out;
}

std::set<std::string> OrganizationState::active_roles(const std::string& agent) const {
    return active_roles(agent, settings_.activation_threshold);
}

bool OrganizationState::is_reference_main_role(const std::string& agent,
                                               const std::string& role) const {
    const auto ref = reference_community(agent);
    return ref && community(*ref).main_role == role;
}

std::vector<RoleUpdate> OrganizationState::propagate_role(const std::string& source,
                                                          const std::string& target,
                                                          fuzzy::Degree act_value) {
    if (!is_registered(source) || !is_registered(target)) {
        throw std::invalid_argument("role propagation needs two registered agents");
    }
    std::vector<RoleUpdate> out;
    const std::string target_ref = *reference_community(target);
    const std::string& role = community(target_ref).main_role;
    if (*reference_community(source) != target_ref) {
        // Cross-community: the source starts participating in the target's
        // main role, bounded by the act value and the target's own degree.
        const fuzzy::Degree old = degree(source, role);
        const fuzzy::Degree pulled = fuzzy::t_norm(act_value, degree(target, role));
        const fuzzy::Degree updated = fuzzy::t_conorm(old, pulled);
        if (updated.value() != old.value()) {
            set_degree(source, role, updated);
            out.push_back({source, role, target_ref, updated, "propagation"});
        }
    } else if (settings_.reinforcement.value() > 0.0 && act_value.value() > 0.0) {
        const fuzzy::Degree old = degree(source, role);
        const double bumped =
            std::min(1.0, old.value() + settings_.reinforcement.value() * act_value.value());
        if (bumped != old.value()) {
            set_degree(source, role, fuzzy::Degree(bumped));
            out.push_back({source, role, target_ref, fuzzy::Degree(bumped), "reinforcement"});
        }
    }
    return out;
}

std::vector<RoleUpdate> OrganizationState::decay_roles(int dt) {
    std::vector<RoleUpdate> out;
    if (dt <= 0 || settings_.decay == 1.0) {
        return out;
    }
    const double factor = std::pow(settings_.decay, dt);
    for (auto& [key, deg] : assignments_) {
        double updated = deg.value() * factor;
        if (is_reference_main_role(key.first, key.second)) {
            updated = std::max(updated, settings_.initial_main_degree.value());
        }
        if (updated != deg.value()) {
            deg = fuzzy::Degree(updated);
            // Label the update with the community whose main role decayed;
            // reference community only for roles no community owns.
            std::string in_community;
            for (const auto& c : communities_) {
                if (c.main_role == key.second) {
                    in_community = c.id;
                    break;
                }
            }
            if (in_community.empty()) {
                const auto ref = reference_community(key.first);
                in_community = ref ? *ref : "";
            }
            out.push_back({key.first, key.second, in_community, deg, "decay"});
        }
    }
    return out;
}

OrganizationSnapshot OrganizationState::snapshot() const {
    OrganizationSnapshot snap;
    snap.roles = roles_;
    snap.communities = communities_;
    snap.reference = reference_;
    snap.settings = settings_;
    snap.assignments.reserve(assignments_.size());
    for (const auto& [key, deg] : assignments_) {
        snap.assignments.push_back({key.first, key.second, deg});
    }
    return snap; // map iteration order is already (agent, role)-sorted
}

OrganizationState OrganizationState::from_snapshot(const OrganizationSnapshot& snap) {
    // Member lists are restored verbatim (joining order is part of the
    // state); the constructor re-validates roles and communities.
    OrganizationState org(snap.roles, snap.communities, snap.settings);
    for (const auto& [agent, community_id] : snap.reference) {
        if (!org.has_community(community_id)) {
            throw std::invalid_argument("snapshot references unknown community '" + community_id +
                                        "'");
        }
    }
    org.reference_ = snap.reference;
    for (const auto& a : snap.assignments) {
        org.set_degree(a.agent, a.role, a.degree);
    }
    return org;
}

bool reference_invariant_holds(const OrganizationState& org) {
    for (const auto& c : org.communities()) {
        for (const auto& member : c.members) {
            const auto ref = org.reference_community(member);
            if (!ref) return false;
            const auto& main = org.community(*ref).main_role;
            if (org.degree(member, main).value() <= 0.0) return false;
        }
    }
    return true;
}

} // namespace faf::org
