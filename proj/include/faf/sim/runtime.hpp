#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "faf/agents/agent.hpp"
#include "faf/org/organization.hpp"
#include "faf/protocol/obligations.hpp"
#include "faf/sim/trace.hpp"

namespace faf::sim {

struct Injection {
    std::int64_t tick = 0;
    std::string variable;
    double value = 0.0;

    bool operator==(const Injection&) const = default;
};

struct Scenario {
    std::string name;
    std::int64_t max_ticks = 0;
    std::vector<Injection> schedule;

    bool operator==(const Scenario&) const = default;
};

// Throws std::invalid_argument unless the schedule is sorted by tick and
// max_ticks covers every scheduled injection.
void validate_scenario(const Scenario& scenario);

struct RuntimeSettings {
    std::int64_t obligation_timeout = 10;
    bool parallel = false;
    // Carried for reproducibility bookkeeping; the tick loop itself draws no
    // random numbers, so runs are identical for any seed.
    std::uint64_t seed = 0;
};

// Discrete-time host for a set of fuzzy agents. Each tick runs six phases:
//   1. apply injections scheduled for this tick to the environment
//   2. deliver messages sent on the previous tick (latency is exactly one)
//   3. step every agent against the same snapshot (serial or parallel)
//   4. commit environment effects (last writer wins) and organization
//      updates (decay, then propagation triggered by this tick's deliveries)
//   5. settle bookkeeping: expire overdue obligations
//   6. invoke the boundary observer
// All cross-agent mutation happens in phases 1-5 in registration order, so
// parallel stepping produces byte-identical traces.
class Runtime {
public:
    Runtime(org::OrganizationState organization, RuntimeSettings settings);

    // Registers the agent with the runtime and as a member of `community`
    // inside the organization (which becomes its reference community). The
    // agent's owned variable, if any, is declared automatically.
    agents::FuzzyAgent& add_agent(agents::FuzzyAgent agent, const std::string& community);

    agents::FuzzyAgent& agent(const std::string& id);
    const agents::FuzzyAgent& agent(const std::string& id) const;
    bool has_agent(const std::string& id) const;
    std::vector<std::string> agent_ids() const; // registration order

    void declare_variable(const std::string& name);
    bool variable_declared(const std::string& name) const;

    // Queues a value to become visible at the start of `tick`. The variable
    // must be declared and the tick must not be in the past.
    void inject(const std::string& variable, double value, std::int64_t tick);

    void run(const Scenario& scenario);
    void run_tick();

    std::int64_t tick() const { return tick_; }
    const std::map<std::string, double>& environment() const { return environment_; }
    const std::vector<TraceRecord>& trace() const { return trace_; }
    const protocol::ObligationTable& obligations() const { return obligations_; }
    org::OrganizationState& organization() { return organization_; }
    const org::OrganizationState& organization() const { return organization_; }

    // Called after phase 5 of every tick; useful for checking cross-tick
    // invariants without threading test code through the loop.
    using BoundaryObserver = std::function<void(const Runtime&)>;
    void set_boundary_observer(BoundaryObserver observer);

private:
    struct PendingMessage {
        protocol::CommunicationAct act;
        std::string receiver; // resolved concrete receiver id
    };

    void append(std::int64_t tick, RecordKind kind, std::string agent,
                std::string detail, std::optional<double> degree = std::nullopt);
    void apply_injections();
    void deliver_messages(std::vector<std::pair<std::string, std::string>>& delivered_pairs,
                          std::vector<double>& delivered_values);
    std::vector<agents::StepResult> step_agents();
    void dispatch(const std::string& sender, protocol::CommunicationAct act);
    void commit_effects(const std::vector<agents::StepResult>& results);
    void commit_org_updates(const std::vector<std::pair<std::string, std::string>>& delivered_pairs,
                            const std::vector<double>& delivered_values);
    void expire_obligations();

    org::OrganizationState organization_;
    RuntimeSettings settings_;
    std::vector<std::unique_ptr<agents::FuzzyAgent>> agents_;
    std::map<std::string, std::size_t> agent_index_;
    std::map<std::string, double> environment_;
    std::vector<std::string> declared_variables_;
    std::vector<Injection> pending_injections_; // stable order within a tick
    std::vector<PendingMessage> in_flight_;     // sent this tick, due next tick
    protocol::ObligationTable obligations_;
    std::vector<TraceRecord> trace_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_correlation_ = 1;
    std::int64_t tick_ = 0;
    BoundaryObserver observer_;
};

} // namespace faf::sim
