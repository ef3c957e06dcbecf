#include "faf/sim/runtime.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

namespace faf::sim {

using agents::FuzzyAgent;
using agents::StepResult;
using fuzzy::Degree;
using protocol::CommunicationAct;
using protocol::Performative;

namespace {

std::string describe_event(const agents::Event& event) {
    using agents::EnvChange;
    using agents::EventKind;
    switch (event.kind) {
    case EventKind::message_received: {
        const auto& act = std::get<CommunicationAct>(event.payload);
        std::string detail = protocol::performative_name(act.performative) +
                             " from " + act.source.agent;
        if (!act.content.topic.empty()) detail += " about " + act.content.topic;
        if (act.correlation != 0) detail += " corr=" + std::to_string(act.correlation);
        return detail;
    }
    case EventKind::environment_changed: {
        const auto& change = std::get<EnvChange>(event.payload);
        std::string detail = change.variable + "=" + format_double(change.value);
        for (const auto& delta : change.deltas) {
            detail += ' ';
            detail += delta.term + ":" + format_double(delta.previous.value()) +
                      "->" + format_double(delta.current.value());
        }
        return detail;
    }
    case EventKind::timer:
        return "timer";
    }
    return {};
}

} // namespace

void validate_scenario(const Scenario& scenario) {
    if (scenario.max_ticks < 0) {
        throw std::invalid_argument("scenario: max_ticks must be non-negative");
    }
    std::int64_t previous = 0;
    for (std::size_t i = 0; i < scenario.schedule.size(); ++i) {
        const auto& inj = scenario.schedule[i];
        if (inj.tick < 0) {
            throw std::invalid_argument("scenario: injection tick must be non-negative");
        }
        if (i > 0 && inj.tick < previous) {
            throw std::invalid_argument("scenario: schedule must be sorted by tick");
        }
        if (inj.variable.empty()) {
            throw std::invalid_argument("scenario: injection variable must be named");
        }
        if (inj.tick >= scenario.max_ticks) {
            throw std::invalid_argument(
                "scenario: max_ticks must exceed every scheduled injection tick");
        }
        previous = inj.tick;
    }
}

Runtime::Runtime(org::OrganizationState organization, RuntimeSettings settings)
    : organization_(std::move(organization)), settings_(std::move(settings)) {
    if (settings_.obligation_timeout <= 0) {
        throw std::invalid_argument("runtime: obligation timeout must be positive");
    }
}

FuzzyAgent& Runtime::add_agent(FuzzyAgent agent, const std::string& community) {
    const std::string id = agent.id();
    if (agent_index_.contains(id)) {
        throw std::invalid_argument("runtime: duplicate agent id: " + id);
    }
    auto update = organization_.register_agent(id, community);
    agents_.push_back(std::make_unique<FuzzyAgent>(std::move(agent)));
    agent_index_[id] = agents_.size() - 1;
    if (const auto& owned = agents_.back()->variable(); owned.has_value()) {
        declare_variable(owned->name());
    }
    append(tick_, RecordKind::role_update, update.agent,
           update.role + "@" + update.community + " " + update.cause,
           update.degree.value());
    return *agents_.back();
}

FuzzyAgent& Runtime::agent(const std::string& id) {
    auto it = agent_index_.find(id);
    if (it == agent_index_.end()) {
        throw std::invalid_argument("runtime: unknown agent: " + id);
    }
    return *agents_[it->second];
}

const FuzzyAgent& Runtime::agent(const std::string& id) const {
    auto it = agent_index_.find(id);
    if (it == agent_index_.end()) {
        throw std::invalid_argument("runtime: unknown agent: " + id);
    }
    return *agents_[it->second];
}

bool Runtime::has_agent(const std::string& id) const {
    return agent_index_.contains(id);
}

std::vector<std::string> Runtime::agent_ids() const {
    std::vector<std::string> ids;
    ids.reserve(agents_.size());
    for (const auto& a : agents_) ids.push_back(a->id());
    return ids;
}

void Runtime::declare_variable(const std::string& name) {
    if (name.empty()) {
        throw std::invalid_argument("runtime: variable name must be non-empty");
    }
    if (!variable_declared(name)) declared_variables_.push_back(name);
}

bool Runtime::variable_declared(const std::string& name) const {
    return std::find(declared_variables_.begin(), declared_variables_.end(), name) !=
           declared_variables_.end();
}

void Runtime::inject(const std::string& variable, double value, std::int64_t tick) {
    if (tick < tick_) {
        throw std::invalid_argument("runtime: cannot inject into a past tick");
    }
    pending_injections_.push_back(Injection{tick, variable, value});
}

void Runtime::set_boundary_observer(BoundaryObserver observer) {
    observer_ = std::move(observer);
}

void Runtime::append(std::int64_t tick, RecordKind kind, std::string agent,
                     std::string detail, std::optional<double> degree) {
    trace_.push_back(TraceRecord{tick, next_seq_++, kind, std::move(agent),
                                 std::move(detail), degree});
}

void Runtime::apply_injections() {
    std::size_t i = 0;
    while (i < pending_injections_.size()) {
        if (pending_injections_[i].tick != tick_) {
            ++i;
            continue;
        }
        Injection inj = pending_injections_[i];
        pending_injections_.erase(pending_injections_.begin() +
                                  static_cast<std::ptrdiff_t>(i));
        if (!variable_declared(inj.variable)) {
            append(tick_, RecordKind::error, "",
                   "injection into unknown variable: " + inj.variable);
            continue;
        }
        environment_[inj.variable] = inj.value;
        append(tick_, RecordKind::injection, "",
               inj.variable + "=" + format_double(inj.value));
    }
}

void Runtime::deliver_messages(std::vector<std::pair<std::string, std::string>>& delivered_pairs,
                               std::vector<double>& delivered_values) {
    std::vector<PendingMessage> due = std::move(in_flight_);
    in_flight_.clear();
    for (auto& pending : due) {
        FuzzyAgent& receiver = agent(pending.receiver);
        const double value = protocol::value_of(pending.act).value();
        std::string detail = protocol::performative_name(pending.act.performative) +
                             " from " + pending.act.source.agent;
        if (!pending.act.content.topic.empty()) {
            detail += " about " + pending.act.content.topic;
        }
        if (pending.act.correlation != 0) {
            detail += " corr=" + std::to_string(pending.act.correlation);
        }
        delivered_pairs.emplace_back(pending.act.source.agent, pending.receiver);
        delivered_values.push_back(value);
        receiver.enqueue(std::move(pending.act));
        append(tick_, RecordKind::message_delivered, pending.receiver, std::move(detail),
               value);
    }
}

std::vector<StepResult> Runtime::step_agents() {
    agents::VisibleState visible{tick_, &environment_};
    std::vector<StepResult> results(agents_.size());
    if (!settings_.parallel || agents_.size() < 2) {
        for (std::size_t i = 0; i < agents_.size(); ++i) {
            results[i] = agents_[i]->step(visible);
        }
        return results;
    }
    std::vector<std::exception_ptr> failures(agents_.size());
    std::vector<std::thread> workers;
    workers.reserve(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        workers.emplace_back([this, &results, &failures, visible, i] {
            try {
                results[i] = agents_[i]->step(visible);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        });
    }
    for (auto& worker : workers) worker.join();
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return results;
}

void Runtime::dispatch(const std::string& sender, CommunicationAct act) {
    act.tick = tick_;

    // Fresh correlation for acts that open an obligation; responses keep the
    // correlation they echo. Ids are unique across the run.
    const bool opens = act.performative == Performative::ask ||
                       (act.performative == Performative::inform && act.ack_required);
    if (opens && act.correlation == 0) act.correlation = next_correlation_++;

    const bool is_response = act.performative == Performative::reply ||
                             act.performative == Performative::confirm;
    if (is_response) {
        switch (obligations_.settle(act)) {
        case protocol::SettleResult::settled:
            break;
        case protocol::SettleResult::unsolicited:
            append(tick_, RecordKind::error, sender,
                   "unsolicited " + protocol::performative_name(act.performative) +
                       " corr=" + std::to_string(act.correlation));
            break;
        case protocol::SettleResult::wrong_performative:
            append(tick_, RecordKind::error, sender,
                   "mismatched response " +
                       protocol::performative_name(act.performative) + " corr=" +
                       std::to_string(act.correlation));
            break;
        }
    }

    auto queue_copy = [&](const std::string& receiver_id, const std::string& via) {
        CommunicationAct copy = act;
        copy.receiver = protocol::Endpoint{receiver_id, agent(receiver_id).membership()};
        std::string detail = protocol::performative_name(copy.performative) + " to " +
                             receiver_id;
        if (!via.empty()) detail += " via " + via;
        if (!copy.content.topic.empty()) detail += " about " + copy.content.topic;
        if (copy.correlation != 0) detail += " corr=" + std::to_string(copy.correlation);
        const double value = protocol::value_of(copy).value();
        if (opens) {
            if (auto obligation =
                    protocol::obligation_for(copy, settings_.obligation_timeout)) {
                obligations_.open(*obligation);
            }
        }
        in_flight_.push_back(PendingMessage{std::move(copy), receiver_id});
        append(tick_, RecordKind::message_sent, sender, std::move(detail), value);
    };

    if (act.performative == Performative::diffuse) {
        if (!organization_.has_community(act.community)) {
            append(tick_, RecordKind::error, sender,
                   "diffuse to unknown community: " + act.community);
            return;
        }
        for (const auto& member : organization_.community(act.community).members) {
            if (member == sender) continue;
            queue_copy(member, act.community);
        }
        return;
    }

    if (!act.receiver.has_value()) {
        append(tick_, RecordKind::error, sender, "send without receiver");
        return;
    }
    if (!has_agent(act.receiver->agent)) {
        append(tick_, RecordKind::error, sender,
               "unknown receiver: " + act.receiver->agent);
        return;
    }
    queue_copy(act.receiver->agent, "");
}

void Runtime::commit_effects(const std::vector<StepResult>& results) {
    std::map<std::string, std::string> committed_by; // variable -> agent, this tick
    for (std::size_t i = 0; i < results.size(); ++i) {
        const std::string& writer = agents_[i]->id();
        for (const auto& effect : results[i].effects) {
            if (!variable_declared(effect.variable)) {
                append(tick_, RecordKind::error, writer,
                       "effect on unknown variable: " + effect.variable);
                continue;
            }
            std::string detail = effect.variable + "=" + format_double(effect.value);
            if (auto it = committed_by.find(effect.variable); it != committed_by.end()) {
                detail += " (overwrites " + it->second + ")";
            }
            environment_[effect.variable] = effect.value;
            committed_by[effect.variable] = writer;
            append(tick_, RecordKind::env_effect, writer, std::move(detail));
        }
    }
}

void Runtime::commit_org_updates(
    const std::vector<std::pair<std::string, std::string>>& delivered_pairs,
    const std::vector<double>& delivered_values) {
    for (const auto& update : organization_.decay_roles(1)) {
        append(tick_, RecordKind::role_update, update.agent,
               update.role + "@" + update.community + " " + update.cause,
               update.degree.value());
    }
    for (std::size_t i = 0; i < delivered_pairs.size(); ++i) {
        const auto& [source, receiver] = delivered_pairs[i];
        for (const auto& update : organization_.propagate_role(
                 source, receiver, Degree(delivered_values[i]))) {
            append(tick_, RecordKind::role_update, update.agent,
                   update.role + "@" + update.community + " " + update.cause,
                   update.degree.value());
        }
    }
}

void Runtime::expire_obligations() {
    for (const auto& obligation : obligations_.expire(tick_)) {
        append(tick_, RecordKind::error, obligation.agent,
               "obligation timeout: " + protocol::performative_name(obligation.required) +
                   " corr=" + std::to_string(obligation.correlation));
    }
}

void Runtime::run_tick() {
    append(tick_, RecordKind::tick, "", "");
    apply_injections();

    std::vector<std::pair<std::string, std::string>> delivered_pairs;
    std::vector<double> delivered_values;
    deliver_messages(delivered_pairs, delivered_values);

    auto results = step_agents();

    // Merge in registration order so serial and parallel runs write the same
    // bytes.
    for (std::size_t i = 0; i < results.size(); ++i) {
        const std::string& id = agents_[i]->id();
        StepResult& result = results[i];
        for (const auto& percept : result.percepts) {
            append(tick_, RecordKind::percept, id, describe_event(percept.event),
                   percept.degree.value());
        }
        for (const auto& decision : result.decisions) {
            append(tick_, RecordKind::rule_fired, id, decision.rule_id,
                   decision.strength.value());
        }
        for (auto& act : result.sends) dispatch(id, std::move(act));
        for (const auto& message : result.errors) {
            append(tick_, RecordKind::error, id, message);
        }
    }

    commit_effects(results);
    commit_org_updates(delivered_pairs, delivered_values);
    expire_obligations();

    if (observer_) observer_(*this);
    ++tick_;
}

void Runtime::run(const Scenario& scenario) {
    validate_scenario(scenario);
    for (const auto& injection : scenario.schedule) {
        if (injection.tick < tick_) {
            throw std::invalid_argument("scenario: schedule starts before current tick");
        }
        pending_injections_.push_back(injection);
    }
    while (tick_ < scenario.max_ticks) run_tick();
}

} // namespace faf::sim
