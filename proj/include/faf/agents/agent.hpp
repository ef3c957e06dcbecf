#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "faf/agents/rules.hpp"
#include "faf/fuzzy/sets.hpp"

namespace faf::agents {

struct Percept {
    Event event;
    fuzzy::Degree degree{0.0}; // interpreted intensity of the observation
};

// The slice of the world an agent may read while stepping: the tick and the
// crisp environment as committed at the last tick boundary.
struct VisibleState {
    std::int64_t tick = 0;
    const std::map<std::string, double>* environment = nullptr;
};

struct ActionLogEntry {
    std::string rule_id;
    std::string description;
};

// Everything one step produced, buffered so the host can apply cross-agent
// effects at the tick barrier (and so stepping order cannot leak between
// agents).
struct StepResult {
    std::vector<Percept> percepts;
    std::vector<Decision> decisions;
    std::vector<protocol::CommunicationAct> sends;
    std::vector<BoundEffect> effects;
    std::vector<ActionLogEntry> executed;
    std::vector<std::string> errors;
};

// An autonomous entity whose perceptions, decisions and actions all carry
// degrees. Owns at most one linguistic variable: the slice of the world it
// fuzzifies for everyone else.
class FuzzyAgent {
public:
    FuzzyAgent(std::string id, fuzzy::Degree membership,
               std::optional<fuzzy::LinguisticVariable> variable,
               std::size_t history_cap = 1024);

    const std::string& id() const { return id_; }
    fuzzy::Degree membership() const { return membership_; }
    const std::optional<fuzzy::LinguisticVariable>& variable() const { return variable_; }
    KnowledgeBase& knowledge() { return knowledge_; }
    const KnowledgeBase& knowledge() const { return knowledge_; }
    const std::vector<DecisionRule>& rules() const { return rules_; }
    const std::vector<ActionLogEntry>& action_log() const { return action_log_; }

    void add_rule(DecisionRule rule);

    void enqueue(protocol::CommunicationAct act);
    std::size_t mailbox_size() const { return mailbox_.size(); }

    // Drain the mailbox into message percepts (FIFO) and turn environment
    // movement of the owned variable into at most one environment percept.
    // Received value records and fresh fuzzifications land in the knowledge
    // base as a side effect.
    std::vector<Percept> perceive(const VisibleState& visible);

    // Evaluate every rule against every percept; a rule fires when
    // t_norm(event degree, condition degree) clears its threshold (reactive
    // rules skip the condition). Decisions come out ordered by descending
    // strength, then rule declaration order, then percept order.
    std::vector<Decision> decide(const std::vector<Percept>& percepts);

    // Execute bound actions into the step result: sends and effects are
    // buffered for the host, internal updates apply immediately, fuzzy
    // contributions pool per variable into one defuzzified write.
    void act(const std::vector<Decision>& decisions, StepResult& out);

    // perceive, decide, act — exactly once each.
    StepResult step(const VisibleState& visible);

private:
    std::optional<Percept> perceive_environment(const VisibleState& visible);
    std::optional<fuzzy::Degree> event_degree(const DecisionRule& rule,
                                              const Percept& percept) const;
    std::optional<fuzzy::Degree> condition_degree(const DecisionRule& rule) const;
    std::optional<BoundAction> bind_action(const ActionSpec& spec, const Percept& percept,
                                           fuzzy::Degree strength, std::string& error) const;

    std::string id_;
    fuzzy::Degree membership_;
    std::optional<fuzzy::LinguisticVariable> variable_;
    KnowledgeBase knowledge_;
    std::vector<DecisionRule> rules_;
    std::vector<protocol::CommunicationAct> mailbox_;
    std::vector<ActionLogEntry> action_log_;
};

} // namespace faf::agents
