#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "faf/agents/knowledge.hpp"
#include "faf/fuzzy/inference.hpp"

namespace faf::agents {

// What a rule listens for. Message patterns filter on performative, message
// type and topic variable; environment patterns name the watched variable and
// terms. The event degree is the matched percept's degree unless event_term
// names a knowledge slot to read instead (unknown slot = no match, which is
// how rules wait for knowledge they have not received yet).
struct EventPattern {
    EventKind kind = EventKind::message_received;
    std::optional<protocol::Performative> performative;
    std::optional<int> mtype;
    std::vector<std::string> variables; // message: topic variables; empty = any
    std::string variable;               // environment: the watched variable
    std::vector<std::string> terms;     // environment: watched terms; empty = all
    std::optional<fuzzy::TermRef> event_term;

    bool operator==(const EventPattern&) const = default;
};

// Condition over the knowledge base: a constant, or a stored term degree
// (with optional modifier). A term the agent has never learned leaves the
// condition unevaluable and the rule does not fire.
struct Condition {
    enum class Kind { constant, term } kind = Kind::constant;
    fuzzy::Degree constant{1.0};
    fuzzy::TermRef term;

    bool operator==(const Condition&) const = default;
};

// Where a sent message goes and what it carries. Content sources: a fixed
// degree, a stored term degree, or the firing event's own degree.
struct SendSpec {
    enum class Target { agent, community, reply_to_source } target = Target::agent;
    protocol::Performative performative = protocol::Performative::inform;
    std::string destination; // agent or community id, per target
    int mtype = 0;
    bool ack_required = false;
    enum class ContentSource { constant, term_degree, event_degree } content_source =
        ContentSource::constant;
    fuzzy::Degree content_constant{1.0};
    fuzzy::TermRef content_term;
    std::string topic; // message subject; term_degree sends derive "variable.term"
    protocol::BodyKind body = protocol::BodyKind::value;

    bool operator==(const SendSpec&) const = default;
};

// Environment write: either a fixed value, or a fuzzy contribution (one
// consequent term clipped at the decision strength) that the acting phase
// pools per variable and defuzzifies into a single write.
struct EffectSpec {
    enum class Kind { constant, consequent } kind = Kind::constant;
    std::string variable;
    double constant = 0.0;
    std::string term;

    bool operator==(const EffectSpec&) const = default;
};

struct InternalSpec {
    std::string key;
    DomainValue value;
    bool state_slot = false; // write internal state instead of domain values

    bool operator==(const InternalSpec&) const = default;
};

using ActionSpec = std::variant<SendSpec, EffectSpec, InternalSpec>;

struct DecisionRule {
    enum class Category { reactive, routine, cognitive };

    std::string id;
    EventPattern on;
    std::optional<Condition> when;  // absent = condition degree 1
    std::vector<ActionSpec> actions;
    fuzzy::Degree threshold{0.0};
    Category category = Category::routine;

    bool operator==(const DecisionRule&) const = default;
};

std::string category_name(DecisionRule::Category c);
DecisionRule::Category category_from_name(const std::string& name);

// Fully instantiated actions, ready to execute.
struct BoundSend {
    SendSpec::Target target = SendSpec::Target::agent;
    protocol::Performative performative = protocol::Performative::inform;
    std::string destination;
    int mtype = 0;
    bool ack_required = false;
    protocol::Message content;
    std::uint64_t correlation = 0; // echoed from the event for replies
};

struct BoundContribution {
    std::string variable;
    std::string term;
    fuzzy::Degree strength{0.0};
};

struct BoundEffect {
    std::string variable;
    double value = 0.0;
};

struct BoundInternal {
    std::string key;
    DomainValue value;
    bool state_slot = false;
};

using BoundAction = std::variant<BoundSend, BoundContribution, BoundEffect, BoundInternal>;

struct Decision {
    std::string rule_id;
    fuzzy::Degree strength{0.0};
    std::vector<BoundAction> actions;
    std::vector<std::string> bind_errors; // actions that could not instantiate
};

} // namespace faf::agents
