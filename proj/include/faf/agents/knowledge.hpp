#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "faf/fuzzy/degree.hpp"
#include "faf/protocol/acts.hpp"

namespace faf::agents {

enum class EventKind { message_received, environment_changed, timer };

std::string event_kind_name(EventKind k);
EventKind event_kind_from_name(const std::string& name);

// Movement of one term's degree when the environment changes.
struct TermDelta {
    std::string term;
    fuzzy::Degree previous{0.0};
    fuzzy::Degree current{0.0};

    bool operator==(const TermDelta&) const = default;
};

struct EnvChange {
    std::string variable;
    double value = 0.0;
    std::vector<TermDelta> deltas; // only terms whose degree actually moved

    bool operator==(const EnvChange&) const = default;
};

// Something an agent observed, with the degree it was observed at.
struct Event {
    EventKind kind = EventKind::timer;
    std::variant<std::monostate, protocol::CommunicationAct, EnvChange> payload;
    fuzzy::Degree degree{0.0};
    std::int64_t tick = 0;
};

using DomainValue = std::variant<double, fuzzy::Degree>;
using StateValue = std::variant<double, std::string, fuzzy::Degree>;

// An agent's private memory: domain values (crisp readings and term degrees,
// the latter keyed "variable.term"), the affinity network, a bounded event
// history, and free-form internal state.
class KnowledgeBase {
public:
    explicit KnowledgeBase(std::size_t history_cap = 1024);

    void set_crisp(const std::string& name, double value);
    void set_degree(const std::string& name, fuzzy::Degree degree);
    std::optional<double> crisp(const std::string& name) const;
    std::optional<fuzzy::Degree> degree(const std::string& name) const;
    // Degree lookup that treats "never heard of it" as zero; change detection
    // wants that default, rule gating must use degree() instead.
    fuzzy::Degree degree_or_zero(const std::string& name) const;
    const std::map<std::string, DomainValue>& domain_values() const { return domain_values_; }

    // Affinity defaults to full trust when unrecorded.
    fuzzy::Degree affinity(const std::string& agent) const;
    void set_affinity(const std::string& agent, fuzzy::Degree degree);
    const std::map<std::string, fuzzy::Degree>& acquaintances() const { return acquaintances_; }

    void record_event(Event e);
    const std::deque<Event>& observed_events() const { return observed_events_; }
    std::size_t history_cap() const { return history_cap_; }

    void set_state(const std::string& name, StateValue value);
    std::optional<StateValue> state(const std::string& name) const;

private:
    std::size_t history_cap_;
    std::map<std::string, DomainValue> domain_values_;
    std::map<std::string, fuzzy::Degree> acquaintances_;
    std::deque<Event> observed_events_;
    std::map<std::string, StateValue> internal_state_;
};

// Split "variable.term" at the first dot; the term half is empty when there
// is no dot.
std::pair<std::string, std::string> split_topic(const std::string& topic);

} // namespace faf::agents
