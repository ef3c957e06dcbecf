#include "faf/agents/knowledge.hpp"

#include <stdexcept>

namespace faf::agents {

std::string event_kind_name(EventKind k) {
    switch (k) {
    case EventKind::message_received: return "message-received";
    case EventKind::environment_changed: return "environment-changed";
    case EventKind::timer: return "timer";
    }
    throw std::logic_error("unknown event kind");
}

EventKind event_kind_from_name(const std::string& name) {
    if (name == "message-received") return EventKind::message_received;
    if (name == "environment-changed") return EventKind::environment_changed;
    if (name == "timer") return EventKind::timer;
    throw std::invalid_argument("unknown event kind: " + name);
}

KnowledgeBase::KnowledgeBase(std::size_t history_cap) : history_cap_(history_cap) {
    if (history_cap_ == 0) {
        throw std::invalid_argument("event history needs a positive cap");
    }
}

void KnowledgeBase::set_crisp(const std::string& name, double value) {
    domain_values_[name] = value;
}

void KnowledgeBase::set_degree(const std::string& name, fuzzy::Degree degree) {
    domain_values_[name] = degree;
}

std::optional<double> KnowledgeBase::crisp(const std::string& name) const {
    const auto it = domain_values_.find(name);
    if (it == domain_values_.end()) return std::nullopt;
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    return std::nullopt;
}

std::optional<fuzzy::Degree> KnowledgeBase::degree(const std::string& name) const {
    const auto it = domain_values_.find(name);
    if (it == domain_values_.end()) return std::nullopt;
    if (const fuzzy::Degree* d = std::get_if<fuzzy::Degree>(&it->second)) return *d;
    return std::nullopt;
}

fuzzy::Degree KnowledgeBase::degree_or_zero(const std::string& name) const {
    return degree(name).value_or(fuzzy::Degree(0.0));
}

fuzzy::Degree KnowledgeBase::affinity(const std::string& agent) const {
    const auto it = acquaintances_.find(agent);
    if (it == acquaintances_.end()) return fuzzy::Degree(1.0);
    return it->second;
}

void KnowledgeBase::set_affinity(const std::string& agent, fuzzy::Degree degree) {
    acquaintances_[agent] = degree;
}

void KnowledgeBase::record_event(Event e) {
    observed_events_.push_back(std::move(e));
    while (observed_events_.size() > history_cap_) {
        observed_events_.pop_front();
    }
}

void KnowledgeBase::set_state(const std::string& name, StateValue value) {
    internal_state_[name] = std::move(value);
}

std::optional<StateValue> KnowledgeBase::state(const std::string& name) const {
    const auto it = internal_state_.find(name);
    if (it == internal_state_.end()) return std::nullopt;
    return it->second;
}

std::pair<std::string, std::string> split_topic(const std::string& topic) {
    const auto dot = topic.find('.');
    if (dot == std::string::npos) {
        return {topic, ""};
    }
    return {topic.substr(0, dot), topic.substr(dot + 1)};
}

} // namespace faf::agents
