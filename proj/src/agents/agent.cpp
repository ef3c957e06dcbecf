#include "faf/agents/agent.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace faf::agents {

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string term_key(const fuzzy::TermRef& ref) {
    return ref.variable + "." + ref.term;
}

} // namespace

FuzzyAgent::FuzzyAgent(std::string id, fuzzy::Degree membership,
                       std::optional<fuzzy::LinguisticVariable> variable, std::size_t history_cap)
    : id_(std::move(id)), membership_(membership), variable_(std::move(variable)),
      knowledge_(history_cap) {
    if (id_.empty()) {
        throw std::invalid_argument("agent needs a non-empty id");
    }
}

void FuzzyAgent::add_rule(DecisionRule rule) {
    if (rule.id.empty()) {
        throw std::invalid_argument("decision rule needs an id");
    }
    if (std::any_of(rules_.begin(), rules_.end(),
                    [&](const DecisionRule& r) { return r.id == rule.id; })) {
        throw std::invalid_argument("agent '" + id_ + "' already has rule '" + rule.id + "'");
    }
    if (rule.actions.empty()) {
        throw std::invalid_argument("rule '" + rule.id + "' needs at least one action");
    }
    rules_.push_back(std::move(rule));
}

void FuzzyAgent::enqueue(protocol::CommunicationAct act) {
    mailbox_.push_back(std::move(act));
}

std::optional<Percept> FuzzyAgent::perceive_environment(const VisibleState& visible) {
    if (!variable_ || !visible.environment) {
        return std::nullopt;
    }
    const auto it = visible.environment->find(variable_->name());
    if (it == visible.environment->end()) {
        return std::nullopt;
    }
    const double x = fuzzy::clamp_to_universe(variable_->universe(), it->second);

    // Refresh the owned variable's degrees, remembering what moved.
    std::vector<TermDelta> deltas;
    for (const auto& term : variable_->terms()) {
        const std::string key = variable_->name() + "." + term.label;
        const fuzzy::Degree previous = knowledge_.degree_or_zero(key);
        const fuzzy::Degree current = term.membership.evaluate(x);
        if (current.value() != previous.value()) {
            deltas.push_back({term.label, previous, current});
        }
        knowledge_.set_degree(key, current);
    }
    knowledge_.set_crisp(variable_->name(), it->second);
    if (deltas.empty()) {
        return std::nullopt; // same reading as before: nothing happened
    }

    // A change only registers as a percept when some rule watches one of the
    // moved terms; unwatched movement stays recorded knowledge.
    double watched_peak = -1.0;
    for (const auto& rule : rules_) {
        if (rule.on.kind != EventKind::environment_changed ||
            rule.on.variable != variable_->name()) {
            continue;
        }
        for (const auto& delta : deltas) {
            const bool watched = rule.on.terms.empty() ||
                                 std::find(rule.on.terms.begin(), rule.on.terms.end(),
                                           delta.term) != rule.on.terms.end();
            if (watched) {
                watched_peak = std::max(watched_peak, delta.current.value());
            }
        }
    }
    if (watched_peak < 0.0) {
        return std::nullopt;
    }

    Event event;
    event.kind = EventKind::environment_changed;
    event.payload = EnvChange{variable_->name(), it->second, std::move(deltas)};
    event.degree = fuzzy::Degree(watched_peak);
    event.tick = visible.tick;
    knowledge_.record_event(event);
    return Percept{std::move(event), fuzzy::Degree(watched_peak)};
}

std::vector<Percept> FuzzyAgent::perceive(const VisibleState& visible) {
    std::vector<Percept> out;
    if (auto env = perceive_environment(visible)) {
        out.push_back(std::move(*env));
    }
    for (auto& act : mailbox_) {
        const fuzzy::Degree interest =
            protocol::evaluate_interest(act, knowledge_.affinity(act.source.agent));
        // Value records teach the receiver the sender's term degrees.
        if (act.content.kind == protocol::BodyKind::value && !act.content.topic.empty()) {
            if (split_topic(act.content.topic).second.empty()) {
                if (act.content.value) {
                    knowledge_.set_crisp(act.content.topic, *act.content.value);
                }
            } else {
                knowledge_.set_degree(act.content.topic, act.content.degree);
            }
        }
        Event event;
        event.kind = EventKind::message_received;
        event.payload = std::move(act);
        event.degree = interest;
        event.tick = visible.tick;
        knowledge_.record_event(event);
        out.push_back(Percept{std::move(event), interest});
    }
    mailbox_.clear();
    return out;
}

std::optional<fuzzy::Degree> FuzzyAgent::event_degree(const DecisionRule& rule,
                                                      const Percept& percept) const {
    const EventPattern& on = rule.on;
    if (on.kind != percept.event.kind) {
        return std::nullopt;
    }
    switch (percept.event.kind) {
    case EventKind::message_received: {
        const auto& act = std::get<protocol::CommunicationAct>(percept.event.payload);
        if (on.performative && *on.performative != act.performative) {
            return std::nullopt;
        }
        if (on.mtype && *on.mtype != act.mtype.code) {
            return std::nullopt;
        }
        if (!on.variables.empty()) {
            const std::string topic_variable = split_topic(act.content.topic).first;
            if (std::find(on.variables.begin(), on.variables.end(), topic_variable) ==
                on.variables.end()) {
                return std::nullopt;
            }
        }
        if (on.event_term) {
            // Read the designated slot; not knowing it yet means "not ready",
            // not "degree zero".
            const auto d = knowledge_.degree(term_key(*on.event_term));
            if (!d) return std::nullopt;
            return fuzzy::apply_modifier(on.event_term->modifier, *d);
        }
        return percept.degree;
    }
    case EventKind::environment_changed: {
        const auto& env = std::get<EnvChange>(percept.event.payload);
        if (!on.variable.empty() && on.variable != env.variable) {
            return std::nullopt;
        }
        double peak = -1.0;
        for (const auto& delta : env.deltas) {
            const bool watched =
                on.terms.empty() ||
                std::find(on.terms.begin(), on.terms.end(), delta.term) != on.terms.end();
            if (watched) {
                peak = std::max(peak, delta.current.value());
            }
        }
        if (peak < 0.0) return std::nullopt;
        return fuzzy::Degree(peak);
    }
    case EventKind::timer:
        return percept.degree;
    }
    return std::nullopt;
}

std::optional<fuzzy::Degree> FuzzyAgent::condition_degree(const DecisionRule& rule) const {
    if (!rule.when) {
        return fuzzy::Degree(1.0);
    }
    const Condition& when = *rule.when;
    if (when.kind == Condition::Kind::constant) {
        return when.constant;
    }
    const auto d = knowledge_.degree(term_key(when.term));
    if (!d) return std::nullopt; // unevaluable: the rule waits
    return fuzzy::apply_modifier(when.term.modifier, *d);
}

std::optional<BoundAction> FuzzyAgent::bind_action(const ActionSpec& spec, const Percept& percept,
                                                   fuzzy::Degree strength,
                                                   std::string& error) const {
    if (const auto* send = std::get_if<SendSpec>(&spec)) {
        BoundSend b;
        b.target = send->target;
        b.performative = send->performative;
        b.destination = send->destination;
        b.mtype = send->mtype;
        b.ack_required = send->ack_required;
        b.content.kind = send->body;
        b.content.topic = send->topic;
        switch (send->content_source) {
        case SendSpec::ContentSource::constant:
            b.content.degree = send->content_constant;
            break;
        case SendSpec::ContentSource::term_degree: {
            const auto d = knowledge_.degree(term_key(send->content_term));
            if (!d) {
                error = "content term '" + term_key(send->content_term) + "' is unknown";
                return std::nullopt;
            }
            b.content.degree = fuzzy::apply_modifier(send->content_term.modifier, *d);
            b.content.topic = term_key(send->content_term);
            break;
        }
        case SendSpec::ContentSource::event_degree:
            b.content.degree = percept.degree;
            break;
        }
        if (send->target == SendSpec::Target::reply_to_source) {
            const auto* act = std::get_if<protocol::CommunicationAct>(&percept.event.payload);
            if (!act) {
                error = "reply target needs a message event";
                return std::nullopt;
            }
            b.destination = act->source.agent;
            b.correlation = act->correlation;
        }
        return BoundAction{std::move(b)};
    }
    if (const auto* effect = std::get_if<EffectSpec>(&spec)) {
        if (effect->kind == EffectSpec::Kind::constant) {
            return BoundAction{BoundEffect{effect->variable, effect->constant}};
        }
        return BoundAction{BoundContribution{effect->variable, effect->term, strength}};
    }
    const auto& internal = std::get<InternalSpec>(spec);
    return BoundAction{BoundInternal{internal.key, internal.value, internal.state_slot}};
}

std::vector<Decision> FuzzyAgent::decide(const std::vector<Percept>& percepts) {
    std::vector<Decision> out;
    for (const auto& rule : rules_) {
        for (const auto& percept : percepts) {
            const auto event = event_degree(rule, percept);
            if (!event) continue;
            const auto condition = rule.category == DecisionRule::Category::reactive
                                       ? std::optional<fuzzy::Degree>(fuzzy::Degree(1.0))
                                       : condition_degree(rule);
            if (!condition) continue;
            const fuzzy::Degree strength = fuzzy::t_norm(*event, *condition);
            if (strength.value() < rule.threshold.value()) continue;

            Decision decision;
            decision.rule_id = rule.id;
            decision.strength = strength;
            for (const auto& spec : rule.actions) {
                std::string error;
                if (auto bound = bind_action(spec, percept, strength, error)) {
                    decision.actions.push_back(std::move(*bound));
                } else {
                    decision.bind_errors.push_back("rule '" + rule.id + "': " + error);
                }
            }
            out.push_back(std::move(decision));
        }
    }
    // Collection order is (declaration, percept); a stable sort on strength
    // therefore yields the full deterministic order.
    std::stable_sort(out.begin(), out.end(), [](const Decision& a, const Decision& b) {
        return a.strength.value() > b.strength.value();
    });
    return out;
}

void FuzzyAgent::act(const std::vector<Decision>& decisions, StepResult& out) {
    // Fuzzy contributions pool per variable so one tick writes one value.
    std::vector<std::string> pool_order;
    std::map<std::string, std::vector<fuzzy::ConsequentClip>> pools;
    std::map<std::string, std::vector<ActionLogEntry>> pool_logs;

    for (const auto& decision : decisions) {
        for (const auto& err : decision.bind_errors) {
            out.errors.push_back(err);
        }
        for (const auto& action : decision.actions) {
            if (const auto* send = std::get_if<BoundSend>(&action)) {
                protocol::CommunicationAct act;
                act.performative = send->performative;
                act.source = {id_, membership_};
                if (send->target == SendSpec::Target::community) {
                    act.community = send->destination;
                } else {
                    // Receiver degree is stamped by the host at dispatch,
                    // where the receiver's membership is known.
                    act.receiver = protocol::Endpoint{send->destination, fuzzy::Degree(1.0)};
                }
                act.mtype = protocol::MessageType{send->mtype, ""};
                act.content = send->content;
                act.correlation = send->correlation;
                act.ack_required = send->ack_required;
                out.sends.push_back(std::move(act));
                ActionLogEntry entry{decision.rule_id,
                                     "send " + protocol::performative_name(send->performative) +
                                         " to " + send->destination};
                action_log_.push_back(entry);
                out.executed.push_back(std::move(entry));
            } else if (const auto* contribution = std::get_if<BoundContribution>(&action)) {
                if (!pools.count(contribution->variable)) {
                    pool_order.push_back(contribution->variable);
                }
                pools[contribution->variable].push_back(
                    {fuzzy::TermRef{contribution->variable, contribution->term},
                     contribution->strength});
                pool_logs[contribution->variable].push_back(
                    {decision.rule_id, "contribute " + contribution->variable + "." +
                                           contribution->term + " at " +
                                           format_double(contribution->strength.value())});
            } else if (const auto* effect = std::get_if<BoundEffect>(&action)) {
                out.effects.push_back(*effect);
                ActionLogEntry entry{decision.rule_id, "set " + effect->variable + "=" +
                                                           format_double(effect->value)};
                action_log_.push_back(entry);
                out.executed.push_back(std::move(entry));
            } else {
                const auto& internal = std::get<BoundInternal>(action);
                if (internal.state_slot) {
                    knowledge_.set_state(internal.key, std::visit(
                        [](const auto& v) { return StateValue(v); }, internal.value));
                } else if (const double* crisp = std::get_if<double>(&internal.value)) {
                    knowledge_.set_crisp(internal.key, *crisp);
                } else {
                    knowledge_.set_degree(internal.key, std::get<fuzzy::Degree>(internal.value));
                }
                ActionLogEntry entry{decision.rule_id, "update " + internal.key};
                action_log_.push_back(entry);
                out.executed.push_back(std::move(entry));
            }
        }
    }

    for (const auto& variable : pool_order) {
        if (!variable_ || variable_->name() != variable) {
            out.errors.push_back("no owned variable '" + variable + "' to defuzzify into");
            continue;
        }
        try {
            const double value = fuzzy::pool_centroid(*variable_, pools[variable]);
            out.effects.push_back(BoundEffect{variable, value});
            for (auto& entry : pool_logs[variable]) {
                action_log_.push_back(entry);
                out.executed.push_back(std::move(entry));
            }
        } catch (const fuzzy::EmptyAggregateError&) {
            // Every contribution was clipped to nothing: no write, but the
            // actions still executed.
            for (auto& entry : pool_logs[variable]) {
                action_log_.push_back(entry);
                out.executed.push_back(std::move(entry));
            }
        } catch (const std::invalid_argument& e) {
            out.errors.push_back(std::string("defuzzification failed: ") + e.what());
        }
    }
}

StepResult FuzzyAgent::step(const VisibleState& visible) {
    StepResult result;
    result.percepts = perceive(visible);
    result.decisions = decide(result.percepts);
    act(result.decisions, result);
    return result;
}

} // namespace faf::agents
