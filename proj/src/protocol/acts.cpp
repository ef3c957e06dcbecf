#include "faf/protocol/acts.hpp"

#include <stdexcept>

namespace faf::protocol {

std::string performative_name(Performative p) {
    switch (p) {
    case Performative::inform: return "inform";
    case Performative::diffuse: return "diffuse";
    case Performative::ask: return "ask";
    case Performative::reply: return "reply";
    case Performative::confirm: return "confirm";
    }
    throw std::logic_error("unknown performative");
}

Performative performative_from_name(const std::string& name) {
    if (name == "inform") return Performative::inform;
    if (name == "diffuse") return Performative::diffuse;
    if (name == "ask") return Performative::ask;
    if (name == "reply") return Performative::reply;
    if (name == "confirm") return Performative::confirm;
    throw std::invalid_argument("unknown performative: " + name);
}

std::string body_kind_name(BodyKind k) {
    switch (k) {
    case BodyKind::assertion: return "assertion";
    case BodyKind::question: return "question";
    case BodyKind::response: return "response";
    case BodyKind::value: return "value";
    }
    throw std::logic_error("unknown body kind");
}

BodyKind body_kind_from_name(const std::string& name) {
    if (name == "assertion") return BodyKind::assertion;
    if (name == "question") return BodyKind::question;
    if (name == "response") return BodyKind::response;
    if (name == "value") return BodyKind::value;
    throw std::invalid_argument("unknown body kind: " + name);
}

fuzzy::Degree value_of(const CommunicationAct& act) {
    fuzzy::Degree v = act.source.degree;
    if (act.receiver) {
        v = fuzzy::t_norm(v, act.receiver->degree);
    }
    v = fuzzy::t_norm(v, act.mtype_degree);
    return fuzzy::t_norm(v, act.content.degree);
}

fuzzy::Degree evaluate_interest(const CommunicationAct& act, fuzzy::Degree affinity) {
    return fuzzy::t_norm(value_of(act), affinity);
}

std::string cooperation_category_name(CooperationCategory c) {
    switch (c) {
    case CooperationCategory::communication: return "communication";
    case CooperationCategory::coordination: return "coordination";
    case CooperationCategory::coproduction: return "co-production";
    case CooperationCategory::comemory: return "co-memory";
    case CooperationCategory::control_process: return "control-process";
    }
    throw std::logic_error("unknown cooperation category");
}

Interaction::Interaction(std::string source, std::string destination, CooperativeAct act)
    : source_(std::move(source)), destination_(std::move(destination)), act_(std::move(act)) {
    if (source_ == destination_) {
        throw std::invalid_argument("an interaction needs two distinct agents");
    }
}

} // namespace faf::protocol
