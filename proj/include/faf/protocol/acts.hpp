#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "faf/fuzzy/degree.hpp"

namespace faf::protocol {

enum class Performative { inform, diffuse, ask, reply, confirm };

std::string performative_name(Performative p);
Performative performative_from_name(const std::string& name);

// Registered message type: the code travels in acts, the meaning is
// documentation for humans and traces.
struct MessageType {
    int code = 0;
    std::string meaning;

    bool operator==(const MessageType&) const = default;
};

enum class BodyKind { assertion, question, response, value };

std::string body_kind_name(BodyKind k);
BodyKind body_kind_from_name(const std::string& name);

// Message payload. `topic` names what the message is about (for value
// records: "variable.term"); `value` carries the crisp payload when present.
struct Message {
    BodyKind kind = BodyKind::assertion;
    std::string topic;
    std::optional<double> value;
    fuzzy::Degree degree{1.0};

    bool operator==(const Message&) const = default;
};

// An agent endpoint as seen by the act: the id plus the agent's membership
// degree in the system.
struct Endpoint {
    std::string agent;
    fuzzy::Degree degree{1.0};

    bool operator==(const Endpoint&) const = default;
};

// One speech act in flight. Addressed performatives carry a receiver
// endpoint; diffuse instead names a community, and the runtime fans it out
// into per-receiver copies whose receiver endpoint is then filled in.
struct CommunicationAct {
    Performative performative = Performative::inform;
    fuzzy::Degree speech_degree{1.0};
    Endpoint source;
    std::optional<Endpoint> receiver;
    std::string community;
    MessageType mtype;
    fuzzy::Degree mtype_degree{1.0};
    Message content;
    std::uint64_t correlation = 0; // 0 = uncorrelated
    bool ack_required = false;     // inform only: demand a confirm
    std::int64_t tick = 0;

    bool operator==(const CommunicationAct&) const = default;
};

// Fuzzy value of the act: min over the source, receiver, message-type and
// content degrees. A missing receiver (pre-fan-out diffuse) contributes 1.
fuzzy::Degree value_of(const CommunicationAct& act);

// Interest a receiver takes in a delivered act: the act's value capped by the
// receiver's affinity for the source (1 when unrecorded).
fuzzy::Degree evaluate_interest(const CommunicationAct& act, fuzzy::Degree affinity);

enum class CooperationCategory { communication, coordination, coproduction, comemory, control_process };

std::string cooperation_category_name(CooperationCategory c);

// A communication act framed as cooperation: category from the 5Co model
// plus the goal it serves. Carried as metadata; valuation ignores it.
struct CooperativeAct {
    CooperationCategory category = CooperationCategory::communication;
    std::string goal;
    CommunicationAct payload;
};

// A directed cooperative exchange between two distinct agents.
class Interaction {
public:
    Interaction(std::string source, std::string destination, CooperativeAct act);

    const std::string& source() const { return source_; }
    const std::string& destination() const { return destination_; }
    const CooperativeAct& cooperative_act() const { return act_; }

private:
    std::string source_;
    std::string destination_;
    CooperativeAct act_;
};

} // namespace faf::protocol
