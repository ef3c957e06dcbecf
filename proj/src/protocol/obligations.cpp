#include "faf/protocol/obligations.hpp"

#include <algorithm>
#include <stdexcept>

namespace faf::protocol {

std::optional<Obligation> obligation_for(const CommunicationAct& act, std::int64_t timeout) {
    if (!act.receiver) {
        return std::nullopt; // diffuse never obliges
    }
    if (act.performative == Performative::ask) {
        return Obligation{act.correlation, act.receiver->agent, Performative::reply,
                          act.tick + timeout};
    }
    if (act.performative == Performative::inform && act.ack_required) {
        return Obligation{act.correlation, act.receiver->agent, Performative::confirm,
                          act.tick + timeout};
    }
    return std::nullopt;
}

void ObligationTable::open(Obligation o) {
    if (o.correlation == 0) {
        throw std::invalid_argument("an obligation needs a correlation id");
    }
    const bool taken = std::any_of(open_.begin(), open_.end(), [&](const Obligation& e) {
        return e.correlation == o.correlation;
    });
    if (taken) {
        throw std::logic_error("correlation id already has an open obligation");
    }
    open_.push_back(std::move(o));
}

SettleResult ObligationTable::settle(const CommunicationAct& response) {
    const auto it = std::find_if(open_.begin(), open_.end(), [&](const Obligation& o) {
        return o.correlation == response.correlation;
    });
    if (it == open_.end()) {
        return SettleResult::unsolicited;
    }
    if (it->required != response.performative) {
        return SettleResult::wrong_performative;
    }
    open_.erase(it);
    return SettleResult::settled;
}

std::vector<Obligation> ObligationTable::expire(std::int64_t now) {
    std::vector<Obligation> out;
    const auto split = std::stable_partition(open_.begin(), open_.end(), [&](const Obligation& o) {
        return o.deadline > now;
    });
    out.assign(split, open_.end());
    open_.erase(split, open_.end());
    return out;
}

} // namespace faf::protocol
