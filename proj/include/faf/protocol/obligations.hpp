#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "faf/protocol/acts.hpp"

namespace faf::protocol {

// A pending duty to respond: `agent` must send `required` with the same
// correlation id before `deadline`.
struct Obligation {
    std::uint64_t correlation = 0;
    std::string agent;
    Performative required = Performative::reply;
    std::int64_t deadline = 0;

    bool operator==(const Obligation&) const = default;
};

// The obligation a dispatched act creates, if any: ask always demands a
// reply; inform demands a confirm only when flagged; nothing else obliges.
std::optional<Obligation> obligation_for(const CommunicationAct& act, std::int64_t timeout);

enum class SettleResult { settled, unsolicited, wrong_performative };

// Open obligations, keyed by correlation id. Correlation ids are injective
// per run, so at most one obligation is ever open per id.
class ObligationTable {
public:
    void open(Obligation o);

    // A response arrived: close the matching obligation. `unsolicited` means
    // no obligation with this correlation was open; `wrong_performative`
    // means one was open but demanded a different response kind (it stays
    // open in that case).
    SettleResult settle(const CommunicationAct& response);

    // Remove and return every obligation whose deadline has passed.
    std::vector<Obligation> expire(std::int64_t now);

    const std::vector<Obligation>& open_obligations() const { return open_; }
    std::size_t open_count() const { return open_.size(); }

private:
    std::vector<Obligation> open_;
};

} // namespace faf::protocol
