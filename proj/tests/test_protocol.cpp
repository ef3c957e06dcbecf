#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "faf/protocol/acts.hpp"
#include "faf/protocol/obligations.hpp"

using namespace faf;
using protocol::CommunicationAct;
using protocol::Endpoint;
using protocol::Obligation;
using protocol::ObligationTable;
using protocol::Performative;
using protocol::SettleResult;
using fuzzy::Degree;

namespace {

CommunicationAct make_act(double source_d, std::optional<double> receiver_d,
                          double mtype_d, double content_d,
                          Performative p = Performative::inform) {
    CommunicationAct act;
    act.performative = p;
    act.source = Endpoint{"sender", Degree(source_d)};
    if (receiver_d) act.receiver = Endpoint{"receiver", Degree(*receiver_d)};
    act.mtype = protocol::MessageType{2, "value-transmission"};
    act.mtype_degree = Degree(mtype_d);
    act.content.degree = Degree(content_d);
    return act;
}

} // namespace

TEST_CASE("performative and category names round-trip") {
    for (auto p : {Performative::inform, Performative::diffuse, Performative::ask,
                   Performative::reply, Performative::confirm}) {
        CHECK(protocol::performative_from_name(protocol::performative_name(p)) == p);
    }
    CHECK(protocol::performative_name(Performative::inform) == "inform");
    CHECK(protocol::performative_name(Performative::diffuse) == "diffuse");
    CHECK_THROWS_AS((void)protocol::performative_from_name("shout"),
                    std::invalid_argument);

    using protocol::CooperationCategory;
    CHECK(protocol::cooperation_category_name(CooperationCategory::coproduction) ==
          "co-production");
    CHECK(protocol::cooperation_category_name(CooperationCategory::comemory) ==
          "co-memory");
    CHECK(protocol::cooperation_category_name(CooperationCategory::control_process) ==
          "control-process");
}

TEST_CASE("act value is the minimum of the participating degrees") {
    // The worked reference point: degrees (0.7, 0.6, 1.0, 0.4) value at
    // exactly 0.4.
    CHECK(protocol::value_of(make_act(0.7, 0.6, 1.0, 0.4)).value() == 0.4);

    // Independent oracle: min over the raw doubles, swept over a coarse grid
    // of all four components. min returns one of its inputs, so equality is
    // exact.
    const double grid[] = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
    for (double a : grid)
        for (double b : grid)
            for (double c : grid)
                for (double d : grid) {
                    const double expected = std::min({a, b, c, d});
                    CHECK(protocol::value_of(make_act(a, b, c, d)).value() == expected);
                }
}

TEST_CASE("missing receiver contributes nothing to the act value") {
    CHECK(protocol::value_of(make_act(0.7, std::nullopt, 1.0, 0.4)).value() == 0.4);
    CHECK(protocol::value_of(make_act(0.3, std::nullopt, 1.0, 0.9)).value() == 0.3);
    // With every other degree at 1 the value is 1, not capped by an absent
    // endpoint.
    CHECK(protocol::value_of(make_act(1.0, std::nullopt, 1.0, 1.0)).value() == 1.0);
}

TEST_CASE("act value is monotone in each component") {
    std::mt19937 rng(911);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
        const double base = protocol::value_of(make_act(a, b, c, d)).value();
        const double bump = std::min(1.0, a + unit(rng) * (1.0 - a));
        CHECK(protocol::value_of(make_act(bump, b, c, d)).value() >= base);
        const double bump_d = std::min(1.0, d + unit(rng) * (1.0 - d));
        CHECK(protocol::value_of(make_act(a, b, c, bump_d)).value() >= base);
    }
}

TEST_CASE("interest caps the act value by affinity for the source") {
    const auto act = make_act(0.7, 0.6, 1.0, 0.4);
    CHECK(protocol::evaluate_interest(act, Degree(1.0)).value() == 0.4);
    CHECK(protocol::evaluate_interest(act, Degree(0.25)).value() == 0.25);
    CHECK(protocol::evaluate_interest(act, Degree(0.0)).value() == 0.0);
    // Interest never exceeds the act value.
    std::mt19937 rng(912);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto random_act = make_act(unit(rng), unit(rng), unit(rng), unit(rng));
        const Degree affinity{unit(rng)};
        CHECK(protocol::evaluate_interest(random_act, affinity).value() <=
              protocol::value_of(random_act).value());
    }
}

TEST_CASE("only ask and acknowledged inform create obligations") {
    auto ask = make_act(1.0, 1.0, 1.0, 1.0, Performative::ask);
    ask.correlation = 7;
    ask.tick = 3;
    auto obligation = protocol::obligation_for(ask, 10);
    REQUIRE(obligation.has_value());
    CHECK(obligation->agent == "receiver");
    CHECK(obligation->required == Performative::reply);
    CHECK(obligation->correlation == 7);
    CHECK(obligation->deadline == 13); // opened at tick 3, timeout 10

    auto inform = make_act(1.0, 1.0, 1.0, 1.0, Performative::inform);
    inform.correlation = 8;
    CHECK_FALSE(protocol::obligation_for(inform, 10).has_value());
    inform.ack_required = true;
    auto confirm_duty = protocol::obligation_for(inform, 10);
    REQUIRE(confirm_duty.has_value());
    CHECK(confirm_duty->required == Performative::confirm);

    auto diffuse = make_act(1.0, std::nullopt, 1.0, 1.0, Performative::diffuse);
    diffuse.correlation = 9;
    CHECK_FALSE(protocol::obligation_for(diffuse, 10).has_value());
    for (auto p : {Performative::reply, Performative::confirm}) {
        auto response = make_act(1.0, 1.0, 1.0, 1.0, p);
        response.correlation = 10;
        CHECK_FALSE(protocol::obligation_for(response, 10).has_value());
    }
}

TEST_CASE("obligation table settles matching responses and only those") {
    ObligationTable table;
    table.open(Obligation{21, "alice", Performative::reply, 15});
    table.open(Obligation{22, "bob", Performative::confirm, 15});
    CHECK(table.open_count() == 2);

    auto reply = make_act(1.0, 1.0, 1.0, 1.0, Performative::reply);
    reply.correlation = 21;
    CHECK(table.settle(reply) == SettleResult::settled);
    CHECK(table.open_count() == 1);

    // A response nobody asked for changes nothing.
    auto stray = make_act(1.0, 1.0, 1.0, 1.0, Performative::reply);
    stray.correlation = 99;
    CHECK(table.settle(stray) == SettleResult::unsolicited);
    CHECK(table.open_count() == 1);

    // Correlation matches but the duty demands a confirm: stays open.
    auto wrong = make_act(1.0, 1.0, 1.0, 1.0, Performative::reply);
    wrong.correlation = 22;
    CHECK(table.settle(wrong) == SettleResult::wrong_performative);
    CHECK(table.open_count() == 1);

    auto confirm = make_act(1.0, 1.0, 1.0, 1.0, Performative::confirm);
    confirm.correlation = 22;
    CHECK(table.settle(confirm) == SettleResult::settled);
    CHECK(table.open_count() == 0);
}

TEST_CASE("obligation table rejects unusable opens") {
    ObligationTable table;
    CHECK_THROWS_AS(table.open(Obligation{0, "alice", Performative::reply, 5}),
                    std::invalid_argument);
    table.open(Obligation{5, "alice", Performative::reply, 5});
    CHECK_THROWS_AS(table.open(Obligation{5, "bob", Performative::reply, 9}),
                    std::logic_error);
}

TEST_CASE("expiry removes exactly the overdue obligations") {
    ObligationTable table;
    table.open(Obligation{1, "a", Performative::reply, 10});
    table.open(Obligation{2, "b", Performative::reply, 12});
    table.open(Obligation{3, "c", Performative::confirm, 10});

    auto expired = table.expire(9);
    CHECK(expired.empty());
    CHECK(table.open_count() == 3);

    expired = table.expire(10);
    REQUIRE(expired.size() == 2);
    CHECK(expired[0].correlation == 1);
    CHECK(expired[1].correlation == 3);
    CHECK(table.open_count() == 1);
    CHECK(table.open_obligations()[0].correlation == 2);

    expired = table.expire(100);
    CHECK(expired.size() == 1);
    CHECK(table.open_count() == 0);
}

TEST_CASE("random ask traffic either settles or expires, never both") {
    // Property: for a random sequence of opens and responses, every
    // correlation is settled at most once, expiry returns each overdue duty
    // exactly once, and the table never holds a settled duty.
    std::mt19937 rng(913);
    std::uniform_int_distribution<int> coin(0, 1);
    ObligationTable table;
    std::vector<std::uint64_t> open_ids;
    std::size_t settled = 0, expired_count = 0, opened = 0;
    std::uint64_t next_id = 1;
    for (std::int64_t tick = 0; tick < 200; ++tick) {
        if (coin(rng)) {
            table.open(Obligation{next_id, "agent", Performative::reply, tick + 5});
            open_ids.push_back(next_id);
            ++next_id;
            ++opened;
        }
        if (!open_ids.empty() && coin(rng)) {
            std::uniform_int_distribution<std::size_t> pick(0, open_ids.size() - 1);
            const std::size_t at = pick(rng);
            auto response = make_act(1.0, 1.0, 1.0, 1.0, Performative::reply);
            response.correlation = open_ids[at];
            CHECK(table.settle(response) == SettleResult::settled);
            open_ids.erase(open_ids.begin() + static_cast<std::ptrdiff_t>(at));
            ++settled;
        }
        for (const auto& dead : table.expire(tick)) {
            auto it = std::find(open_ids.begin(), open_ids.end(), dead.correlation);
            REQUIRE(it != open_ids.end());
            open_ids.erase(it);
            ++expired_count;
        }
    }
    expired_count += table.expire(10'000).size();
    CHECK(settled + expired_count == opened);
}

TEST_CASE("interactions connect two distinct agents") {
    protocol::CooperativeAct coop;
    coop.category = protocol::CooperationCategory::coordination;
    coop.goal = "share humidity reading";
    coop.payload = make_act(1.0, 1.0, 1.0, 0.5);

    protocol::Interaction interaction("alpha_H", "alpha_D", coop);
    CHECK(interaction.source() == "alpha_H");
    CHECK(interaction.destination() == "alpha_D");
    CHECK(interaction.cooperative_act().goal == "share humidity reading");

    CHECK_THROWS_AS(protocol::Interaction("alpha_H", "alpha_H", coop),
                    std::invalid_argument);
}
