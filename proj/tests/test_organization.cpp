#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "faf/org/organization.hpp"

using namespace faf;
using fuzzy::Degree;
using org::Community;
using org::OrganizationSettings;
using org::OrganizationState;
using org::Role;

namespace {

OrganizationState make_org(OrganizationSettings settings = {}) {
    std::vector<Role> roles = {{"monitor", "watch a variable"},
                               {"regulate", "drive a variable"}};
    std::vector<Community> communities = {
        {"sensing", {}, "monitor", "observe the plot"},
        {"actuation", {}, "regulate", "water the plot"},
    };
    return OrganizationState(std::move(roles), std::move(communities), settings);
}

} // namespace

TEST_CASE("construction validates its inputs") {
    OrganizationSettings bad_decay;
    bad_decay.decay = 0.0;
    CHECK_THROWS_AS(make_org(bad_decay), std::invalid_argument);
    bad_decay.decay = 1.5;
    CHECK_THROWS_AS(make_org(bad_decay), std::invalid_argument);

    OrganizationSettings zero_initial;
    zero_initial.initial_main_degree = Degree(0.0);
    CHECK_THROWS_AS(make_org(zero_initial), std::invalid_argument);

    CHECK_THROWS_AS(OrganizationState({{"r", ""}, {"r", ""}},
                                      {{"c", {}, "r", ""}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(OrganizationState({{"r", ""}},
                                      {{"c", {}, "r", ""}, {"c", {}, "r", ""}}, {}),
                    std::invalid_argument);
    // Community main role must be a registered role.
    CHECK_THROWS_AS(OrganizationState({{"r", ""}}, {{"c", {}, "ghost", ""}}, {}),
                    std::invalid_argument);
}

TEST_CASE("registration grants the community main role at full degree") {
    auto org = make_org();
    auto update = org.register_agent("alpha_T", "sensing");
    CHECK(update.agent == "alpha_T");
    CHECK(update.role == "monitor");
    CHECK(update.community == "sensing");
    CHECK(update.degree.value() == 1.0);
    CHECK(update.cause == "registration");

    CHECK(org.is_registered("alpha_T"));
    CHECK(org.reference_community("alpha_T") == std::string("sensing"));
    CHECK(org.degree("alpha_T", "monitor").value() == 1.0);
    CHECK(org.degree("alpha_T", "regulate").value() == 0.0);
    CHECK(org.community("sensing").members == std::vector<std::string>{"alpha_T"});

    CHECK_THROWS_AS(org.register_agent("alpha_T", "actuation"), std::invalid_argument);
    CHECK_THROWS_AS(org.register_agent("alpha_X", "nowhere"), std::invalid_argument);
    CHECK(org::reference_invariant_holds(org));
}

TEST_CASE("joining another community grants membership but no role") {
    auto org = make_org();
    org.register_agent("alpha_T", "sensing");
    CHECK_THROWS_AS(org.join_community("stranger", "actuation"), std::invalid_argument);

    org.join_community("alpha_T", "actuation");
    CHECK(org.community("actuation").members == std::vector<std::string>{"alpha_T"});
    CHECK(org.reference_community("alpha_T") == std::string("sensing"));
    CHECK(org.degree("alpha_T", "regulate").value() == 0.0);

    CHECK_THROWS_AS(org.join_community("alpha_T", "actuation"), std::invalid_argument);
    CHECK_THROWS_AS(org.join_community("alpha_T", "sensing"), std::invalid_argument);
}

TEST_CASE("active roles require a strictly positive degree at threshold zero") {
    auto org = make_org();
    org.register_agent("a", "sensing");
    org.register_agent("b", "actuation");
    CHECK(org.active_roles("a") == std::set<std::string>{"monitor"});
    CHECK(org.active_roles("b") == std::set<std::string>{"regulate"});

    // Give `a` a half-degree in regulate and sweep thresholds: at or above
    // counts, zero means strictly positive.
    org.propagate_role("a", "b", Degree(0.5));
    CHECK(org.degree("a", "regulate").value() == 0.5);
    CHECK(org.active_roles("a", Degree(0.0)) ==
          std::set<std::string>{"monitor", "regulate"});
    CHECK(org.active_roles("a", Degree(0.5)) ==
          std::set<std::string>{"monitor", "regulate"});
    CHECK(org.active_roles("a", Degree(0.51)) == std::set<std::string>{"monitor"});
    CHECK(org.active_roles("a", Degree(1.0)) == std::set<std::string>{"monitor"});
}

TEST_CASE("cross-community acts pull the source toward the target's main role") {
    auto org = make_org();
    org.register_agent("sensor", "sensing");
    org.register_agent("valve", "actuation");

    // Reference case: source at 0, act value 0.4, target holds the role at
    // 1.0, so the source lands at min(0.4, 1.0) = 0.4.
    auto updates = org.propagate_role("sensor", "valve", Degree(0.4));
    REQUIRE(updates.size() == 1);
    CHECK(updates[0].agent == "sensor");
    CHECK(updates[0].role == "regulate");
    CHECK(updates[0].degree.value() == 0.4);
    CHECK(updates[0].cause == "propagation");

    // Weaker act: max keeps the degree where it was, and no update surfaces.
    CHECK(org.propagate_role("sensor", "valve", Degree(0.2)).empty());
    CHECK(org.degree("sensor", "regulate").value() == 0.4);

    // Stronger act raises it; the target's own degree is the ceiling.
    org.propagate_role("sensor", "valve", Degree(1.0));
    CHECK(org.degree("sensor", "regulate").value() == 1.0);

    CHECK_THROWS_AS(org.propagate_role("ghost", "valve", Degree(0.5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(org.propagate_role("sensor", "ghost", Degree(0.5)),
                    std::invalid_argument);
}

TEST_CASE("acts inside one reference community reinforce only when enabled") {
    auto org = make_org();
    org.register_agent("s1", "sensing");
    org.register_agent("s2", "sensing");
    // Shipped default: reinforcement step 0 disables the bump entirely.
    CHECK(org.propagate_role("s1", "s2", Degree(0.8)).empty());
    CHECK(org.degree("s1", "monitor").value() == 1.0);

    // Enable the bump and start main roles below saturation so it can show.
    OrganizationSettings boosted;
    boosted.reinforcement = Degree(0.1);
    boosted.initial_main_degree = Degree(0.5);
    auto org2 = make_org(boosted);
    org2.register_agent("s1", "sensing");
    org2.register_agent("s2", "sensing");
    auto updates = org2.propagate_role("s1", "s2", Degree(0.5));
    REQUIRE(updates.size() == 1);
    CHECK(updates[0].role == "monitor");
    CHECK(updates[0].cause == "reinforcement");
    CHECK(updates[0].degree.value() == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(org2.degree("s1", "monitor").value() == doctest::Approx(0.55).epsilon(1e-12));
    // The bump saturates at 1: many repetitions never push past the cap.
    for (int i = 0; i < 30; ++i) org2.propagate_role("s1", "s2", Degree(1.0));
    CHECK(org2.degree("s1", "monitor").value() == 1.0);
}

TEST_CASE("decay multiplies degrees and floors the reference main role") {
    OrganizationSettings settings;
    settings.decay = 0.9;
    auto org = make_org(settings);
    org.register_agent("sensor", "sensing");
    org.register_agent("valve", "actuation");
    org.propagate_role("sensor", "valve", Degree(0.4));

    // Reference case: a secondary role at 0.4 decays to 0.36 after one tick.
    auto updates = org.decay_roles(1);
    REQUIRE(updates.size() == 1); // main roles sit at the floor and stay put
    CHECK(updates[0].agent == "sensor");
    CHECK(updates[0].role == "regulate");
    CHECK(updates[0].degree.value() == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(updates[0].cause == "decay");

    // Main roles never fall below the registration degree.
    CHECK(org.degree("sensor", "monitor").value() == 1.0);
    CHECK(org.degree("valve", "regulate").value() == 1.0);

    // dt 0 and decay 1.0 are both no-ops.
    CHECK(org.decay_roles(0).empty());
    OrganizationSettings no_decay;
    no_decay.decay = 1.0;
    auto org3 = make_org(no_decay);
    org3.register_agent("a", "sensing");
    org3.register_agent("b", "actuation");
    org3.propagate_role("a", "b", Degree(0.4));
    CHECK(org3.decay_roles(5).empty());
    CHECK(org3.degree("a", "regulate").value() == 0.4);

    // Multi-tick decay compounds: 0.36 * 0.9^2 = 0.2916.
    org.decay_roles(2);
    CHECK(org.degree("sensor", "regulate").value() ==
          doctest::Approx(0.36 * 0.81).epsilon(1e-12));
    CHECK(org::reference_invariant_holds(org));
}

TEST_CASE("propagation is monotone and degrees stay within the unit interval") {
    // Property: with decay disabled, a sequence of propagation acts never
    // lowers any degree, and every degree remains in [0, 1]. Random
    // interleavings across a three-community population.
    std::vector<Role> roles = {{"r1", ""}, {"r2", ""}, {"r3", ""}};
    std::vector<Community> communities = {
        {"c1", {}, "r1", ""}, {"c2", {}, "r2", ""}, {"c3", {}, "r3", ""}};
    OrganizationSettings settings;
    settings.decay = 1.0;

    std::mt19937 rng(20240915);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        OrganizationState org(roles, communities, settings);
        const std::vector<std::string> agents = {"a", "b", "c", "d", "e", "f"};
        for (std::size_t i = 0; i < agents.size(); ++i) {
            org.register_agent(agents[i], communities[i % 3].id);
        }
        std::uniform_int_distribution<std::size_t> pick(0, agents.size() - 1);
        for (int step = 0; step < 20; ++step) {
            const auto& source = agents[pick(rng)];
            const auto& target = agents[pick(rng)];
            if (source == target) continue;
            std::map<std::string, double> before;
            for (const auto& role : roles) {
                before[role.id] = org.degree(source, role.id).value();
            }
            org.propagate_role(source, target, Degree(unit(rng)));
            for (const auto& role : roles) {
                const double after = org.degree(source, role.id).value();
                CHECK(after >= before[role.id]);
                CHECK(after >= 0.0);
                CHECK(after <= 1.0);
            }
        }
        CHECK(org::reference_invariant_holds(org));
    }
}

TEST_CASE("any positive cross-community act leaves a positive trace degree") {
    std::mt19937 rng(20240916);
    std::uniform_real_distribution<double> positive(0.01, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto org = make_org();
        org.register_agent("s", "sensing");
        org.register_agent("v", "actuation");
        org.propagate_role("s", "v", Degree(positive(rng)));
        CHECK(org.degree("s", "regulate").value() > 0.0);
    }
}

TEST_CASE("snapshots restore the organization exactly") {
    OrganizationSettings settings;
    settings.decay = 0.9;
    settings.reinforcement = Degree(0.05);
    auto org = make_org(settings);
    // Interleave registrations and joins so member order is non-trivial.
    org.register_agent("alpha_T", "sensing");
    org.register_agent("alpha_D", "actuation");
    org.join_community("alpha_D", "sensing"); // sensing: [alpha_T, alpha_D]
    org.register_agent("alpha_H", "sensing"); // sensing: [..., alpha_H]
    org.join_community("alpha_T", "actuation");
    org.propagate_role("alpha_T", "alpha_D", Degree(0.7));
    org.decay_roles(1);

    const auto snap = org.snapshot();
    auto restored = OrganizationState::from_snapshot(snap);
    CHECK(restored.snapshot() == snap);
    CHECK(restored.community("sensing").members ==
          std::vector<std::string>{"alpha_T", "alpha_D", "alpha_H"});
    CHECK(restored.degree("alpha_T", "regulate").value() ==
          org.degree("alpha_T", "regulate").value());
    CHECK(restored.reference_community("alpha_D") == std::string("actuation"));
    CHECK(org::reference_invariant_holds(restored));

    // The restored state behaves identically going forward.
    auto a = org.decay_roles(3);
    auto b = restored.decay_roles(3);
    CHECK(a == b);
    CHECK(restored.snapshot() == org.snapshot());
}
