// Copyright 2026 The cads Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "cads/strategies.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

using Catch::Matchers::WithinAbs;

namespace {

cads::ApplicationModel two_version_app(double ed0, double ed1, double qoe0, double qoe1) {
    cads::ApplicationModel app;
    app.name = "pair";
    cads::Microservice ms{"m", false, {}};
    ms.versions.push_back(cads::VersionSpec{"v0", std::nullopt, ed0, 1.0, 100, qoe0, 0.0});
    ms.versions.push_back(cads::VersionSpec{"v1", std::nullopt, ed1, 1.0, 100, qoe1, 0.0});
    app.microservices.push_back(ms);
    cads::validate_application(app);
    return app;
}

}  // namespace

TEST_CASE("optimal selection upgrades and degrades with the budget") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);

    const cads::StrategyOutcome rich = cads::optimal_select(app, 20000.0, 300.0, 60.0);
    CHECK(rich.plan.config == cads::Configuration{{1, 1, 1, 1, 0}});
    CHECK_THAT(rich.plan.objective, WithinAbs(0.95, 1e-9));
    CHECK_FALSE(rich.violated);

    const cads::StrategyOutcome tight = cads::optimal_select(app, 20000.0, 300.0, 20.0);
    CHECK(tight.plan.config == cads::Configuration{{0, 0, 0, 0, 0}});
    CHECK_THAT(tight.plan.objective, WithinAbs(0.2, 1e-9));
    CHECK_FALSE(tight.violated);

    const cads::StrategyOutcome starved = cads::optimal_select(app, 20000.0, 300.0, 10.0);
    CHECK(starved.plan.config == cads::Configuration{{0, 0, 0, 0, 0}});
    CHECK(starved.violated);
    CHECK_FALSE(starved.plan.feasible);
}

TEST_CASE("optimal selection breaks objective ties toward lower emissions") {
    const cads::ApplicationModel app = two_version_app(20.0, 10.0, 0.5, 0.5);
    const cads::StrategyOutcome outcome = cads::optimal_select(app, 50.0, 100.0, 1e9);
    CHECK(outcome.plan.config == cads::Configuration{{1}});
}

TEST_CASE("optimal selection breaks full ties lexicographically") {
    const cads::ApplicationModel app = two_version_app(10.0, 10.0, 0.5, 0.5);
    const cads::StrategyOutcome outcome = cads::optimal_select(app, 50.0, 100.0, 1e9);
    CHECK(outcome.plan.config == cads::Configuration{{0}});

    // degraded mode: both infeasible and equally emitting, still the
    // lexicographically smaller one
    const cads::StrategyOutcome degraded = cads::optimal_select(app, 50.0, 100.0, 0.5);
    CHECK(degraded.plan.config == cads::Configuration{{0}});
    CHECK(degraded.violated);
}

TEST_CASE("optimal selection matches the exhaustive oracle on random inputs") {
    std::mt19937_64 rng(515151);
    for (const bool variant_a : {true, false}) {
        const cads::ApplicationModel app = testutil::make_flight_booking(variant_a);
        for (int trial = 0; trial < 100; ++trial) {
            const double users0 = testutil::uniform_in(rng, 0.0, 40000.0);
            const double ci = testutil::uniform_in(rng, 50.0, 600.0);
            const double budget = testutil::uniform_in(rng, 5.0, 300.0);
            const cads::StrategyOutcome got = cads::optimal_select(app, users0, ci, budget);
            const testutil::OracleResult expect =
                testutil::oracle_select(app, users0, ci, budget);
            REQUIRE(got.plan.config.chosen == expect.plan.chosen);
            REQUIRE(got.violated == expect.violated);
            REQUIRE_THAT(got.plan.objective, WithinAbs(expect.plan.objective, 1e-12));
        }
    }
}

TEST_CASE("branch and bound returns bit-identical outcomes to exhaustive search") {
    std::mt19937_64 rng(99);
    const cads::ApplicationModel flight = testutil::make_flight_booking(true);
    for (int trial = 0; trial < 200; ++trial) {
        const double users0 = testutil::uniform_in(rng, 0.0, 40000.0);
        const double ci = testutil::uniform_in(rng, 50.0, 600.0);
        const double budget = testutil::uniform_in(rng, 5.0, 300.0);
        const cads::StrategyOutcome os = cads::optimal_select(flight, users0, ci, budget);
        const cads::StrategyOutcome bnb =
            cads::branch_and_bound_select(flight, users0, ci, budget);
        REQUIRE(bnb == os);
    }
    for (int trial = 0; trial < 25; ++trial) {
        const cads::ApplicationModel app = testutil::random_app(rng, 6, 4, 3000);
        const double users0 = testutil::uniform_in(rng, 0.0, 50000.0);
        const double ci = testutil::uniform_in(rng, 50.0, 600.0);
        const double budget = testutil::uniform_in(rng, 1.0, 2000.0);
        REQUIRE(cads::branch_and_bound_select(app, users0, ci, budget) ==
                cads::optimal_select(app, users0, ci, budget));
    }
}

TEST_CASE("the high-performance baseline maxes out and ignores the budget") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);
    const cads::StrategyOutcome outcome = cads::hp_select(app, 20000.0, 300.0, 115.425);
    CHECK(outcome.plan.config == cads::Configuration{{2, 1, 1, 2, 0}});
    CHECK_THAT(outcome.plan.emissions_g, WithinAbs(211.08, 1e-9));
    CHECK(outcome.violated);

    const cads::StrategyOutcome rich = cads::hp_select(app, 20000.0, 300.0, 1e9);
    CHECK(rich.plan.config == cads::Configuration{{2, 1, 1, 2, 0}});
    CHECK_FALSE(rich.violated);
}

TEST_CASE("the high-performance baseline breaks energy ties toward later versions") {
    const cads::ApplicationModel app = two_version_app(10.0, 10.0, 0.5, 0.6);
    CHECK(cads::hp_select(app, 50.0, 100.0, 1e9).plan.config == cads::Configuration{{1}});
}

TEST_CASE("sequential baseline configurations are energy-ordered per microservice") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);
    const cads::SequentialConfigs configs = cads::sca_configs(app);
    CHECK(configs.low == cads::Configuration{{0, 0, 0, 0, 0}});
    CHECK(configs.mid == cads::Configuration{{1, 1, 1, 1, 0}});
    CHECK(configs.high == cads::Configuration{{2, 1, 1, 2, 0}});
}

TEST_CASE("sequential baseline walks high, mid, low as the budget shrinks") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);

    const cads::StrategyOutcome high = cads::sca_select(app, 20000.0, 300.0, 250.0);
    CHECK(high.plan.config == cads::Configuration{{2, 1, 1, 2, 0}});
    CHECK_FALSE(high.violated);

    const cads::StrategyOutcome mid = cads::sca_select(app, 20000.0, 300.0, 60.0);
    CHECK(mid.plan.config == cads::Configuration{{1, 1, 1, 1, 0}});
    CHECK_FALSE(mid.violated);

    const cads::StrategyOutcome low = cads::sca_select(app, 20000.0, 300.0, 25.0);
    CHECK(low.plan.config == cads::Configuration{{0, 0, 0, 0, 0}});
    CHECK_FALSE(low.violated);

    const cads::StrategyOutcome starved = cads::sca_select(app, 20000.0, 300.0, 10.0);
    CHECK(starved.plan.config == cads::Configuration{{0, 0, 0, 0, 0}});
    CHECK(starved.violated);
}

TEST_CASE("default simple carbon-aware candidates cover three operating points") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);
    const cads::CaCandidates candidates = cads::default_ca_candidates(app);
    CHECK(candidates[0] == cads::Configuration{{1, 0, 1, 0, 0}});
    CHECK(candidates[1] == cads::Configuration{{0, 1, 0, 1, 0}});
    CHECK(candidates[2] == cads::Configuration{{2, 0, 1, 0, 0}});
}

TEST_CASE("simple carbon-aware baseline picks the best feasible candidate") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);
    const cads::CaCandidates candidates = cads::default_ca_candidates(app);

    // all three feasible: the 0.875-objective candidate wins
    const cads::StrategyOutcome rich = cads::ca_select(app, 20000.0, 300.0, 300.0, candidates);
    CHECK(rich.plan.config == cads::Configuration{{0, 1, 0, 1, 0}});
    CHECK_THAT(rich.plan.objective, WithinAbs(0.875, 1e-9));
    CHECK_FALSE(rich.violated);

    // none feasible: fall back to the least-emitting candidate, flagged
    const cads::StrategyOutcome starved = cads::ca_select(app, 20000.0, 300.0, 30.0, candidates);
    CHECK(starved.plan.config == cads::Configuration{{0, 1, 0, 1, 0}});
    CHECK(starved.violated);
}

TEST_CASE("simple carbon-aware candidates are validated against the chain") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);
    cads::CaCandidates bad = cads::default_ca_candidates(app);
    bad[1].chosen.pop_back();
    CHECK_THROWS_AS(cads::ca_select(app, 20000.0, 300.0, 300.0, bad), cads::ValidationError);
    bad = cads::default_ca_candidates(app);
    bad[2].chosen[0] = 9;
    CHECK_THROWS_AS(cads::ca_select(app, 20000.0, 300.0, 300.0, bad), cads::ValidationError);
}

TEST_CASE("minimum-emission plan is the degraded-mode anchor") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);
    const cads::DeploymentPlan plan = cads::min_emission_plan(app, 20000.0, 300.0, 10.0);
    CHECK(plan.config == cads::Configuration{{0, 0, 0, 0, 0}});
    CHECK_THAT(plan.emissions_g, WithinAbs(19.77, 1e-9));
    CHECK_FALSE(plan.feasible);
}

TEST_CASE("strategy roster construction validates its ids") {
    const cads::ApplicationModel app = testutil::make_flight_booking(true);
    const std::vector<cads::Strategy> all =
        cads::make_strategies({"os", "bnb", "hp", "sca", "ca"}, app);
    REQUIRE(all.size() == 5);
    CHECK(all[0].id == "os");
    const cads::StrategyOutcome via_roster = all[0].select(app, 20000.0, 300.0, 60.0);
    CHECK(via_roster.plan.config == cads::Configuration{{1, 1, 1, 1, 0}});

    CHECK_THROWS_AS(cads::make_strategies({}, app), cads::ValidationError);
    CHECK_THROWS_AS(cads::make_strategies({"os", "os"}, app), cads::ValidationError);
    CHECK_THROWS_AS(cads::make_strategies({"best"}, app), cads::ValidationError);
}

TEST_CASE("strategy ids are stable") {
    CHECK(cads::strategy_names() == std::vector<std::string>{"os", "bnb", "hp", "sca", "ca"});
}
