#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sonarsim/config.hpp"
#include "sonarsim/engine.hpp"
#include "sonarsim/errors.hpp"

using namespace sonarsim;

namespace {

SearchSpaceConfig space_64() {
    SearchSpaceConfig c;
    c.resolutions = {128, 224};
    c.width_multipliers = {0.25, 1.0};
    c.expansion_ratios = {3, 6};
    c.stage_depth_choices = {2, 3};
    c.num_stages = 3;
    c.base_stage_channels = {16, 24, 40};
    return c;
}

SearchSpaceConfig space_2() {
    SearchSpaceConfig c;
    c.resolutions = {128, 224};
    c.width_multipliers = {1.0};
    c.expansion_ratios = {6};
    c.stage_depth_choices = {2};
    c.num_stages = 2;
    c.base_stage_channels = {16, 24};
    return c;
}

}  // namespace

TEST_CASE("round count and the resource formula") {
    CHECK(total_rounds_for(2) == 1);
    CHECK(total_rounds_for(3) == 2);
    CHECK(total_rounds_for(1024) == 10);
    CHECK(total_rounds_for(1025) == 11);
    CHECK(round_resource_units(10240, 1024, 10) == 1);
    CHECK(round_resource_units(48000, 1024, 10) == 4);
}

TEST_CASE("a 1024-arch run executes exactly 10 rounds with r_0 = 1") {
    const auto space = SearchSpaceConfig::table1_default();
    const auto truth = generate_ground_truth(1, space, builtin_profiles(5).at("uniform"));
    const auto trace = run_sonar_pareto(space, truth, 10240, ResourceUnit{}, 1, true);
    REQUIRE(trace.rounds.size() == 10);
    CHECK(trace.rounds[0].plan.resource_units == 1);
    CHECK(trace.ledger.units <= 10240);
}

TEST_CASE("a budget below one unit per architecture is rejected loudly") {
    const auto space = space_64();
    const auto truth = generate_ground_truth(1, space, builtin_profiles(3).at("uniform"));
    CHECK_THROWS_AS(run_sonar_pareto(space, truth, 100, ResourceUnit{}, 1, true), ConfigError);
}

TEST_CASE("two antichain architectures both survive to the end") {
    const auto space = space_2();
    // Find a seed whose two architectures are accuracy/latency incomparable.
    for (std::uint64_t seed = 1; seed < 50; ++seed) {
        const auto truth = generate_ground_truth(seed, space, builtin_profiles(2).at("rpi4-sim"));
        const auto k0 = decompose(decode_arch(0, space), space);
        const auto k1 = decompose(decode_arch(1, space), space);
        const bool antichain =
            truth.per_arch[0].asymptotic_accuracy < truth.per_arch[1].asymptotic_accuracy &&
            truth.true_latency(k0) < truth.true_latency(k1);
        if (!antichain) continue;
        const auto trace = run_sonar_pareto(space, truth, 40, ResourceUnit{}, seed, true);
        REQUIRE(trace.rounds.size() == 1);
        CHECK(trace.final_survivors == std::vector<int>{0, 1});
        return;
    }
    FAIL("no antichain seed found in range");
}

TEST_CASE("survivor sets shrink monotonically and the ledger respects the budget") {
    const auto space = space_64();
    const auto truth = generate_ground_truth(9, space, builtin_profiles(3).at("rpi4-sim"));
    const std::int64_t budget = 3000;
    const auto trace = run_sonar_pareto(space, truth, budget, ResourceUnit{}, 9, false);
    REQUIRE(trace.rounds.size() == 6);

    std::int64_t units = 0;
    for (const auto& rec : trace.rounds) {
        const auto& in = rec.plan.survivors_in;
        // r_k matches the formula against the actual survivor count.
        CHECK(rec.plan.resource_units ==
              round_resource_units(budget, in.size(), rec.plan.total_rounds));
        units += static_cast<std::int64_t>(in.size()) * rec.plan.resource_units;

        std::set<int> in_set(in.begin(), in.end());
        for (int e : rec.eliminated) CHECK(in_set.count(e) == 1);
        // Next round's survivors are exactly S_k minus the eliminated.
        CHECK(rec.estimates.size() == in.size());
    }
    for (std::size_t k = 1; k < trace.rounds.size(); ++k) {
        const auto& prev = trace.rounds[k - 1].plan.survivors_in;
        const auto& cur = trace.rounds[k].plan.survivors_in;
        CHECK(cur.size() <= prev.size());
        CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
    }
    CHECK(units == trace.ledger.units);
    CHECK(trace.ledger.units <= budget);
    CHECK(trace.ledger.epochs == trace.ledger.units * 1);
    CHECK(trace.ledger.trials == trace.ledger.units * 64);
}

TEST_CASE("identical inputs reproduce the identical trace") {
    const auto space = space_64();
    const auto truth = generate_ground_truth(4, space, builtin_profiles(3).at("camera-t20-sim"));
    const auto a = run_sonar_pareto(space, truth, 2000, ResourceUnit{}, 4, false);
    const auto b = run_sonar_pareto(space, truth, 2000, ResourceUnit{}, 4, false);
    REQUIRE(a.rounds.size() == b.rounds.size());
    CHECK(a.final_survivors == b.final_survivors);
    CHECK(a.final_front == b.final_front);
    for (std::size_t k = 0; k < a.rounds.size(); ++k) {
        CHECK(a.rounds[k].plan.survivors_in == b.rounds[k].plan.survivors_in);
        CHECK(a.rounds[k].estimates == b.rounds[k].estimates);
        REQUIRE(a.rounds[k].tuning_trace.size() == b.rounds[k].tuning_trace.size());
        for (std::size_t i = 0; i < a.rounds[k].tuning_trace.size(); ++i) {
            CHECK(a.rounds[k].tuning_trace[i].key == b.rounds[k].tuning_trace[i].key);
            CHECK(a.rounds[k].tuning_trace[i].improvement == b.rounds[k].tuning_trace[i].improvement);
        }
    }
}

TEST_CASE("noiseless brute force recovers the asymptotic accuracies exactly") {
    const auto space = space_64();
    const auto truth = generate_ground_truth(6, space, builtin_profiles(3).at("uniform"));
    const auto table = run_brute_force(space, truth, 750, 16, ResourceUnit{}, true);
    REQUIRE(table.points.size() == 64);
    for (const auto& p : table.points) {
        CHECK(p.accuracy ==
              doctest::Approx(truth.per_arch[p.arch_id].asymptotic_accuracy).epsilon(1e-9));
        CHECK(p.latency ==
              doctest::Approx(truth.true_latency(decompose(decode_arch(p.arch_id, space), space)))
                  .epsilon(1e-12));
    }
    CHECK(table.ledger.epochs == 64 * 750);
    CHECK(table.ledger.units == 64 * 750);  // epochs dominate trials here
}

TEST_CASE("no search survivor truly dominates an oracle-front member") {
    const auto space = space_64();
    const auto truth = generate_ground_truth(12, space, builtin_profiles(3).at("rpi4-sim"));
    const auto oracle = run_brute_force(space, truth, 750, 512, ResourceUnit{}, true);
    const auto trace = run_sonar_pareto(space, truth, 3000, ResourceUnit{}, 12, true);
    for (int survivor : trace.final_survivors) {
        for (int member : oracle.front) {
            CHECK_FALSE(dominates(oracle.points[survivor], oracle.points[member]));
        }
    }
}

TEST_CASE("threshold mode returns the most accurate feasible survivor") {
    const auto space = space_64();
    const auto truth = generate_ground_truth(15, space, builtin_profiles(3).at("rpi4-sim"));
    const auto oracle = run_brute_force(space, truth, 750, 512, ResourceUnit{}, true);
    std::vector<double> lats;
    for (const auto& p : oracle.points) lats.push_back(p.latency);
    std::sort(lats.begin(), lats.end());
    const double nu = lats[lats.size() / 2];

    const auto trace = run_sonar_threshold(space, truth, 3000, ResourceUnit{}, nu, 15, true);
    REQUIRE(trace.threshold_answer.has_value());
    const int answer = *trace.threshold_answer;
    // The answer's estimate respects nu, and estimates upper-bound truth.
    for (const auto& p : trace.final_estimates) {
        if (p.arch_id != answer) continue;
        CHECK(p.latency <= nu);
        CHECK(oracle.points[answer].latency <= p.latency + 1e-9);
    }
}

TEST_CASE("an unreachable threshold reports below-threshold-empty") {
    const auto space = space_2();
    const auto truth = generate_ground_truth(3, space, builtin_profiles(2).at("uniform"));
    const auto trace = run_sonar_threshold(space, truth, 40, ResourceUnit{}, 1e-6, 3, true);
    CHECK(!trace.threshold_answer.has_value());
}

TEST_CASE("proxy front equals the true front on uniform hardware only") {
    const auto space = space_64();
    const auto uniform = generate_ground_truth(2, space, builtin_profiles(3).at("uniform"));
    const auto oracle_uniform = run_brute_force(space, uniform, 750, 16, ResourceUnit{}, true);
    CHECK(proxy_front(space, uniform) == oracle_uniform.front);
    CHECK(proxy_front(space, uniform) == proxy_front(space, uniform));

    // Frozen per shipped seed: the skewed profile hides true-front members
    // from the flops proxy.
    const auto skewed = generate_ground_truth(2, space, builtin_profiles(3).at("camera-t20-sim"));
    const auto oracle_skewed = run_brute_force(space, skewed, 750, 16, ResourceUnit{}, true);
    const auto proxy = proxy_front(space, skewed);
    int missed = 0;
    for (int id : oracle_skewed.front)
        if (std::find(proxy.begin(), proxy.end(), id) == proxy.end()) ++missed;
    CHECK(missed >= 1);
}

TEST_CASE("every architecture has complete final estimates") {
    const auto space = space_64();
    const auto truth = generate_ground_truth(20, space, builtin_profiles(3).at("rpi4-sim"));
    const auto trace = run_sonar_pareto(space, truth, 2000, ResourceUnit{}, 20, false);
    REQUIRE(trace.final_estimates.size() == 64);
    for (const auto& p : trace.final_estimates) {
        CHECK(p.accuracy > 0.0);
        CHECK(p.latency > 0.0);
        CHECK(std::isfinite(p.latency));
    }
}
