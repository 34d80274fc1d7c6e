#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sonarsim/errors.hpp"
#include "sonarsim/metrics.hpp"

using namespace sonarsim;

namespace {

ObjectivePoint pt(int id, double acc, double lat) { return {id, acc, lat}; }

}  // namespace

TEST_CASE("hypervolume of a single point is one rectangle") {
    const ObjectivePoint ref{-1, 0.0, 20.0};
    CHECK(hypervolume_2d({pt(0, 0.5, 10.0)}, ref) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("dominated and duplicate points add no hypervolume") {
    const ObjectivePoint ref{-1, 0.0, 20.0};
    std::vector<ObjectivePoint> points = {pt(0, 0.5, 10.0), pt(1, 0.8, 4.0)};
    const double base = hypervolume_2d(points, ref);
    points.push_back(pt(2, 0.4, 12.0));  // dominated
    points.push_back(pt(3, 0.8, 4.0));   // duplicate
    points.push_back(pt(4, 0.3, 30.0));  // outside the reference box
    CHECK(hypervolume_2d(points, ref) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("hypervolume grows when a non-dominated point arrives") {
    const ObjectivePoint ref{-1, 0.0, 20.0};
    std::vector<ObjectivePoint> points = {pt(0, 0.5, 10.0)};
    const double base = hypervolume_2d(points, ref);
    points.push_back(pt(1, 0.7, 15.0));
    CHECK(hypervolume_2d(points, ref) > base);
}

TEST_CASE("hypervolume rejects a non-finite reference") {
    CHECK_THROWS_AS(hypervolume_2d({pt(0, 0.5, 1.0)},
                                   ObjectivePoint{-1, 0.0, std::numeric_limits<double>::infinity()}),
                    UsageError);
}

TEST_CASE("hypervolume sweep agrees with Monte Carlo on random fronts") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto points = oracles::random_points(s, 30);
        double max_lat = 0.0;
        for (const auto& p : points) max_lat = std::max(max_lat, p.latency);
        const ObjectivePoint ref{-1, 0.0, 1.1 * max_lat};
        const double exact = hypervolume_2d(points, ref);
        const double mc = oracles::hypervolume_mc(points, ref, 200000, s + 17);
        CHECK(std::abs(exact - mc) / exact < 0.01);
    }
}

TEST_CASE("kendall tau endpoints") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> rev = {5, 4, 3, 2, 1};
    CHECK(kendall_tau(a, a) == doctest::Approx(1.0));
    CHECK(kendall_tau(a, rev) == doctest::Approx(-1.0));
}

TEST_CASE("kendall tau of one adjacent swap is 0.8") {
    // 9 concordant vs 1 discordant pair out of 10.
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {2, 1, 3, 4, 5};
    CHECK(kendall_tau(a, b) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(oracles::kendall_tau(a, b) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("kendall tau matches brute-force pair counting with ties") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const std::size_t n = 2 + s % 120;
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse grids produce plenty of ties.
            a[i] = static_cast<double>(counter_hash(s, RngStream::test_points, {i, 1}) % 23);
            b[i] = static_cast<double>(counter_hash(s, RngStream::test_points, {i, 2}) % 17);
        }
        const double got = kendall_tau(a, b);
        const double expected = oracles::kendall_tau(a, b);
        if (std::isnan(expected)) {
            CHECK(std::isnan(got));
        } else {
            CHECK(got == expected);
        }
    }
}

TEST_CASE("kendall tau is antisymmetric under reversal and monotone-invariant") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const std::size_t n = 30;
        std::vector<double> a(n), b(n), neg_b(n), squashed_a(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = u01(counter_hash(s, RngStream::test_points, {i, 3}));
            b[i] = u01(counter_hash(s, RngStream::test_points, {i, 4}));
            neg_b[i] = -b[i];
            squashed_a[i] = std::tanh(3.0 * a[i]);  // strictly monotone transform
        }
        CHECK(kendall_tau(a, neg_b) == doctest::Approx(-kendall_tau(a, b)).epsilon(1e-12));
        CHECK(kendall_tau(squashed_a, b) == doctest::Approx(kendall_tau(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("kendall tau input validation") {
    CHECK_THROWS_AS(kendall_tau({1.0}, {1.0}), UsageError);
    CHECK_THROWS_AS(kendall_tau({1.0, 2.0}, {1.0}), UsageError);
}

TEST_CASE("rank_table reports tau against true latency") {
    const std::vector<double> truth = {1, 2, 3, 4};
    const auto table = rank_table({{"itself", truth}, {"reversed", {4, 3, 2, 1}}}, truth);
    REQUIRE(table.size() == 2);
    CHECK(table[0].tau == doctest::Approx(1.0));
    CHECK(table[1].tau == doctest::Approx(-1.0));
}

namespace {

// Minimal synthetic trace/oracle pair for gap-curve checks.
OracleTable tiny_oracle() {
    OracleTable o;
    o.points = {pt(0, 0.90, 10), pt(1, 0.85, 5), pt(2, 0.70, 3), pt(3, 0.60, 8)};
    o.front = {0, 1, 2};
    o.ledger = {100, 6400, 100};
    return o;
}

SearchTrace trace_with_rounds(std::vector<std::vector<ObjectivePoint>> per_round) {
    SearchTrace t;
    std::int64_t units = 0;
    for (auto& estimates : per_round) {
        RoundRecord rec;
        rec.plan.round_index = static_cast<int>(t.rounds.size());
        rec.plan.total_rounds = static_cast<int>(per_round.size());
        rec.plan.resource_units = 1;
        for (const auto& p : estimates) rec.plan.survivors_in.push_back(p.arch_id);
        rec.estimates = std::move(estimates);
        units += 10;
        rec.ledger_after = {units, units * 64, units};
        t.rounds.push_back(std::move(rec));
    }
    t.ledger = t.rounds.back().ledger_after;
    return t;
}

}  // namespace

TEST_CASE("a trace whose observations reach the whole true front has zero gap") {
    const auto oracle = tiny_oracle();
    // Final round observes every front member at its true accuracy.
    const auto trace = trace_with_rounds(
        {{pt(0, 0.30, 12), pt(1, 0.40, 6), pt(2, 0.35, 3.5), pt(3, 0.20, 9)},
         {pt(0, 0.90, 10), pt(1, 0.85, 5), pt(2, 0.70, 3)}});
    const auto curve = gap_curve(trace, oracle);
    REQUIRE(curve.size() == 2);
    CHECK(curve.back().mean_gap == doctest::Approx(0.0));
    CHECK(curve[0].ledger_units == 10);
    CHECK(curve[1].ledger_units == 20);
}

TEST_CASE("the gap curve never increases") {
    const auto oracle = tiny_oracle();
    const auto trace = trace_with_rounds(
        {{pt(0, 0.20, 12), pt(1, 0.25, 6), pt(2, 0.22, 3.5), pt(3, 0.10, 9)},
         {pt(0, 0.50, 11), pt(1, 0.60, 5.5)},
         {pt(0, 0.88, 10.2)}});
    const auto curve = gap_curve(trace, oracle);
    REQUIRE(curve.size() == 3);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].mean_gap <= curve[i - 1].mean_gap + 1e-15);
    CHECK(curve[0].mean_gap > 0.0);
}

TEST_CASE("gap_curve validates its inputs") {
    const auto oracle = tiny_oracle();
    CHECK_THROWS_AS(gap_curve(SearchTrace{}, oracle), UsageError);
    const auto bad = trace_with_rounds({{pt(99, 0.5, 5)}});
    CHECK_THROWS_AS(gap_curve(bad, oracle), UsageError);
}
