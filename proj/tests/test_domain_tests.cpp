#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "evtk/domain_tests.hpp"
#include "evtk/rng.hpp"
#include "evtk/sample.hpp"

using Catch::Approx;
using namespace evtk;

namespace {

SortedSample exp_quantile_grid(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = -std::log(1.0 - (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    return SortedSample::from_values(std::move(v));
}

SortedSample uniform_sample(std::uint64_t seed, std::size_t n) {
    Xoshiro256ss rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform_open();
    return SortedSample::from_values(std::move(v));
}

}  // namespace

TEST_CASE("g_star: hand value", "[domain]") {
    const auto s = SortedSample::from_values({7.0, 9.0, 10.0});
    const auto r = g_star(s, 1);
    REQUIRE(r.raw == Approx(0.5).margin(1e-12));
    REQUIRE(r.normalized == Approx(0.0).margin(1e-12));
    REQUIRE(r.p_short + r.p_heavy == Approx(1.0).margin(1e-12));
    REQUIRE_THROWS_AS(g_star(s, 2), input_error);
    const auto tied = SortedSample::from_values({5.0, 5.0, 10.0});
    REQUIRE_THROWS_AS(g_star(tied, 1), degenerate_error);
}

TEST_CASE("ratio_star and greenwood_star: hand values", "[domain]") {
    const auto s = SortedSample::from_values({3.0, 4.0, 5.0});
    const auto r = ratio_star(s, 2);
    REQUIRE(r.raw == Approx(4.0 / 3.0).margin(1e-12));
    REQUIRE(r.normalized == Approx(0.6401861527733880).margin(1e-12));
    const auto g = greenwood_star(s, 2);
    REQUIRE(g.raw == Approx(2.5 / 2.25).margin(1e-12));
    REQUIRE(g.normalized == Approx(-0.6285393610547089).margin(1e-12));
    REQUIRE(g.p_short == Approx(normal_cdf(g.normalized)).margin(1e-15));

    const auto c = SortedSample::from_values({2.0, 2.0, 2.0});
    REQUIRE_THROWS_AS(ratio_star(c, 2), degenerate_error);
    REQUIRE_THROWS_AS(greenwood_star(c, 2), degenerate_error);
}

TEST_CASE("t1_star: contracts", "[domain]") {
    // all top-k excesses equal: finite statistic, no NaN
    const auto s = SortedSample::from_values({1.0, 4.0, 4.0, 4.0, 9.0});
    const auto r = t1_star(s, 3);
    REQUIRE(std::isfinite(r.raw));
    REQUIRE(std::isfinite(r.normalized));

    const auto neg = SortedSample::from_values({-1.0, 2.0, 3.0, 4.0});
    REQUIRE_THROWS_AS(t1_star(neg, 3), input_error);
    const auto flat = SortedSample::from_values({1.0, 5.0, 5.0, 5.0});
    REQUIRE_THROWS_AS(t1_star(flat, 2), degenerate_error);  // X_{n,n} == X_{n-k,n}
    REQUIRE_THROWS_AS(t1_star(s, 1), degenerate_error);     // M1^2 == M2 at k = 1
}

TEST_CASE("null behaviour on the Exp(1) quantile grid", "[domain]") {
    const auto s = exp_quantile_grid(2000);
    const double lo = gumbel_quantile(0.025), hi = gumbel_quantile(0.975);
    const auto g = g_star(s, 200);
    REQUIRE(g.normalized > lo);
    REQUIRE(g.normalized < hi);
    REQUIRE_FALSE(g.reject_two_sided);
    const auto r = ratio_star(s, 200);
    REQUIRE(r.normalized > lo);
    REQUIRE(r.normalized < hi);
    const auto gr = greenwood_star(s, 200);
    REQUIRE(std::abs(gr.normalized) < 1.959964);
    const auto t1 = t1_star(s, 200);
    REQUIRE(std::abs(t1.normalized) < 1.959964);
}

TEST_CASE("invariance: G*, R*, Gr* under affine maps; T1* under scaling", "[domain]") {
    Xoshiro256ss rng(606);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> raw(60);
        for (auto& v : raw) v = 1.0 + 10.0 * rng.uniform_open();
        const double a = 0.5 + 2.0 * rng.uniform_open();
        const double b = 5.0 * rng.uniform_open();
        std::vector<double> affine = raw, scaled = raw;
        for (auto& v : affine) v = a * v + b;
        for (auto& v : scaled) v = a * v;
        const auto s0 = SortedSample::from_values(raw);
        const auto s1 = SortedSample::from_values(affine);
        const auto s2 = SortedSample::from_values(scaled);
        const std::size_t k = 12;
        REQUIRE(g_star(s1, k).normalized ==
                Approx(g_star(s0, k).normalized).margin(1e-8));
        REQUIRE(ratio_star(s1, k).normalized ==
                Approx(ratio_star(s0, k).normalized).margin(1e-9));
        REQUIRE(greenwood_star(s1, k).normalized ==
                Approx(greenwood_star(s0, k).normalized).margin(1e-8));
        // T1* is scale invariant only
        REQUIRE(t1_star(s2, k).normalized ==
                Approx(t1_star(s0, k).normalized).margin(1e-9));
    }
}

TEST_CASE("greenwood power against uniform (short tail)", "[domain][mc]") {
    const double z05 = normal_quantile(0.05);
    int reject = 0;
    for (std::uint64_t j = 0; j < 200; ++j) {
        const auto s = uniform_sample(substream_seed(777, j), 2000);
        if (greenwood_star(s, 400).normalized < z05) ++reject;
    }
    REQUIRE(reject >= 180);  // oracle power is ~1.0
}

TEST_CASE("select_k_opt", "[domain]") {
    auto mk = [](TestKind t, std::size_t k, double p_short) {
        return DomainTestResult{t, k, 0.0, 0.0, 1.0 - p_short, p_short, false, 0.05};
    };
    // single test, first two-sided rejection at k = 100
    std::vector<DomainTestResult> one;
    for (std::size_t k = 20; k <= 150; k += 10)
        one.push_back(mk(TestKind::Greenwood, k, k >= 100 ? 0.01 : 0.5));
    const auto s1 = select_k_opt(one, 0.05, 20);
    REQUIRE(s1.k_opt.has_value());
    REQUIRE(*s1.k_opt == 100);

    // two tests: combined rule is the max of the per-test first rejections
    auto two = one;
    for (std::size_t k = 20; k <= 150; k += 10)
        two.push_back(mk(TestKind::T1, k, k >= 130 ? 0.99 : 0.5));
    const auto s2 = select_k_opt(two, 0.05, 20);
    REQUIRE(s2.first_rejection.at(TestKind::Greenwood).value() == 100);
    REQUIRE(s2.first_rejection.at(TestKind::T1).value() == 130);
    REQUIRE(*s2.k_opt == 130);

    // a test that never rejects leaves k_opt empty
    std::vector<DomainTestResult> never;
    for (std::size_t k = 20; k <= 150; k += 10)
        never.push_back(mk(TestKind::Ratio, k, 0.5));
    REQUIRE_FALSE(select_k_opt(never, 0.05, 20).k_opt.has_value());

    // k_min floor applies
    const auto s3 = select_k_opt(one, 0.05, 110);
    REQUIRE(*s3.k_opt == 110);

    REQUIRE_THROWS_AS(select_k_opt({}, 0.05, 20), input_error);
}
