#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "evtk/endpoint.hpp"
#include "evtk/models.hpp"
#include "evtk/rng.hpp"
#include "evtk/sample.hpp"

using Catch::Approx;
using namespace evtk;

namespace {

std::vector<double> random_sample(Xoshiro256ss& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = 20.0 * rng.uniform_open() - 10.0;
    return v;
}

// GPD(sigma, gamma) draw by inverse transform, gamma < 0.
SortedSample gpd_sample(std::uint64_t seed, std::size_t n, double sigma, double gamma) {
    Xoshiro256ss rng(seed);
    std::vector<double> v(n);
    for (auto& x : v)
        x = sigma * (std::pow(1.0 - rng.uniform_open(), -gamma) - 1.0) / gamma;
    return SortedSample::from_values(std::move(v));
}

}  // namespace

TEST_CASE("fan: hand value and trivial cases", "[endpoint]") {
    const auto s = SortedSample::from_values({4.0, 7.0, 9.0, 10.0});
    const auto e = fan(s, 2);
    REQUIRE(e.estimate == Approx(11.245112497836531).margin(1e-12));
    REQUIRE(e.k_star == 4);
    REQUIRE(e.method == Method::Fan);

    // k = 1: the single weighted spacing is zero
    REQUIRE(fan(s, 1).estimate == s.max());

    REQUIRE_THROWS_AS(fan(s, 3), input_error);
    REQUIRE_THROWS_AS(fan(s, 0), input_error);
}

TEST_CASE("fan weights sum to one", "[endpoint]") {
    for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{7},
                          std::size_t{100}, std::size_t{1000}, std::size_t{10000}}) {
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            sum += std::log1p(1.0 / static_cast<double>(k + i)) / kLog2;
        REQUIRE(sum == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("fan: dominates the maximum and matches the integral form", "[endpoint]") {
    Xoshiro256ss rng(2024);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 4 + static_cast<std::size_t>(60 * rng.uniform_open());
        const auto s = SortedSample::from_values(random_sample(rng, n));
        const std::size_t k =
            1 + static_cast<std::size_t>((n / 2 - 1) * rng.uniform_open());
        const double f = fan(s, k).estimate;
        REQUIRE(f >= s.max());
        const double g = fan_integral_form(s, k);
        REQUIRE(f == Approx(g).epsilon(1e-9));
    }
    // constant top-2k block collapses the integral form to the constant
    const auto c = SortedSample::from_values({1.0, 3.0, 3.0, 3.0, 3.0});
    REQUIRE(fan_integral_form(c, 2) == Approx(3.0).margin(1e-12));
}

TEST_CASE("fan: location and scale equivariance", "[endpoint]") {
    Xoshiro256ss rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const auto raw = random_sample(rng, 30);
        const double c = 4.0 * rng.uniform_open() - 2.0;
        const double a = 0.5 + 3.0 * rng.uniform_open();
        std::vector<double> shifted = raw, scaled = raw;
        for (auto& v : shifted) v += c;
        for (auto& v : scaled) v *= a;
        const auto s0 = SortedSample::from_values(raw);
        const std::size_t k = 1 + static_cast<std::size_t>(14 * rng.uniform_open());
        const double f0 = fan(s0, k).estimate;
        REQUIRE(fan(SortedSample::from_values(shifted), k).estimate ==
                Approx(f0 + c).margin(1e-10));
        REQUIRE(fan(SortedSample::from_values(scaled), k).estimate ==
                Approx(a * f0).epsilon(1e-12));
    }
}

TEST_CASE("mominv: hand value, invariance, flags", "[endpoint]") {
    const auto s = SortedSample::from_values({3.0, 4.0, 5.0});
    const auto f = mominv(s, 2);
    REQUIRE(f.gamma_hat == Approx(-4.0).margin(1e-12));
    REQUIRE(f.a_hat == Approx(7.5).margin(1e-12));
    REQUIRE(f.endpoint.has_value());
    REQUIRE(*f.endpoint == Approx(4.875).margin(1e-12));

    // gamma_hat invariant under x -> a x + b
    Xoshiro256ss rng(11);
    for (int rep = 0; rep < 40; ++rep) {
        auto raw = random_sample(rng, 25);
        const auto s0 = SortedSample::from_values(raw);
        const double g0 = mominv(s0, 10).gamma_hat;
        const double a = 0.25 + 4.0 * rng.uniform_open();
        const double b = 10.0 * rng.uniform_open() - 5.0;
        for (auto& v : raw) v = a * v + b;
        REQUIRE(mominv(SortedSample::from_values(raw), 10).gamma_hat ==
                Approx(g0).margin(1e-9));
    }

    // degenerate moments
    const auto c = SortedSample::from_values({2.0, 2.0, 2.0, 2.0});
    REQUIRE_THROWS_AS(mominv(c, 2), degenerate_error);
    // gamma_hat > 0: endpoint flagged unavailable, not an error
    const auto h = SortedSample::from_values({0.0, 0.0, 1.0, 7.0});
    const auto fh = mominv(h, 3);
    REQUIRE(fh.gamma_hat > 0.0);
    REQUIRE_FALSE(fh.endpoint.has_value());
    REQUIRE_THROWS_AS(mominv_estimate(h, 3), unavailable_error);
    REQUIRE_THROWS_AS(mominv(s, 1), input_error);
}

TEST_CASE("rb_corrected: exact gamma_hat = 0 case and availability", "[endpoint]") {
    // excesses {1, 0} at k=2 give N1^2/N2 = 1/2, hence gamma_hat = 0 exactly
    const auto s = SortedSample::from_values({4.0, 5.0, 5.0, 6.0});
    const auto f = mominv(s, 2);
    REQUIRE(f.gamma_hat == 0.0);
    const auto rb1 = rb_corrected(s, 2, 1);
    REQUIRE(rb1.estimate ==
            Approx(fan(s, 2).estimate - kLog2 / 2.0 * 0.5).margin(1e-12));
    REQUIRE(rb1.k_star == 4);
    // order 2 needs gamma_hat < 0
    REQUIRE_THROWS_AS(rb_corrected(s, 2, 2), unavailable_error);

    const auto pos = SortedSample::from_values({0.0, 0.0, 0.0, 1.0, 3.0, 21.0});
    REQUIRE(mominv(pos, 3).gamma_hat > 0.0);
    REQUIRE_THROWS_AS(rb_corrected(pos, 3, 1), unavailable_error);
    REQUIRE_THROWS_AS(rb_corrected(pos, 3, 2), unavailable_error);
    REQUIRE_THROWS_AS(rb_corrected(s, 2, 3), input_error);
}

TEST_CASE("rb2 removes most of fan's bias on GPD samples", "[endpoint][mc]") {
    // GPD(1, -0.3), endpoint 10/3; 100 seeded replicates at n=2000, k=150.
    const double x_f = 1.0 / 0.3;
    double sum_rb2 = 0.0, sum_fan = 0.0;
    int used = 0;
    for (std::uint64_t j = 0; j < 100; ++j) {
        const auto s = gpd_sample(substream_seed(424242, j), 2000, 1.0, -0.3);
        try {
            sum_rb2 += rb_corrected(s, 150, 2).estimate;
            sum_fan += fan(s, 150).estimate;
            ++used;
        } catch (const unavailable_error&) {
        }
    }
    REQUIRE(used >= 95);
    const double bias_rb2 = std::abs(sum_rb2 / used - x_f);
    const double bias_fan = std::abs(sum_fan / used - x_f);
    REQUIRE(bias_rb2 < bias_fan);
}

TEST_CASE("weibull_upper_bound: alpha -> 1 recovers RB1", "[endpoint]") {
    const auto s = SortedSample::from_values({4.0, 7.0, 9.0, 10.0});
    const double rb1 = rb_corrected(s, 2, 1).estimate;
    REQUIRE(weibull_upper_bound(s, 2, 1.0 - 1e-12) == Approx(rb1).margin(1e-9));
    const auto flat = SortedSample::from_values({4.0, 5.0, 5.0, 6.0});
    REQUIRE_THROWS_AS(weibull_upper_bound(flat, 2, 0.05), unavailable_error);
    REQUIRE_THROWS_AS(weibull_upper_bound(s, 2, 0.0), input_error);
}

TEST_CASE("weibull_upper_bound: desk-scale coverage on model 4", "[endpoint][mc]") {
    // True coverage of the nominal-95% bound at gamma=-0.3, n=1000, k=200 is
    // near 0.74 (plug-in noise makes the asymptotic bound anti-conservative).
    // The band below is wide enough for RNG variation and tight enough to
    // catch sign or formula errors.
    const auto model = ModelSpec::m4(-0.3);
    int covered = 0, valid = 0;
    for (std::uint64_t j = 0; j < 200; ++j) {
        const auto s = model_sample(model, 1000, substream_seed(555, j));
        try {
            const double ub = weibull_upper_bound(s, 200, 0.05);
            ++valid;
            if (ub >= 1.0) ++covered;
        } catch (const unavailable_error&) {
        }
    }
    REQUIRE(valid >= 190);
    const double cov = static_cast<double>(covered) / valid;
    REQUIRE(cov >= 0.60);
    REQUIRE(cov <= 0.88);
}

TEST_CASE("max_estimate", "[endpoint]") {
    const auto s = SortedSample::from_values({1.0, 2.0, 3.0});
    const auto e = max_estimate(s);
    REQUIRE(e.estimate == 3.0);
    REQUIRE(e.k_star == 1);
    const auto one = SortedSample::from_values({42.0});
    REQUIRE(max_estimate(one).estimate == 42.0);
}
