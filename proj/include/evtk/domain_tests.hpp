#pragma once

// Max-domain-of-attraction tests: the endpoint-based G* statistic, Ratio,
// Greenwood, the log-moment finiteness statistic T1*, and the k-selection
// rule built on their rejection points.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "evtk/endpoint.hpp"
#include "evtk/errors.hpp"
#include "evtk/sample.hpp"
#include "evtk/stats_math.hpp"

namespace evtk {

enum class TestKind { GStar, Ratio, Greenwood, T1 };

inline const char* test_tag(TestKind t) {
    switch (t) {
        case TestKind::GStar: return "GSTAR";
        case TestKind::Ratio: return "RATIO";
        case TestKind::Greenwood: return "GREENWOOD";
        case TestKind::T1: return "T1";
    }
    return "?";
}

struct DomainTestResult {
    TestKind test;
    std::size_t k;
    double raw;
    double normalized;
    double p_heavy;  // against the heavy-tailed alternative
    double p_short;  // against the short-tailed alternative
    bool reject_two_sided;
    double alpha;
};

namespace detail {

inline DomainTestResult make_result(TestKind t, std::size_t k, double raw,
                                    double norm, double p_short, double alpha) {
    const double p_heavy = 1.0 - p_short;
    const bool reject = 2.0 * std::min(p_short, p_heavy) <= alpha;
    return DomainTestResult{t, k, raw, norm, p_heavy, p_short, reject, alpha};
}

}  // namespace detail

// G = (x^F_hat - X_{n-k,n}) / (X_{n-k,n} - X_{n-2k,n}),
// G* = log2 G - (log k + log2/2); Gumbel null.
inline DomainTestResult g_star(const SortedSample& s, std::size_t k, double alpha = 0.05) {
    if (k < 1 || 2 * k >= s.n()) throw input_error("g_star: need 1 <= k and 2k < n");
    const double den = s.order_from_top(k) - s.order_from_top(2 * k);
    if (den == 0.0) throw degenerate_error("g_star: X_{n-k,n} == X_{n-2k,n}");
    const double g = (detail::fan_value(s, k) - s.order_from_top(k)) / den;
    const double norm = kLog2 * g - (std::log(static_cast<double>(k)) + kLog2 * 0.5);
    return detail::make_result(TestKind::GStar, k, g, norm, gumbel_cdf(norm), alpha);
}

// R = (X_{n,n} - X_{n-k,n})/N1, R* = R - log k; Gumbel null.
inline DomainTestResult ratio_star(const SortedSample& s, std::size_t k, double alpha = 0.05) {
    const ExcessMoments m = excess_moments(s, k);
    if (!(m.n1 > 0.0)) throw degenerate_error("ratio_star: N1 == 0");
    const double r = (s.max() - s.order_from_top(k)) / m.n1;
    const double norm = r - std::log(static_cast<double>(k));
    return detail::make_result(TestKind::Ratio, k, r, norm, gumbel_cdf(norm), alpha);
}

// Gr = N2/N1^2, Gr* = sqrt(k/4)(Gr - 2); standard normal null.
inline DomainTestResult greenwood_star(const SortedSample& s, std::size_t k,
                                       double alpha = 0.05) {
    const ExcessMoments m = excess_moments(s, k);
    if (!(m.n1 > 0.0)) throw degenerate_error("greenwood_star: N1 == 0");
    const double gr = m.n2 / (m.n1 * m.n1);
    const double norm = std::sqrt(static_cast<double>(k) / 4.0) * (gr - 2.0);
    return detail::make_result(TestKind::Greenwood, k, gr, norm, normal_cdf(norm), alpha);
}

// Log-moment finiteness statistic:
//   T  = X_{n-k,n} (M1/2) (1 - M1^2/M2)^{-1}   with M_r the log-scale moments,
//   T1 = (1/k) sum_{i=1..k} (X_{n-i,n} - X_{n-k,n} - T) / (X_{n,n} - X_{n-k,n}),
//   T1* = sqrt(k) log(k) T1; standard normal null. Not location invariant.
inline DomainTestResult t1_star(const SortedSample& s, std::size_t k, double alpha = 0.05) {
    if (k < 1 || k > s.n() - 1) throw input_error("t1_star: k out of range");
    const ExcessMoments m = excess_moments(s, k, /*log_scale=*/true);
    const double den = s.max() - s.order_from_top(k);
    if (den == 0.0) throw degenerate_error("t1_star: X_{n,n} == X_{n-k,n}");
    const double ratio = m.n1 * m.n1 / m.n2;
    if (!(ratio < 1.0)) throw degenerate_error("t1_star: degenerate log-moments");
    const double t = s.order_from_top(k) * (m.n1 * 0.5) / (1.0 - ratio);
    const double base = s.order_from_top(k);
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) acc += s.order_from_top(i) - base - t;
    const double t1 = acc / static_cast<double>(k) / den;
    const double kd = static_cast<double>(k);
    const double norm = std::sqrt(kd) * std::log(kd) * t1;
    return detail::make_result(TestKind::T1, k, t1, norm, normal_cdf(norm), alpha);
}

struct KSelection {
    std::map<TestKind, std::optional<std::size_t>> first_rejection;
    std::optional<std::size_t> k_opt;  // max over tests; empty if any test never rejects
};

// Per test, the smallest k >= k_min with a two-sided rejection at level alpha;
// k_opt is the max over the supplied tests.
inline KSelection select_k_opt(const std::vector<DomainTestResult>& results,
                               double alpha, std::size_t k_min) {
    if (results.empty()) throw input_error("select_k_opt: empty series");
    KSelection sel;
    for (const auto& r : results) {
        auto& slot = sel.first_rejection[r.test];
        if (r.k < k_min) continue;
        const bool reject = 2.0 * std::min(r.p_heavy, r.p_short) <= alpha;
        if (reject && (!slot || r.k < *slot)) slot = r.k;
    }
    std::size_t kmax = 0;
    bool all = true;
    for (const auto& [test, k0] : sel.first_rejection) {
        if (!k0) {
            all = false;
            break;
        }
        kmax = std::max(kmax, *k0);
    }
    if (all) sel.k_opt = kmax;
    return sel;
}

}  // namespace evtk
