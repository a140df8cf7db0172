#pragma once

// Semi-parametric and POT-ML estimators of P(X > x) for a fixed level x.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "evtk/endpoint.hpp"
#include "evtk/errors.hpp"
#include "evtk/gpd.hpp"
#include "evtk/sample.hpp"

namespace evtk {

struct TailProbEstimate {
    double x;
    std::size_t k;
    double p_hat;
    Method method;
};

namespace detail {

// (k/n) {max(0, 1 + gamma (x - u)/scale)}^{-1/gamma}, clamped to [0,1];
// exponential tail in the gamma -> 0 limit.
inline double tail_prob_plugin(double x, double threshold, double gamma, double scale,
                               std::size_t k, std::size_t n) {
    const double frac = static_cast<double>(k) / static_cast<double>(n);
    double p;
    if (std::abs(gamma) < 1e-12) {
        p = frac * std::exp(-(x - threshold) / scale);
    } else {
        const double inner = std::max(0.0, 1.0 + gamma * (x - threshold) / scale);
        p = frac * std::pow(inner, -1.0 / gamma);
    }
    if (std::isnan(p)) p = 0.0;
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace detail

inline TailProbEstimate exceed_prob_mominv(const SortedSample& s, std::size_t k, double x) {
    const MomInvFit f = mominv(s, k);
    const double p = detail::tail_prob_plugin(x, s.order_from_top(k), f.gamma_hat,
                                              f.a_hat, k, s.n());
    return TailProbEstimate{x, k, p, Method::MomInv};
}

inline TailProbEstimate exceed_prob_potml(const SortedSample& s, std::size_t k, double x) {
    if (k < 1 || k > s.n() - 1) throw input_error("exceed_prob_potml: k out of range");
    const double threshold = s.order_from_top(k);
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = s.order_from_top(i) - threshold;
    const GpdFit fit = fit_gpd_negative_shape(y);
    const double p = detail::tail_prob_plugin(x, threshold, fit.gamma, fit.sigma, k, s.n());
    return TailProbEstimate{x, k, p, Method::PotMl};
}

}  // namespace evtk
