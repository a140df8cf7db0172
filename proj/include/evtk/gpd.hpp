#pragma once

// Maximum-likelihood GPD fitting over threshold excesses: the negative-shape
// profile fit behind the POT endpoint estimator, a free-shape stationary fit,
// the log-linear scale trend model and the deviance test between them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "evtk/endpoint.hpp"
#include "evtk/errors.hpp"
#include "evtk/optimize.hpp"
#include "evtk/sample.hpp"
#include "evtk/stats_math.hpp"

namespace evtk {

struct GpdFit {
    double gamma;
    double sigma;
    double loglik;
    std::size_t k_exc;
    bool boundary = false;  // profile maximiser sat at the feasible-tau edge
};

struct TrendGpdFit {
    double beta0;
    double beta1;  // per unit of the time index
    double gamma;
    double loglik;
    std::size_t n_obs;
};

namespace detail {

inline void check_excesses(std::span<const double> y) {
    if (y.size() < 5) throw degenerate_error("gpd fit: need at least 5 excesses");
    double ymax = -1.0;
    for (double v : y) {
        if (!std::isfinite(v) || v < 0.0)
            throw input_error("gpd fit: excesses must be finite and >= 0");
        ymax = std::max(ymax, v);
    }
    if (!(ymax > 0.0)) throw degenerate_error("gpd fit: all excesses zero");
    const double ymin = *std::min_element(y.begin(), y.end());
    if (ymin == ymax) throw degenerate_error("gpd fit: all excesses equal");
}

// Profiled GPD log-likelihood in tau = gamma/sigma:
//   gamma(tau) = mean log(1 + tau y_i),  sigma(tau) = gamma(tau)/tau,
//   ll(tau)    = -k [log(gamma/tau) + gamma + 1].
inline double gpd_profile_loglik(std::span<const double> y, double tau) {
    double g = 0.0;
    for (double v : y) g += std::log1p(tau * v);
    g /= static_cast<double>(y.size());
    if (!(g / tau > 0.0)) return -std::numeric_limits<double>::infinity();
    return -static_cast<double>(y.size()) * (std::log(g / tau) + g + 1.0);
}

// Grid + golden-section maximisation of the profile over tau in
// [sign*|lo|, sign*|hi|], |tau| log-spaced. Returns the refined tau and
// whether the grid argmax landed on either edge.
inline std::pair<double, bool> profile_argmax(std::span<const double> y, double abs_lo,
                                              double abs_hi, int sign, int grid_points) {
    const double llo = std::log(abs_lo), lhi = std::log(abs_hi);
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    std::vector<double> taus(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        const double t = llo + (lhi - llo) * i / (grid_points - 1);
        taus[static_cast<std::size_t>(i)] = sign * std::exp(t);
        const double ll = gpd_profile_loglik(y, taus[static_cast<std::size_t>(i)]);
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }
    const bool at_edge = best == 0 || best == grid_points - 1;
    const int i0 = std::max(0, best - 1), i1 = std::min(grid_points - 1, best + 1);
    double a = taus[static_cast<std::size_t>(i0)], b = taus[static_cast<std::size_t>(i1)];
    if (a > b) std::swap(a, b);
    const double tau = golden_section_max(
        [&](double t) { return gpd_profile_loglik(y, t); }, a, b);
    return {tau, at_edge};
}

inline GpdFit fit_from_tau(std::span<const double> y, double tau, bool boundary) {
    double g = 0.0;
    for (double v : y) g += std::log1p(tau * v);
    g /= static_cast<double>(y.size());
    return GpdFit{g, g / tau, gpd_profile_loglik(y, tau), y.size(), boundary};
}

}  // namespace detail

// ML fit constrained to gamma < 0, profiled over tau = gamma/sigma in
// (-(1-1e-8)/y_max, -1e-8]: 512-point log-spaced grid plus golden-section
// refinement. tau < 0 guarantees gamma < 0.
inline GpdFit fit_gpd_negative_shape(std::span<const double> excesses) {
    detail::check_excesses(excesses);
    const double ymax = *std::max_element(excesses.begin(), excesses.end());
    const double abs_hi = (1.0 - 1e-8) / ymax;
    constexpr double abs_lo = 1e-8;
    if (abs_hi <= abs_lo) throw degenerate_error("gpd fit: excess scale too large");
    auto [tau, at_edge] = detail::profile_argmax(excesses, abs_lo, abs_hi, -1, 512);
    return detail::fit_from_tau(excesses, tau, at_edge);
}

// Stationary ML fit with free shape (null model of the trend test). Profiles
// both signs of tau and the tau -> 0 exponential limit.
inline GpdFit fit_gpd_stationary(std::span<const double> excesses) {
    detail::check_excesses(excesses);
    const std::size_t k = excesses.size();
    const double ymax = *std::max_element(excesses.begin(), excesses.end());
    double ybar = 0.0;
    for (double v : excesses) ybar += v;
    ybar /= static_cast<double>(k);

    auto [tneg, edge_neg] = detail::profile_argmax(excesses, 1e-8, (1.0 - 1e-8) / ymax, -1, 512);
    auto [tpos, edge_pos] = detail::profile_argmax(excesses, 1e-7 / ybar, 1e4 / ybar, 1, 512);
    const GpdFit neg = detail::fit_from_tau(excesses, tneg, edge_neg);
    const GpdFit pos = detail::fit_from_tau(excesses, tpos, edge_pos);
    // exponential limit gamma = 0
    const double ll0 = -static_cast<double>(k) * (std::log(ybar) + 1.0);

    GpdFit best = neg.loglik >= pos.loglik ? neg : pos;
    if (ll0 > best.loglik) return GpdFit{0.0, ybar, ll0, k, false};
    return best;
}

// POT endpoint from the negative-shape fit on the excesses of the top k
// observations over X_{n-k,n}: X_{n-k,n} - sigma/gamma.
inline EndpointEstimate potml_endpoint(const SortedSample& s, std::size_t k) {
    if (k < 1 || k > s.n() - 1) throw input_error("potml_endpoint: k out of range");
    const double threshold = s.order_from_top(k);
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = s.order_from_top(i) - threshold;
    const GpdFit fit = fit_gpd_negative_shape(y);
    return EndpointEstimate{Method::PotMl, k, k + 1, threshold - fit.sigma / fit.gamma,
                            fit.gamma, fit.sigma};
}

// Full GPD log-likelihood with log-linear scale sigma_t = exp(b0 + b1 t);
// support violations yield -inf.
inline double trend_loglik(std::span<const double> y, std::span<const double> t,
                           double b0, double b1, double gamma) {
    double ll = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double logsig = b0 + b1 * t[i];
        if (logsig > 700.0 || logsig < -700.0) return -std::numeric_limits<double>::infinity();
        const double z = y[i] * std::exp(-logsig);
        if (std::abs(gamma) < 1e-12) {
            ll += -logsig - z;
            continue;
        }
        const double arg = 1.0 + gamma * z;
        if (!(arg > 0.0)) return -std::numeric_limits<double>::infinity();
        ll += -logsig - (1.0 / gamma + 1.0) * std::log(arg);
    }
    return ll;
}

// ML fit of the trend model by simplex search from (log sigma_stat, 0,
// gamma_stat); one jittered restart on non-convergence.
inline TrendGpdFit fit_gpd_trend(std::span<const double> excesses,
                                 std::span<const double> times) {
    if (excesses.size() != times.size())
        throw input_error("fit_gpd_trend: size mismatch between excesses and times");
    if (excesses.size() < 10) throw input_error("fit_gpd_trend: need at least 10 observations");
    const double t0 = times.front();
    bool distinct = false;
    for (double t : times)
        if (t != t0) {
            distinct = true;
            break;
        }
    if (!distinct) throw input_error("fit_gpd_trend: all time indices identical");

    const GpdFit stat = fit_gpd_stationary(excesses);
    auto objective = [&](const std::array<double, 3>& p) {
        return trend_loglik(excesses, times, p[0], p[1], p[2]);
    };
    const std::array<double, 3> x0{std::log(stat.sigma), 0.0, stat.gamma};
    auto res = detail::nelder_mead_max(objective, x0, {0.2, 0.02, 0.1});
    if (!res.converged) {
        auto res2 = detail::nelder_mead_max(objective, res.x, {-0.05, -0.005, -0.05});
        if (res2.fmax > res.fmax) res = res2;
        if (!res.converged && !res2.converged)
            throw optimization_error("fit_gpd_trend: simplex failed to converge after restart");
        res.converged = true;
    }
    // polish from the first solution; cheap and deterministic
    auto polish = detail::nelder_mead_max(objective, res.x, {0.01, 0.001, 0.01});
    if (polish.fmax > res.fmax) res = polish;
    return TrendGpdFit{res.x[0], res.x[1], res.x[2], res.fmax, excesses.size()};
}

struct DevianceTest {
    double deviance;
    double p_value;
};

// Likelihood-ratio test of the stationary null against the trend model,
// D = 2(l1 - l0), p from chi^2_1.
inline DevianceTest lr_trend_test(const TrendGpdFit& m1, const GpdFit& m0) {
    if (m1.n_obs != m0.k_exc)
        throw input_error("lr_trend_test: fits are not on the same excesses");
    const double d = 2.0 * (m1.loglik - m0.loglik);
    if (d < -1e-6)
        throw optimization_error("lr_trend_test: trend fit below nested null (inconsistent fits)");
    return DevianceTest{d, chi2_1_pvalue(std::max(d, 0.0))};
}

}  // namespace evtk
