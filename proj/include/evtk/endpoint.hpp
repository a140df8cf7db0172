#pragma once

// Right-endpoint estimators that need no likelihood optimisation: the general
// EVI-free estimator, its integral form, the sample maximum, the inverse-moment
// chain, reduced-bias corrections and the Weibull-limit confidence upper bound.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "evtk/errors.hpp"
#include "evtk/sample.hpp"
#include "evtk/stats_math.hpp"

namespace evtk {

enum class Method { Max, Fan, MomInv, Rb1, Rb2, PotMl };

inline const char* method_tag(Method m) {
    switch (m) {
        case Method::Max: return "MAX";
        case Method::Fan: return "FAN";
        case Method::MomInv: return "MOMINV";
        case Method::Rb1: return "RB1";
        case Method::Rb2: return "RB2";
        case Method::PotMl: return "POTML";
    }
    return "?";
}

struct EndpointEstimate {
    Method method;
    std::size_t k;       // intermediate parameter (0 when not applicable)
    std::size_t k_star;  // effective top-sample size: 1 MAX, k+1 MOMINV/POTML, 2k FAN family
    double estimate;
    std::optional<double> gamma_hat;
    std::optional<double> scale_hat;
};

struct MomInvFit {
    double gamma_hat;
    double a_hat;
    std::optional<double> endpoint;  // absent when gamma_hat >= 0
};

namespace detail {

inline void check_fan_k(const SortedSample& s, std::size_t k) {
    if (k < 1 || 2 * k > s.n()) throw input_error("fan: need 1 <= k and 2k <= n");
}

inline double fan_value(const SortedSample& s, std::size_t k) {
    check_fan_k(s, k);
    // sum of a_{i,k} (X_{n-k,n} - X_{n-k-i,n}), a_{i,k} = log((k+i+1)/(k+i))/log 2
    const double base = s.order_from_top(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double w = std::log1p(1.0 / static_cast<double>(k + i)) / kLog2;
        acc += w * (base - s.order_from_top(k + i));
    }
    return s.max() + acc;
}

}  // namespace detail

inline EndpointEstimate fan(const SortedSample& s, std::size_t k) {
    return EndpointEstimate{Method::Fan, k, 2 * k, detail::fan_value(s, k),
                            std::nullopt, std::nullopt};
}

// Exact discretisation of the integral form
//   x^F = X_{n,n} + X_{n-k,n} - (1/log2) int_{1/2}^1 X_{n-[2ks],n} ds/s,
// algebraically identical to fan(); kept as the second route for cross-checks.
inline double fan_integral_form(const SortedSample& s, std::size_t k) {
    detail::check_fan_k(s, k);
    double acc = 0.0;
    for (std::size_t j = k; j < 2 * k; ++j)
        acc += s.order_from_top(j) * std::log1p(1.0 / static_cast<double>(j));
    return s.max() + s.order_from_top(k) - acc / kLog2;
}

inline EndpointEstimate max_estimate(const SortedSample& s) {
    return EndpointEstimate{Method::Max, 0, 1, s.max(), std::nullopt, std::nullopt};
}

// Inverse-moment EVI and scale estimators and the endpoint they induce.
inline MomInvFit mominv(const SortedSample& s, std::size_t k) {
    if (k < 2 || k > s.n() - 1) throw input_error("mominv: need 2 <= k <= n-1");
    const ExcessMoments m = excess_moments(s, k);
    if (!(m.n2 > 0.0)) throw degenerate_error("mominv: all excesses zero");
    const double ratio = m.n1 * m.n1 / m.n2;
    if (!(ratio < 1.0)) throw degenerate_error("mominv: degenerate moments (N2 == N1^2)");
    const double gamma = 1.0 - 0.5 / (1.0 - ratio);
    const double a = m.n1 * (1.0 - gamma);
    std::optional<double> endpoint;
    if (gamma < 0.0) endpoint = s.order_from_top(k) - a / gamma;
    return MomInvFit{gamma, a, endpoint};
}

inline EndpointEstimate mominv_estimate(const SortedSample& s, std::size_t k) {
    const MomInvFit f = mominv(s, k);
    if (!f.endpoint)
        throw unavailable_error("mominv: gamma_hat >= 0, endpoint undefined");
    return EndpointEstimate{Method::MomInv, k, k + 1, *f.endpoint, f.gamma_hat, f.a_hat};
}

// Reduced-bias corrections of the general estimator; gamma_hat and a_hat are
// the inverse-moment plug-ins at the same k.
//   order 1:  x^F - h(gamma_hat) a_hat
//   order 2:  RB1 - (Gamma(1-gamma_hat)/gamma_hat) a_hat k^{gamma_hat}
inline EndpointEstimate rb_corrected(const SortedSample& s, std::size_t k, int order) {
    if (order != 1 && order != 2) throw input_error("rb_corrected: order must be 1 or 2");
    detail::check_fan_k(s, k);
    const MomInvFit f = mominv(s, k);
    if (f.gamma_hat > 0.0)
        throw unavailable_error("rb_corrected: gamma_hat > 0, correction undefined");
    double est = detail::fan_value(s, k) - h_gamma(f.gamma_hat) * f.a_hat;
    if (order == 2) {
        if (!(f.gamma_hat < 0.0))
            throw unavailable_error("rb_corrected: order 2 needs gamma_hat < 0");
        est -= gamma_fn(1.0 - f.gamma_hat) / f.gamma_hat * f.a_hat *
               std::pow(static_cast<double>(k), f.gamma_hat);
    }
    return EndpointEstimate{order == 1 ? Method::Rb1 : Method::Rb2, k, 2 * k, est,
                            f.gamma_hat, f.a_hat};
}

// Approximate 100(1-alpha)% upper confidence bound for the endpoint,
// x^F < fan - a_hat [h(gamma_hat) + k^{gamma_hat} q_alpha].
inline double weibull_upper_bound(const SortedSample& s, std::size_t k, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw input_error("weibull_upper_bound: alpha must be in (0,1)");
    detail::check_fan_k(s, k);
    const MomInvFit f = mominv(s, k);
    if (!(f.gamma_hat < 0.0))
        throw unavailable_error("weibull_upper_bound: gamma_hat >= 0");
    const double q = weibull_limit_quantile(f.gamma_hat, alpha);
    return detail::fan_value(s, k) -
           f.a_hat * (h_gamma(f.gamma_hat) +
                      std::pow(static_cast<double>(k), f.gamma_hat) * q);
}

}  // namespace evtk
