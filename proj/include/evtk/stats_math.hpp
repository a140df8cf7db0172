#pragma once

// Special functions and Weibull-domain closed forms shared by the estimators
// and tests. Everything here is pure and reentrant.

#include <cmath>
#include <limits>

#include "evtk/errors.hpp"

namespace evtk {

inline constexpr double kLog2 = 0.6931471805599453094172321214581766;

// log Gamma(a), Lanczos approximation (Numerical-Recipes 14-coefficient set,
// absolute error well below 1e-12 over the range used here).
inline double ln_gamma(double a) {
    if (!(a > 0.0)) throw std::domain_error("ln_gamma: argument must be > 0");
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,
        14.1360979747417471,     -0.491913816097620199,
        0.339946499848118887e-4,  0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3,
        -0.210264441724104883e-3, 0.217439618115212643e-3,
        -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    double x = a;
    double y = a;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

inline double gamma_fn(double a) { return std::exp(ln_gamma(a)); }

inline double normal_pdf(double x) {
    return 0.3989422804014326779399460599343819 * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244008443621048490);
}

// Inverse standard normal via Acklam's rational approximation, then one
// Newton step through the erfc-based cdf.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must be in (0,1)");
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double e = normal_cdf(x) - p;
    x -= e / normal_pdf(x);
    return x;
}

// p-quantile of the standard Gumbel, -log(-log p).
inline double gumbel_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("gumbel_quantile: p must be in (0,1)");
    return -std::log(-std::log(p));
}

inline double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

// P(chi^2_1 > d) = 2(1 - Phi(sqrt(d))).
inline double chi2_1_pvalue(double d) {
    if (!(d >= 0.0)) throw std::domain_error("chi2_1_pvalue: statistic must be >= 0");
    return 2.0 * (1.0 - normal_cdf(std::sqrt(d)));
}

namespace detail {

// (2^{-u} - 1)/u with its removable singularity at u = 0 patched by the
// first-order expansion -log2 + u log^2(2)/2.
inline double pow2m1_over(double u) {
    if (std::abs(u) <= 1e-6) return -kLog2 + u * kLog2 * kLog2 * 0.5;
    return (std::exp2(-u) - 1.0) / u;
}

}  // namespace detail

// h(gamma) = (1/g)((2^{-g}-1)/(g log2) + 1), continued through g = 0 where
// the limit is log2/2.
inline double h_gamma(double gamma) {
    if (gamma > 0.0) throw std::domain_error("h_gamma: gamma must be <= 0");
    if (std::abs(gamma) <= 1e-6) return kLog2 * 0.5 - gamma * kLog2 * kLog2 / 6.0;
    return (detail::pow2m1_over(gamma) / kLog2 + 1.0) / gamma;
}

// Asymptotic variance of the normal component N of the endpoint estimator,
// gamma < 0. Removable singularities at 2*gamma+1 = 0 and gamma+1 = 0.
inline double var_n(double gamma) {
    if (!(gamma < 0.0)) throw std::domain_error("var_n: gamma must be < 0");
    const double t1 = detail::pow2m1_over(2.0 * gamma + 1.0);
    const double t2 = detail::pow2m1_over(gamma + 1.0);
    const double t3 = (kLog2 / std::sqrt(2.0)) * (std::exp2(-gamma) - 1.0);
    return 1.0 + 2.0 / (gamma * kLog2 * kLog2) * (t1 - t2 + t3);
}

struct TheoryParams {
    double gamma;  // extreme value index
    double rho;    // second-order parameter, <= 0
};

// b_{gamma,rho} from the second-order bias term.
inline double b_gamma_rho(const TheoryParams& p) {
    if (!(p.rho <= 0.0)) throw std::domain_error("b_gamma_rho: rho must be <= 0");
    if (!(p.gamma < 0.0)) throw std::domain_error("b_gamma_rho: gamma must be < 0");
    if (!std::isfinite(p.gamma) || !std::isfinite(p.rho))
        throw std::domain_error("b_gamma_rho: parameters must be finite");
    if (p.rho == 0.0) {
        const double g = p.gamma;
        return (std::exp2(-g) * (g * kLog2 + 1.0) - 1.0) / (g * g * g * kLog2);
    }
    const double u = p.gamma + p.rho;
    if (std::abs(u) <= 1e-6) return -kLog2 * 0.5 + u * kLog2 * kLog2 / 6.0;
    return ((1.0 - std::exp2(-u)) / (u * kLog2) - 1.0) / u;
}

// alpha-quantile of the Weibull limit law exp{-(gamma x)^{-1/gamma}}, x < 0:
// q_alpha = (-log alpha)^{-gamma} / gamma. Always negative for gamma < 0.
inline double weibull_limit_quantile(double gamma, double alpha) {
    if (!(gamma < 0.0))
        throw std::domain_error("weibull_limit_quantile: gamma must be < 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("weibull_limit_quantile: alpha must be in (0,1)");
    return std::pow(-std::log(alpha), -gamma) / gamma;
}

}  // namespace evtk
