#pragma once

// Immutable ascending-order sample and the empirical excess moments every
// estimator consumes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "evtk/errors.hpp"

namespace evtk {

class SortedSample {
public:
    static SortedSample from_values(std::vector<double> raw) {
        if (raw.empty()) throw input_error("sample: empty input");
        for (double v : raw)
            if (!std::isfinite(v)) throw input_error("sample: non-finite value");
        std::stable_sort(raw.begin(), raw.end());
        return SortedSample(std::move(raw));
    }

    std::size_t n() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    // X_{n-i,n}: i-th order statistic counted from the top, i = 0 is the maximum.
    double order_from_top(std::size_t i) const {
        if (i >= values_.size()) throw input_error("order_from_top: index out of range");
        return values_[values_.size() - 1 - i];
    }

    double max() const { return values_.back(); }
    double min() const { return values_.front(); }

private:
    explicit SortedSample(std::vector<double> v) : values_(std::move(v)) {}
    std::vector<double> values_;
};

struct ExcessMoments {
    std::size_t k;
    double n1;  // mean excess over X_{n-k,n}
    double n2;  // mean squared excess
    bool log_scale;
};

// N_r = (1/k) sum_{i=0}^{k-1} (x_{n-i,n} - x_{n-k,n})^r, r = 1,2, with x the
// raw or log-transformed observations.
inline ExcessMoments excess_moments(const SortedSample& s, std::size_t k,
                                    bool log_scale = false) {
    const std::size_t n = s.n();
    if (k < 1 || k > n - 1) throw input_error("excess_moments: k out of range");
    auto xform = [&](double v) {
        if (log_scale) {
            if (!(v > 0.0))
                throw input_error("excess_moments: log scale needs positive values");
            return std::log(v);
        }
        return v;
    };
    const double base = xform(s.order_from_top(k));
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double e = xform(s.order_from_top(i)) - base;
        s1 += e;
        s2 += e * e;
    }
    const double kd = static_cast<double>(k);
    return ExcessMoments{k, s1 / kd, s2 / kd, log_scale};
}

}  // namespace evtk
