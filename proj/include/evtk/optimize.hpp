#pragma once

// Small derivative-free maximisers used by the GPD fits: 1-D golden section
// and a 3-parameter Nelder-Mead simplex.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace evtk::detail {

// Maximise f on [lo, hi]; stops when the bracket shrinks below rel_tol
// relative to |mid|.
template <class F>
double golden_section_max(F&& f, double lo, double hi, double rel_tol = 1e-10,
                          int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > rel_tol * std::abs(a + b) * 0.5; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? c : d;
}

struct SimplexResult {
    std::array<double, 3> x;
    double fmax;
    bool converged;
    int iterations;
};

// Nelder-Mead maximisation in 3 dimensions (standard reflection/expansion/
// contraction/shrink coefficients).
inline SimplexResult nelder_mead_max(const std::function<double(const std::array<double, 3>&)>& f,
                                     std::array<double, 3> x0,
                                     std::array<double, 3> step,
                                     int max_iter = 500, double f_tol = 1e-10) {
    constexpr int n = 3;
    struct Vertex {
        std::array<double, 3> x;
        double fx;
    };
    std::vector<Vertex> v(n + 1);
    v[0] = {x0, f(x0)};
    for (int i = 0; i < n; ++i) {
        auto xi = x0;
        xi[i] += step[i] != 0.0 ? step[i] : 1e-3;
        v[i + 1] = {xi, f(xi)};
    }
    auto by_f_desc = [](const Vertex& a, const Vertex& b) { return a.fx > b.fx; };
    int it = 0;
    for (; it < max_iter; ++it) {
        std::sort(v.begin(), v.end(), by_f_desc);
        if (std::abs(v[0].fx - v[n].fx) <
            f_tol * (std::abs(v[0].fx) + std::abs(v[n].fx) + 1e-30))
            break;
        std::array<double, 3> centroid{0, 0, 0};
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) centroid[d] += v[i].x[d] / n;
        auto blend = [&](double t) {
            std::array<double, 3> x;
            for (int d = 0; d < n; ++d) x[d] = centroid[d] + t * (centroid[d] - v[n].x[d]);
            return x;
        };
        auto xr = blend(1.0);
        double fr = f(xr);
        if (fr > v[0].fx) {
            auto xe = blend(2.0);
            double fe = f(xe);
            v[n] = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr > v[n - 1].fx) {
            v[n] = {xr, fr};
        } else {
            auto xc = blend(0.5);
            double fc = f(xc);
            if (fc > v[n].fx) {
                v[n] = {xc, fc};
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int d = 0; d < n; ++d)
                        v[i].x[d] = v[0].x[d] + 0.5 * (v[i].x[d] - v[0].x[d]);
                    v[i].fx = f(v[i].x);
                }
            }
        }
    }
    std::sort(v.begin(), v.end(), by_f_desc);
    return SimplexResult{v[0].x, v[0].fx, it < max_iter, it};
}

}  // namespace evtk::detail
