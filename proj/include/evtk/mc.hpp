#pragma once

// Monte Carlo harness around the endpoint estimators and domain tests:
// per-k* error curves, optimal k0*, per-replicate errors at k0*, and averaged
// test p-value curves. Replicates are independent substreams of one seed, so
// the report is bitwise identical no matter how many worker threads run it.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "evtk/domain_tests.hpp"
#include "evtk/endpoint.hpp"
#include "evtk/errors.hpp"
#include "evtk/gpd.hpp"
#include "evtk/models.hpp"
#include "evtk/rng.hpp"

namespace evtk {

struct McConfig {
    ModelSpec model;
    std::size_t n = 1000;
    std::size_t replicates = 300;
    std::uint64_t seed = 1;
    std::vector<Method> estimators{Method::Max, Method::Fan, Method::MomInv, Method::PotMl};
    std::vector<std::size_t> kstar_grid;       // default: even 2..n
    std::size_t potml_stride = 10;             // POTML only at k* multiples of this
    std::vector<TestKind> tests;               // empty = no test curves

    static McConfig defaults(ModelSpec model, std::size_t n, std::size_t replicates,
                             std::uint64_t seed) {
        McConfig cfg;
        cfg.model = model;
        cfg.n = n;
        cfg.replicates = replicates;
        cfg.seed = seed;
        for (std::size_t ks = 2; ks <= n; ks += 2) cfg.kstar_grid.push_back(ks);
        return cfg;
    }

    void validate() const {
        if (n < 4) throw input_error("mc: n must be >= 4");
        if (replicates < 1) throw input_error("mc: replicates must be >= 1");
        if (kstar_grid.empty()) throw input_error("mc: empty kstar grid");
        for (std::size_t ks : kstar_grid)
            if (ks < 1 || ks > n) throw input_error("mc: kstar out of [1, n]");
        if (potml_stride < 1) throw input_error("mc: potml stride must be >= 1");
    }
};

struct McCurve {
    std::vector<std::size_t> kstar;    // grid points where this estimator is defined
    std::vector<double> e_curve;       // mean |error|
    std::vector<double> mse_curve;     // mean squared error
    std::vector<std::size_t> n_used;   // replicates contributing per point
    std::size_t k0_star = 0;
    std::vector<double> errors_at_k0;  // length N, NaN where unavailable
    std::size_t excluded_total = 0;    // sum over grid of (N - n_used)
};

struct McTestCurve {
    std::vector<std::size_t> kstar;
    std::vector<double> mean_p_heavy;
    std::vector<double> mean_p_short;
    std::vector<std::size_t> n_used;
};

struct McReport {
    McConfig config;
    std::map<Method, McCurve> estimator;
    std::map<TestKind, McTestCurve> test;
};

namespace detail {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// k-mapping from the effective top-sample size k*: MAX ignores it, the FAN
// family uses k = k*/2 (even k*), MOMINV/POTML use k = k*-1.
inline std::optional<std::size_t> method_k(Method m, std::size_t kstar, std::size_t n,
                                           std::size_t potml_stride) {
    switch (m) {
        case Method::Max:
            return 0;
        case Method::Fan:
            if (kstar >= 2 && kstar % 2 == 0 && kstar <= n) return kstar / 2;
            return std::nullopt;
        case Method::Rb1:
        case Method::Rb2:
            if (kstar >= 4 && kstar % 2 == 0 && kstar <= n) return kstar / 2;
            return std::nullopt;
        case Method::MomInv:
            if (kstar >= 3 && kstar <= n) return kstar - 1;
            return std::nullopt;
        case Method::PotMl:
            if (kstar >= 6 && kstar <= n && kstar % potml_stride == 0) return kstar - 1;
            return std::nullopt;
    }
    return std::nullopt;
}

inline std::optional<std::size_t> test_k(TestKind t, std::size_t kstar, std::size_t n) {
    switch (t) {
        case TestKind::GStar:
            if (kstar >= 2 && kstar % 2 == 0 && kstar / 2 * 2 < n) return kstar / 2;
            return std::nullopt;
        case TestKind::Ratio:
        case TestKind::Greenwood:
        case TestKind::T1:
            if (kstar >= 2 && kstar - 1 <= n - 1) return kstar - 1;
            return std::nullopt;
    }
    return std::nullopt;
}

inline double estimate_or_nan(Method m, const SortedSample& s, std::size_t k) {
    try {
        switch (m) {
            case Method::Max: return max_estimate(s).estimate;
            case Method::Fan: return fan_value(s, k);
            case Method::Rb1: return rb_corrected(s, k, 1).estimate;
            case Method::Rb2: return rb_corrected(s, k, 2).estimate;
            case Method::MomInv: {
                const MomInvFit f = mominv(s, k);
                return f.endpoint ? *f.endpoint : kNaN;
            }
            case Method::PotMl: return potml_endpoint(s, k).estimate;
        }
    } catch (const input_error&) {
    } catch (const unavailable_error&) {
    } catch (const optimization_error&) {
    } catch (const std::domain_error&) {
    }
    return kNaN;
}

}  // namespace detail

inline McReport run_mc(const McConfig& cfg, unsigned threads = 0) {
    cfg.validate();
    const std::size_t N = cfg.replicates;
    const double x_f = cfg.model.true_endpoint();

    // resolve per-estimator and per-test grids up front
    struct Job {
        Method method;
        std::vector<std::size_t> kstar;
        std::vector<std::size_t> k;
        std::vector<double> err;  // N x kstar.size(), NaN = missing
    };
    struct TestJob {
        TestKind kind;
        std::vector<std::size_t> kstar;
        std::vector<std::size_t> k;
        std::vector<double> p_heavy;
        std::vector<double> p_short;
    };
    std::vector<Job> jobs;
    for (Method m : cfg.estimators) {
        Job j{m, {}, {}, {}};
        for (std::size_t ks : cfg.kstar_grid)
            if (auto k = detail::method_k(m, ks, cfg.n, cfg.potml_stride)) {
                j.kstar.push_back(ks);
                j.k.push_back(*k);
            }
        if (!j.kstar.empty()) {
            j.err.assign(N * j.kstar.size(), detail::kNaN);
            jobs.push_back(std::move(j));
        }
    }
    std::vector<TestJob> test_jobs;
    for (TestKind t : cfg.tests) {
        TestJob j{t, {}, {}, {}, {}};
        for (std::size_t ks : cfg.kstar_grid)
            if (auto k = detail::test_k(t, ks, cfg.n)) {
                j.kstar.push_back(ks);
                j.k.push_back(*k);
            }
        if (!j.kstar.empty()) {
            j.p_heavy.assign(N * j.kstar.size(), detail::kNaN);
            j.p_short.assign(N * j.kstar.size(), detail::kNaN);
            test_jobs.push_back(std::move(j));
        }
    }

    auto worker_body = [&](std::size_t j) {
        const SortedSample s =
            model_sample(cfg.model, cfg.n, substream_seed(cfg.seed, j));
        for (auto& job : jobs) {
            const std::size_t P = job.kstar.size();
            if (job.method == Method::Max) {
                const double e = s.max() - x_f;
                for (std::size_t i = 0; i < P; ++i) job.err[j * P + i] = e;
                continue;
            }
            for (std::size_t i = 0; i < P; ++i) {
                const double est = detail::estimate_or_nan(job.method, s, job.k[i]);
                job.err[j * P + i] = std::isnan(est) ? detail::kNaN : est - x_f;
            }
        }
        for (auto& tj : test_jobs) {
            const std::size_t P = tj.kstar.size();
            for (std::size_t i = 0; i < P; ++i) {
                try {
                    DomainTestResult r = [&] {
                        switch (tj.kind) {
                            case TestKind::GStar: return g_star(s, tj.k[i]);
                            case TestKind::Ratio: return ratio_star(s, tj.k[i]);
                            case TestKind::Greenwood: return greenwood_star(s, tj.k[i]);
                            case TestKind::T1: return t1_star(s, tj.k[i]);
                        }
                        throw input_error("mc: bad test kind");
                    }();
                    tj.p_heavy[j * P + i] = r.p_heavy;
                    tj.p_short[j * P + i] = r.p_short;
                } catch (const input_error&) {
                }
            }
        }
    };

    unsigned nthreads = threads != 0 ? threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(N)));
    if (nthreads == 1) {
        for (std::size_t j = 0; j < N; ++j) worker_body(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned w = 0; w < nthreads; ++w)
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < N; j = next.fetch_add(1))
                    worker_body(j);
            });
        for (auto& t : pool) t.join();
    }

    // fixed-order aggregation
    McReport rep;
    rep.config = cfg;
    for (auto& job : jobs) {
        const std::size_t P = job.kstar.size();
        McCurve c;
        c.kstar = job.kstar;
        c.e_curve.assign(P, detail::kNaN);
        c.mse_curve.assign(P, detail::kNaN);
        c.n_used.assign(P, 0);
        for (std::size_t i = 0; i < P; ++i) {
            double s1 = 0.0, s2 = 0.0;
            std::size_t cnt = 0;
            for (std::size_t j = 0; j < N; ++j) {
                const double e = job.err[j * P + i];
                if (std::isnan(e)) continue;
                s1 += std::abs(e);
                s2 += e * e;
                ++cnt;
            }
            c.n_used[i] = cnt;
            c.excluded_total += N - cnt;
            if (cnt > 0) {
                c.e_curve[i] = s1 / static_cast<double>(cnt);
                c.mse_curve[i] = s2 / static_cast<double>(cnt);
            }
        }
        std::size_t best = 0;
        double best_e = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < P; ++i)
            if (c.n_used[i] > 0 && c.e_curve[i] < best_e) {
                best_e = c.e_curve[i];
                best = i;
            }
        c.k0_star = c.kstar[best];
        c.errors_at_k0.assign(N, detail::kNaN);
        for (std::size_t j = 0; j < N; ++j) c.errors_at_k0[j] = job.err[j * P + best];
        rep.estimator.emplace(job.method, std::move(c));
    }
    for (auto& tj : test_jobs) {
        const std::size_t P = tj.kstar.size();
        McTestCurve c;
        c.kstar = tj.kstar;
        c.mean_p_heavy.assign(P, detail::kNaN);
        c.mean_p_short.assign(P, detail::kNaN);
        c.n_used.assign(P, 0);
        for (std::size_t i = 0; i < P; ++i) {
            double sh = 0.0, ss = 0.0;
            std::size_t cnt = 0;
            for (std::size_t j = 0; j < N; ++j) {
                const double ph = tj.p_heavy[j * P + i];
                if (std::isnan(ph)) continue;
                sh += ph;
                ss += tj.p_short[j * P + i];
                ++cnt;
            }
            c.n_used[i] = cnt;
            if (cnt > 0) {
                c.mean_p_heavy[i] = sh / static_cast<double>(cnt);
                c.mean_p_short[i] = ss / static_cast<double>(cnt);
            }
        }
        rep.test.emplace(tj.kind, std::move(c));
    }
    return rep;
}

// argmin of the E curve; smallest k* on ties (run_mc stores the same rule).
inline std::size_t k0_star(const McReport& report, Method method) {
    auto it = report.estimator.find(method);
    if (it == report.estimator.end() || it->second.kstar.empty())
        throw input_error("k0_star: method not present in report");
    return it->second.k0_star;
}

}  // namespace evtk
