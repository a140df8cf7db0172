#pragma once

// Command-line front end: CSV ingestion, command dispatch, CSV/JSON emission.
// All computation happens before the first output file is opened, so a
// failing run leaves no partial outputs behind.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "evtk/domain_tests.hpp"
#include "evtk/endpoint.hpp"
#include "evtk/errors.hpp"
#include "evtk/gpd.hpp"
#include "evtk/mc.hpp"
#include "evtk/models.hpp"
#include "evtk/sample.hpp"
#include "evtk/tail_prob.hpp"

namespace evtk::cli {

enum class Command { Estimate, TestDomain, TailProb, TrendTest, Simulate };

struct RunConfig {
    Command command = Command::Estimate;
    std::optional<std::string> input_path;
    std::string column;
    std::optional<std::string> time_column;
    double unit_divisor = 365.25;  // day-recorded lifetimes -> years
    std::optional<std::size_t> k;
    std::size_t k_min = 20;
    std::optional<std::size_t> k_max;
    std::size_t k_step = 1;
    double alpha = 0.05;
    std::vector<double> thresholds;
    std::optional<double> x_level;
    std::vector<std::string> methods;       // estimate / tail-prob
    std::vector<std::string> tests;         // test-domain curves, simulate
    std::vector<std::string> select_tests;  // k-selection rule
    // simulate
    int model_id = 4;
    double tau1 = 2.0, tau2 = 1.0, lambda = 2.0, gamma = -0.5;
    std::size_t n = 1000;
    std::size_t replicates = 300;
    std::uint64_t seed = 1;
    std::size_t kstar_min = 2, kstar_stride = 2;
    std::optional<std::size_t> kstar_max;
    std::size_t potml_stride = 10;
    std::string output_dir = ".";

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) throw input_error("alpha must be in (0,1)");
        if (!(unit_divisor > 0.0)) throw input_error("unit divisor must be > 0");
        if (k_step < 1 || kstar_stride < 1) throw input_error("strides must be >= 1");
    }
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

inline double parse_double(const std::string& cell, std::size_t row, const std::string& col) {
    double v = 0.0;
    const char* b = cell.data();
    const char* e = b + cell.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw input_error("csv row " + std::to_string(row) + ", column '" + col +
                          "': non-numeric value '" + cell + "'");
    return v;
}

}  // namespace detail

struct IngestResult {
    std::vector<double> values;           // raw file order, unit-converted
    std::optional<std::vector<double>> times;
    std::vector<std::size_t> skipped_rows;  // 1-based data row numbers with missing cells

    SortedSample sorted() const { return SortedSample::from_values(values); }
};

inline IngestResult ingest_csv(const std::string& path, const std::string& column,
                               const std::optional<std::string>& time_column,
                               double unit_divisor) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw input_error("empty input file: " + path);
    const auto header = detail::split_csv_line(line);
    auto find_col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw input_error("column '" + name + "' not found in " + path);
    };
    const std::size_t vcol = find_col(column);
    std::optional<std::size_t> tcol;
    if (time_column) tcol = find_col(*time_column);

    IngestResult out;
    if (tcol) out.times.emplace();
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (vcol >= cells.size() || cells[vcol].empty() ||
            (tcol && (*tcol >= cells.size() || cells[*tcol].empty()))) {
            out.skipped_rows.push_back(row);
            continue;
        }
        out.values.push_back(detail::parse_double(cells[vcol], row, column) / unit_divisor);
        if (tcol)
            out.times->push_back(detail::parse_double(cells[*tcol], row, *time_column));
    }
    if (out.values.empty()) throw input_error("no usable data rows in " + path);
    return out;
}

namespace detail {

struct CsvFile {
    std::string name;
    std::string header;
    std::vector<std::string> rows;
};

inline void write_outputs(const std::string& dir, const std::vector<CsvFile>& files,
                          const nlohmann::json& summary) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (const auto& f : files) {
        std::ofstream o(fs::path(dir) / f.name);
        if (!o) throw input_error("cannot write output file: " + f.name);
        o << f.header << '\n';
        for (const auto& r : f.rows) o << r << '\n';
    }
    std::ofstream o(fs::path(dir) / "summary.json");
    o << summary.dump(2) << '\n';
}

inline std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    static const std::map<std::string, Method> table = {
        {"MAX", Method::Max},       {"FAN", Method::Fan}, {"MOMINV", Method::MomInv},
        {"RB1", Method::Rb1},       {"RB2", Method::Rb2}, {"POTML", Method::PotMl}};
    if (names.empty() || (names.size() == 1 && names[0] == "all"))
        return {Method::Max, Method::Fan, Method::MomInv, Method::Rb1, Method::Rb2,
                Method::PotMl};
    std::vector<Method> out;
    for (auto name : names) {
        std::transform(name.begin(), name.end(), name.begin(), ::toupper);
        auto it = table.find(name);
        if (it == table.end()) throw input_error("unknown method: " + name);
        out.push_back(it->second);
    }
    return out;
}

inline std::vector<TestKind> parse_tests(const std::vector<std::string>& names,
                                         std::vector<TestKind> fallback) {
    static const std::map<std::string, TestKind> table = {
        {"GSTAR", TestKind::GStar},
        {"RATIO", TestKind::Ratio},
        {"GREENWOOD", TestKind::Greenwood},
        {"T1", TestKind::T1}};
    if (names.empty()) return fallback;
    if (names.size() == 1 && names[0] == "none") return {};
    if (names.size() == 1 && names[0] == "all")
        return {TestKind::GStar, TestKind::Ratio, TestKind::Greenwood, TestKind::T1};
    std::vector<TestKind> out;
    for (auto name : names) {
        std::transform(name.begin(), name.end(), name.begin(), ::toupper);
        auto it = table.find(name);
        if (it == table.end()) throw input_error("unknown test: " + name);
        out.push_back(it->second);
    }
    return out;
}

inline unsigned env_threads() {
    const char* v = std::getenv("EVT_THREADS");
    if (!v || !*v) return 0;
    unsigned t = 0;
    auto [p, ec] = std::from_chars(v, v + std::string_view(v).size(), t);
    if (ec != std::errc()) throw input_error("EVT_THREADS must be a non-negative integer");
    return t;
}

inline std::size_t method_kstar(Method m, std::size_t k) {
    switch (m) {
        case Method::Max: return 1;
        case Method::MomInv:
        case Method::PotMl: return k + 1;
        default: return 2 * k;  // FAN family
    }
}

}  // namespace detail

// ---- estimate ----------------------------------------------------------

inline int cmd_estimate(const RunConfig& cfg) {
    if (!cfg.input_path) throw input_error("estimate: --input is required");
    const IngestResult ing =
        ingest_csv(*cfg.input_path, cfg.column, std::nullopt, cfg.unit_divisor);
    const SortedSample s = ing.sorted();
    const std::size_t n = s.n();
    const auto methods = detail::parse_methods(cfg.methods);

    auto estimate_at = [&](Method m, std::size_t k) -> std::optional<EndpointEstimate> {
        try {
            switch (m) {
                case Method::Max: return max_estimate(s);
                case Method::Fan: return fan(s, k);
                case Method::MomInv: return mominv_estimate(s, k);
                case Method::Rb1: return rb_corrected(s, k, 1);
                case Method::Rb2: return rb_corrected(s, k, 2);
                case Method::PotMl: return potml_endpoint(s, k);
            }
        } catch (const unavailable_error&) {
        } catch (const degenerate_error&) {
        }
        return std::nullopt;
    };

    // scan curve
    detail::CsvFile curve{"estimate_curve.csv", "k_star,estimator,value", {}};
    const std::size_t scan_max = cfg.k_max.value_or(n / 2);
    for (Method m : methods) {
        if (m == Method::Max) {
            curve.rows.push_back("1,MAX," + detail::fmt(s.max()));
            continue;
        }
        const bool fan_family = m == Method::Fan || m == Method::Rb1 || m == Method::Rb2;
        for (std::size_t k = cfg.k_min; k <= scan_max; k += cfg.k_step) {
            if (fan_family && 2 * k > n) break;
            if (!fan_family && k > n - 1) break;
            if (auto est = estimate_at(m, k))
                curve.rows.push_back(std::to_string(detail::method_kstar(m, k)) + "," +
                                     method_tag(m) + "," + detail::fmt(est->estimate));
        }
    }

    nlohmann::json summary;
    summary["command"] = "estimate";
    summary["input"] = *cfg.input_path;
    summary["column"] = cfg.column;
    summary["unit_divisor"] = cfg.unit_divisor;
    summary["n"] = n;
    summary["alpha"] = cfg.alpha;
    summary["skipped_rows"] = ing.skipped_rows;

    detail::CsvFile points{"estimates.csv", "method,k,k_star,estimate,gamma_hat,scale_hat", {}};
    if (cfg.k) {
        const std::size_t k = *cfg.k;
        nlohmann::json jpoints;
        for (Method m : methods) {
            auto est = estimate_at(m, k);
            nlohmann::json j;
            if (est) {
                j["k"] = est->k;
                j["k_star"] = est->k_star;
                j["estimate"] = est->estimate;
                if (est->gamma_hat) j["gamma_hat"] = *est->gamma_hat;
                if (est->scale_hat) j["scale_hat"] = *est->scale_hat;
                points.rows.push_back(
                    std::string(method_tag(m)) + "," + std::to_string(est->k) + "," +
                    std::to_string(est->k_star) + "," + detail::fmt(est->estimate) + "," +
                    (est->gamma_hat ? detail::fmt(*est->gamma_hat) : "") + "," +
                    (est->scale_hat ? detail::fmt(*est->scale_hat) : ""));
                std::cout << method_tag(m) << "=" << detail::fmt(est->estimate) << "\n";
            } else {
                j["status"] = "unavailable";
                points.rows.push_back(std::string(method_tag(m)) + "," +
                                      std::to_string(k) + ",,,,");
                std::cout << method_tag(m) << "=unavailable\n";
            }
            jpoints[method_tag(m)] = j;
        }
        try {
            const double ub = weibull_upper_bound(s, k, cfg.alpha);
            jpoints["upper_bound"] = {{"k", k}, {"alpha", cfg.alpha}, {"estimate", ub}};
            points.rows.push_back("upper_bound," + std::to_string(k) + "," +
                                  std::to_string(2 * k) + "," + detail::fmt(ub) + ",,");
            std::cout << "upper_bound=" << detail::fmt(ub) << "\n";
        } catch (const unavailable_error&) {
            jpoints["upper_bound"] = {{"status", "unavailable"}};
        }
        summary["k"] = k;
        summary["point_estimates"] = jpoints;
    }

    std::vector<detail::CsvFile> files{curve};
    if (cfg.k) files.push_back(points);
    detail::write_outputs(cfg.output_dir, files, summary);
    return 0;
}

// ---- test-domain -------------------------------------------------------

inline int cmd_test_domain(const RunConfig& cfg) {
    if (!cfg.input_path) throw input_error("test-domain: --input is required");
    const IngestResult ing =
        ingest_csv(*cfg.input_path, cfg.column, std::nullopt, cfg.unit_divisor);
    const SortedSample s = ing.sorted();
    const std::size_t n = s.n();
    const auto curve_tests = detail::parse_tests(
        cfg.tests, {TestKind::GStar, TestKind::Ratio, TestKind::Greenwood, TestKind::T1});
    const auto select_tests =
        detail::parse_tests(cfg.select_tests, {TestKind::Greenwood, TestKind::T1});

    auto eval = [&](TestKind t, std::size_t k) -> std::optional<DomainTestResult> {
        try {
            switch (t) {
                case TestKind::GStar: return g_star(s, k, cfg.alpha);
                case TestKind::Ratio: return ratio_star(s, k, cfg.alpha);
                case TestKind::Greenwood: return greenwood_star(s, k, cfg.alpha);
                case TestKind::T1: return t1_star(s, k, cfg.alpha);
            }
        } catch (const input_error&) {
        }
        return std::nullopt;
    };

    detail::CsvFile curve{"domain_tests.csv", "k,test,raw,normalized,p_heavy,p_short", {}};
    std::vector<DomainTestResult> select_series;
    auto scan = [&](TestKind t, bool for_selection) {
        const std::size_t cap = t == TestKind::GStar ? (n - 1) / 2 : n - 1;
        const std::size_t k_hi = std::min(cfg.k_max.value_or(cap), cap);
        for (std::size_t k = cfg.k_min; k <= k_hi; k += cfg.k_step) {
            auto r = eval(t, k);
            if (!r) continue;
            if (for_selection)
                select_series.push_back(*r);
            else
                curve.rows.push_back(std::to_string(k) + "," + test_tag(t) + "," +
                                     detail::fmt(r->raw) + "," + detail::fmt(r->normalized) +
                                     "," + detail::fmt(r->p_heavy) + "," +
                                     detail::fmt(r->p_short));
        }
    };
    for (TestKind t : curve_tests) scan(t, false);
    for (TestKind t : select_tests) scan(t, true);

    nlohmann::json summary;
    summary["command"] = "test-domain";
    summary["input"] = *cfg.input_path;
    summary["column"] = cfg.column;
    summary["n"] = n;
    summary["alpha"] = cfg.alpha;
    summary["k_min"] = cfg.k_min;
    summary["skipped_rows"] = ing.skipped_rows;
    if (!select_series.empty()) {
        const KSelection sel = select_k_opt(select_series, cfg.alpha, cfg.k_min);
        nlohmann::json j0;
        for (const auto& [t, k0] : sel.first_rejection) {
            if (k0)
                j0[test_tag(t)] = *k0;
            else
                j0[test_tag(t)] = nullptr;
            std::cout << "k0[" << test_tag(t) << "]="
                      << (k0 ? std::to_string(*k0) : "none") << "\n";
        }
        summary["k0"] = j0;
        if (sel.k_opt) {
            summary["k_opt"] = *sel.k_opt;
            std::cout << "k_opt=" << *sel.k_opt << "\n";
        } else {
            summary["k_opt"] = nullptr;
            std::cout << "k_opt=none\n";
        }
    }
    detail::write_outputs(cfg.output_dir, {curve}, summary);
    return 0;
}

// ---- tail-prob ---------------------------------------------------------

inline int cmd_tail_prob(const RunConfig& cfg) {
    if (!cfg.input_path) throw input_error("tail-prob: --input is required");
    if (!cfg.x_level) throw input_error("tail-prob: --x is required");
    const IngestResult ing =
        ingest_csv(*cfg.input_path, cfg.column, std::nullopt, cfg.unit_divisor);
    const SortedSample s = ing.sorted();
    const std::size_t n = s.n();
    const double x = *cfg.x_level;
    auto methods = cfg.methods.empty()
                       ? std::vector<Method>{Method::MomInv, Method::PotMl}
                       : detail::parse_methods(cfg.methods);

    auto eval = [&](Method m, std::size_t k) -> std::optional<TailProbEstimate> {
        try {
            return m == Method::MomInv ? exceed_prob_mominv(s, k, x)
                                       : exceed_prob_potml(s, k, x);
        } catch (const input_error&) {
        } catch (const unavailable_error&) {
        }
        return std::nullopt;
    };

    detail::CsvFile curve{"tail_prob.csv", "k_star,estimator,value", {}};
    const std::size_t k_hi = std::min(cfg.k_max.value_or(n - 1), n - 1);
    for (Method m : methods) {
        if (m != Method::MomInv && m != Method::PotMl)
            throw input_error("tail-prob supports methods MOMINV and POTML only");
        for (std::size_t k = cfg.k_min; k <= k_hi; k += cfg.k_step)
            if (auto r = eval(m, k))
                curve.rows.push_back(std::to_string(k + 1) + "," + method_tag(m) + "," +
                                     detail::fmt(r->p_hat));
    }

    nlohmann::json summary;
    summary["command"] = "tail-prob";
    summary["input"] = *cfg.input_path;
    summary["x"] = x;
    summary["n"] = n;
    summary["skipped_rows"] = ing.skipped_rows;
    if (cfg.k) {
        nlohmann::json jp;
        for (Method m : methods) {
            if (auto r = eval(m, *cfg.k)) {
                jp[method_tag(m)] = r->p_hat;
                std::cout << method_tag(m) << ": P(X>" << detail::fmt(x)
                          << ")=" << detail::fmt(r->p_hat) << "\n";
            } else {
                jp[method_tag(m)] = nullptr;
            }
        }
        summary["k"] = *cfg.k;
        summary["p_hat"] = jp;
    }
    detail::write_outputs(cfg.output_dir, {curve}, summary);
    return 0;
}

// ---- trend-test --------------------------------------------------------

inline int cmd_trend_test(const RunConfig& cfg) {
    if (!cfg.input_path) throw input_error("trend-test: --input is required");
    if (!cfg.time_column) throw input_error("trend-test: --time-column is required");
    if (cfg.thresholds.empty()) throw input_error("trend-test: --thresholds is required");
    const IngestResult ing =
        ingest_csv(*cfg.input_path, cfg.column, cfg.time_column, cfg.unit_divisor);
    const double t0 = *std::min_element(ing.times->begin(), ing.times->end());

    struct Row {
        double threshold;
        std::size_t n_exc;
        TrendGpdFit m1;
        GpdFit m0;
        DevianceTest dev;
    };
    std::vector<Row> rows;
    for (double u : cfg.thresholds) {
        std::vector<double> y, t;
        for (std::size_t i = 0; i < ing.values.size(); ++i)
            if (ing.values[i] > u) {
                y.push_back(ing.values[i] - u);
                t.push_back((*ing.times)[i] - t0);
            }
        if (y.size() < 10)
            throw degenerate_error("trend-test: fewer than 10 exceedances over threshold " +
                                   detail::fmt(u));
        const GpdFit m0 = fit_gpd_stationary(y);
        const TrendGpdFit m1 = fit_gpd_trend(y, t);
        rows.push_back(Row{u, y.size(), m1, m0, lr_trend_test(m1, m0)});
    }

    detail::CsvFile csv{"trend_test.csv",
                        "threshold,n_exc,loglik_trend,beta0,beta1,gamma_trend,"
                        "loglik_const,beta0_const,gamma_const,endpoint,deviance,p_value",
                        {}};
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
        const bool finite_ep = r.m0.gamma < 0.0;
        const double ep = finite_ep ? r.threshold - r.m0.sigma / r.m0.gamma : 0.0;
        csv.rows.push_back(
            detail::fmt(r.threshold) + "," + std::to_string(r.n_exc) + "," +
            detail::fmt(r.m1.loglik) + "," + detail::fmt(r.m1.beta0) + "," +
            detail::fmt(r.m1.beta1) + "," + detail::fmt(r.m1.gamma) + "," +
            detail::fmt(r.m0.loglik) + "," + detail::fmt(std::log(r.m0.sigma)) + "," +
            detail::fmt(r.m0.gamma) + "," + (finite_ep ? detail::fmt(ep) : "") + "," +
            detail::fmt(r.dev.deviance) + "," + detail::fmt(r.dev.p_value));
        nlohmann::json j{{"threshold", r.threshold},
                         {"n_exc", r.n_exc},
                         {"loglik_trend", r.m1.loglik},
                         {"beta0", r.m1.beta0},
                         {"beta1", r.m1.beta1},
                         {"gamma_trend", r.m1.gamma},
                         {"loglik_const", r.m0.loglik},
                         {"beta0_const", std::log(r.m0.sigma)},
                         {"gamma_const", r.m0.gamma},
                         {"deviance", r.dev.deviance},
                         {"p_value", r.dev.p_value}};
        if (finite_ep) j["endpoint"] = ep;
        jrows.push_back(j);
        std::cout << "threshold=" << detail::fmt(r.threshold) << " n_exc=" << r.n_exc
                  << " l1=" << detail::fmt(r.m1.loglik) << " l0=" << detail::fmt(r.m0.loglik)
                  << " p=" << detail::fmt(r.dev.p_value) << "\n";
    }

    nlohmann::json summary;
    summary["command"] = "trend-test";
    summary["input"] = *cfg.input_path;
    summary["column"] = cfg.column;
    summary["time_column"] = *cfg.time_column;
    summary["time_origin"] = t0;
    summary["skipped_rows"] = ing.skipped_rows;
    summary["rows"] = jrows;
    detail::write_outputs(cfg.output_dir, {csv}, summary);
    return 0;
}

// ---- simulate ----------------------------------------------------------

inline int cmd_simulate(const RunConfig& cfg) {
    ModelSpec model = [&] {
        switch (cfg.model_id) {
            case 1: return ModelSpec::m1(cfg.tau1, cfg.tau2);
            case 2: return ModelSpec::m2(cfg.lambda);
            case 3: return ModelSpec::m3(cfg.tau1, cfg.tau2);
            case 4: return ModelSpec::m4(cfg.gamma);
        }
        throw input_error("simulate: --model must be 1..4");
    }();

    McConfig mc = McConfig::defaults(model, cfg.n, cfg.replicates, cfg.seed);
    mc.estimators = cfg.methods.empty()
                        ? std::vector<Method>{Method::Max, Method::Fan, Method::MomInv,
                                              Method::PotMl}
                        : detail::parse_methods(cfg.methods);
    mc.tests = detail::parse_tests(
        cfg.tests, {TestKind::GStar, TestKind::Ratio, TestKind::Greenwood});
    mc.potml_stride = cfg.potml_stride;
    const std::size_t ks_hi = std::min(cfg.kstar_max.value_or(cfg.n), cfg.n);
    mc.kstar_grid.clear();
    for (std::size_t ks = cfg.kstar_min; ks <= ks_hi; ks += cfg.kstar_stride)
        mc.kstar_grid.push_back(ks);

    const McReport rep = run_mc(mc, detail::env_threads());

    detail::CsvFile e_curve{"e_curve.csv", "k_star,estimator,value", {}};
    detail::CsvFile mse_curve{"mse_curve.csv", "k_star,estimator,value", {}};
    detail::CsvFile perr{"errors_at_k0.csv", "replicate,estimator,error", {}};
    nlohmann::json jest;
    for (const auto& [m, c] : rep.estimator) {
        for (std::size_t i = 0; i < c.kstar.size(); ++i) {
            if (c.n_used[i] == 0) continue;
            e_curve.rows.push_back(std::to_string(c.kstar[i]) + "," + method_tag(m) + "," +
                                   detail::fmt(c.e_curve[i]));
            mse_curve.rows.push_back(std::to_string(c.kstar[i]) + "," + method_tag(m) +
                                     "," + detail::fmt(c.mse_curve[i]));
        }
        for (std::size_t j = 0; j < c.errors_at_k0.size(); ++j)
            perr.rows.push_back(std::to_string(j) + "," + method_tag(m) + "," +
                                detail::fmt(c.errors_at_k0[j]));
        const std::size_t i0 =
            static_cast<std::size_t>(std::find(c.kstar.begin(), c.kstar.end(), c.k0_star) -
                                     c.kstar.begin());
        jest[method_tag(m)] = {{"k0_star", c.k0_star},
                               {"e_at_k0", c.e_curve[i0]},
                               {"mse_at_k0", c.mse_curve[i0]},
                               {"n_used_at_k0", c.n_used[i0]},
                               {"excluded_total", c.excluded_total}};
        std::cout << method_tag(m) << ": k0*=" << c.k0_star
                  << " E(k0*)=" << detail::fmt(c.e_curve[i0]) << "\n";
    }
    detail::CsvFile pheavy{"pvalue_heavy.csv", "k_star,estimator,value", {}};
    detail::CsvFile pshort{"pvalue_short.csv", "k_star,estimator,value", {}};
    for (const auto& [t, c] : rep.test)
        for (std::size_t i = 0; i < c.kstar.size(); ++i) {
            if (c.n_used[i] == 0) continue;
            pheavy.rows.push_back(std::to_string(c.kstar[i]) + "," + test_tag(t) + "," +
                                  detail::fmt(c.mean_p_heavy[i]));
            pshort.rows.push_back(std::to_string(c.kstar[i]) + "," + test_tag(t) + "," +
                                  detail::fmt(c.mean_p_short[i]));
        }

    nlohmann::json summary;
    summary["command"] = "simulate";
    summary["model"] = model.label();
    summary["true_endpoint"] = model.true_endpoint();
    summary["true_evi"] = model.true_evi();
    switch (model.id) {
        case ModelId::M1:
        case ModelId::M3:
            summary["tau1"] = model.tau1;
            summary["tau2"] = model.tau2;
            break;
        case ModelId::M2: summary["lambda"] = model.lambda; break;
        case ModelId::M4: summary["gamma"] = model.gamma; break;
    }
    summary["n"] = cfg.n;
    summary["replicates"] = cfg.replicates;
    summary["seed"] = cfg.seed;
    summary["kstar_min"] = cfg.kstar_min;
    summary["kstar_max"] = ks_hi;
    summary["kstar_stride"] = cfg.kstar_stride;
    summary["potml_stride"] = cfg.potml_stride;
    summary["estimators"] = jest;

    detail::write_outputs(cfg.output_dir, {e_curve, mse_curve, perr, pheavy, pshort},
                          summary);
    return 0;
}

inline int run(const RunConfig& cfg) {
    try {
        cfg.validate();
        switch (cfg.command) {
            case Command::Estimate: return cmd_estimate(cfg);
            case Command::TestDomain: return cmd_test_domain(cfg);
            case Command::TailProb: return cmd_tail_prob(cfg);
            case Command::TrendTest: return cmd_trend_test(cfg);
            case Command::Simulate: return cmd_simulate(cfg);
        }
        std::cerr << "error: unknown command\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unavailable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const optimization_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace evtk::cli
