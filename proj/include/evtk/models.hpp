#pragma once

// The four short-tailed parent models of the simulation study: closed-form
// quantiles where they exist and seeded samplers for all of them.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "evtk/errors.hpp"
#include "evtk/rng.hpp"
#include "evtk/sample.hpp"

namespace evtk {

enum class ModelId { M1 = 1, M2 = 2, M3 = 3, M4 = 4 };

struct ModelSpec {
    ModelId id;
    double tau1 = 0.0;   // M1/M3
    double tau2 = 0.0;   // M1/M3
    double lambda = 0.0; // M2
    double gamma = 0.0;  // M4

    static ModelSpec m1(double tau1, double tau2) {
        require_positive(tau1, "tau1");
        require_positive(tau2, "tau2");
        ModelSpec m{ModelId::M1};
        m.tau1 = tau1;
        m.tau2 = tau2;
        return m;
    }
    static ModelSpec m2(double lambda) {
        require_positive(lambda, "lambda");
        ModelSpec m{ModelId::M2};
        m.lambda = lambda;
        return m;
    }
    static ModelSpec m3(double tau1, double tau2) {
        require_positive(tau1, "tau1");
        require_positive(tau2, "tau2");
        ModelSpec m{ModelId::M3};
        m.tau1 = tau1;
        m.tau2 = tau2;
        return m;
    }
    static ModelSpec m4(double gamma) {
        if (!(gamma < 0.0)) throw input_error("model 4: gamma must be < 0");
        ModelSpec m{ModelId::M4};
        m.gamma = gamma;
        return m;
    }

    double true_evi() const {
        switch (id) {
            case ModelId::M1:
            case ModelId::M3: return -1.0 / (tau1 * tau2);
            case ModelId::M2: return -1.0 / lambda;
            case ModelId::M4: return gamma;
        }
        return 0.0;
    }

    double true_endpoint() const {
        return (id == ModelId::M1 || id == ModelId::M2) ? 0.0 : 1.0;
    }

    std::string label() const {
        switch (id) {
            case ModelId::M1: return "M1";
            case ModelId::M2: return "M2";
            case ModelId::M3: return "M3";
            case ModelId::M4: return "M4";
        }
        return "?";
    }

private:
    static void require_positive(double v, const char* name) {
        if (!(v > 0.0)) throw input_error(std::string("model: ") + name + " must be > 0");
    }
};

// Closed-form quantile of F_m. Model 2 has none (sampling goes through the
// Gamma construction instead).
inline double model_quantile(const ModelSpec& m, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("model_quantile: p must be in (0,1)");
    const double q = 1.0 - p;
    switch (m.id) {
        case ModelId::M1:
            return -std::pow(std::pow(q, -1.0 / m.tau2) - 1.0, -1.0 / m.tau1);
        case ModelId::M2:
            throw unsupported_error("model_quantile: model 2 has no closed-form quantile");
        case ModelId::M3:
            return 1.0 / (1.0 + std::pow(std::pow(q, -1.0 / m.tau2) - 1.0, -1.0 / m.tau1));
        case ModelId::M4:
            return 1.0 - std::pow(q, -m.gamma);
    }
    throw input_error("model_quantile: bad model id");
}

// n i.i.d. draws, deterministic in (model, n, seed). Models 1/3/4 by inverse
// transform; model 2 via X = -1/(e^Z - 1) with Z = (E1+E2)/lambda.
inline SortedSample model_sample(const ModelSpec& m, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw input_error("model_sample: n must be >= 1");
    Xoshiro256ss rng(seed);
    std::vector<double> x(n);
    if (m.id == ModelId::M2) {
        for (auto& v : x) {
            const double e1 = -std::log(rng.uniform_open());
            const double e2 = -std::log(rng.uniform_open());
            const double z = (e1 + e2) / m.lambda;
            v = -1.0 / std::expm1(z);
        }
    } else {
        for (auto& v : x) v = model_quantile(m, rng.uniform_open());
    }
    return SortedSample::from_values(std::move(x));
}

}  // namespace evtk
