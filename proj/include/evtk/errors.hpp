#pragma once

#include <stdexcept>
#include <string>

namespace evtk {

// Bad caller input: empty samples, NaN/Inf values, out-of-range k.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally valid input on which a formula degenerates (zero spacings,
// all-equal excesses, vanishing denominators).
class degenerate_error : public input_error {
public:
    explicit degenerate_error(const std::string& what) : input_error(what) {}
};

// The requested estimator does not exist for this sample (e.g. a Weibull-domain
// quantity with gamma_hat >= 0). Deliberately not an input error: the data is
// fine, the method is inapplicable.
class unavailable_error : public std::runtime_error {
public:
    explicit unavailable_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric optimisation failed to converge or produced inconsistent fits.
class optimization_error : public std::runtime_error {
public:
    explicit optimization_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation not defined for this variant (e.g. closed-form quantile of model 2).
class unsupported_error : public std::logic_error {
public:
    explicit unsupported_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace evtk
