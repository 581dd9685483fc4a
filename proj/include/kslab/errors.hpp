#pragma once

#include <stdexcept>
#include <string>

namespace kslab {

/// Malformed model parameters or other struct-level invariant violations.
class invalid_field_error : public std::invalid_argument {
public:
    explicit invalid_field_error(const std::string& what) : std::invalid_argument(what) {}
};

/// No plateau height can satisfy the requested mass constraints.
class infeasible_datum_error : public std::runtime_error {
public:
    explicit infeasible_datum_error(const std::string& what) : std::runtime_error(what) {}
};

/// Time step fell below the configured minimum.
class step_failure_error : public std::runtime_error {
public:
    explicit step_failure_error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// A documented precondition of an operation does not hold.
class precondition_error : public std::logic_error {
public:
    explicit precondition_error(const std::string& what) : std::logic_error(what) {}
};

/// Parameters lie outside both certifiable regimes.
class empty_interval_error : public std::runtime_error {
public:
    explicit empty_interval_error(const std::string& what) : std::runtime_error(what) {}
};

/// No admissible moment cutoff satisfies the feasibility criterion.
class infeasibility_error : public std::runtime_error {
public:
    explicit infeasibility_error(const std::string& what) : std::runtime_error(what) {}
};

/// Config file syntax or semantic problem; message carries file/line/field.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kslab
