#pragma once

#include <stdexcept>
#include <string>

namespace hyperfade {

/// Parameter outside its admissible range. Carries the offending field name
/// so CLI and config errors can point at the exact flag.
class DomainError : public std::domain_error {
public:
    DomainError(std::string field, const std::string& what)
        : std::domain_error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Requested fractional moment does not exist; reports the open interval of
/// admissible orders.
class MomentRangeError : public DomainError {
public:
    MomentRangeError(std::string field, double order, double lo, double hi,
                     const std::string& what)
        : DomainError(std::move(field), what), order_(order), lo_(lo), hi_(hi) {}

    double order() const noexcept { return order_; }
    double range_lo() const noexcept { return lo_; }
    double range_hi() const noexcept { return hi_; }

private:
    double order_, lo_, hi_;
};

/// A numerical routine failed to meet its tolerance; the best estimate and
/// its error bound are preserved so callers can decide whether to proceed.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate,
                     double error_estimate)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_, error_estimate_;
};

/// Mellin-Barnes contour problems: infeasible abscissa or undetected decay.
class ContourError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root bracketing violated f(lo)*f(hi) < 0.
class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Experiment configuration rejected; carries the field path.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field_path, const std::string& what)
        : std::invalid_argument(what), field_path_(std::move(field_path)) {}

    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

}  // namespace hyperfade
