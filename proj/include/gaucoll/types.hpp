#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gaucoll {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

inline constexpr const char* kVersion = "0.1.0";

/// Absolute tolerance for symmetry / symplecticity defects.
inline constexpr double kSymTol = 1e-10;
/// Tolerance for positivity of sigma + (i/2) Omega (scaled by the matrix norm).
inline constexpr double kPosTol = 1e-9;
/// Condition-number ceiling for linear solves (intermediate maps, fixed points).
inline constexpr double kCondMax = 1e12;

// Error taxonomy. The CLI maps these onto exit codes:
// ConfigError -> 2, numerical validity errors -> 3, ResourceError -> 4.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct BasisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericOverflowError : ValidityError {
    using ValidityError::ValidityError;
};

struct IllConditionedError : ValidityError {
    IllConditionedError(const std::string& what, double cond)
        : ValidityError(what), condition_number(cond) {}
    double condition_number;
};

struct NoFixedPointError : ValidityError {
    using ValidityError::ValidityError;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gaucoll
