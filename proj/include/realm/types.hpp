// types.hpp
// Shared matrix aliases, dimension labels and error types.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace realm {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance for Hermiticity, trace and PSD checks on states.
inline constexpr double kStateTolerance = 1e-10;

// Relative tolerance used for every Entangled verdict.
inline constexpr double kVerdictTolerance = 1e-9;

// Bipartite dimension labels (dA, dB), both >= 2.
struct Dims {
    std::size_t dA = 2;
    std::size_t dB = 2;

    std::size_t total() const { return dA * dB; }
    bool operator==(const Dims&) const = default;
};

// Raised when a matrix fails one of the density-matrix invariants.
// `invariant` is one of "hermiticity", "trace", "psd", "finite", "shape".
class validation_error : public std::invalid_argument {
public:
    validation_error(std::string invariant, const std::string& what)
        : std::invalid_argument(what), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numeric evaluation produced something unusable (NaN, missing bracket, ...).
class evaluation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace realm
