// random.hpp
// Seeded sampling used by the random state generators.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Normals come from the Box-Muller transform below rather than
// std::normal_distribution (whose algorithm is implementation-defined), so a
// seed yields the same stream with any standard library.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "types.hpp"

namespace realm {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    // Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    // Unit vector uniformly distributed on the complex sphere.
    Eigen::VectorXcd unit_vector(std::size_t n) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = complex_normal();
        }
        return v / v.norm();
    }

    // Point on the probability simplex (flat Dirichlet).
    Eigen::VectorXd probability_vector(std::size_t n) {
        Eigen::VectorXd w(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            double u = uniform();
            while (u <= 0.0) {
                u = uniform();
            }
            w(i) = -std::log(u);
        }
        return w / w.sum();
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace realm
