// states.hpp
// Bipartite density matrices and the named state families.
//
// Basis convention: the product basis |i>|j> is ordered with the A index
// major, so entry (i*dB + k, j*dB + l) of rho is <i k|rho|j l> and rho splits
// into dA x dA blocks Z_{i,j} of size dB x dB.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Eigenvalues>

#include "random.hpp"
#include "types.hpp"

namespace realm {

namespace detail {

inline Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

inline std::string format_value(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

} // namespace detail

// Throws validation_error naming the first violated invariant.
inline void validate_density_matrix(const Dims& dims, const ComplexMatrix& m,
                                    double tol = kStateTolerance, bool check_psd = true) {
    if (dims.dA < 2 || dims.dB < 2) {
        throw validation_error("shape", "subsystem dimensions must be >= 2");
    }
    const auto n = detail::idx(dims.total());
    if (m.rows() != n || m.cols() != n) {
        std::ostringstream os;
        os << "shape: matrix is " << m.rows() << "x" << m.cols() << " but dA*dB = " << n;
        throw validation_error("shape", os.str());
    }
    if (!m.allFinite()) {
        throw validation_error("finite", "finite: matrix contains NaN or Inf entries");
    }
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) {
        throw validation_error("hermiticity", "hermiticity: max |rho - rho^dagger| = " +
                                                  detail::format_value(herm));
    }
    const double trace_err = std::abs(m.trace() - complex(1.0, 0.0));
    if (trace_err > tol) {
        throw validation_error("trace",
                               "trace: |tr rho - 1| = " + detail::format_value(trace_err));
    }
    if (check_psd) {
        const ComplexMatrix sym = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -tol) {
            throw validation_error("psd", "psd: minimum eigenvalue " +
                                              detail::format_value(min_eig) + " is negative");
        }
    }
}

class DensityMatrix {
public:
    // Validated construction: Hermitian, unit trace, PSD within kStateTolerance.
    DensityMatrix(Dims dims, ComplexMatrix matrix)
        : dims_(dims), matrix_(std::move(matrix)) {
        validate_density_matrix(dims_, matrix_);
    }

    // Skips the PSD eigen-solve; for states the library builds itself.
    static DensityMatrix trusted(Dims dims, ComplexMatrix matrix) {
        validate_density_matrix(dims, matrix, kStateTolerance, false);
        return DensityMatrix(dims, std::move(matrix), TrustedTag{});
    }

    const Dims& dims() const { return dims_; }
    std::size_t dA() const { return dims_.dA; }
    std::size_t dB() const { return dims_.dB; }
    std::size_t dim() const { return dims_.total(); }
    const ComplexMatrix& matrix() const& { return matrix_; }
    ComplexMatrix matrix() && { return std::move(matrix_); }

    // Block Z_{i,j} (dB x dB).
    ComplexMatrix block(std::size_t i, std::size_t j) const {
        const auto b = detail::idx(dims_.dB);
        return matrix_.block(detail::idx(i) * b, detail::idx(j) * b, b, b);
    }

private:
    struct TrustedTag {};
    DensityMatrix(Dims dims, ComplexMatrix matrix, TrustedTag)
        : dims_(dims), matrix_(std::move(matrix)) {}

    Dims dims_;
    ComplexMatrix matrix_;
};

// Kronecker product, A index major.
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

enum class Subsystem { A, B };

// Traces out `traced`: Subsystem::B yields rho_A (dA x dA), Subsystem::A
// yields rho_B (dB x dB).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, Subsystem traced) {
    const auto dA = detail::idx(dims.dA);
    const auto dB = detail::idx(dims.dB);
    if (m.rows() != dA * dB || m.cols() != dA * dB) {
        throw dimension_error("partial_trace: matrix size does not match dA*dB");
    }
    if (traced == Subsystem::B) {
        ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
        for (Eigen::Index i = 0; i < dA; ++i) {
            for (Eigen::Index j = 0; j < dA; ++j) {
                out(i, j) = m.block(i * dB, j * dB, dB, dB).trace();
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
    for (Eigen::Index i = 0; i < dA; ++i) {
        out += m.block(i * dB, i * dB, dB, dB);
    }
    return out;
}

inline ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem traced) {
    return partial_trace(rho.matrix(), rho.dims(), traced);
}

inline ComplexMatrix reduced_a(const DensityMatrix& rho) { return partial_trace(rho, Subsystem::B); }
inline ComplexMatrix reduced_b(const DensityMatrix& rho) { return partial_trace(rho, Subsystem::A); }

// Swap operator on C^d (x) C^d: F|i>|j> = |j>|i>.
inline ComplexMatrix flip_operator(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("flip_operator: d must be >= 2");
    }
    const auto n = detail::idx(d);
    ComplexMatrix f = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            f(j * n + i, i * n + j) = 1.0;
        }
    }
    return f;
}

inline ComplexMatrix bell_projector() {
    ComplexMatrix phi = ComplexMatrix::Zero(4, 4);
    phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
    return phi;
}

// p |phi+><phi+| + (1-p)/4 I on 2x2.
inline DensityMatrix bell_noise_state(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::out_of_range("bell_noise_state: p must lie in [0, 1]");
    }
    ComplexMatrix m = p * bell_projector() + (1.0 - p) / 4.0 * ComplexMatrix::Identity(4, 4);
    return DensityMatrix::trusted({2, 2}, std::move(m));
}

// Werner state ((d-p) I + (dp-1) F) / (d^3 - d); separable iff p >= 0.
inline DensityMatrix werner_state(std::size_t d, double p) {
    if (d < 2) {
        throw std::out_of_range("werner_state: d must be >= 2");
    }
    if (!(p >= -1.0 && p <= 1.0)) {
        throw std::out_of_range("werner_state: p must lie in [-1, 1]");
    }
    const double dd = static_cast<double>(d);
    const auto n = detail::idx(d * d);
    ComplexMatrix m = ((dd - p) * ComplexMatrix::Identity(n, n) + (dd * p - 1.0) * flip_operator(d)) /
                      (dd * dd * dd - dd);
    return DensityMatrix::trusted({d, d}, std::move(m));
}

// (1-b)/3 I + (4b-1)/3 |phi+><phi+|; Bell fidelity equals b.
inline DensityMatrix isotropic_b_state(double b) {
    if (!(b >= 0.0 && b <= 1.0)) {
        throw std::out_of_range("isotropic_b_state: b must lie in [0, 1]");
    }
    ComplexMatrix m =
        (1.0 - b) / 3.0 * ComplexMatrix::Identity(4, 4) + (4.0 * b - 1.0) / 3.0 * bell_projector();
    return DensityMatrix::trusted({2, 2}, std::move(m));
}

// sum_i p_i |a_i><a_i| (x) |b_i><b_i| with random unit vectors and weights.
inline DensityMatrix random_separable_state(Dims dims, std::size_t terms, std::uint64_t seed) {
    if (terms < 1) {
        throw std::invalid_argument("random_separable_state: terms must be >= 1");
    }
    Sampler rng(seed);
    const Eigen::VectorXd weights = rng.probability_vector(terms);
    const auto n = detail::idx(dims.total());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (std::size_t t = 0; t < terms; ++t) {
        const Eigen::VectorXcd a = rng.unit_vector(dims.dA);
        const Eigen::VectorXcd b = rng.unit_vector(dims.dB);
        const ComplexMatrix pa = a * a.adjoint();
        const ComplexMatrix pb = b * b.adjoint();
        m += weights(detail::idx(t)) * tensor_product(pa, pb);
    }
    m = 0.5 * (m + m.adjoint());
    m /= m.trace().real();
    return DensityMatrix::trusted(dims, std::move(m));
}

// G G^dagger / tr(G G^dagger) for a complex Gaussian G (Hilbert-Schmidt measure).
inline DensityMatrix random_density_matrix(Dims dims, std::uint64_t seed) {
    Sampler rng(seed);
    const auto n = detail::idx(dims.total());
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    ComplexMatrix m = g * g.adjoint();
    m = 0.5 * (m + m.adjoint());
    m /= m.trace().real();
    return DensityMatrix::trusted(dims, std::move(m));
}

enum class FamilyTag { BellNoise, Werner, IsotropicB, CustomFile };

inline std::string_view to_string(FamilyTag tag) {
    switch (tag) {
    case FamilyTag::BellNoise: return "bell-noise";
    case FamilyTag::Werner: return "werner";
    case FamilyTag::IsotropicB: return "isotropic-b";
    case FamilyTag::CustomFile: return "custom-file";
    }
    return "unknown";
}

inline std::optional<FamilyTag> parse_family(std::string_view s) {
    if (s == "bell-noise") return FamilyTag::BellNoise;
    if (s == "werner") return FamilyTag::Werner;
    if (s == "isotropic-b") return FamilyTag::IsotropicB;
    if (s == "custom-file") return FamilyTag::CustomFile;
    return std::nullopt;
}

// One-parameter family of states. A custom-file family wraps a single fixed
// state and ignores the parameter.
class StateFamily {
public:
    static StateFamily bell_noise() { return StateFamily(FamilyTag::BellNoise, 2, 0.0, 1.0); }
    static StateFamily werner(std::size_t d) { return StateFamily(FamilyTag::Werner, d, -1.0, 1.0); }
    static StateFamily isotropic_b() { return StateFamily(FamilyTag::IsotropicB, 2, 0.0, 1.0); }
    static StateFamily custom(DensityMatrix state) {
        StateFamily f(FamilyTag::CustomFile, state.dA(), 0.0, 0.0);
        f.fixed_ = std::move(state);
        return f;
    }

    FamilyTag tag() const { return tag_; }
    std::size_t d() const { return d_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool parametric() const { return tag_ != FamilyTag::CustomFile; }

    DensityMatrix at(double x) const {
        switch (tag_) {
        case FamilyTag::BellNoise: return bell_noise_state(x);
        case FamilyTag::Werner: return werner_state(d_, x);
        case FamilyTag::IsotropicB: return isotropic_b_state(x);
        case FamilyTag::CustomFile: return *fixed_;
        }
        throw std::logic_error("StateFamily: unknown tag");
    }

private:
    StateFamily(FamilyTag tag, std::size_t d, double lo, double hi)
        : tag_(tag), d_(d), lo_(lo), hi_(hi) {}

    FamilyTag tag_;
    std::size_t d_;
    double lo_;
    double hi_;
    std::optional<DensityMatrix> fixed_;
};

} // namespace realm
