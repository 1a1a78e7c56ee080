// moments.hpp
// Singular values, Schatten norms, realignment moments a_k and the Hankel
// moment matrices built from them.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "realignment.hpp"
#include "types.hpp"

namespace realm {

// All min(rows, cols) singular values, descending.
inline RealVector singular_values(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return RealVector(0);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

inline double schatten_norm_from_singular_values(const RealVector& s, double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("schatten_norm: p must be >= 1");
    }
    double sum = 0.0;
    for (double v : s) {
        sum += std::pow(v, p);
    }
    return std::pow(sum, 1.0 / p);
}

inline double schatten_norm(const ComplexMatrix& m, double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("schatten_norm: p must be >= 1");
    }
    return schatten_norm_from_singular_values(singular_values(m), p);
}

inline double trace_norm(const ComplexMatrix& m) { return singular_values(m).sum(); }

// How a_0 is fixed. `Traceless` uses (dA^2-1)(dB^2-1); `MatrixDimension` uses
// tr I = l + dA^2 on the row space of M M^dagger, which is what makes H_k a
// Gram matrix.
enum class A0Convention { Traceless, MatrixDimension };

inline std::string_view to_string(A0Convention c) {
    return c == A0Convention::Traceless ? "traceless" : "matrix-dimension";
}

inline double traceless_a0(const Dims& dims) {
    const double a = static_cast<double>(dims.dA * dims.dA) - 1.0;
    const double b = static_cast<double>(dims.dB * dims.dB) - 1.0;
    return a * b;
}

inline double matrix_dimension_a0(const Dims& dims, std::size_t border) {
    return static_cast<double>(border + dims.dA * dims.dA);
}

// Moments needed by the largest Hankel matrices of the default ranges:
// max(2*floor(n/2), 2*floor((n-1)/2) + 1) with n = dA*dB.
inline std::size_t default_moment_order(const Dims& dims) {
    const std::size_t n = dims.total();
    return std::max(2 * (n / 2), 2 * ((n - 1) / 2) + 1);
}

inline std::size_t default_max_order_h(const Dims& dims) { return dims.total() / 2; }
inline std::size_t default_max_order_b(const Dims& dims) { return (dims.total() - 1) / 2; }

struct MomentSequence {
    std::vector<double> values; // a_0 ... a_K
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t border = 0;
    Dims dims;
    A0Convention convention = A0Convention::Traceless;
    RealVector singular_values;

    std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
    double operator[](std::size_t k) const { return values.at(k); }

    // K beyond (dA^2-1)(dB^2-1) is allowed; callers may surface this flag.
    bool beyond_a0_range() const { return static_cast<double>(order()) > traceless_a0(dims); }
};

// a_k = sum_i s_i^k for k = 1..K, from one set of singular values.
inline MomentSequence moments_from_singular_values(const RealVector& s, const BorderedRealignment& b,
                                                   std::size_t order,
                                                   A0Convention convention = A0Convention::Traceless) {
    if (order < 1) {
        throw std::invalid_argument("moments: K must be >= 1");
    }
    MomentSequence out;
    out.alpha = b.alpha;
    out.beta = b.beta;
    out.border = b.border;
    out.dims = b.dims;
    out.convention = convention;
    out.singular_values = s;
    out.values.assign(order + 1, 0.0);
    out.values[0] = convention == A0Convention::Traceless ? traceless_a0(b.dims)
                                                      : matrix_dimension_a0(b.dims, b.border);
    RealVector power = RealVector::Ones(s.size());
    for (std::size_t k = 1; k <= order; ++k) {
        power = power.cwiseProduct(s);
        out.values[k] = power.sum();
    }
    return out;
}

inline MomentSequence moments(const BorderedRealignment& b, std::size_t order,
                              A0Convention convention = A0Convention::Traceless) {
    return moments_from_singular_values(singular_values(b.matrix), b, order, convention);
}

// Hankel matrix whose entry (i, j) is a_{i + j + offset}; offset 0 gives H_k,
// offset 1 gives B_r.
struct HankelMatrix {
    RealMatrix values;
    std::size_t offset = 0;

    std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
    std::size_t moment_index(std::size_t i, std::size_t j) const { return i + j + offset; }
};

namespace detail {

inline HankelMatrix assemble_hankel(const MomentSequence& a, std::size_t order, std::size_t offset,
                                    const char* name) {
    const std::size_t needed = 2 * order + offset;
    if (order < 1) {
        throw std::invalid_argument(std::string(name) + ": order must be >= 1");
    }
    if (needed > a.order()) {
        throw std::out_of_range(std::string(name) + ": insufficient moments (need a_" +
                                std::to_string(needed) + ", have a_" + std::to_string(a.order()) +
                                ")");
    }
    const auto n = idx(order + 1);
    HankelMatrix h{RealMatrix(n, n), offset};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            h.values(i, j) = a[static_cast<std::size_t>(i + j) + offset];
        }
    }
    return h;
}

} // namespace detail

// [H_k]_{ij} = a_{i+j}, i, j = 0..k.
inline HankelMatrix hankel_H(const MomentSequence& a, std::size_t k) {
    return detail::assemble_hankel(a, k, 0, "hankel_H");
}

// [B_r]_{mn} = a_{m+n+1}, m, n = 0..r.
inline HankelMatrix hankel_B(const MomentSequence& a, std::size_t r) {
    return detail::assemble_hankel(a, r, 1, "hankel_B");
}

// Replaces every a_1 entry with `bound`.
inline HankelMatrix substitute_bound(HankelMatrix h, double bound) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            if (h.moment_index(i, j) == 1) {
                h.values(detail::idx(i), detail::idx(j)) = bound;
            }
        }
    }
    return h;
}

inline double min_eigenvalue(const RealMatrix& s) {
    if (s.rows() != s.cols()) {
        throw std::invalid_argument("min_eigenvalue: matrix is not square");
    }
    if (s.size() == 0) {
        throw std::invalid_argument("min_eigenvalue: empty matrix");
    }
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("min_eigenvalue: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Tolerance below which a minimum eigenvalue counts as negative.
inline double psd_tolerance(const RealMatrix& s) {
    const double scale = s.size() == 0 ? 1.0 : std::max(1.0, s.cwiseAbs().maxCoeff());
    return kVerdictTolerance * scale;
}

inline bool is_psd(const RealMatrix& s) { return min_eigenvalue(s) >= -psd_tolerance(s); }

struct HankelEntry {
    char family = 'H'; // 'H' or 'B'
    std::size_t order = 0;
    HankelMatrix matrix;
    double min_eigenvalue = 0.0;
};

// Ĥ_k (k = 1..maxH) and B̂_r (r = 1..maxB) with a_1 replaced by `bound`.
struct HankelReport {
    double bound = 0.0;
    std::vector<HankelEntry> h;
    std::vector<HankelEntry> b;
};

inline HankelReport hankel_report(const MomentSequence& a, double bound, std::size_t max_order_h,
                                  std::size_t max_order_b) {
    HankelReport rep;
    rep.bound = bound;
    for (std::size_t k = 1; k <= max_order_h; ++k) {
        HankelMatrix m = substitute_bound(hankel_H(a, k), bound);
        const double e = min_eigenvalue(m.values);
        rep.h.push_back({'H', k, std::move(m), e});
    }
    for (std::size_t r = 1; r <= max_order_b; ++r) {
        HankelMatrix m = substitute_bound(hankel_B(a, r), bound);
        const double e = min_eigenvalue(m.values);
        rep.b.push_back({'B', r, std::move(m), e});
    }
    return rep;
}

} // namespace realm
