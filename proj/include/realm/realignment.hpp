// realignment.hpp
// Vectorization, the realignment map and its bordered extension, and the
// partial transpose.

#pragma once

#include <cstddef>

#include "states.hpp"
#include "types.hpp"

namespace realm {

// Column-stacking vectorization: entry j*m + i of the result is A(i, j).
inline ComplexMatrix vectorize(const ComplexMatrix& a) {
    ComplexMatrix v(a.rows() * a.cols(), 1);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            v(j * a.rows() + i, 0) = a(i, j);
        }
    }
    return v;
}

// Realigned matrix R (dA^2 x dB^2). Row j*dA + i holds Vec(Z_{i,j})^T, i.e.
// the blocks are listed block-column major: Z_{1,1}, ..., Z_{m,1}, Z_{1,2}, ...
// With this ordering R(sA (x) sB) = Vec(sA) Vec(sB)^T.
//
// Works for any square matrix of size dA*dB, not only density matrices.
inline ComplexMatrix realign(const ComplexMatrix& m, const Dims& dims) {
    const auto dA = detail::idx(dims.dA);
    const auto dB = detail::idx(dims.dB);
    if (m.rows() != dA * dB || m.cols() != dA * dB) {
        throw dimension_error("realign: matrix size does not match dA*dB");
    }
    ComplexMatrix r(dA * dA, dB * dB);
    for (Eigen::Index i = 0; i < dA; ++i) {
        for (Eigen::Index j = 0; j < dA; ++j) {
            const Eigen::Index row = j * dA + i;
            for (Eigen::Index l = 0; l < dB; ++l) {
                for (Eigen::Index k = 0; k < dB; ++k) {
                    r(row, l * dB + k) = m(i * dB + k, j * dB + l);
                }
            }
        }
    }
    return r;
}

inline ComplexMatrix realign(const DensityMatrix& rho) { return realign(rho.matrix(), rho.dims()); }

// l identical columns Vec(X); l = 0 gives an (mn x 0) matrix.
inline ComplexMatrix omega(const ComplexMatrix& x, std::size_t l) {
    const ComplexMatrix v = vectorize(x);
    return v.replicate(1, detail::idx(l));
}

// The bordered realignment matrix
//
//     [ alpha*beta*E_{l x l}     alpha * omega_l(rho_B)^T ]
//     [ beta * omega_l(rho_A)    R(rho)                   ]
//
// of size (l + dA^2) x (l + dB^2). The reduced states are always taken from
// rho itself.
struct BorderedRealignment {
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t border = 0;
    Dims dims;
    ComplexMatrix matrix;

    // sqrt((l alpha^2 + 1)(l beta^2 + 1)), the separable-state bound on the
    // trace norm of `matrix`.
    double trace_norm_bound() const {
        const double l = static_cast<double>(border);
        return std::sqrt((l * alpha * alpha + 1.0) * (l * beta * beta + 1.0));
    }
};

inline double trace_norm_bound(double alpha, double beta, std::size_t border) {
    const double l = static_cast<double>(border);
    return std::sqrt((l * alpha * alpha + 1.0) * (l * beta * beta + 1.0));
}

inline BorderedRealignment bordered_realignment(const DensityMatrix& rho, double alpha, double beta,
                                                std::size_t border) {
    const auto l = detail::idx(border);
    const auto nA = detail::idx(rho.dA() * rho.dA());
    const auto nB = detail::idx(rho.dB() * rho.dB());

    BorderedRealignment out{alpha, beta, border, rho.dims(), ComplexMatrix(l + nA, l + nB)};
    ComplexMatrix& m = out.matrix;
    if (l > 0) {
        m.topLeftCorner(l, l).setConstant(complex(alpha * beta, 0.0));
        m.topRightCorner(l, nB) = alpha * omega(reduced_b(rho), border).transpose();
        m.bottomLeftCorner(nA, l) = beta * omega(reduced_a(rho), border);
    }
    m.bottomRightCorner(nA, nB) = realign(rho);
    return out;
}

// Transpose on B: block Z_{i,j} becomes Z_{i,j}^T.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const Dims& dims) {
    const auto dA = detail::idx(dims.dA);
    const auto dB = detail::idx(dims.dB);
    if (m.rows() != dA * dB || m.cols() != dA * dB) {
        throw dimension_error("partial_transpose: matrix size does not match dA*dB");
    }
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < dA; ++i) {
        for (Eigen::Index j = 0; j < dA; ++j) {
            out.block(i * dB, j * dB, dB, dB) = m.block(i * dB, j * dB, dB, dB).transpose();
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho) {
    return partial_transpose(rho.matrix(), rho.dims());
}

} // namespace realm
