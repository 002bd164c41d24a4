/* Copyright (C) 2026 The schurlab authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "complex_matrix.hpp"
#include "errors.hpp"

namespace schurlab {

/// Eigensystem of a Hermitian matrix, eigenvalues nonincreasing,
/// columns of `vectors` the matching orthonormal eigenvectors.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Singular value decomposition A = U diag(values) V*, values nonincreasing.
/// Columns of U/V past the numerical rank are zero.
struct SingularSpectrum {
    std::vector<double> values;
    ComplexMatrix u;
    ComplexMatrix v;
};

namespace detail {

// One cyclic complex Jacobi rotation zeroing the (p,q) entry of a Hermitian
// working matrix. With g = A(p,q) = |g| e^{i theta}, the unitary
//   G = [[c, s e^{i theta}], [-s e^{-i theta}, c]]
// applied as A <- G* A G annihilates the off-diagonal pair.
struct JacobiRotation {
    double c;
    double s;
    cplx phase; // e^{i theta}
};

inline JacobiRotation make_rotation(double app, double aqq, cplx apq) {
    const double mag = std::abs(apq);
    JacobiRotation rot{1.0, 0.0, cplx(1.0, 0.0)};
    if (mag == 0.0) return rot;
    rot.phase = apq / mag;
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    rot.c = 1.0 / std::sqrt(1.0 + t * t);
    rot.s = rot.c * t;
    return rot;
}

} // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices. The input is
/// symmetrized first; use is_hermitian() beforehand when the caller must
/// reject non-Hermitian data.
inline HermitianEigen hermitian_eig(const ComplexMatrix& input) {
    if (input.rows() != input.cols()) throw dimension_error("eigensolver needs a square matrix");
    const std::size_t n = input.rows();

    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(a.max_abs(), 1e-300);
    const double stop = 1e-15 * scale;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                if (std::abs(apq) <= stop * 1e-2) continue;
                const auto rot =
                    detail::make_rotation(a(p, p).real(), a(q, q).real(), apq);
                const cplx gpq = rot.s * rot.phase;

                // Columns: [a_p, a_q] <- [a_p, a_q] G.
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = rot.c * aip - std::conj(gpq) * aiq;
                    a(i, q) = gpq * aip + rot.c * aiq;
                }
                // Rows: G* applied on the left.
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = rot.c * apj - gpq * aqj;
                    a(q, j) = std::conj(gpq) * apj + rot.c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = rot.c * vip - std::conj(gpq) * viq;
                    v(i, q) = gpq * vip + rot.c * viq;
                }
            }
        }
    }

    HermitianEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return out.values[x] > out.values[y]; });

    HermitianEigen sorted;
    sorted.values.resize(n);
    sorted.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted.values[k] = out.values[order[k]];
        for (std::size_t i = 0; i < n; ++i) sorted.vectors(i, k) = v(i, order[k]);
    }
    return sorted;
}

namespace detail {

// One-sided Jacobi on the columns of w (m x n, m >= n is not required here;
// the public wrapper arranges that). Right rotations are accumulated in v.
inline void one_sided_jacobi(ComplexMatrix& w, ComplexMatrix& v) {
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    const int max_sweeps = 64;
    const double tol = 1e-14;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += std::norm(w(i, p));
                    aqq += std::norm(w(i, q));
                    apq += std::conj(w(i, p)) * w(i, q);
                }
                const double bound = std::sqrt(app * aqq);
                if (std::abs(apq) <= tol * bound || bound == 0.0) continue;
                rotated = true;

                const auto rot = make_rotation(app, aqq, apq);
                const cplx gpq = rot.s * rot.phase;
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx wip = w(i, p), wiq = w(i, q);
                    w(i, p) = rot.c * wip - std::conj(gpq) * wiq;
                    w(i, q) = gpq * wip + rot.c * wiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = rot.c * vip - std::conj(gpq) * viq;
                    v(i, q) = gpq * vip + rot.c * viq;
                }
            }
        }
        if (!rotated) break;
    }
}

} // namespace detail

/// One-sided Jacobi SVD. Accurate at the scales this library targets
/// (dimensions up to a few hundred, mild conditioning).
inline SingularSpectrum svd(const ComplexMatrix& a) {
    const bool flip = a.rows() < a.cols();
    ComplexMatrix w = flip ? a.adjoint() : a;
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    ComplexMatrix vacc = ComplexMatrix::identity(n);
    detail::one_sided_jacobi(w, vacc);

    std::vector<double> sigma(n);
    ComplexMatrix u(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(w(i, j));
        sigma[j] = std::sqrt(s);
        if (sigma[j] > 0.0)
            for (std::size_t i = 0; i < m; ++i) u(i, j) = w(i, j) / sigma[j];
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SingularSpectrum out;
    out.values.resize(n);
    ComplexMatrix us(m, n), vs(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = sigma[order[k]];
        for (std::size_t i = 0; i < m; ++i) us(i, k) = u(i, order[k]);
        for (std::size_t i = 0; i < n; ++i) vs(i, k) = vacc(i, order[k]);
    }
    if (flip) {
        out.u = vs;
        out.v = us;
    } else {
        out.u = us;
        out.v = vs;
    }
    return out;
}

/// Singular values only, nonincreasing.
inline std::vector<double> singular_values(const ComplexMatrix& a) { return svd(a).values; }

} // namespace schurlab
