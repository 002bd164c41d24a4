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

#include <cmath>
#include <limits>
#include <vector>

#include "complex_matrix.hpp"
#include "decompositions.hpp"
#include "errors.hpp"

namespace schurlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// SVD reconstruction tolerance, relative to the largest singular value.
inline double tol_svd(double scale) { return 1e-10 * std::max(scale, 1.0); }

/// PSD tolerance used by psd_sqrt and Gram factorizations.
inline double tol_psd(double scale) { return 1e-8 * (1.0 + scale); }

/// l_p norm of a nonnegative, nonincreasing singular-value vector.
inline double schatten_from_singular(const std::vector<double>& sigma, double p) {
    if (!(p >= 1.0) && p != kInf) throw invalid_exponent_error("Schatten exponent must satisfy p >= 1");
    if (sigma.empty()) return 0.0;
    if (p == kInf) return sigma.front();
    const double top = sigma.front();
    if (top == 0.0) return 0.0;
    // Scale by the largest value so sigma^p cannot overflow.
    double s = 0.0;
    for (double v : sigma) s += std::pow(v / top, p);
    return top * std::pow(s, 1.0 / p);
}

/// Schatten p-norm (sum of p-th powers of singular values, to the 1/p),
/// with p = infinity meaning the largest singular value.
inline double schatten_norm(const ComplexMatrix& a, double p) {
    if (!(p >= 1.0) && p != kInf) throw invalid_exponent_error("Schatten exponent must satisfy p >= 1");
    if (a.empty()) return 0.0;
    return schatten_from_singular(singular_values(a), p);
}

inline double operator_norm(const ComplexMatrix& a) { return schatten_norm(a, kInf); }

/// tr(AB) for composable shapes, computed without forming the product.
inline cplx trace_pairing(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw dimension_error("trace pairing needs an m x n and an n x m matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

/// Hermitian PSD square root. Eigenvalues in [-tol_psd, 0) are clamped to
/// zero; anything below -tol_psd rejects the input.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw dimension_error("psd_sqrt needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return a;
    const double scale = a.max_abs();
    const double tol = tol_psd(scale);
    if (!a.is_hermitian(tol)) throw not_psd_error("matrix is not Hermitian within tolerance");

    const auto eig = hermitian_eig(a);
    for (double lam : eig.values)
        if (lam < -tol) throw not_psd_error("matrix has an eigenvalue below -tol_psd");

    ComplexMatrix b(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(eig.values[k], 0.0));
        if (root == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx uik = eig.vectors(i, k) * root;
            if (uik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j)
                b(i, j) += uik * std::conj(eig.vectors(j, k));
        }
    }
    return b;
}

/// Schatten p-norm of the PSD square root of a Hermitian PSD matrix,
/// i.e. the l_{p} norm of the square roots of its eigenvalues. Used for
/// Gram-contracted column/row norms without forming the root explicitly.
inline double schatten_norm_of_psd_sqrt(const ComplexMatrix& gram, double p) {
    if (gram.rows() != gram.cols()) throw dimension_error("gram must be square");
    if (gram.rows() == 0) return 0.0;
    const double scale = gram.max_abs();
    const double tol = tol_psd(scale);
    if (!gram.is_hermitian(tol)) throw not_psd_error("gram is not Hermitian within tolerance");
    auto eig = hermitian_eig(gram);
    std::vector<double> sigma(eig.values.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (eig.values[i] < -tol) throw not_psd_error("gram has a negative eigenvalue");
        sigma[i] = std::sqrt(std::max(eig.values[i], 0.0));
    }
    return schatten_from_singular(sigma, p);
}

/// Norming element of the Schatten p-ball at W: the maximizer of
/// Re tr(W* X) over ||X||_p <= 1, pairing to the dual norm ||W||_{p'}.
/// For 1 < p < infinity this is U (sigma/||W||_{p'})^{p'-1} V*; the
/// endpoint cases use a tie-tolerant subspace form so that repeated
/// singular values are treated evenly.
inline ComplexMatrix p_ball_norming(const ComplexMatrix& w, double p) {
    if (!(p >= 1.0) && p != kInf) throw invalid_exponent_error("Schatten exponent must satisfy p >= 1");
    const auto dec = svd(w);
    const std::size_t r = dec.values.size();
    std::vector<double> f(r, 0.0);
    const double top = r ? dec.values.front() : 0.0;
    if (top == 0.0) return ComplexMatrix::zeros(w.rows(), w.cols());

    if (p == 1.0) {
        // Average of the top singular subspace, normalized in S_1.
        const double tie = top * 1e-12;
        std::size_t m = 0;
        while (m < r && dec.values[m] >= top - tie) ++m;
        for (std::size_t i = 0; i < m; ++i) f[i] = 1.0 / static_cast<double>(m);
    } else if (p == kInf) {
        for (std::size_t i = 0; i < r; ++i) f[i] = dec.values[i] > top * 1e-14 ? 1.0 : 0.0;
    } else {
        const double q = p / (p - 1.0);
        const double norm = schatten_from_singular(dec.values, q);
        for (std::size_t i = 0; i < r; ++i) f[i] = std::pow(dec.values[i] / norm, q - 1.0);
    }

    ComplexMatrix x(w.rows(), w.cols());
    for (std::size_t k = 0; k < r; ++k) {
        if (f[k] == 0.0) continue;
        for (std::size_t i = 0; i < w.rows(); ++i) {
            const cplx uf = dec.u(i, k) * f[k];
            if (uf == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < w.cols(); ++j) x(i, j) += uf * std::conj(dec.v(j, k));
        }
    }
    return x;
}

/// Gradient of B -> ||B||_p with respect to conj(B) (Wirtinger), valid for
/// 1 < p < infinity away from ||B|| = 0: U (sigma/||B||)^{p-1} V*.
inline ComplexMatrix schatten_norm_gradient(const SingularSpectrum& dec, double p) {
    const std::size_t rows = dec.u.rows(), cols = dec.v.rows();
    ComplexMatrix g(rows, cols);
    const double norm = schatten_from_singular(dec.values, p);
    if (norm == 0.0) return g;
    for (std::size_t k = 0; k < dec.values.size(); ++k) {
        const double fk = std::pow(dec.values[k] / norm, p - 1.0);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < rows; ++i) {
            const cplx uf = dec.u(i, k) * fk;
            if (uf == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < cols; ++j) g(i, j) += uf * std::conj(dec.v(j, k));
        }
    }
    return g;
}

} // namespace schurlab
