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
#include <cstdint>
#include <utility>
#include <vector>

#include "complex_matrix.hpp"
#include "decompositions.hpp"
#include "errors.hpp"
#include "hilbert_family.hpp"
#include "rng.hpp"
#include "schatten.hpp"
#include "schur_symbol.hpp"
#include "vector_valued.hpp"

namespace schurlab {

/// E|g|^p for a standard real gaussian: 2^{p/2} Gamma((p+1)/2) / sqrt(pi).
inline double gaussian_absolute_moment(double p) {
    return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) -
                    0.5 * std::log(3.14159265358979323846));
}

/// gamma_p = (E|g|^p)^{1/p}; the single-term Khintchine ratio.
inline double gamma_p(double p) { return std::pow(gaussian_absolute_moment(p), 1.0 / p); }

/// Simple-tensor sum x_1 (x) u_1 + ... + x_T (x) u_T as a vector-valued
/// element: the (j,k) entry carries the H-valued coordinate
/// sum_t x_t(j,k) u_t.
inline VectorValuedElement simple_tensor_sum(const std::vector<ComplexMatrix>& xs,
                                             const std::vector<CVec>& us) {
    if (xs.empty() || xs.size() != us.size())
        throw dimension_error("need one vector per coefficient matrix");
    const std::size_t m = xs.front().rows();
    const std::size_t d = us.front().size();
    for (const auto& x : xs)
        if (x.rows() != m || x.cols() != m) throw dimension_error("coefficient shape mismatch");
    for (const auto& u : us)
        if (u.size() != d) throw dimension_error("vector dimension mismatch");

    ComplexMatrix ones(m, m);
    for (auto& z : ones.data()) z = 1.0;
    std::vector<CVec> vecs(m * m, CVec(d, cplx(0.0, 0.0)));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t t = 0; t < xs.size(); ++t) {
                const cplx c = xs[t](j, k);
                if (c == cplx(0.0, 0.0)) continue;
                for (std::size_t i = 0; i < d; ++i) vecs[j * m + k][i] += c * us[t][i];
            }
    return VectorValuedElement(std::move(ones), std::move(vecs), d);
}

struct MeanCi {
    double mean = 0.0;
    double sigma = 0.0; // standard error of the mean
    std::size_t samples = 0;

    bool contains(double target, double z) const {
        return std::abs(mean - target) <= z * sigma;
    }
};

/// Correlated gaussian field W(u_j) over a vector family. Complex families
/// are first sent through the real 2d embedding; the covariance of the
/// samples is the (real) Gram of the stored family. The factor comes from a
/// symmetric eigendecomposition, so rank-deficient Grams (repeated vectors)
/// are fine, and vectors equal up to sign reproduce each other's samples
/// exactly.
class GaussianSampler {
public:
    GaussianSampler(const VectorFamily& family, std::uint64_t seed, std::size_t samples = 100000)
        : family_(family.is_real() ? family : family.complexify_real_embedding()),
          seed_(seed),
          samples_(samples) {
        const std::size_t n = family_.size();

        // Alias vectors that coincide up to sign, so their samples match
        // bit for bit.
        alias_.resize(n);
        alias_sign_.assign(n, 1.0);
        std::vector<std::size_t> reps;
        const double tol = family_.tol_eq();
        for (std::size_t j = 0; j < n; ++j) {
            alias_[j] = reps.size();
            for (std::size_t r = 0; r < reps.size(); ++r) {
                const CVec& u = family_.vector(reps[r]);
                const CVec& v = family_.vector(j);
                if (vec_norm(vec_sub(u, v)) <= tol) {
                    alias_[j] = r;
                    break;
                }
                if (vec_norm(vec_add(u, v)) <= tol) {
                    alias_[j] = r;
                    alias_sign_[j] = -1.0;
                    break;
                }
            }
            if (alias_[j] == reps.size()) reps.push_back(j);
        }

        const std::size_t r = reps.size();
        ComplexMatrix gram(r, r);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                gram(a, b) = inner(family_.vector(reps[a]), family_.vector(reps[b])).real();
        const auto eig = hermitian_eig(gram);
        const double tol_g = tol_psd(gram.max_abs());
        for (double lam : eig.values)
            if (lam < -tol_g) throw not_psd_error("family Gram is not PSD within tolerance");

        factor_.assign(r * r, 0.0);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t mcol = 0; mcol < r; ++mcol)
                factor_[a * r + mcol] =
                    eig.vectors(a, mcol).real() * std::sqrt(std::max(eig.values[mcol], 0.0));
        rank_ = r;
    }

    std::size_t size() const { return family_.size(); }
    std::size_t samples() const { return samples_; }
    const VectorFamily& family() const { return family_; }

    ComplexMatrix gram() const { return family_.gram(); }

    /// Visit sample rows W(u_1..u_n); each row is keyed by (seed, 0, row),
    /// so the stream is reproducible independently of evaluation order.
    template <class F>
    void for_each_sample(std::size_t count, F&& fn) const {
        std::vector<double> z(rank_), w(size());
        for (std::size_t i = 0; i < count; ++i) {
            CounterRng rng(seed_, 0, i);
            for (auto& g : z) g = rng.next_gaussian();
            for (std::size_t j = 0; j < size(); ++j) {
                const std::size_t a = alias_[j];
                double s = 0.0;
                for (std::size_t mcol = 0; mcol < rank_; ++mcol)
                    s += factor_[a * rank_ + mcol] * z[mcol];
                w[j] = alias_sign_[j] * s;
            }
            fn(i, w);
        }
    }

    /// N x n sample matrix, row-major.
    std::vector<double> sample_field(std::size_t count) const {
        std::vector<double> out(count * size());
        for_each_sample(count, [&](std::size_t i, const std::vector<double>& w) {
            for (std::size_t j = 0; j < size(); ++j) out[i * size() + j] = w[j];
        });
        return out;
    }

    ComplexMatrix sample_covariance(std::size_t count) const {
        const std::size_t n = size();
        std::vector<double> acc(n * n, 0.0);
        for_each_sample(count, [&](std::size_t, const std::vector<double>& w) {
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) acc[j * n + k] += w[j] * w[k];
        });
        ComplexMatrix cov(n, n);
        for (std::size_t i = 0; i < n * n; ++i) cov.data()[i] = acc[i] / static_cast<double>(count);
        return cov;
    }

    /// Monte Carlo mean of sgn(W(u_j)) sgn(W(u_k)); for unit vectors this
    /// tracks (2/pi) arcsin <u_j, u_k>.
    MeanCi sgn_covariance(std::size_t j, std::size_t k, std::size_t count = 0) const {
        if (count == 0) count = samples_;
        const double tol = 1e-9;
        if (std::abs(vec_norm(family_.vector(j)) - 1.0) > tol ||
            std::abs(vec_norm(family_.vector(k)) - 1.0) > tol)
            throw precondition_error("sgn covariance needs unit vectors");
        double sum = 0.0;
        for_each_sample(count, [&](std::size_t, const std::vector<double>& w) {
            sum += sgn(w[j]) * sgn(w[k]);
        });
        MeanCi out;
        out.samples = count;
        out.mean = sum / static_cast<double>(count);
        out.sigma = std::sqrt(std::max(1.0 - out.mean * out.mean, 0.0) /
                              static_cast<double>(count));
        return out;
    }

    /// Regression coefficient of sgn(W(u_j) - W(u_k)) on the normalized
    /// difference W(u_j - u_k)/||u_j - u_k||; tracks sqrt(2/pi).
    MeanCi projection_coefficient(std::size_t j, std::size_t k, std::size_t count = 0) const {
        if (count == 0) count = samples_;
        const double dist = vec_norm(vec_sub(family_.vector(j), family_.vector(k)));
        if (dist <= family_.tol_eq())
            throw precondition_error("projection coefficient needs u_j != u_k");
        double sxy = 0.0, sxx = 0.0;
        std::vector<double> xs(count), ys(count);
        for_each_sample(count, [&](std::size_t i, const std::vector<double>& w) {
            const double x = (w[j] - w[k]) / dist;
            const double y = sgn(w[j] - w[k]);
            xs[i] = x;
            ys[i] = y;
            sxy += y * x;
            sxx += x * x;
        });
        MeanCi out;
        out.samples = count;
        out.mean = sxy / sxx;
        // Asymptotic standard error of the regression coefficient.
        double resid = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double r = (ys[i] - out.mean * xs[i]) * xs[i];
            resid += r * r;
        }
        out.sigma = std::sqrt(resid) / sxx;
        return out;
    }

private:
    VectorFamily family_;
    std::uint64_t seed_;
    std::size_t samples_;
    std::size_t rank_ = 0;
    std::vector<double> factor_; // rank x rank, row-major
    std::vector<std::size_t> alias_;
    std::vector<double> alias_sign_;
};

struct KhintchineReport {
    double numerator = 0.0;   // (E ||sum W_k x_k||_p^p)^{1/p}
    double numerator_lo = 0.0; // 3 sigma band, mapped through the 1/p power
    double numerator_hi = 0.0;
    double denominator = 0.0; // rc norm of sum x_k (x) u_k
    double ratio = 0.0;
    double gamma_ref = 0.0; // closed-form single-term value gamma_p
    double p = 0.0;
    std::size_t samples = 0;
};

/// Monte Carlo Khintchine ratio for sum_k x_k (x) W(u_k). Complex u_k are
/// handled as W(Re u) + i W(Im u).
inline KhintchineReport khintchine_ratio(const std::vector<ComplexMatrix>& xs,
                                         const std::vector<CVec>& us, double p,
                                         std::uint64_t seed, std::size_t count) {
    if (!(p > 1.0) || !(p < kInf))
        throw invalid_exponent_error("Khintchine ratio needs 1 < p < infinity");
    const std::size_t terms = xs.size();
    const std::size_t m = xs.front().rows();
    const std::size_t d = us.front().size();

    // Real family (Re u_1..Re u_T, Im u_1..Im u_T) in the same coordinates.
    std::vector<CVec> reals(2 * terms, CVec(d, cplx(0.0, 0.0)));
    for (std::size_t t = 0; t < terms; ++t)
        for (std::size_t i = 0; i < d; ++i) {
            reals[t][i] = us[t][i].real();
            reals[terms + t][i] = us[t][i].imag();
        }
    GaussianSampler sampler(VectorFamily(d, std::move(reals)), seed, count);

    double sum = 0.0, sumsq = 0.0;
    ComplexMatrix s(m, m);
    sampler.for_each_sample(count, [&](std::size_t, const std::vector<double>& w) {
        for (auto& z : s.data()) z = 0.0;
        for (std::size_t t = 0; t < terms; ++t) {
            const cplx weight(w[t], w[terms + t]);
            if (weight == cplx(0.0, 0.0)) continue;
            for (std::size_t i = 0; i < m * m; ++i) s.data()[i] += weight * xs[t].data()[i];
        }
        const double v = std::pow(schatten_norm(s, p), p);
        sum += v;
        sumsq += v * v;
    });

    KhintchineReport rep;
    rep.p = p;
    rep.samples = count;
    rep.gamma_ref = gamma_p(p);
    const double mean = sum / static_cast<double>(count);
    const double var = std::max(sumsq / static_cast<double>(count) - mean * mean, 0.0);
    const double se = std::sqrt(var / static_cast<double>(count));
    rep.numerator = std::pow(mean, 1.0 / p);
    rep.numerator_lo = std::pow(std::max(mean - 3.0 * se, 0.0), 1.0 / p);
    rep.numerator_hi = std::pow(mean + 3.0 * se, 1.0 / p);
    rep.denominator = rc_norm(simple_tensor_sum(xs, us), p);
    rep.ratio = rep.denominator > 0.0 ? rep.numerator / rep.denominator : 0.0;
    return rep;
}

struct SignCheckReport {
    double lhs = 0.0;   // (E ||(sgn(f_j - f_k) x_jk)||_p^p)^{1/p}
    double rhs = 0.0;   // ||x||_p
    double ratio = 0.0;
    double cp = 0.0;    // max{p, p'}, the reference envelope
    double p = 0.0;
    std::size_t samples = 0;
};

/// Pointwise sign-multiplier equivalence: per sample, the entrywise
/// multiplier sgn(W(u_j) - W(u_k)) is applied to x and the Schatten norms
/// are averaged in the p-th mean.
inline SignCheckReport sign_multiplier_check(const VectorFamily& family, const ComplexMatrix& x,
                                             double p, std::uint64_t seed, std::size_t count) {
    if (!(p > 1.0) || !(p < kInf))
        throw invalid_exponent_error("sign multiplier check needs 1 < p < infinity");
    if (x.rows() != family.size() || x.cols() != family.size())
        throw dimension_error("input shape does not match the family");
    GaussianSampler sampler(family, seed, count);
    const std::size_t n = family.size();

    double sum = 0.0;
    ComplexMatrix y(n, n);
    sampler.for_each_sample(count, [&](std::size_t, const std::vector<double>& w) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) y(j, k) = sgn(w[j] - w[k]) * x(j, k);
        sum += std::pow(schatten_norm(y, p), p);
    });

    SignCheckReport rep;
    rep.p = p;
    rep.samples = count;
    rep.lhs = std::pow(sum / static_cast<double>(count), 1.0 / p);
    rep.rhs = schatten_norm(x, p);
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    rep.cp = std::max(p, p / (p - 1.0));
    return rep;
}

} // namespace schurlab
