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
#include <string>
#include <vector>

#include "json.hpp"

#include "complex_matrix.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "schatten.hpp"
#include "schur_symbol.hpp"
#include "symbol_zoo.hpp"

namespace schurlab {

/// Certified lower bound on ||S_M : S_p -> S_p||. The stored certificate
/// matrix reproduces the value as a plain ratio.
struct NormEstimate {
    std::string provenance;
    double p = 0.0;
    double value = 0.0;
    ComplexMatrix certificate;
    std::size_t iterations = 0;
    bool converged = false;
};

struct EstimatorOptions {
    int starts = 8;
    int max_iter = 500;
    double stall_tol = 1e-9;
    int stall_window = 20;
    std::uint64_t seed = 0x5eedULL;
};

/// Ascent on ||S_M(X)||_p / ||X||_p by iterated duality mapping, the
/// p-analogue of power iteration:
///   Z <- norming of S_M(X) in the p'-ball, X <- norming of S_{conj M}(Z)
///   in the p-ball.
/// Each step is monotone in the bilinear pairing, so every returned value
/// is a valid lower bound. Ties at repeated singular values are handled by
/// the subspace-averaged norming inside p_ball_norming.
inline NormEstimate estimate_sp_norm(const SchurSymbol& m, double p,
                                     const EstimatorOptions& opts = {}) {
    if (!(p >= 1.0) && p != kInf) throw invalid_exponent_error("Schatten exponent must satisfy p >= 1");
    const std::size_t n = m.size();
    const SchurSymbol mbar = symbol_conj(m);
    const double pprime = p == kInf ? 1.0 : (p == 1.0 ? kInf : p / (p - 1.0));

    NormEstimate best;
    best.provenance = m.provenance;
    best.p = p;

    if (m.entries.max_abs() == 0.0) {
        best.certificate = ComplexMatrix::matrix_unit(n, 0, 0);
        best.converged = true;
        return best;
    }

    std::vector<ComplexMatrix> starts;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(m.entries(i, j)) > std::abs(m.entries(bi, bj))) { bi = i; bj = j; }
    starts.push_back(ComplexMatrix::matrix_unit(n, bi, bj));
    {
        ComplexMatrix ones(n, n);
        for (auto& z : ones.data()) z = 1.0;
        starts.push_back(ones);
        starts.push_back(ComplexMatrix::identity(n));
    }
    CounterRng rng(opts.seed, 0x0e57);
    while (starts.size() < static_cast<std::size_t>(opts.starts))
        starts.push_back(random_matrix(rng, n, n));

    for (auto& x0 : starts) {
        ComplexMatrix x = x0;
        const double nx = schatten_norm(x, p);
        if (nx == 0.0) continue;
        x *= cplx(1.0 / nx, 0.0);

        double value = schatten_norm(apply_multiplier(m, x), p);
        double window_best = value;
        int stall = 0;
        std::size_t it = 0;
        bool converged = false;
        for (; it < static_cast<std::size_t>(opts.max_iter); ++it) {
            const ComplexMatrix z = p_ball_norming(apply_multiplier(m, x), pprime);
            const ComplexMatrix next = p_ball_norming(apply_multiplier(mbar, z), p);
            if (next.max_abs() == 0.0) break; // start annihilated by the symbol
            x = next;
            value = schatten_norm(apply_multiplier(m, x), p);
            if (value <= window_best * (1.0 + opts.stall_tol)) {
                if (++stall >= opts.stall_window) {
                    converged = true;
                    break;
                }
            } else {
                stall = 0;
                window_best = value;
            }
        }
        // Recompute the ratio at the certificate so the stored value is
        // reproducible to full precision.
        const double ratio = schatten_norm(apply_multiplier(m, x), p) / schatten_norm(x, p);
        if (ratio > best.value) {
            best.value = ratio;
            best.certificate = x;
            best.iterations = it;
            best.converged = converged;
        }
    }
    return best;
}

/// Block amplification M_amp((j,s),(k,t)) = M(j,k) on Gamma x {1..m}.
/// Estimates are nondecreasing in m and bound the cb norm from below.
inline SchurSymbol amplify(const SchurSymbol& m, std::size_t blocks) {
    if (blocks < 1) throw config_error("amplification needs m >= 1");
    const std::size_t n = m.size();
    ComplexMatrix big(n * blocks, n * blocks);
    std::vector<double> labels(n * blocks);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t s = 0; s < blocks; ++s) {
            labels[j * blocks + s] = m.labels[j];
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t t = 0; t < blocks; ++t)
                    big(j * blocks + s, k * blocks + t) = m.entries(j, k);
        }
    return SchurSymbol(std::move(big), m.provenance + "|amp" + std::to_string(blocks), labels);
}

// ---- p sweeps over the symbol constructions ---------------------------------

/// Reference envelope for a construction at exponent p. The estimator's
/// values are compared against K_global times this quantity.
inline double sweep_envelope(const std::string& construction, double p, double lip = 1.0,
                             double beta = 0.5) {
    const double base = std::max(p, p / (p - 1.0));
    if (construction == "gh") return std::pow(base, 2.5);
    if (construction == "corollary31" || construction == "triangular") return base;
    if (construction == "arazy") return std::pow(base, 2.5) * std::sqrt(lip);
    if (construction == "beta") return std::pow(base, 2.0 - beta) * std::pow(lip, beta);
    if (construction == "hilbert_divided") return std::pow(base, 2.5);
    throw config_error("unknown construction tag: " + construction);
}

/// M1(j,k) = <(u_j - u_k)/||.||, w_j/||w_j||> (use_row) or the w_k mirror.
inline SymbolBuild corollary31_symbol(const VectorFamily& u, const VectorFamily& w,
                                      bool use_row) {
    if (u.size() != w.size()) throw dimension_error("families must share the index set");
    const std::size_t n = u.size();
    SymbolBuild out;
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const CVec diff = u.normalized_difference(j, k);
            if (vec_norm(diff) == 0.0) {
                out.degenerate.emplace_back(j, k);
                continue;
            }
            const CVec& wv = w.vector(use_row ? j : k);
            const double nw = vec_norm(wv);
            if (nw <= w.tol_eq()) {
                out.degenerate.emplace_back(j, k);
                continue;
            }
            m(j, k) = inner(diff, vec_scale(wv, 1.0 / nw));
        }
    out.symbol = SchurSymbol(std::move(m), use_row ? "corollary31_row" : "corollary31_col",
                             u.labels());
    return out;
}

struct SweepRow {
    std::string construction;
    std::size_t n = 0;
    double p = 0.0;
    double estimate = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
    bool converged = false;
    std::uint64_t seed = 0;
};

struct SweepSpec {
    std::string construction;
    std::vector<std::size_t> sizes{8};
    std::vector<double> p_list{4.0 / 3.0, 2.0, 4.0};
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    double k_global = 8.0;
    std::size_t dim = 3;    // Hilbert dimension for family-based symbols
    double beta = 0.3;      // Remark-style divided-difference power
};

namespace detail {

inline VectorFamily sweep_family(CounterRng& rng, std::size_t n, std::size_t d) {
    std::vector<CVec> vecs(n);
    for (auto& v : vecs) {
        v.resize(d);
        for (auto& z : v) z = rng.next_complex_gaussian();
    }
    return VectorFamily(d, std::move(vecs));
}

inline ComplexMatrix sweep_contraction(CounterRng& rng, std::size_t d) {
    ComplexMatrix l = random_matrix(rng, d, d);
    const double nrm = operator_norm(l);
    if (nrm > 0.0) l *= cplx((0.2 + 0.8 * rng.next_double()) / nrm, 0.0);
    return l;
}

/// Build one random instance of the named construction. Returns the symbol
/// plus the Lipschitz datum used by the envelope.
inline std::pair<SchurSymbol, double> sweep_instance(const SweepSpec& spec, std::size_t n,
                                                     CounterRng& rng) {
    if (spec.construction == "gh") {
        const auto u = sweep_family(rng, n, spec.dim);
        const auto u2 = sweep_family(rng, n, spec.dim);
        const auto w = sweep_family(rng, n, spec.dim);
        const auto w2 = sweep_family(rng, n, spec.dim);
        return {gh_symbol(u, u2, w, w2, sweep_contraction(rng, spec.dim)).symbol, 1.0};
    }
    if (spec.construction == "corollary31") {
        const auto u = sweep_family(rng, n, spec.dim);
        const auto w = sweep_family(rng, n, spec.dim);
        return {corollary31_symbol(u, w, rng.next_double() < 0.5).symbol, 1.0};
    }
    if (spec.construction == "triangular") {
        std::vector<long long> grid(n);
        TriangularData a;
        a.a.resize(n);
        for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<long long>(i);
        for (std::size_t i = 0; i < n; ++i)
            a.a[i] = static_cast<long long>(rng.uniform_index(n + 4)) - 2;
        return {triangular_symbol(grid, a), 1.0};
    }
    if (spec.construction == "arazy" || spec.construction == "beta") {
        std::vector<double> xs(n), ys(n);
        double x = 0.0, y = rng.next_double();
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = x;
            ys[i] = y;
            x += 0.25 + rng.next_double();
            y += 2.0 * rng.next_double(); // nondecreasing increments
        }
        FunctionTable table(xs, ys);
        const double lip = table.lipschitz();
        if (spec.construction == "arazy") return {arazy_sqrt_symbol(table), lip};
        return {beta_divided_symbol(table, spec.beta), lip};
    }
    if (spec.construction == "hilbert_divided") {
        const auto w = sweep_family(rng, n, spec.dim);
        return {hilbert_divided_symbol(w, sweep_contraction(rng, spec.dim)).symbol, 1.0};
    }
    throw config_error("unknown construction tag: " + spec.construction);
}

} // namespace detail

/// Estimate the construction's multiplier norms across the (n, p) grid and
/// compare with the theoretical envelope.
inline std::vector<SweepRow> p_sweep(const SweepSpec& spec, const EstimatorOptions& opts = {}) {
    std::vector<SweepRow> rows;
    for (std::size_t trial = 0; trial < spec.trials; ++trial)
        for (std::size_t n : spec.sizes) {
            CounterRng rng(spec.seed, trial, n);
            const auto [symbol, lip] = detail::sweep_instance(spec, n, rng);
            for (double p : spec.p_list) {
                EstimatorOptions eopts = opts;
                eopts.seed = spec.seed + 77 * trial;
                const auto est = estimate_sp_norm(symbol, p, eopts);
                SweepRow row;
                row.construction = spec.construction;
                row.n = n;
                row.p = p;
                row.estimate = est.value;
                row.envelope = sweep_envelope(spec.construction, p, lip, spec.beta);
                row.ratio = row.envelope > 0.0 ? row.estimate / row.envelope : 0.0;
                row.converged = est.converged;
                row.seed = spec.seed;
                rows.push_back(row);
            }
        }
    return rows;
}

} // namespace schurlab
