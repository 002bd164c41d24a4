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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "complex_matrix.hpp"
#include "errors.hpp"
#include "hilbert_family.hpp"
#include "schatten.hpp"
#include "schur_symbol.hpp"
#include "vector_valued.hpp"

namespace schurlab {

// ---- function tables -----------------------------------------------------

/// Sampled real function f on a strictly increasing grid.
struct FunctionTable {
    std::vector<double> xs;
    std::vector<double> ys;

    FunctionTable(std::vector<double> x, std::vector<double> y)
        : xs(std::move(x)), ys(std::move(y)) {
        if (xs.size() != ys.size()) throw dimension_error("table needs matching x/y lengths");
        if (xs.size() < 2) throw config_error("table needs at least two points");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw config_error("table grid must be strictly increasing");
    }

    bool nondecreasing() const {
        for (std::size_t i = 1; i < ys.size(); ++i)
            if (ys[i] < ys[i - 1]) return false;
        return true;
    }

    /// Observed Lipschitz constant on the grid.
    double lipschitz() const {
        double lip = 0.0;
        for (std::size_t i = 1; i < xs.size(); ++i)
            lip = std::max(lip, std::abs(ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]));
        return lip;
    }

    /// Parse [[x, f(x)], ...] with strictly increasing x.
    static FunctionTable from_json(const nlohmann::json& j) {
        std::vector<double> xs, ys;
        for (const auto& pair : j) {
            if (!pair.is_array() || pair.size() != 2)
                throw config_error("table entries must be [x, f(x)] pairs");
            xs.push_back(pair[0].get<double>());
            ys.push_back(pair[1].get<double>());
        }
        return FunctionTable(std::move(xs), std::move(ys));
    }
};

// ---- Grothendieck-Haagerup type symbols -----------------------------------

/// Constructed symbol plus the degenerate pairs that were zeroed under the
/// 0/0 = 0 convention.
struct SymbolBuild {
    SchurSymbol symbol;
    std::vector<std::pair<std::size_t, std::size_t>> degenerate;
};

namespace detail {

inline void require_contraction(const ComplexMatrix& lambda) {
    if (operator_norm(lambda) > 1.0 + kContractionTol)
        throw contraction_error("Lambda exceeds the contraction bound");
}

inline double sum_tol(const VectorFamily& a, const VectorFamily& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, vec_norm(a.vector(j)));
    for (std::size_t j = 0; j < b.size(); ++j) m = std::max(m, vec_norm(b.vector(j)));
    return 1e-12 * (1.0 + m);
}

} // namespace detail

/// M(j,k) = < (u_j + u'_k)/||.||, Lambda((w_j + w'_k)/||.||) >. Entries with
/// a vanishing denominator are zeroed and flagged.
inline SymbolBuild gh_symbol(const VectorFamily& u, const VectorFamily& uprime,
                             const VectorFamily& w, const VectorFamily& wprime,
                             const ComplexMatrix& lambda) {
    const std::size_t n = u.size();
    if (uprime.size() != n || w.size() != n || wprime.size() != n)
        throw dimension_error("gh families must share one index set");
    if (u.dim() != uprime.dim() || w.dim() != wprime.dim())
        throw dimension_error("paired families must share dimensions");
    if (lambda.rows() != u.dim() || lambda.cols() != w.dim())
        throw dimension_error("Lambda must map the w-space into the u-space");
    detail::require_contraction(lambda);

    const double tol_u = detail::sum_tol(u, uprime);
    const double tol_w = detail::sum_tol(w, wprime);

    SymbolBuild out;
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            CVec us = vec_add(u.vector(j), uprime.vector(k));
            CVec ws = vec_add(w.vector(j), wprime.vector(k));
            const double nu = vec_norm(us), nw = vec_norm(ws);
            if (nu <= tol_u || nw <= tol_w) {
                out.degenerate.emplace_back(j, k);
                continue;
            }
            for (auto& z : us) z /= nu;
            for (auto& z : ws) z /= nw;
            m(j, k) = inner(us, mat_vec(lambda, ws));
        }
    out.symbol = SchurSymbol(std::move(m), "gh", u.labels());
    return out;
}

/// Difference-form symbol on the doubled index set whose corner recovers
/// the gh symbol: (h_j, g_j) = +(u_j, w_j) on the first copy and
/// -(u'_j, w'_j) on the second.
struct CornerEmbed {
    SchurSymbol doubled;
    SchurSymbol corner;
    double corner_error = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> degenerate;
};

inline CornerEmbed corner_embed(const VectorFamily& u, const VectorFamily& uprime,
                                const VectorFamily& w, const VectorFamily& wprime,
                                const ComplexMatrix& lambda) {
    const std::size_t n = u.size();
    if (uprime.size() != n || w.size() != n || wprime.size() != n)
        throw dimension_error("corner embedding needs four families on one index set");
    detail::require_contraction(lambda);

    std::vector<CVec> h, g;
    std::vector<double> labels;
    for (std::size_t j = 0; j < n; ++j) {
        h.push_back(u.vector(j));
        g.push_back(w.vector(j));
        labels.push_back(u.label(j));
    }
    for (std::size_t j = 0; j < n; ++j) {
        h.push_back(vec_scale(uprime.vector(j), -1.0));
        g.push_back(vec_scale(wprime.vector(j), -1.0));
        labels.push_back(u.label(j) + static_cast<double>(n));
    }
    VectorFamily hf(u.dim(), h, labels), gf(w.dim(), g, labels);

    const double tol_u = detail::sum_tol(u, uprime);
    const double tol_w = detail::sum_tol(w, wprime);

    CornerEmbed out;
    ComplexMatrix m(2 * n, 2 * n);
    for (std::size_t a = 0; a < 2 * n; ++a)
        for (std::size_t b = 0; b < 2 * n; ++b) {
            CVec hd = vec_sub(hf.vector(a), hf.vector(b));
            CVec gd = vec_sub(gf.vector(a), gf.vector(b));
            const double nh = vec_norm(hd), ng = vec_norm(gd);
            if (nh <= tol_u || ng <= tol_w) {
                out.degenerate.emplace_back(a, b);
                continue;
            }
            for (auto& z : hd) z /= nh;
            for (auto& z : gd) z /= ng;
            m(a, b) = inner(hd, mat_vec(lambda, gd));
        }
    out.doubled = SchurSymbol(std::move(m), "gh-corner-doubled", labels);

    ComplexMatrix corner(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) corner(j, k) = out.doubled.entries(j, n + k);
    out.corner = SchurSymbol(std::move(corner), "gh-corner", u.labels());

    const auto direct = gh_symbol(u, uprime, w, wprime, lambda);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            out.corner_error = std::max(
                out.corner_error, std::abs(out.corner.entries(j, k) - direct.symbol.entries(j, k)));
    return out;
}

// ---- divided differences ---------------------------------------------------

namespace detail {

/// Divided differences of a nondecreasing table; the diagonal takes the
/// symmetric difference quotient (one-sided at the grid endpoints).
inline ComplexMatrix divided_difference_matrix(const FunctionTable& f) {
    if (!f.nondecreasing()) throw monotonicity_error("table must be nondecreasing");
    const std::size_t n = f.xs.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                d(i, j) = (f.ys[i] - f.ys[j]) / (f.xs[i] - f.xs[j]);
            } else {
                const std::size_t lo = i == 0 ? 0 : i - 1;
                const std::size_t hi = i + 1 == n ? i : i + 1;
                d(i, j) = (f.ys[hi] - f.ys[lo]) / (f.xs[hi] - f.xs[lo]);
            }
        }
    return d;
}

} // namespace detail

/// M(x,y) = ((f(x) - f(y)) / (x - y))^beta for 0 < beta < 1.
inline SchurSymbol beta_divided_symbol(const FunctionTable& f, double beta) {
    if (!(beta > 0.0) || !(beta < 1.0)) throw config_error("beta must lie in (0, 1)");
    ComplexMatrix d = detail::divided_difference_matrix(f);
    for (auto& z : d.data()) {
        const double q = std::max(z.real(), 0.0);
        z = beta == 0.5 ? std::sqrt(q) : std::pow(q, beta);
    }
    return SchurSymbol(std::move(d), "beta_divided(beta=" + std::to_string(beta) + ")", f.xs);
}

/// M(x,y) = sqrt((f(x) - f(y)) / (x - y)): the beta = 1/2 case.
inline SchurSymbol arazy_sqrt_symbol(const FunctionTable& f) {
    SchurSymbol s = beta_divided_symbol(f, 0.5);
    s.provenance = "arazy_sqrt";
    return s;
}

/// M(j,k) = ||Lambda(w_j) - Lambda(w_k)|| / ||w_j - w_k||, 0/0 = 0 flagged.
inline SymbolBuild hilbert_divided_symbol(const VectorFamily& w, const ComplexMatrix& lambda) {
    if (lambda.cols() != w.dim()) throw dimension_error("Lambda domain mismatch");
    detail::require_contraction(lambda);
    const std::size_t n = w.size();
    SymbolBuild out;
    ComplexMatrix m(n, n);
    std::vector<CVec> mapped;
    for (std::size_t j = 0; j < n; ++j) mapped.push_back(mat_vec(lambda, w.vector(j)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double den = vec_norm(vec_sub(w.vector(j), w.vector(k)));
            if (den <= w.tol_eq()) {
                out.degenerate.emplace_back(j, k);
                continue;
            }
            m(j, k) = vec_norm(vec_sub(mapped[j], mapped[k])) / den;
        }
    out.symbol = SchurSymbol(std::move(m), "hilbert_divided", w.labels());
    return out;
}

// ---- generalized triangular truncations ------------------------------------

/// Map a: grid -> Z defining the truncation sgn(j - a_k).
struct TriangularData {
    std::vector<long long> a;
};

/// M(j,k) = sgn(grid_j - a_k) with sgn(0) = 1.
inline SchurSymbol triangular_symbol(const std::vector<long long>& grid, const TriangularData& a) {
    const std::size_t n = grid.size();
    if (a.a.size() != n) throw dimension_error("truncation map must cover the grid");
    ComplexMatrix m(n, n);
    std::vector<double> labels(n);
    for (std::size_t j = 0; j < n; ++j) labels[j] = static_cast<double>(grid[j]);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            m(j, k) = sgn(static_cast<double>(grid[j] - a.a[k]));
    return SchurSymbol(std::move(m), "triangular", labels);
}

// ---- Marcinkiewicz layer-cake decomposition ---------------------------------

/// One generalized triangular term in the op orientation: the symbol value
/// at (j,k) is sgn(label_k - thresholds[j]).
struct TriangularTerm {
    double weight = 0.0;
    std::vector<long long> thresholds;
};

struct MarcinkiewiczDecomposition {
    std::vector<TriangularTerm> terms;
    double identity_weight = 0.0; // coefficient of the all-ones symbol
    double weight_sum = 0.0;      // sum |weights| + |identity_weight|
    double bound = 0.0;           // sup row variation + sup |row offset|
    ComplexMatrix reconstruction;
    double residual = 0.0;
    std::vector<long long> labels;

    double term_value(const TriangularTerm& t, std::size_t j, std::size_t k) const {
        return sgn(static_cast<double>(labels[k] - t.thresholds[j]));
    }
};

/// Exact finite layer cake of one row: value(k) = offset + sum of
/// weight_i * 1_{label_k >= threshold_i}.
struct HalfLineTerm {
    double weight;
    long long threshold;
};

inline std::vector<HalfLineTerm> row_layer_cake(const std::vector<double>& row,
                                               const std::vector<long long>& labels) {
    if (row.size() != labels.size()) throw dimension_error("row/label length mismatch");
    std::vector<HalfLineTerm> terms;
    for (std::size_t k = 1; k < row.size(); ++k) {
        const double jump = row[k] - row[k - 1];
        if (jump != 0.0) terms.push_back({jump, labels[k]});
    }
    return terms;
}

/// Decompose a real symbol of finite row variation into generalized
/// triangular truncations plus an identity term. Rows are bundled across a
/// shared cumulative-variation scale; every half-line indicator is realized
/// as a difference of two truncations, so the weight sum stays below
/// sup-variation + sup-offset.
inline MarcinkiewiczDecomposition marcinkiewicz_decompose(const SchurSymbol& m) {
    const std::size_t n = m.size();
    const double scale = m.entries.max_abs();
    for (const auto& z : m.entries.data())
        if (std::abs(z.imag()) > 1e-12 * (1.0 + scale))
            throw decomposition_error("rows must be real for the variation decomposition");

    MarcinkiewiczDecomposition out;
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.labels[i] = std::llround(m.labels[i]);
        if (i > 0 && out.labels[i] <= out.labels[i - 1])
            throw decomposition_error("labels must form an increasing Z-grid");
    }
    const long long kSmall = out.labels.front() - 1; // sgn row constant +1
    const long long kBig = out.labels.back() + 1;    // sgn row constant -1

    // Per-row jumps in column order.
    struct Jump {
        double mass; // |jump|
        double sign;
        long long pos;
    };
    std::vector<std::vector<Jump>> jumps(n);
    std::vector<std::vector<double>> prefix(n); // cumulative |mass| after each jump
    std::vector<double> variation(n, 0.0), offset(n);
    std::set<double> cuts;
    for (std::size_t j = 0; j < n; ++j) {
        offset[j] = m.entries(j, 0).real();
        double cum = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            const double d = m.entries(j, k).real() - m.entries(j, k - 1).real();
            if (d == 0.0) continue;
            jumps[j].push_back({std::abs(d), d > 0 ? 1.0 : -1.0, out.labels[k]});
            cum += std::abs(d);
            prefix[j].push_back(cum);
            cuts.insert(cum); // the same double lands in `cuts` and `prefix`
        }
        variation[j] = cum;
    }

    // Jump bundles: the global cuts refine every row's jump intervals, so
    // inside each slice a row exposes one active jump (or none) and the
    // active-jump lookup below compares identical doubles, exactly. The
    // signed half-line profile of a slice is (T_a - T_b)/2 for
    // sentinel-padded threshold maps a, b.
    std::vector<std::size_t> cursor(n, 0);
    double t_lo = 0.0;
    for (double t_hi : cuts) {
        const double w = t_hi - t_lo;
        TriangularTerm plus{+w / 2.0, std::vector<long long>(n, kBig)};
        TriangularTerm minus{-w / 2.0, std::vector<long long>(n, kBig)};
        for (std::size_t j = 0; j < n; ++j) {
            while (cursor[j] < prefix[j].size() && prefix[j][cursor[j]] <= t_lo) ++cursor[j];
            if (cursor[j] >= jumps[j].size()) continue; // row exhausted: 0 here
            const Jump& jj = jumps[j][cursor[j]];
            if (jj.sign > 0)
                plus.thresholds[j] = jj.pos; // (sgn(k-pos) + 1)/2 = 1_{k >= pos}
            else
                minus.thresholds[j] = jj.pos; // -(sgn(k-pos) + 1)/2
        }
        out.terms.push_back(std::move(plus));
        out.terms.push_back(std::move(minus));
        t_lo = t_hi;
    }

    // Offsets: midrange goes to the identity term, the residual profile is
    // leveled into sentinel-only truncations (constant +-1 rows).
    const auto [cmin_it, cmax_it] = std::minmax_element(offset.begin(), offset.end());
    const double cmid = (*cmin_it + *cmax_it) / 2.0;
    const double rho = (*cmax_it - *cmin_it) / 2.0;
    out.identity_weight = cmid;
    if (rho > 0.0) {
        std::set<double> levels;
        std::vector<double> s(n);
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = ((offset[j] - cmid) / rho + 1.0) / 2.0;
            if (s[j] > 0.0) levels.insert(std::min(s[j], 1.0));
        }
        levels.insert(1.0);
        double lo = 0.0;
        for (double hi : levels) {
            TriangularTerm t{rho * (hi - lo), std::vector<long long>(n)};
            for (std::size_t j = 0; j < n; ++j) t.thresholds[j] = s[j] >= hi ? kSmall : kBig;
            out.terms.push_back(std::move(t));
            lo = hi;
        }
    }

    // Drop zero-weight terms, reconstruct and measure.
    std::erase_if(out.terms, [](const TriangularTerm& t) { return t.weight == 0.0; });
    out.reconstruction = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            double v = out.identity_weight;
            for (const auto& t : out.terms) v += t.weight * out.term_value(t, j, k);
            out.reconstruction(j, k) = v;
            out.residual = std::max(out.residual, std::abs(v - m.entries(j, k).real()));
        }
    for (const auto& t : out.terms) out.weight_sum += std::abs(t.weight);
    out.weight_sum += std::abs(out.identity_weight);
    double vmax = 0.0, cmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        vmax = std::max(vmax, variation[j]);
        cmax = std::max(cmax, std::abs(offset[j]));
    }
    out.bound = vmax + cmax;
    return out;
}

// ---- Littlewood-Paley blocks -----------------------------------------------

/// Disjoint families of index pairs; dyadic annuli when produced by
/// dyadic_blocks. Pairs at sup-distance zero are never covered.
struct DyadicBlocks {
    std::vector<int> levels; // block id, 2^k <= |x-y|_inf < 2^{k+1} for dyadic
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;
    std::size_t n = 0;

    std::size_t count() const { return pairs.size(); }

    void validate_disjoint() const {
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& block : pairs)
            for (const auto& pr : block)
                if (!seen.insert(pr).second)
                    throw partition_error("blocks overlap on a pair");
    }
};

inline DyadicBlocks dyadic_blocks(const std::vector<std::vector<double>>& points) {
    const std::size_t n = points.size();
    std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> by_level;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double dist = 0.0;
            for (std::size_t c = 0; c < points[i].size(); ++c)
                dist = std::max(dist, std::abs(points[i][c] - points[j][c]));
            if (dist <= 0.0) continue;
            int k = static_cast<int>(std::floor(std::log2(dist)));
            while (std::exp2(k + 1) <= dist) ++k;
            while (std::exp2(k) > dist) --k;
            by_level[k].emplace_back(i, j);
        }
    DyadicBlocks out;
    out.n = n;
    for (auto& [k, prs] : by_level) {
        out.levels.push_back(k);
        out.pairs.push_back(std::move(prs));
    }
    return out;
}

inline DyadicBlocks dyadic_blocks(const std::vector<double>& line) {
    std::vector<std::vector<double>> pts;
    pts.reserve(line.size());
    for (double x : line) pts.push_back({x});
    return dyadic_blocks(pts);
}

/// M(j,k) = sum_b 1_{(j,k) in block_b} M_b(j,k); requires one symbol per
/// block and pairwise disjoint blocks.
inline SchurSymbol assemble_from_blocks(const DyadicBlocks& blocks,
                                        const std::vector<SchurSymbol>& symbols) {
    if (symbols.size() != blocks.count())
        throw partition_error("need exactly one symbol per block");
    blocks.validate_disjoint();
    ComplexMatrix m(blocks.n, blocks.n);
    for (std::size_t b = 0; b < blocks.count(); ++b) {
        if (symbols[b].size() != blocks.n) throw dimension_error("block symbol size mismatch");
        for (const auto& [j, k] : blocks.pairs[b]) m(j, k) = symbols[b].entries(j, k);
    }
    return SchurSymbol(std::move(m), "assembled_blocks");
}

/// x restricted to each block, tagged with the block's basis vector: the
/// square-function element sum_b S_{Delta_b}(x) (x) delta_b.
inline VectorValuedElement littlewood_paley_element(const ComplexMatrix& x,
                                                    const DyadicBlocks& blocks) {
    if (x.rows() != blocks.n || x.cols() != blocks.n)
        throw dimension_error("input shape does not match the block index set");
    const std::size_t n = blocks.n;
    const std::size_t d = std::max<std::size_t>(blocks.count(), 1);
    std::vector<CVec> vecs(n * n, CVec(d, cplx(0.0, 0.0)));
    for (std::size_t b = 0; b < blocks.count(); ++b)
        for (const auto& [j, k] : blocks.pairs[b]) vecs[j * n + k][b] = 1.0;
    return VectorValuedElement(x, std::move(vecs), d);
}

// ---- Hoermander-Mikhlin condition -------------------------------------------

/// Uniform product lattice in R^dims used to sample continuous symbols.
struct UniformLattice {
    std::size_t dims = 1;
    std::vector<std::size_t> counts;
    double spacing = 1.0;
    std::vector<double> origin;

    std::size_t size() const {
        std::size_t s = 1;
        for (auto c : counts) s *= c;
        return s;
    }

    std::vector<std::size_t> unflatten(std::size_t idx) const {
        std::vector<std::size_t> multi(dims);
        for (std::size_t c = dims; c-- > 0;) {
            multi[c] = idx % counts[c];
            idx /= counts[c];
        }
        return multi;
    }

    std::vector<double> point(std::size_t idx) const {
        const auto multi = unflatten(idx);
        std::vector<double> x(dims);
        for (std::size_t c = 0; c < dims; ++c) x[c] = origin[c] + spacing * multi[c];
        return x;
    }
};

namespace detail {

// One centered difference along dimension `dim` of the first index,
// one-sided at the lattice boundary.
inline std::vector<cplx> diff_first_index(const std::vector<cplx>& values,
                                          const UniformLattice& grid, std::size_t dim) {
    const std::size_t n = grid.size();
    std::vector<cplx> out(values.size());
    std::size_t stride = 1;
    for (std::size_t c = grid.dims; c-- > dim + 1;) stride *= grid.counts[c];
    const double h = grid.spacing;
    for (std::size_t a = 0; a < n; ++a) {
        const auto multi = grid.unflatten(a);
        const std::size_t pos = multi[dim];
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t idx = a * n + b;
            if (pos > 0 && pos + 1 < grid.counts[dim])
                out[idx] = (values[(a + stride) * n + b] - values[(a - stride) * n + b]) / (2.0 * h);
            else if (pos + 1 < grid.counts[dim])
                out[idx] = (values[(a + stride) * n + b] - values[idx]) / h;
            else
                out[idx] = (values[idx] - values[(a - stride) * n + b]) / h;
        }
    }
    return out;
}

inline void multi_indices(std::size_t dims, std::size_t order,
                          std::vector<std::size_t>& current,
                          std::vector<std::vector<std::size_t>>& out) {
    if (current.size() == dims) {
        out.push_back(current);
        return;
    }
    for (std::size_t v = 0; v <= order; ++v) {
        std::size_t used = v;
        for (auto u : current) used += u;
        if (used > order) break;
        current.push_back(v);
        multi_indices(dims, order, current, out);
        current.pop_back();
    }
}

} // namespace detail

/// Discrete Hoermander-Mikhlin quantity: the sup over sampled pairs x != y
/// and multi-indices |gamma| <= order of
/// |x-y|^{|gamma|} (|d^gamma_x M| + |d^gamma_y M|), with plain |M| as the
/// gamma = 0 term. Derivatives are centered finite differences of step h.
inline double mikhlin_condition(const SchurSymbol& m, const UniformLattice& grid,
                                std::size_t order = 0) {
    if (order == 0) order = grid.dims / 2 + 1;
    if (m.size() != grid.size()) throw dimension_error("symbol does not match the lattice");
    for (auto c : grid.counts)
        if (c <= order) throw resolution_error("grid too coarse for the requested order");

    const std::size_t n = grid.size();
    std::vector<std::vector<double>> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = grid.point(i);
    const auto dist = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t c = 0; c < grid.dims; ++c) {
            const double d = pts[a][c] - pts[b][c];
            s += d * d;
        }
        return std::sqrt(s);
    };

    std::vector<std::vector<std::size_t>> gammas;
    std::vector<std::size_t> scratch;
    detail::multi_indices(grid.dims, order, scratch, gammas);

    const std::vector<cplx>& base = m.entries.data();
    const std::vector<cplx> base_t = m.entries.transpose().data();

    double best = 0.0;
    for (const auto& gamma : gammas) {
        std::size_t total = 0;
        for (auto g : gamma) total += g;

        if (total == 0) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (a != b) best = std::max(best, std::abs(base[a * n + b]));
            continue;
        }

        // d^gamma in the first argument; the y-derivative is the same
        // operator applied to the transposed sample table.
        std::vector<cplx> dx = base, dy = base_t;
        for (std::size_t c = 0; c < grid.dims; ++c)
            for (std::size_t rep = 0; rep < gamma[c]; ++rep) {
                dx = detail::diff_first_index(dx, grid, c);
                dy = detail::diff_first_index(dy, grid, c);
            }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                const double r = std::pow(dist(a, b), static_cast<double>(total));
                const double v = r * (std::abs(dx[a * n + b]) + std::abs(dy[b * n + a]));
                best = std::max(best, v);
            }
    }
    return best;
}

/// Sample a two-point function on a lattice.
template <class F>
inline SchurSymbol symbol_on_lattice(const UniformLattice& grid, F&& fn, std::string provenance) {
    const std::size_t n = grid.size();
    ComplexMatrix m(n, n);
    std::vector<double> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = static_cast<double>(a);
        const auto xa = grid.point(a);
        for (std::size_t b = 0; b < n; ++b) m(a, b) = fn(xa, grid.point(b));
    }
    return SchurSymbol(std::move(m), std::move(provenance), labels);
}

} // namespace schurlab
