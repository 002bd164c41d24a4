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
#include <functional>
#include <utility>
#include <vector>

#include "complex_matrix.hpp"
#include "rng.hpp"
#include "schatten.hpp"

namespace schurlab {

/// Options for the p < 2 splitting descent.
struct SplitOptions {
    int max_iter = 200;
    int random_restarts = 3;
    double gap_tol = 2e-2; // relative upper/lower certification gap
    double stall_tol = 1e-6;
    int stall_window = 10;
    int race_iters = 20; // burn-in before only the best start continues
    std::uint64_t seed = 0x5eedULL;
};

/// A pair of linear embeddings of the same coefficient vector. For the
/// splitting problem, the column side receives the column part of the
/// coefficients and the row side the complement; minimizing
///   ||col(c)||_p + ||row(x - c)||_p
/// over c is convex because both embeddings are linear.
struct EmbeddingPair {
    std::size_t dofs = 0;
    std::function<ComplexMatrix(const std::vector<cplx>&)> col;
    std::function<ComplexMatrix(const std::vector<cplx>&)> row;
    std::function<std::vector<cplx>(const ComplexMatrix&)> col_adjoint;
    std::function<std::vector<cplx>(const ComplexMatrix&)> row_adjoint;
};

struct SplitOutcome {
    std::vector<cplx> col_part; // optimizer's column coefficients
    double value = 0.0;         // best split objective (upper bound)
    int iterations = 0;
    // Schatten norming matrices of the two sides at the best split;
    // pulled back through the adjoints they give dual certificates.
    ComplexMatrix col_norming;
    ComplexMatrix row_norming;
};

namespace detail {

struct SplitState {
    std::vector<cplx> c, rest;
    SingularSpectrum dec_c, dec_r;
    double f = 0.0;
    double step = 1.0;
    double window_best = 0.0;
    int stall = 0;
    int iterations = 0;
    bool done = false;
};

inline SplitState split_eval(const EmbeddingPair& emb, const std::vector<cplx>& x,
                             std::vector<cplx> c, double p) {
    SplitState s;
    s.c = std::move(c);
    s.rest.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s.rest[i] = x[i] - s.c[i];
    s.dec_c = svd(emb.col(s.c));
    s.dec_r = svd(emb.row(s.rest));
    s.f = schatten_from_singular(s.dec_c.values, p) + schatten_from_singular(s.dec_r.values, p);
    s.window_best = s.f;
    return s;
}

// One gradient step with backtracking; the SVDs of the accepted point are
// kept for the next gradient and for the final certificate.
inline void split_step(const EmbeddingPair& emb, const std::vector<cplx>& x, double p,
                       const SplitOptions& opts, SplitState& s) {
    const std::size_t dofs = x.size();
    const auto yc = emb.col_adjoint(schatten_norm_gradient(s.dec_c, p));
    const auto yr = emb.row_adjoint(schatten_norm_gradient(s.dec_r, p));
    std::vector<cplx> grad(dofs);
    double gnorm2 = 0.0;
    for (std::size_t i = 0; i < dofs; ++i) {
        grad[i] = yc[i] - yr[i];
        gnorm2 += std::norm(grad[i]);
    }
    if (gnorm2 <= 1e-28) {
        s.done = true;
        return;
    }

    std::vector<cplx> trial(dofs), trial_rest(dofs);
    for (int bt = 0; bt < 40; ++bt) {
        for (std::size_t i = 0; i < dofs; ++i) {
            trial[i] = s.c[i] - s.step * grad[i];
            trial_rest[i] = x[i] - trial[i];
        }
        SingularSpectrum dec_c = svd(emb.col(trial));
        SingularSpectrum dec_r = svd(emb.row(trial_rest));
        const double ft =
            schatten_from_singular(dec_c.values, p) + schatten_from_singular(dec_r.values, p);
        if (ft <= s.f - 1e-4 * s.step * gnorm2) {
            s.c.swap(trial);
            s.rest.swap(trial_rest);
            s.dec_c = std::move(dec_c);
            s.dec_r = std::move(dec_r);
            s.f = ft;
            s.step *= 1.3;
            ++s.iterations;
            if (s.f >= s.window_best * (1.0 - opts.stall_tol)) {
                if (++s.stall >= opts.stall_window) s.done = true;
            } else {
                s.stall = 0;
                s.window_best = s.f;
            }
            return;
        }
        s.step *= 0.5;
    }
    s.done = true; // no descent direction left at machine precision
}

} // namespace detail

/// Gradient descent with backtracking on the convex split objective,
/// started from the trivial all-column and all-row splits plus random
/// interpolations. Starts race for a short burn-in, then the best one runs
/// to convergence. Returns the best split seen.
inline SplitOutcome minimize_split(const EmbeddingPair& emb, const std::vector<cplx>& x,
                                   double p, const SplitOptions& opts = {}) {
    const std::size_t dofs = x.size();

    std::vector<std::vector<cplx>> starts;
    starts.push_back(x);                       // all-column split
    starts.emplace_back(dofs, cplx(0.0, 0.0)); // all-row split
    CounterRng rng(opts.seed, 0xC0FFEE);
    for (int r = 0; r < opts.random_restarts; ++r) {
        std::vector<cplx> c(dofs);
        for (std::size_t i = 0; i < dofs; ++i) c[i] = x[i] * rng.next_double();
        starts.push_back(std::move(c));
    }

    std::vector<detail::SplitState> states;
    states.reserve(starts.size());
    for (auto& c : starts) states.push_back(detail::split_eval(emb, x, std::move(c), p));

    // Small problems are cheap enough to run every start to the end.
    const int race = dofs <= 128 ? opts.max_iter : opts.race_iters;
    for (auto& s : states)
        while (!s.done && s.iterations < race) detail::split_step(emb, x, p, opts, s);

    std::size_t best = 0;
    for (std::size_t i = 1; i < states.size(); ++i)
        if (states[i].f < states[best].f) best = i;
    auto& champion = states[best];
    while (!champion.done && champion.iterations < opts.max_iter)
        detail::split_step(emb, x, p, opts, champion);

    SplitOutcome out;
    out.value = champion.f;
    out.col_part = std::move(champion.c);
    out.iterations = champion.iterations;
    out.col_norming = schatten_norm_gradient(champion.dec_c, p);
    out.row_norming = schatten_norm_gradient(champion.dec_r, p);
    return out;
}

} // namespace schurlab
