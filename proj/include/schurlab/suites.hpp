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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaussian_mc.hpp"
#include "norm_lab.hpp"
#include "report.hpp"
#include "riesz_schur.hpp"
#include "rng.hpp"
#include "schur_symbol.hpp"
#include "symbol_zoo.hpp"
#include "vector_valued.hpp"

namespace schurlab {

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "rs1",        "rs2",          "duality", "khintchine", "gaussian-identities",
        "gh",         "arazy",        "beta",    "triangular", "marcinkiewicz",
        "mikhlin",    "lp-blocks",    "p-sweep"};
    return names;
}

/// One experiment run: suite name, trial grid, seed, envelopes and output.
/// File values are overridden by CLI flags; the resolved config is echoed
/// into every report.
struct SuiteConfig {
    std::string suite;
    std::vector<std::size_t> n_list{4};
    std::vector<std::size_t> d_list{2};
    std::vector<double> p_list; // empty: per-suite default
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    double k_global = 8.0;
    std::optional<std::size_t> samples; // MC sample count
    std::string construction = "triangular"; // p-sweep target
    double beta = 0.3;                       // beta-divided-difference power
    std::string out = "-";
    std::string format = "csv";

    static SuiteConfig from_json(const nlohmann::json& j) {
        SuiteConfig c;
        c.suite = j.value("suite", std::string());
        if (j.contains("n")) c.n_list = j.at("n").get<std::vector<std::size_t>>();
        if (j.contains("d")) c.d_list = j.at("d").get<std::vector<std::size_t>>();
        if (j.contains("p")) c.p_list = j.at("p").get<std::vector<double>>();
        c.trials = j.value("trials", c.trials);
        c.seed = j.value("seed", c.seed);
        c.k_global = j.value("k_global", c.k_global);
        if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
        c.construction = j.value("construction", c.construction);
        c.beta = j.value("beta", c.beta);
        c.out = j.value("out", c.out);
        c.format = j.value("format", c.format);
        return c;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["suite"] = suite;
        j["n"] = n_list;
        j["d"] = d_list;
        j["p"] = resolved_p();
        j["trials"] = trials;
        j["seed"] = seed;
        j["k_global"] = k_global;
        j["samples"] = resolved_samples();
        if (suite == "p-sweep") j["construction"] = construction;
        if (suite == "beta" || (suite == "p-sweep" && construction == "beta")) j["beta"] = beta;
        j["format"] = format;
        return j;
    }

    std::vector<double> resolved_p() const {
        if (!p_list.empty()) return p_list;
        if (suite == "duality") return {2.0};
        if (suite == "khintchine") return {1.5, 2.0, 3.0, 4.0};
        if (suite == "rs1" || suite == "rs2") return {4.0 / 3.0, 2.0, 4.0};
        return {4.0 / 3.0, 2.0, 4.0};
    }

    /// 1e5 for ordinary suite runs, 1e6 for the identity-calibration suite.
    std::size_t resolved_samples() const {
        if (samples) return *samples;
        return suite == "gaussian-identities" ? 1000000 : 100000;
    }

    void validate() const {
        if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
            throw config_error("unknown suite: " + suite);
        if (trials < 1) throw config_error("trial count must be >= 1");
        if (resolved_samples() < 1) throw config_error("sample count must be >= 1");
        if (n_list.empty() || d_list.empty()) throw config_error("empty size grid");
        const bool endpoint_ok = suite == "gh" || suite == "arazy" || suite == "beta" ||
                                 suite == "triangular" || suite == "p-sweep" ||
                                 suite == "marcinkiewicz" || suite == "mikhlin";
        for (double p : resolved_p()) {
            if (endpoint_ok) {
                if (!(p >= 1.0) && p != kInf)
                    throw config_error("p must satisfy 1 <= p <= infinity");
            } else if (!(p > 1.0) || !(p < kInf)) {
                throw config_error("p must lie in (1, infinity) for this suite");
            }
        }
        if (format != "csv" && format != "json")
            throw config_error("format must be csv or json");
    }
};

struct SuiteResult {
    Report report;
    long long violations = 0;
};

namespace detail {

inline VectorFamily suite_family(CounterRng& rng, std::size_t n, std::size_t d,
                                 bool allow_repeats = true) {
    std::vector<CVec> vecs(n);
    for (std::size_t i = 0; i < n; ++i) {
        vecs[i].resize(d);
        if (allow_repeats && i > 0 && rng.next_double() < 0.2) {
            vecs[i] = vecs[rng.uniform_index(i)];
        } else {
            for (auto& z : vecs[i]) z = rng.next_complex_gaussian();
        }
    }
    return VectorFamily(d, std::move(vecs));
}

inline ComplexMatrix off_block_part(const ComplexMatrix& x, const VectorFamily& f) {
    ComplexMatrix y = x;
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t k = 0; k < f.size(); ++k)
            if (f.vectors_equal(j, k)) y(j, k) = 0.0;
    return y;
}

// ---- individual suites ----

// The rs1 suite tests the upper inequality on inputs supported off the
// degenerate blocks (where the ratio is sharpest and equals 1 at p = 2);
// the rs2 suite keeps general inputs so the diagonal expectation term is
// exercised.
inline SuiteResult run_rs(const SuiteConfig& cfg, bool rs1) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"trial", "n",        "d",           "p",    "c_p",  "norm_x",
                          "norm_diag", "rc_norm", "ratio_rs1", "deficit_rs2", "seed"};
    double max_ratio = 0.0, max_deficit = -kInf;
    std::size_t trial_id = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial)
        for (std::size_t n : cfg.n_list)
            for (std::size_t d : cfg.d_list)
                for (double p : cfg.resolved_p()) {
                    CounterRng rng(cfg.seed, trial_id);
                    const auto fam = suite_family(rng, n, d);
                    ComplexMatrix x = random_matrix(rng, n, n);
                    if (rs1) x = off_block_part(x, fam);
                    const auto row = verify_rs2(RieszInstance(fam, x, p), cfg.k_global);
                    const bool viol = rs1 ? row.ratio_rs1 / row.c_p > cfg.k_global
                                          : row.deficit_rs2 > 0.0;
                    if (viol) ++res.violations;
                    max_ratio = std::max(max_ratio, row.ratio_rs1 / row.c_p);
                    max_deficit = std::max(max_deficit, row.deficit_rs2);
                    res.report.add_row({trial_id, n, d, p, row.c_p, row.norm_x, row.norm_diag,
                                        row.rc, row.ratio_rs1, row.deficit_rs2, cfg.seed});
                    ++trial_id;
                }
    res.report.summary = {{"violations", res.violations},
                          {"max_ratio_over_cp", max_ratio},
                          {"max_deficit", max_deficit}};
    return res;
}

inline SuiteResult run_duality(const SuiteConfig& cfg) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"trial", "n", "d", "p", "residual", "abs_trace", "seed"};
    double max_residual = 0.0;
    std::size_t trial_id = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial)
        for (std::size_t n : cfg.n_list)
            for (std::size_t d : cfg.d_list)
                for (double p : cfg.resolved_p()) {
                    CounterRng rng(cfg.seed, trial_id);
                    const auto fam = suite_family(rng, n, d);
                    const ComplexMatrix x = off_block_part(random_matrix(rng, n, n), fam);
                    const ComplexMatrix y = off_block_part(random_matrix(rng, n, n), fam);
                    const double tr = std::abs(trace_pairing(x, y));
                    const double residual = duality_identity_residual(x, y, fam, p);
                    if (residual > 1e-9 * (1.0 + tr)) ++res.violations;
                    max_residual = std::max(max_residual, residual);
                    res.report.add_row({trial_id, n, d, p, residual, tr, cfg.seed});
                    ++trial_id;
                }
    res.report.summary = {{"violations", res.violations}, {"max_residual", max_residual}};
    return res;
}

inline SuiteResult run_khintchine(const SuiteConfig& cfg) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"trial", "kind",        "m",         "d",     "p",
                          "numerator", "denominator", "ratio", "gamma_p",
                          "band_lo",   "band_hi",     "seed"};
    const std::size_t count = cfg.resolved_samples();
    const double b_emp = 4.0, a_emp = 4.0;
    double max_over = 0.0;
    std::size_t trial_id = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial)
        for (std::size_t n : cfg.n_list)
            for (std::size_t d : cfg.d_list)
                for (double p : cfg.resolved_p()) {
                    CounterRng rng(cfg.seed, trial_id, 0xA);
                    // Single-term instance with a real unit vector: ratio
                    // must reproduce gamma_p inside the MC band.
                    {
                        const ComplexMatrix x = random_matrix(rng, n, n);
                        CVec u(d, cplx(0.0, 0.0));
                        u[0] = 1.0;
                        const auto rep =
                            khintchine_ratio({x}, {u}, p, cfg.seed + 13 * trial_id, count);
                        const double expected = rep.gamma_ref * rep.denominator;
                        if (!(rep.numerator_lo <= expected && expected <= rep.numerator_hi))
                            ++res.violations;
                        res.report.add_row({trial_id, "single", n, d, p, rep.numerator,
                                            rep.denominator, rep.ratio, rep.gamma_ref,
                                            rep.numerator_lo, rep.numerator_hi, cfg.seed});
                    }
                    // Multi-term instance against the [1/A, B sqrt(p)] window.
                    {
                        std::vector<ComplexMatrix> xs;
                        std::vector<CVec> us;
                        const std::size_t terms = 2 + rng.uniform_index(3);
                        for (std::size_t t = 0; t < terms; ++t) {
                            xs.push_back(random_matrix(rng, n, n));
                            CVec u(d);
                            for (auto& z : u) z = rng.next_gaussian();
                            us.push_back(u);
                        }
                        const auto rep =
                            khintchine_ratio(xs, us, p, cfg.seed + 31 * trial_id, count);
                        if (rep.ratio > b_emp * std::sqrt(p) || rep.ratio < 1.0 / a_emp)
                            ++res.violations;
                        max_over = std::max(max_over, rep.ratio / std::sqrt(p));
                        res.report.add_row({trial_id, "multi", n, d, p, rep.numerator,
                                            rep.denominator, rep.ratio, rep.gamma_ref,
                                            rep.numerator_lo, rep.numerator_hi, cfg.seed});
                    }
                    ++trial_id;
                }
    res.report.summary = {{"violations", res.violations}, {"max_ratio_over_sqrt_p", max_over}};
    return res;
}

inline SuiteResult run_gaussian_identities(const SuiteConfig& cfg) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"check", "param", "target", "estimate", "sigma", "z", "seed"};
    const std::size_t count = cfg.resolved_samples();
    double max_z = 0.0;

    // (2/pi) arcsin curve on a 9-point grid of inner products.
    for (int i = 0; i <= 8; ++i) {
        const double ip = -1.0 + 0.25 * i;
        const double s = std::sqrt(std::max(1.0 - ip * ip, 0.0));
        VectorFamily f(2, {{1.0, 0.0}, {ip, s}});
        GaussianSampler sampler(f, cfg.seed + 1000 + i);
        const auto r = sampler.sgn_covariance(0, 1, count);
        const double target = 2.0 / 3.14159265358979323846 * std::asin(ip);
        const double z = r.sigma > 0.0 ? (r.mean - target) / r.sigma : 0.0;
        if (std::abs(z) > 3.0) ++res.violations;
        max_z = std::max(max_z, std::abs(z));
        res.report.add_row({"arcsin", ip, target, r.mean, r.sigma, z, cfg.seed});
    }

    // sqrt(2/pi) projection coefficient on random pairs.
    const double target = std::sqrt(2.0 / 3.14159265358979323846);
    for (std::size_t t = 0; t < 10; ++t) {
        CounterRng rng(cfg.seed, t, 0xB);
        const auto fam = suite_family(rng, 2, 3, /*allow_repeats=*/false);
        GaussianSampler sampler(fam, cfg.seed + 2000 + t);
        const auto r = sampler.projection_coefficient(0, 1, count);
        const double z = r.sigma > 0.0 ? (r.mean - target) / r.sigma : 0.0;
        if (std::abs(z) > 3.0) ++res.violations;
        max_z = std::max(max_z, std::abs(z));
        res.report.add_row({"projection", static_cast<double>(t), target, r.mean, r.sigma, z,
                            cfg.seed});
    }
    res.report.summary = {{"violations", res.violations}, {"max_abs_z", max_z}};
    return res;
}

inline SuiteResult run_sweep_suite(const SuiteConfig& cfg, const std::string& construction) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"trial", "construction", "n", "p", "estimate", "envelope",
                          "ratio", "converged", "seed"};
    SweepSpec spec;
    spec.construction = construction;
    spec.sizes = cfg.n_list;
    spec.p_list = cfg.resolved_p();
    spec.trials = cfg.trials;
    spec.seed = cfg.seed;
    spec.k_global = cfg.k_global;
    spec.beta = cfg.beta;
    spec.dim = cfg.d_list.front();
    double max_ratio = 0.0;
    const auto rows = p_sweep(spec);
    std::size_t trial_id = 0;
    for (const auto& row : rows) {
        if (row.ratio > cfg.k_global) ++res.violations;
        max_ratio = std::max(max_ratio, row.ratio);
        res.report.add_row({trial_id++, row.construction, row.n, row.p, row.estimate,
                            row.envelope, row.ratio, row.converged, cfg.seed});
    }
    res.report.summary = {{"violations", res.violations}, {"max_ratio_over_envelope", max_ratio}};
    return res;
}

inline SuiteResult run_marcinkiewicz(const SuiteConfig& cfg) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"trial", "n", "residual", "weight_sum", "bound", "terms", "seed"};
    double max_residual = 0.0;
    std::size_t trial_id = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial)
        for (std::size_t n : cfg.n_list) {
            CounterRng rng(cfg.seed, trial_id);
            ComplexMatrix m(n, n);
            std::vector<double> labels(n);
            for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<double>(i);
            for (std::size_t j = 0; j < n; ++j) {
                double v = 2.0 * rng.next_double() - 1.0;
                for (std::size_t k = 0; k < n; ++k) {
                    m(j, k) = v;
                    v += 0.5 * (rng.next_double() - 0.5);
                }
            }
            const auto dec = marcinkiewicz_decompose(SchurSymbol(m, "random-bv", labels));
            const bool viol = dec.residual > 1e-9 || dec.weight_sum > dec.bound + 1e-9;
            if (viol) ++res.violations;
            max_residual = std::max(max_residual, dec.residual);
            res.report.add_row({trial_id, n, dec.residual, dec.weight_sum, dec.bound,
                                dec.terms.size(), cfg.seed});
            ++trial_id;
        }
    res.report.summary = {{"violations", res.violations}, {"max_residual", max_residual}};
    return res;
}

inline SuiteResult run_mikhlin(const SuiteConfig& cfg) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"trial", "symbol", "count", "h", "order", "value", "seed"};
    std::size_t trial_id = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial)
        for (std::size_t n : cfg.n_list) {
            UniformLattice grid;
            grid.dims = 1;
            grid.counts = {std::max<std::size_t>(n, 4)};
            grid.spacing = 0.5;
            grid.origin = {0.25};
            CounterRng rng(cfg.seed, trial_id);
            const double s = 0.5 + rng.next_double();

            const auto imagpow = symbol_on_lattice(
                grid,
                [s](const std::vector<double>& x, const std::vector<double>& y) {
                    const double d = std::abs(x[0] - y[0]);
                    return d == 0.0 ? cplx(1.0, 0.0) : std::exp(cplx(0.0, s * std::log(d)));
                },
                "imaginary-power");
            const double v1 = mikhlin_condition(imagpow, grid);
            if (!std::isfinite(v1)) ++res.violations;
            res.report.add_row({trial_id, "imaginary-power", grid.counts[0], grid.spacing,
                                grid.dims / 2 + 1, v1, cfg.seed});

            const auto smooth = symbol_on_lattice(
                grid,
                [s](const std::vector<double>& x, const std::vector<double>& y) {
                    return cplx(std::cos(s * (x[0] - y[0])), 0.0);
                },
                "cosine-kernel");
            const double v2 = mikhlin_condition(smooth, grid);
            if (!std::isfinite(v2)) ++res.violations;
            res.report.add_row({trial_id, "cosine-kernel", grid.counts[0], grid.spacing,
                                grid.dims / 2 + 1, v2, cfg.seed});
            ++trial_id;
        }
    res.report.summary = {{"violations", res.violations}};
    return res;
}

inline SuiteResult run_lp_blocks(const SuiteConfig& cfg) {
    SuiteResult res;
    res.report.suite = cfg.suite;
    res.report.config = cfg.to_json();
    res.report.columns = {"trial", "n", "blocks", "sq_residual", "seed"};
    double max_residual = 0.0;
    std::size_t trial_id = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial)
        for (std::size_t n : cfg.n_list) {
            CounterRng rng(cfg.seed, trial_id);
            std::vector<double> grid(n);
            for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i);
            const auto blocks = dyadic_blocks(grid);
            blocks.validate_disjoint();
            const ComplexMatrix x = random_matrix(rng, n, n);
            ComplexMatrix off = x;
            for (std::size_t i = 0; i < n; ++i) off(i, i) = 0.0;
            const double lhs = rc_norm(littlewood_paley_element(x, blocks), 2.0);
            const double rhs = schatten_norm(off, 2.0);
            const double residual = std::abs(lhs - rhs);
            if (residual > 1e-10 * (1.0 + rhs)) ++res.violations;
            max_residual = std::max(max_residual, residual);
            res.report.add_row({trial_id, n, blocks.count(), residual, cfg.seed});
            ++trial_id;
        }
    res.report.summary = {{"violations", res.violations}, {"max_residual", max_residual}};
    return res;
}

} // namespace detail

/// Execute a suite over its trial grid. The returned report is fully
/// deterministic in the config; violations feed the process exit code.
inline SuiteResult run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    if (cfg.suite == "rs1") return detail::run_rs(cfg, true);
    if (cfg.suite == "rs2") return detail::run_rs(cfg, false);
    if (cfg.suite == "duality") return detail::run_duality(cfg);
    if (cfg.suite == "khintchine") return detail::run_khintchine(cfg);
    if (cfg.suite == "gaussian-identities") return detail::run_gaussian_identities(cfg);
    if (cfg.suite == "gh" || cfg.suite == "arazy" || cfg.suite == "beta" ||
        cfg.suite == "triangular")
        return detail::run_sweep_suite(cfg, cfg.suite);
    if (cfg.suite == "marcinkiewicz") return detail::run_marcinkiewicz(cfg);
    if (cfg.suite == "mikhlin") return detail::run_mikhlin(cfg);
    if (cfg.suite == "lp-blocks") return detail::run_lp_blocks(cfg);
    if (cfg.suite == "p-sweep") return detail::run_sweep_suite(cfg, cfg.construction);
    throw config_error("unknown suite: " + cfg.suite);
}

} // namespace schurlab
