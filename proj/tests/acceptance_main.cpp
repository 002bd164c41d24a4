// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance and envelope is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "schurlab/schurlab.hpp"

using namespace schurlab;

namespace {

constexpr std::uint64_t kSeed = 20260808ULL;
constexpr double kPi = 3.14159265358979323846;

VectorFamily acceptance_family(CounterRng& rng, std::size_t n, std::size_t d,
                               bool allow_repeats = true) {
    std::vector<CVec> vecs(n);
    for (std::size_t i = 0; i < n; ++i) {
        vecs[i].resize(d);
        if (allow_repeats && i > 0 && rng.next_double() < 0.25) {
            vecs[i] = vecs[rng.uniform_index(i)];
        } else {
            for (auto& z : vecs[i]) z = rng.next_complex_gaussian();
        }
    }
    return VectorFamily(d, std::move(vecs));
}

ComplexMatrix off_block_part(const ComplexMatrix& x, const VectorFamily& f) {
    ComplexMatrix y = x;
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t k = 0; k < f.size(); ++k)
            if (f.vectors_equal(j, k)) y(j, k) = 0.0;
    return y;
}

// 1. p = 2 Pythagoras: ||x||_2^2 = ||E x||_2^2 + rc(R x, 2)^2 to 1e-10
//    relative on 200 seeded instances with n <= 8, d <= 4.
bool criterion_pythagoras(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        CounterRng rng(kSeed, 1, t);
        const std::size_t n = 2 + rng.uniform_index(7);
        const std::size_t d = 1 + rng.uniform_index(4);
        const auto fam = acceptance_family(rng, n, d);
        const ComplexMatrix x = random_matrix(rng, n, n);
        const double nx2 = std::pow(schatten_norm(x, 2.0), 2.0);
        const double ne2 = std::pow(schatten_norm(diagonal_expectation(x, fam), 2.0), 2.0);
        const double rc2 = std::pow(rc_norm(riesz_transform(fam, x), 2.0), 2.0);
        worst = std::max(worst, std::abs(nx2 - (ne2 + rc2)) / nx2);
    }
    std::ostringstream os;
    os << "max relative defect " << worst;
    detail = os.str();
    return worst <= 1e-10;
}

// 2. Duality identity: |<R_p x, Rbar_p' y> + tr(x y)| <= 1e-9 on 200
//    supported pairs.
bool criterion_duality(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        CounterRng rng(kSeed, 2, t);
        const std::size_t n = 2 + rng.uniform_index(7);
        const std::size_t d = 1 + rng.uniform_index(4);
        const auto fam = acceptance_family(rng, n, d);
        const ComplexMatrix x = off_block_part(random_matrix(rng, n, n), fam);
        const ComplexMatrix y = off_block_part(random_matrix(rng, n, n), fam);
        worst = std::max(worst, duality_identity_residual(x, y, fam, 1.5));
    }
    std::ostringstream os;
    os << "max residual " << worst;
    detail = os.str();
    return worst <= 1e-9;
}

// 3. RS1/RS2 sweeps across p in {4/3, 3/2, 2, 3, 4}, n in {4, 8, 16},
//    d in {1, 2, 4}, 50 trials each: ratio/c_p <= K = 8 and deficit <= 0.
bool criterion_rs_sweeps(std::string& detail) {
    const double k_global = 8.0;
    const double ps[] = {4.0 / 3.0, 1.5, 2.0, 3.0, 4.0};
    const std::size_t ns[] = {4, 8, 16};
    const std::size_t ds[] = {1, 2, 4};
    double max_ratio = 0.0, max_deficit = -kInf;
    long long violations = 0;
    std::uint64_t id = 0;
    for (double p : ps)
        for (std::size_t n : ns)
            for (std::size_t d : ds)
                for (int trial = 0; trial < 50; ++trial) {
                    CounterRng rng(kSeed, 3, id++);
                    const auto fam = acceptance_family(rng, n, d);
                    const ComplexMatrix x = random_matrix(rng, n, n);
                    const auto row = verify_rs2(RieszInstance(fam, x, p), k_global);
                    max_ratio = std::max(max_ratio, row.ratio_rs1 / row.c_p);
                    max_deficit = std::max(max_deficit, row.deficit_rs2);
                    if (row.ratio_rs1 / row.c_p > k_global || row.deficit_rs2 > 0.0)
                        ++violations;
                }
    std::ostringstream os;
    os << "max ratio/c_p " << max_ratio << ", max deficit " << max_deficit << ", violations "
       << violations;
    detail = os.str();
    return violations == 0;
}

// 4. Gaussian identities at N = 1e6, fixed seed: sqrt(2/pi) projection and
//    the (2/pi) arcsin covariance curve, each within 3 sigma.
bool criterion_gaussian_identities(std::string& detail) {
    const std::size_t count = 1000000;
    double max_z = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double ip = -1.0 + 0.25 * i;
        const double s = std::sqrt(std::max(1.0 - ip * ip, 0.0));
        VectorFamily f(2, {{1.0, 0.0}, {ip, s}});
        GaussianSampler sampler(f, kSeed + 40 + i);
        const auto r = sampler.sgn_covariance(0, 1, count);
        const double target = 2.0 / kPi * std::asin(ip);
        if (r.sigma > 0.0) max_z = std::max(max_z, std::abs(r.mean - target) / r.sigma);
        else if (r.mean != target) return false;
    }
    const double target = std::sqrt(2.0 / kPi);
    for (std::uint64_t t = 0; t < 10; ++t) {
        CounterRng rng(kSeed, 4, t);
        const auto fam = acceptance_family(rng, 2, 3, /*allow_repeats=*/false);
        GaussianSampler sampler(fam, kSeed + 60 + t);
        const auto r = sampler.projection_coefficient(0, 1, count);
        max_z = std::max(max_z, std::abs(r.mean - target) / r.sigma);
    }
    std::ostringstream os;
    os << "max |z| " << max_z;
    detail = os.str();
    return max_z <= 3.0;
}

// 5. Khintchine envelope: single-term ratio reproduces gamma_p within the
//    MC 3 sigma band for p in {1.5, 2, 3, 4}; multi-term sweep ratios grow
//    no faster than 4 sqrt(p).
bool criterion_khintchine(std::string& detail) {
    const std::size_t count = 100000;
    const double ps[] = {1.5, 2.0, 3.0, 4.0};
    double max_over = 0.0;
    for (std::size_t pi = 0; pi < 4; ++pi) {
        const double p = ps[pi];
        CounterRng rng(kSeed, 5, pi);
        const ComplexMatrix x = random_matrix(rng, 4, 4);
        CVec u(3, cplx(0.0, 0.0));
        u[0] = 1.0;
        const auto rep = khintchine_ratio({x}, {u}, p, kSeed + 80 + pi, count);
        const double expected = rep.gamma_ref * rep.denominator;
        if (!(rep.numerator_lo <= expected && expected <= rep.numerator_hi)) {
            std::ostringstream os;
            os << "single-term band miss at p=" << p << ": expected " << expected << " outside ["
               << rep.numerator_lo << ", " << rep.numerator_hi << "]";
            detail = os.str();
            return false;
        }

        // Fixed multi-term instance swept across p.
        CounterRng rng2(kSeed, 6, 0);
        std::vector<ComplexMatrix> xs;
        std::vector<CVec> us;
        for (int t = 0; t < 3; ++t) {
            xs.push_back(random_matrix(rng2, 4, 4));
            CVec v(3);
            for (auto& z : v) z = rng2.next_gaussian();
            us.push_back(v);
        }
        const auto sweep = khintchine_ratio(xs, us, p, kSeed + 90 + pi, count);
        max_over = std::max(max_over, sweep.ratio / std::sqrt(p));
        if (sweep.ratio > 4.0 * std::sqrt(p)) {
            std::ostringstream os;
            os << "sweep ratio " << sweep.ratio << " exceeds 4 sqrt(p) at p=" << p;
            detail = os.str();
            return false;
        }
    }
    std::ostringstream os;
    os << "single-term bands hit; max ratio/sqrt(p) " << max_over << " (B_emp budget 4)";
    detail = os.str();
    return true;
}

// 6. Estimator oracles: at p = 2 the estimate equals max|M| to 1e-8 on 100
//    random symbols; amplification ladders are monotone to 1e-6.
bool criterion_estimator(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        CounterRng rng(kSeed, 7, t);
        const std::size_t n = 2 + rng.uniform_index(7);
        SchurSymbol m(random_matrix(rng, n, n), "random");
        const auto est = estimate_sp_norm(m, 2.0);
        worst = std::max(worst, std::abs(est.value - m.entries.max_abs()) /
                                    (1.0 + m.entries.max_abs()));
    }
    if (worst > 1e-8) {
        detail = "p=2 oracle error " + fmt17(worst);
        return false;
    }
    double worst_drop = 0.0;
    for (std::uint64_t t = 0; t < 8; ++t) {
        CounterRng rng(kSeed, 8, t);
        SchurSymbol m(random_matrix(rng, 5, 5), "random");
        for (double p : {1.5, 3.0}) {
            double prev = 0.0;
            for (std::size_t blocks = 1; blocks <= 3; ++blocks) {
                const auto est = estimate_sp_norm(amplify(m, blocks), p);
                worst_drop = std::max(worst_drop, prev - est.value);
                prev = est.value;
            }
        }
    }
    std::ostringstream os;
    os << "p=2 oracle error " << worst << ", worst amplification drop " << worst_drop;
    detail = os.str();
    return worst_drop <= 1e-6;
}

// 7. Marcinkiewicz decomposition: reconstruction residual <= 1e-9 and the
//    weight-sum bound on 100 random bounded-variation symbols on 32-grids.
bool criterion_marcinkiewicz(std::string& detail) {
    double max_residual = 0.0, worst_excess = -kInf;
    for (std::uint64_t t = 0; t < 100; ++t) {
        CounterRng rng(kSeed, 9, t);
        const std::size_t n = 32;
        ComplexMatrix m(n, n);
        std::vector<double> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<double>(i);
        for (std::size_t j = 0; j < n; ++j) {
            double v = 2.0 * rng.next_double() - 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                m(j, k) = v;
                v += 0.4 * (rng.next_double() - 0.5);
            }
        }
        const auto dec = marcinkiewicz_decompose(SchurSymbol(m, "bv", labels));
        max_residual = std::max(max_residual, dec.residual);
        worst_excess = std::max(worst_excess, dec.weight_sum - dec.bound);
    }
    std::ostringstream os;
    os << "max residual " << max_residual << ", max weight-sum excess " << worst_excess;
    detail = os.str();
    return max_residual <= 1e-9 && worst_excess <= 1e-9;
}

// 8. Constant-growth ledgers: triangular truncations at n = 16 against the
//    max{p,p'} envelope, and Grothendieck-Haagerup / Arazy-square-root
//    symbols against their max{p,p'}^{5/2}-type envelopes, all with K = 8.
bool criterion_constant_growth(std::string& detail) {
    const double k_global = 8.0;
    double max_ratio = 0.0;
    long long violations = 0;

    for (const char* construction : {"triangular", "gh", "arazy"}) {
        SweepSpec spec;
        spec.construction = construction;
        spec.sizes = {16};
        spec.p_list = {4.0 / 3.0, 2.0, 4.0};
        spec.trials = 5;
        spec.seed = kSeed + 100;
        spec.k_global = k_global;
        for (const auto& row : p_sweep(spec)) {
            max_ratio = std::max(max_ratio, row.ratio);
            if (row.ratio > k_global) ++violations;
        }
    }
    std::ostringstream os;
    os << "max measured/envelope " << max_ratio << ", violations " << violations;
    detail = os.str();
    return violations == 0;
}

// 9. Littlewood-Paley p = 2 identity on 50 instances, exact to 1e-10.
bool criterion_lp_identity(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        CounterRng rng(kSeed, 10, t);
        const std::size_t n = 4 + rng.uniform_index(13);
        std::vector<double> grid(n);
        for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i);
        const auto blocks = dyadic_blocks(grid);
        const ComplexMatrix x = random_matrix(rng, n, n);
        ComplexMatrix off = x;
        for (std::size_t i = 0; i < n; ++i) off(i, i) = 0.0;
        const double lhs = rc_norm(littlewood_paley_element(x, blocks), 2.0);
        const double rhs = schatten_norm(off, 2.0);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + rhs));
    }
    std::ostringstream os;
    os << "max relative defect " << worst;
    detail = os.str();
    return worst <= 1e-10;
}

// 10. Determinism: reruns with identical configs render byte-identical
//     reports, across suites and both formats.
bool criterion_determinism(std::string& detail) {
    std::vector<SuiteConfig> configs;
    {
        SuiteConfig c;
        c.suite = "duality";
        c.n_list = {4};
        c.d_list = {2};
        c.trials = 4;
        c.seed = kSeed;
        configs.push_back(c);
    }
    {
        SuiteConfig c;
        c.suite = "rs1";
        c.n_list = {4};
        c.d_list = {1, 2};
        c.p_list = {1.5, 3.0};
        c.trials = 2;
        c.seed = kSeed;
        configs.push_back(c);
    }
    {
        SuiteConfig c;
        c.suite = "triangular";
        c.n_list = {6};
        c.p_list = {2.0, 4.0};
        c.trials = 2;
        c.seed = kSeed;
        configs.push_back(c);
    }
    {
        SuiteConfig c;
        c.suite = "gaussian-identities";
        c.samples = 20000;
        c.seed = kSeed;
        configs.push_back(c);
    }
    for (const auto& cfg : configs) {
        const auto a = run_suite(cfg);
        const auto b = run_suite(cfg);
        for (const char* format : {"csv", "json"}) {
            if (render_report(a.report, format) != render_report(b.report, format)) {
                detail = "suite " + cfg.suite + " differs between reruns (" + format + ")";
                return false;
            }
        }
    }
    detail = "4 suites x 2 formats byte-identical across reruns";
    return true;
}

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<bool(std::string&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "p=2 Pythagoras (200 instances, 1e-10)", 5.0, criterion_pythagoras},
        {2, "duality identity (200 supported pairs, 1e-9)", 5.0, criterion_duality},
        {3, "RS1/RS2 sweeps (p x n x d grid, 50 trials, K=8)", 300.0, criterion_rs_sweeps},
        {4, "gaussian identities (sqrt(2/pi), arcsin curve, 3 sigma, N=1e6)", 60.0,
         criterion_gaussian_identities},
        {5, "Khintchine envelope (gamma_p bands, 4 sqrt(p) growth)", 120.0,
         criterion_khintchine},
        {6, "estimator oracles (p=2 max|M|, monotone amplification)", 60.0,
         criterion_estimator},
        {7, "Marcinkiewicz decomposition (100 symbols, 32-grid)", 30.0,
         criterion_marcinkiewicz},
        {8, "constant-growth ledgers (triangular/gh/arazy envelopes)", 300.0,
         criterion_constant_growth},
        {9, "Littlewood-Paley p=2 identity (50 instances, 1e-10)", 10.0,
         criterion_lp_identity},
        {10, "determinism (byte-identical reruns)", 60.0, criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            ok = false;
            detail += " [over runtime budget]";
        }
        std::printf("[%s] criterion %2d: %s -- %s (%.2fs, budget %.0fs)\n", ok ? "PASS" : "FAIL",
                    c.id, c.name.c_str(), detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return 0;
}
