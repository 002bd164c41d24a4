#include "doctest.h"

#include <cmath>

#include "schurlab/riesz_schur.hpp"
#include "schurlab/rng.hpp"

using namespace schurlab;

namespace {

VectorFamily random_family(CounterRng& rng, std::size_t n, std::size_t d, bool real = false) {
    std::vector<CVec> vecs(n);
    for (auto& v : vecs) {
        v.resize(d);
        for (auto& z : v)
            z = real ? cplx(rng.next_gaussian(), 0.0) : rng.next_complex_gaussian();
    }
    return VectorFamily(d, std::move(vecs));
}

// Zero out entries over the degenerate set {u_j = u_k} (includes diagonal).
ComplexMatrix off_block_part(const ComplexMatrix& x, const VectorFamily& f) {
    ComplexMatrix y = x;
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t k = 0; k < f.size(); ++k)
            if (f.vectors_equal(j, k)) y(j, k) = 0.0;
    return y;
}

} // namespace

TEST_CASE("riesz_constant: exact formula values") {
    CHECK(std::abs(riesz_constant(4.0 / 3.0) - 8.0) < 1e-12);
    CHECK(std::abs(riesz_constant(1.5) - std::pow(3.0, 1.5)) < 1e-12);
    CHECK(std::abs(riesz_constant(2.0) - std::pow(2.0, 1.5)) < 1e-12);
    CHECK(std::abs(riesz_constant(3.0) - 3.0) < 1e-12);
    CHECK(std::abs(riesz_constant(4.0) - 4.0) < 1e-12);
    CHECK_THROWS_AS(riesz_constant(1.0), invalid_exponent_error);
}

TEST_CASE("riesz_transform: dimension one is the sign structure") {
    // u_j = j on the line: vector part collapses to sgn(j - k), the
    // triangular-truncation/Hilbert pattern.
    VectorFamily line(1, {{0.0}, {1.0}, {2.0}, {3.0}});
    CounterRng rng(61);
    ComplexMatrix x = random_matrix(rng, 4, 4);
    const auto r = riesz_transform(line, x);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(r.scalar(j, k) == x(j, k));
            const double expected =
                j == k ? 0.0 : sgn(static_cast<double>(j) - static_cast<double>(k));
            CHECK(std::abs(r.vec(j, k)[0] - expected) < 1e-14);
        }
}

TEST_CASE("riesz_transform: annihilates the diagonal block") {
    CounterRng rng(62);
    VectorFamily distinct(1, {{0.0}, {1.0}, {2.0}});
    ComplexMatrix diag(3, 3);
    for (std::size_t i = 0; i < 3; ++i) diag(i, i) = rng.next_complex_gaussian();
    CHECK(riesz_transform(distinct, diag).is_zero());

    VectorFamily equal(2, {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}});
    ComplexMatrix x = random_matrix(rng, 3, 3);
    CHECK(riesz_transform(equal, x).is_zero());

    // R is linear and sees only x - E(x).
    auto f = random_family(rng, 4, 2);
    ComplexMatrix y = random_matrix(rng, 4, 4);
    const auto rall = riesz_transform(f, y);
    const ComplexMatrix stripped = y - diagonal_expectation(y, f);
    const auto roff = riesz_transform(f, stripped);
    for (double p : {1.5, 2.0, 3.0}) {
        CHECK(std::abs(column_norm(rall, p) - column_norm(roff, p)) < 1e-10);
        CHECK(std::abs(row_norm(rall, p) - row_norm(roff, p)) < 1e-10);
    }
}

TEST_CASE("p=2 Pythagoras: ||x||^2 = ||E x||^2 + rc(R x)^2") {
    CounterRng rng(63);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng.uniform_index(7);
        const std::size_t d = 1 + rng.uniform_index(4);
        // Mix distinct and repeated vectors so E(x) has off-diagonal blocks.
        std::vector<CVec> vecs(n);
        for (std::size_t i = 0; i < n; ++i) {
            vecs[i].resize(d);
            if (i > 0 && rng.next_double() < 0.3) {
                vecs[i] = vecs[0];
            } else {
                for (auto& z : vecs[i]) z = rng.next_complex_gaussian();
            }
        }
        VectorFamily f(d, std::move(vecs));
        ComplexMatrix x = random_matrix(rng, n, n);

        const double nx = schatten_norm(x, 2.0);
        const double ne = schatten_norm(diagonal_expectation(x, f), 2.0);
        const double rc = rc_norm(riesz_transform(f, x), 2.0);
        CHECK(std::abs(nx * nx - (ne * ne + rc * rc)) <= 1e-10 * nx * nx);
    }
}

TEST_CASE("verify_rs1: p=2 equality on off-block instances, zero handling") {
    CounterRng rng(64);
    for (int t = 0; t < 6; ++t) {
        auto f = random_family(rng, 5, 2);
        ComplexMatrix x = off_block_part(random_matrix(rng, 5, 5), f);
        RieszInstance inst(f, x, 2.0);
        const auto row = verify_rs1(inst);
        CHECK(std::abs(row.ratio_rs1 - 1.0) < 1e-9);
        CHECK(!row.rs1_violation);
    }

    VectorFamily f(1, {{0.0}, {1.0}});
    ComplexMatrix zero(2, 2);
    CHECK_THROWS_AS(verify_rs1(RieszInstance(f, zero, 2.0)), precondition_error);

    // Diagonal input with distinct vectors: transform is zero.
    ComplexMatrix diag(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = -2.0;
    const auto r2 = verify_rs2(RieszInstance(f, diag, 2.0));
    CHECK(r2.rc == 0.0);
    CHECK(r2.deficit_rs2 <= 0.0);
}

TEST_CASE("verify_rs2: deficit nonpositive across a p grid") {
    CounterRng rng(65);
    const double ps[] = {1.5, 2.0, 3.0};
    for (double p : ps)
        for (int t = 0; t < 5; ++t) {
            auto f = random_family(rng, 4, 2);
            ComplexMatrix x = random_matrix(rng, 4, 4);
            const auto row = verify_rs2(RieszInstance(f, x, p));
            CHECK(row.deficit_rs2 <= 0.0);
            CHECK(!row.rs2_violation);
        }

    // Block-diagonal supported input: the expectation term alone suffices.
    VectorFamily f(1, {{1.0}, {1.0}, {3.0}});
    ComplexMatrix x(3, 3);
    x(0, 1) = cplx(2.0, 1.0);
    x(1, 0) = 0.5;
    x(2, 2) = 1.0;
    const auto row = verify_rs2(RieszInstance(f, x, 3.0));
    CHECK(row.rc == 0.0);
    CHECK(std::abs(row.norm_x - row.norm_diag) < 1e-12);
    CHECK(row.deficit_rs2 <= 0.0);
}

TEST_CASE("duality identity: pinned example and random supported pairs") {
    VectorFamily f(2, {{1.0, 0.0}, {0.0, 1.0}});
    const ComplexMatrix e12 = ComplexMatrix::matrix_unit(2, 0, 1);
    const ComplexMatrix e21 = ComplexMatrix::matrix_unit(2, 1, 0);
    // bracket = -1, tr(x y) = +1, residual 0.
    CHECK(duality_identity_residual(e12, e21, f, 2.0) < 1e-12);

    const ComplexMatrix zero(2, 2);
    CHECK(duality_identity_residual(zero, e21, f, 2.0) < 1e-15);

    CounterRng rng(66);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + rng.uniform_index(5);
        const std::size_t d = 1 + rng.uniform_index(3);
        const bool real = t % 2 == 0;
        auto fam = random_family(rng, n, d, real);
        const ComplexMatrix x = off_block_part(random_matrix(rng, n, n), fam);
        const ComplexMatrix y = off_block_part(random_matrix(rng, n, n), fam);
        const double tr = std::abs(trace_pairing(x, y));
        CHECK(duality_identity_residual(x, y, fam, 1.5) <= 1e-9 * (1.0 + tr));
    }
}

TEST_CASE("duality identity: rejects inputs supported on the degenerate set") {
    VectorFamily f(1, {{1.0}, {1.0}});
    ComplexMatrix x(2, 2);
    x(0, 1) = 1.0; // u_0 = u_1: this entry is degenerate support
    CHECK_THROWS_AS(duality_identity_residual(x, x, f, 2.0), precondition_error);
}

TEST_CASE("riesz transform antisymmetry: swapping j,k negates the vector leg") {
    CounterRng rng(67);
    auto f = random_family(rng, 4, 3);
    ComplexMatrix x = random_matrix(rng, 4, 4);
    const auto r = riesz_transform(f, x);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t m = 0; m < 3; ++m)
                CHECK(std::abs(r.vec(j, k)[m] + r.vec(k, j)[m]) < 1e-12);
}

TEST_CASE("strict-real mode: complex families run through the 2d embedding") {
    CounterRng rng(68);
    auto f = random_family(rng, 3, 2, /*real=*/false);
    ComplexMatrix x = random_matrix(rng, 3, 3);
    const auto direct = riesz_transform(f, x, FamilyMode::direct);
    const auto embedded = riesz_transform(f, x, FamilyMode::embed_real);
    CHECK(direct.dim() == 2);
    CHECK(embedded.dim() == 4);

    // The embedding preserves distances, so degenerate entries agree, and
    // at p = 2 the vector legs are unit either way: norms coincide.
    CHECK(std::abs(rc_norm(direct, 2.0) - rc_norm(embedded, 2.0)) < 1e-10);

    // Real families are untouched by strict-real mode.
    auto g = random_family(rng, 3, 2, /*real=*/true);
    const auto same = riesz_transform(g, x, FamilyMode::embed_real);
    CHECK(same.dim() == 2);
}

TEST_CASE("rs1 sweep sanity: ratios sit inside the c_p envelope") {
    CounterRng rng(69);
    const double ps[] = {1.5, 2.0, 4.0};
    for (double p : ps)
        for (int t = 0; t < 4; ++t) {
            auto f = random_family(rng, 6, 3);
            ComplexMatrix x = random_matrix(rng, 6, 6);
            const auto row = verify_rs1(RieszInstance(f, x, p));
            CHECK(row.ratio_rs1 / row.c_p <= 8.0);
            CHECK(!row.rs1_violation);
        }
}
