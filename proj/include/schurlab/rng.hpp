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

#include "complex_matrix.hpp"

namespace schurlab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Counter-based splittable generator. A stream is keyed by
/// (master seed, trial, row); the i-th output is a pure hash of
/// (key, i), so disjoint streams never interact and any stream can be
/// regenerated independently of evaluation order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t trial = 0, std::uint64_t row = 0) {
        std::uint64_t k = detail::splitmix64(seed);
        k = detail::splitmix64(k ^ (0xA24BAED4963EE407ULL + trial));
        k = detail::splitmix64(k ^ (0x9FB21C651E98DF25ULL + row));
        key_ = k;
    }

    std::uint64_t next_u64() { return detail::splitmix64(key_ ^ (counter_++ * 0xD1B54A32D192ED03ULL)); }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double next_double_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (pairs cached).
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Complex gaussian with E|z|^2 = 1.
    cplx next_complex_gaussian() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return cplx(re, im) * 0.7071067811865475244;
    }

    std::uint64_t uniform_index(std::uint64_t bound) { return bound ? next_u64() % bound : 0; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Matrix with i.i.d. complex gaussian entries, E|entry|^2 = 1.
inline ComplexMatrix random_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (auto& z : m.data()) z = rng.next_complex_gaussian();
    return m;
}

/// Haar-ish random unitary via Gram-Schmidt of a gaussian matrix.
inline ComplexMatrix random_unitary(CounterRng& rng, std::size_t n) {
    ComplexMatrix g = random_matrix(rng, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            // Practically unreachable for gaussian input; restart the column.
            for (std::size_t i = 0; i < n; ++i) g(i, j) = rng.next_complex_gaussian();
            --j;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
}

/// Random Hermitian PSD matrix G* G with gaussian G.
inline ComplexMatrix random_psd(CounterRng& rng, std::size_t n) {
    ComplexMatrix g = random_matrix(rng, n, n);
    return g.adjoint() * g;
}

} // namespace schurlab
