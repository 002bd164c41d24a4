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

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "complex_matrix.hpp"
#include "errors.hpp"
#include "hilbert_family.hpp"

namespace schurlab {

/// sgn with sgn(0) = +1, the convention used throughout.
inline double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

/// Multiplier symbol M(j,k) over a finite index set, with provenance
/// naming the construction (and parameters) that generated it. Reports
/// group results by provenance.
struct SchurSymbol {
    std::vector<double> labels;
    ComplexMatrix entries;
    std::string provenance;

    SchurSymbol() = default;

    SchurSymbol(ComplexMatrix m, std::string origin, std::vector<double> lab = {})
        : labels(std::move(lab)), entries(std::move(m)), provenance(std::move(origin)) {
        if (entries.rows() != entries.cols()) throw dimension_error("symbol must be square");
        if (!entries.all_finite()) throw error("symbol has non-finite entries");
        if (labels.empty()) {
            labels.resize(entries.rows());
            for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<double>(i);
        }
        if (labels.size() != entries.rows()) throw dimension_error("label count mismatch");
    }

    std::size_t size() const { return entries.rows(); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["labels"] = labels;
        j["provenance"] = provenance;
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < size(); ++k)
                row.push_back({entries(i, k).real(), entries(i, k).imag()});
            rows.push_back(row);
        }
        j["entries"] = rows;
        return j;
    }

    static SchurSymbol from_json(const nlohmann::json& j) {
        const auto& rows = j.at("entries");
        const std::size_t n = rows.size();
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw dimension_error("symbol entries must be square");
            for (std::size_t k = 0; k < n; ++k)
                m(i, k) = cplx(rows[i][k][0].get<double>(), rows[i][k][1].get<double>());
        }
        std::vector<double> labels;
        if (j.contains("labels"))
            for (const auto& l : j.at("labels")) labels.push_back(l.get<double>());
        return SchurSymbol(std::move(m), j.value("provenance", std::string("unknown")),
                           std::move(labels));
    }
};

/// S_M(A) = (M(j,k) A_jk), the entrywise action.
inline ComplexMatrix apply_multiplier(const SchurSymbol& m, const ComplexMatrix& a) {
    if (a.rows() != m.size() || a.cols() != m.size())
        throw dimension_error("multiplier and argument index sets differ");
    return hadamard(m.entries, a);
}

inline SchurSymbol symbol_op(const SchurSymbol& m) {
    return SchurSymbol(m.entries.transpose(), m.provenance + "|op", m.labels);
}

inline SchurSymbol symbol_conj(const SchurSymbol& m) {
    return SchurSymbol(m.entries.conjugate(), m.provenance + "|conj", m.labels);
}

inline SchurSymbol symbol_adjoint(const SchurSymbol& m) {
    return SchurSymbol(m.entries.adjoint(), m.provenance + "|adj", m.labels);
}

struct SymbolSymmetries {
    SchurSymbol op;
    SchurSymbol conj;
    SchurSymbol adjoint;
};

/// The transformed symbols whose multiplier norms coincide with M's.
inline SymbolSymmetries symbol_symmetries(const SchurSymbol& m) {
    return {symbol_op(m), symbol_conj(m), symbol_adjoint(m)};
}

/// Conditional expectation onto the block-diagonal set {u_j = u_k}:
/// keeps entries whose family vectors coincide, zeroes the rest.
/// Idempotent, and Schatten-contractive for every p.
inline ComplexMatrix diagonal_expectation(const ComplexMatrix& a, const VectorFamily& f) {
    if (a.rows() != f.size() || a.cols() != f.size())
        throw dimension_error("matrix and family index sets differ");
    ComplexMatrix e(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.rows(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (f.vectors_equal(j, k)) e(j, k) = a(j, k);
    return e;
}

} // namespace schurlab
