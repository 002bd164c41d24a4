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
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "complex_matrix.hpp"
#include "errors.hpp"

namespace schurlab {

/// Indexed family (u_j) of vectors in C^d. The designated real subspace is
/// the set of real-coordinate vectors in the standard basis, so the
/// conjugation J is entrywise complex conjugation (conj_vec). That choice is
/// fixed once, globally; the row/column coupling below always refers to it.
class VectorFamily {
public:
    VectorFamily() = default;

    VectorFamily(std::size_t dim, std::vector<CVec> vectors, std::vector<double> labels = {})
        : dim_(dim), vectors_(std::move(vectors)), labels_(std::move(labels)) {
        for (const auto& v : vectors_)
            if (v.size() != dim_) throw dimension_error("family vector has wrong dimension");
        if (labels_.empty()) {
            labels_.resize(vectors_.size());
            for (std::size_t j = 0; j < labels_.size(); ++j) labels_[j] = static_cast<double>(j);
        }
        if (labels_.size() != vectors_.size())
            throw dimension_error("label count does not match vector count");
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }
    const CVec& vector(std::size_t j) const { return vectors_[j]; }
    double label(std::size_t j) const { return labels_[j]; }
    const std::vector<double>& labels() const { return labels_; }

    /// Equality threshold for the degenerate set {u_j = u_k}. Deterministic:
    /// the same family always makes the same call.
    double tol_eq() const {
        double m = 0.0;
        for (const auto& v : vectors_) m = std::max(m, vec_norm(v));
        return 1e-12 * (1.0 + m);
    }

    bool vectors_equal(std::size_t j, std::size_t k) const {
        return vec_norm(vec_sub(vectors_[j], vectors_[k])) <= tol_eq();
    }

    /// Gram matrix G(j,k) = <u_j, u_k>, antilinear in the left slot.
    ComplexMatrix gram() const {
        const std::size_t n = size();
        ComplexMatrix g(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) g(j, k) = inner(vectors_[j], vectors_[k]);
        return g;
    }

    /// (u_j - u_k) / ||u_j - u_k||, with 0/0 = 0 when the vectors coincide.
    CVec normalized_difference(std::size_t j, std::size_t k) const {
        CVec d = vec_sub(vectors_[j], vectors_[k]);
        const double nrm = vec_norm(d);
        if (nrm <= tol_eq()) return CVec(dim_, cplx(0.0, 0.0));
        for (auto& z : d) z /= nrm;
        return d;
    }

    bool is_real() const {
        for (const auto& v : vectors_)
            for (const auto& z : v)
                if (z.imag() != 0.0) return false;
        return true;
    }

    /// Re-embed in R^{2d}: coordinates (Re u, Im u). Pairwise real inner
    /// products of the image equal Re<u_j, u_k>, and distances are preserved.
    VectorFamily complexify_real_embedding() const {
        std::vector<CVec> out;
        out.reserve(size());
        for (const auto& v : vectors_) {
            CVec w(2 * dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                w[i] = v[i].real();
                w[dim_ + i] = v[i].imag();
            }
            out.push_back(std::move(w));
        }
        return VectorFamily(2 * dim_, std::move(out), labels_);
    }

    static VectorFamily from_json(const nlohmann::json& j) {
        if (!j.contains("dim") || !j.contains("vectors"))
            throw config_error("family document needs 'dim' and 'vectors'");
        const std::size_t dim = j.at("dim").get<std::size_t>();
        std::vector<CVec> vectors;
        for (const auto& vj : j.at("vectors")) {
            CVec v;
            for (const auto& ej : vj) {
                if (ej.is_array()) {
                    if (ej.size() != 2) throw config_error("complex entry must be [re, im]");
                    v.emplace_back(ej[0].get<double>(), ej[1].get<double>());
                } else {
                    v.emplace_back(ej.get<double>(), 0.0);
                }
            }
            if (v.size() != dim) throw dimension_error("family vector has wrong dimension");
            vectors.push_back(std::move(v));
        }
        std::vector<double> labels;
        if (j.contains("labels"))
            for (const auto& lj : j.at("labels")) labels.push_back(lj.get<double>());
        return VectorFamily(dim, std::move(vectors), std::move(labels));
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["dim"] = dim_;
        j["labels"] = labels_;
        nlohmann::json vecs = nlohmann::json::array();
        for (const auto& v : vectors_) {
            nlohmann::json vj = nlohmann::json::array();
            for (const auto& z : v) vj.push_back({z.real(), z.imag()});
            vecs.push_back(vj);
        }
        j["vectors"] = vecs;
        return j;
    }

private:
    std::size_t dim_ = 0;
    std::vector<CVec> vectors_;
    std::vector<double> labels_;
};

} // namespace schurlab
