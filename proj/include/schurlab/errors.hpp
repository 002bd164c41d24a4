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

#include <stdexcept>
#include <string>

namespace schurlab {

/// Base class for all schurlab failures.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible shapes or index sets.
class dimension_error : public error {
public:
    using error::error;
};

/// Schatten exponent outside the accepted range.
class invalid_exponent_error : public error {
public:
    using error::error;
};

/// Matrix fails the Hermitian-PSD tolerance test.
class not_psd_error : public error {
public:
    using error::error;
};

/// An operator that must be a contraction has norm > 1 + tol.
class contraction_error : public error {
public:
    using error::error;
};

/// Input violates a documented precondition (support, unit norm, ...).
class precondition_error : public error {
public:
    using error::error;
};

/// Function table is not nondecreasing.
class monotonicity_error : public error {
public:
    using error::error;
};

/// Symbol rows unsuitable for a variation decomposition.
class decomposition_error : public error {
public:
    using error::error;
};

/// Custom block families must be pairwise disjoint.
class partition_error : public error {
public:
    using error::error;
};

/// Grid too coarse for the requested finite-difference order.
class resolution_error : public error {
public:
    using error::error;
};

/// Bad suite configuration.
class config_error : public error {
public:
    using error::error;
};

/// Report could not be written.
class io_error : public error {
public:
    using error::error;
};

} // namespace schurlab
