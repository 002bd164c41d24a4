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

#include "complex_matrix.hpp"
#include "decompositions.hpp"
#include "errors.hpp"
#include "gaussian_mc.hpp"
#include "hilbert_family.hpp"
#include "norm_lab.hpp"
#include "report.hpp"
#include "riesz_schur.hpp"
#include "rng.hpp"
#include "schatten.hpp"
#include "schur_symbol.hpp"
#include "suites.hpp"
#include "symbol_zoo.hpp"
#include "vector_valued.hpp"
