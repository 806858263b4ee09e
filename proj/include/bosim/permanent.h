// Copyright 2026 The bosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSIM_PERMANENT_H
#define BOSIM_PERMANENT_H

#include <cstddef>
#include <string_view>

#include "bosim/core.h"

namespace bosim {

enum class PermanentAlgorithm { naive, ryser, glynn };

std::string_view to_string(PermanentAlgorithm algorithm);
/// Throws SchemaError for unknown names.
PermanentAlgorithm parse_permanent_algorithm(std::string_view name);

struct PermanentResult {
    Complex value;
    PermanentAlgorithm algorithm;
    size_t n;
};

/// Largest dimension accepted by permanent_naive.
inline constexpr size_t kNaivePermanentMaxN = 10;
/// Largest dimension accepted by the inclusion-exclusion kernels.
inline constexpr size_t kPermanentMaxN = 30;
/// Above this size the kernels switch to compensated accumulation.
inline constexpr size_t kCompensatedSummationMinN = 21;

/// Sum over all permutations. O(n! n); reference oracle for the fast kernels.
Complex permanent_naive(const ComplexMatrix &matrix);

/// Ryser inclusion-exclusion over Gray-code ordered column subsets, O(2^n n).
///
/// The subset range is split into a fixed number of chunks whose partial sums
/// are combined by a fixed pairwise tree, so the result is bit-identical for
/// any number of worker threads.
Complex permanent_ryser(const ComplexMatrix &matrix);

/// Glynn's formula with Gray-code sign vectors, O(2^(n-1) n).
Complex permanent_glynn(const ComplexMatrix &matrix);

PermanentResult permanent(const ComplexMatrix &matrix, PermanentAlgorithm algorithm = PermanentAlgorithm::ryser);

/// Permanent of an entrywise non-negative real matrix. Throws DomainError on
/// negative entries. Rounding noise below zero is clamped to 0.
double permanent_nonneg(const RealMatrix &matrix, PermanentAlgorithm algorithm = PermanentAlgorithm::ryser);

}  // namespace bosim

#endif
