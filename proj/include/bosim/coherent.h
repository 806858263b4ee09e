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

#ifndef BOSIM_COHERENT_H
#define BOSIM_COHERENT_H

#include <vector>

#include "bosim/core.h"

namespace bosim {

/// Largest number of coherent inputs accepted by the exact phase expansion.
inline constexpr int kCoherentMaxInputs = 5;

/// n equal-amplitude coherent states E_i = exp(i theta_i) injected into
/// distinct input modes, with the phases theta_i averaged over.
class CoherentInput {
   public:
    /// 0-based, distinct modes. Throws DomainError on duplicates or an empty list.
    explicit CoherentInput(std::vector<int> modes);
    /// The occupied modes of a collision-free configuration.
    static CoherentInput from_configuration(const ModeConfiguration &s);

    const std::vector<int> &modes() const {
        return modes_;
    }
    int size() const {
        return static_cast<int>(modes_.size());
    }

   private:
    std::vector<int> modes_;
};

/// Phase-averaged intensity correlation for interfering fields:
/// <prod_j |E_j|^(2 t_j)> over uniform input phases, divided by prod t_j!.
double coherent_p0(const TransferMatrix &u, const CoherentInput &inputs, const ModeConfiguration &t);

/// The same correlation for mutually incoherent fields:
/// prod_j (sum_i |U_ij|^2)^t_j / prod t_j!.
double coherent_pinf(const TransferMatrix &u, const CoherentInput &inputs, const ModeConfiguration &t);

/// (P_inf - P_0) / P_inf. Throws DomainError when the output is unreachable.
double coherent_visibility(const TransferMatrix &u, const CoherentInput &inputs, const ModeConfiguration &t);

}  // namespace bosim

#endif
