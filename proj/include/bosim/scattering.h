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

#ifndef BOSIM_SCATTERING_H
#define BOSIM_SCATTERING_H

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bosim/core.h"

namespace bosim {

/// Largest photon number accepted by p_partial (its cost grows as (n!)^2).
inline constexpr int kPartialMaxPhotons = 5;

/// Matrices whose permanents give the amplitude for input S -> output T.
struct ScatteringSubmatrix {
    /// m x n: column j of U repeated t_j times, ascending j.
    ComplexMatrix output_columns;
    /// n x n: row i of output_columns repeated s_i times, ascending i.
    ComplexMatrix submatrix;
    ModeConfiguration input;
    ModeConfiguration output;
};

/// Throws DimensionError when S or T does not match U's mode count, or
/// when S and T hold different photon numbers.
ScatteringSubmatrix build_submatrix(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t);

/// Pairwise overlaps <psi_k|psi_l> of the n input photons, in the photon
/// order of ModeConfiguration::photon_modes(). All-ones means fully
/// indistinguishable photons, identity fully distinguishable.
class GramMatrix {
   public:
    /// Validates Hermiticity, unit diagonal, |S_kl| <= 1 and positive
    /// semidefiniteness; throws DomainError otherwise.
    explicit GramMatrix(ComplexMatrix overlaps);

    static GramMatrix indistinguishable(size_t n);
    static GramMatrix distinguishable(size_t n);
    /// (1 - lambda) I + lambda J.
    static GramMatrix uniform(size_t n, double lambda);

    size_t photons() const {
        return static_cast<size_t>(overlaps_.rows());
    }
    const ComplexMatrix &overlaps() const {
        return overlaps_;
    }
    Complex operator()(size_t k, size_t l) const {
        return overlaps_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
    }

   private:
    ComplexMatrix overlaps_;
};

/// |Per(U_ST)|^2 / (prod s_i! prod t_j!).
double p_quantum(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t);

/// Per(|U_ST|^2) / prod t_j!.
double p_classical(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t);

/// Output probability for partially distinguishable photons, by explicit
/// summation over pairs of permutations. Limited to kPartialMaxPhotons.
/// Gram rows follow U_ST rows: photons in ascending input mode.
double p_partial(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t, const GramMatrix &gram);

struct QuantumFlavor {};
struct ClassicalFlavor {};
struct PartialFlavor {
    GramMatrix gram;
};
using Flavor = std::variant<QuantumFlavor, ClassicalFlavor, PartialFlavor>;

struct ProbabilityRecord {
    ModeConfiguration config;
    double p_quantum = 0;
    double p_classical = 0;
    /// Prediction of an imperfect-source or classical-light model, when one applies.
    std::optional<double> p_model;
};

struct OutcomeTable {
    ModeConfiguration input;
    std::vector<ProbabilityRecord> records;
    /// Non-fatal remarks, e.g. a lossy transfer matrix.
    std::vector<std::string> warnings;
};

/// Probability of every output configuration for input S. p_quantum and
/// p_classical are always filled; a PartialFlavor also fills p_model.
OutcomeTable full_distribution(
    const TransferMatrix &u, const ModeConfiguration &s, const Flavor &flavor, bool collision_free_only);

/// The column of `record` that `flavor` selects.
double flavor_probability(const ProbabilityRecord &record, const Flavor &flavor);

struct SampleCounts {
    std::vector<ModeConfiguration> configs;
    std::vector<uint64_t> counts;
    uint64_t shots = 0;
};

/// `shots` i.i.d. draws from the exact output distribution (colliding
/// outputs included). Counts follow enumeration order.
SampleCounts sample(const TransferMatrix &u, const ModeConfiguration &s, const Flavor &flavor, uint64_t shots, uint64_t seed);

}  // namespace bosim

#endif
