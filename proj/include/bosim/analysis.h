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

#ifndef BOSIM_ANALYSIS_H
#define BOSIM_ANALYSIS_H

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "bosim/core.h"
#include "bosim/scattering.h"
#include "bosim/source.h"

namespace bosim {

enum class VisibilitySource { fock_prediction, coherent_prediction, model_prediction, sampled };

std::string_view to_string(VisibilitySource source);
VisibilitySource parse_visibility_source(std::string_view name);

/// Bit flags explaining why a visibility is missing.
enum VisibilityFlag : unsigned {
    kVisibilityOk = 0,
    kUnreachable = 1u << 0,             ///< classical reference probability is zero
    kInsufficientStatistics = 1u << 1,  ///< no distinguishable-photon counts
    kUnresolvable = 1u << 2,            ///< detectors cannot register the configuration
};

std::vector<std::string_view> flag_names(unsigned flags);
unsigned parse_flag(std::string_view name);

struct VisibilityRecord {
    ModeConfiguration config;
    /// NaN whenever flags != 0.
    double value;
    VisibilitySource source;
    unsigned flags = kVisibilityOk;

    bool usable() const {
        return flags == kVisibilityOk;
    }
};

/// (p_classical - p_quantum) / p_classical. Throws DomainError when
/// p_classical <= 0.
double visibility(double p_classical, double p_quantum);

/// Classical-reference delay settings for n photons: every photon pushed
/// far from every other. For n = 3 these are the two mirrored settings
/// {-inf, 0, inf} and {inf, 0, -inf}, averaged by the model method.
std::vector<std::vector<double>> classical_reference_delays(int n);

struct FockMethod {};
struct CoherentMethod {};
struct ModelMethod {
    SourceModel source;
    DetectionModel detection;
    std::optional<int> trigger;
};
using VisibilityMethod = std::variant<FockMethod, CoherentMethod, ModelMethod>;

/// One record per output configuration in enumeration order.
std::vector<VisibilityRecord> visibility_table(
    const TransferMatrix &u, const ModeConfiguration &s, const VisibilityMethod &method, bool collision_free_only = true);

struct ComparisonReport {
    std::vector<ModeConfiguration> configs;
    /// |V^A_T - V^B_T|; NaN where either side is flagged.
    std::vector<double> abs_diff;
    /// Mean of the finite entries of abs_diff.
    double l1 = 0;
    size_t compared = 0;
    size_t excluded = 0;
};

/// Average per-configuration visibility distance. Throws SchemaError when
/// the two tables list different configurations.
ComparisonReport l1_distance(const std::vector<VisibilityRecord> &a, const std::vector<VisibilityRecord> &b);

/// Coincidence counts per output configuration, collected over `exposure`
/// trials (shots or integration time).
struct CountsTable {
    std::vector<ModeConfiguration> configs;
    std::vector<double> counts;
    double exposure = 0;

    static CountsTable from_samples(const SampleCounts &samples);
};

/// V_T = 1 - rate^Q_T / rate^C_T with rate = count / exposure. Per-
/// configuration efficiencies multiply both counts and cancel.
std::vector<VisibilityRecord> visibilities_from_counts(
    const CountsTable &indistinguishable, const CountsTable &distinguishable);

}  // namespace bosim

#endif
