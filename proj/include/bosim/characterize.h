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

#ifndef BOSIM_CHARACTERIZE_H
#define BOSIM_CHARACTERIZE_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bosim/core.h"

namespace bosim {

enum class ProbeKind { single, dual };

/// Output intensities for one coherent-probe setting.
///
/// A single probe injects unit power into `input`. A dual probe injects unit
/// amplitude into mode 0 and into `input` with relative phase `phase`, which
/// is one of 0, pi/2, pi, 3pi/2.
struct ProbeReading {
    ProbeKind kind = ProbeKind::single;
    int input = 0;
    double phase = 0;
    std::vector<double> intensities;
};

/// Fringe phases sampled by every dual probe.
inline constexpr int kDualPhaseSettings = 4;
/// Products r_1j * r_kj below this leave the relative phase undetermined.
inline constexpr double kPhaseIndeterminateThreshold = 1e-8;

struct CharacterizationReport {
    TransferMatrix reconstructed;
    /// Gauge convention of `reconstructed`.
    std::string gauge;
    /// Number of distinct input settings used: m single plus (m - 1) dual.
    int probe_configurations = 0;
    /// (input, output) entries whose phase was set to 0 for lack of signal.
    std::vector<std::pair<int, int>> phase_indeterminate;
    /// Max entrywise distance to a known device after gauge alignment.
    std::optional<double> residual;
};

/// Coherent probe measurements of `device`: m single-mode probes followed by
/// m - 1 dual probes (mode 0 with mode k), each at the four phase settings.
/// Every intensity is multiplied by (1 + eps), eps ~ Normal(0, noise_sigma).
std::vector<ProbeReading> simulate_probes(const TransferMatrix &device, double noise_sigma, uint64_t seed);

/// Rebuilds the transfer matrix from a complete probe set. Moduli are
/// sqrt(n_ij); phases come from the four-point fringe of each dual probe.
/// The result has a real non-negative first row and first column.
CharacterizationReport reconstruct(const std::vector<ProbeReading> &probes, size_t m);

struct GaugeAlignment {
    /// D_out * B * D_in, as close as the phases allow to the reference.
    TransferMatrix aligned;
    std::vector<Complex> row_phases;
    std::vector<Complex> column_phases;
    /// max |A - aligned|
    double residual = 0;
    /// B had an all-zero row or column; phases there are arbitrary.
    bool degenerate = false;
};

/// Finds diagonal phase matrices that bring `b` closest to `a`.
GaugeAlignment gauge_align(const TransferMatrix &a, const TransferMatrix &b);

}  // namespace bosim

#endif
