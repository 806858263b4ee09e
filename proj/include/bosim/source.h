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

#ifndef BOSIM_SOURCE_H
#define BOSIM_SOURCE_H

#include <optional>
#include <span>
#include <vector>

#include "bosim/core.h"
#include "bosim/scattering.h"

namespace bosim {

/// Imperfect downconversion photon source.
///
/// Each source emits k photon pairs with probability proportional to
/// eta^(2k), k = 1..max_pairs_per_source. Nominal photons are Gaussian
/// wavepackets of width sigma_tau arriving at `delays`; their pairwise
/// overlap is capped by the spectral purity.
struct SourceModel {
    double eta = 0;
    double purity = 1;
    double sigma_tau = 1;
    /// One delay per nominal photon, in ascending input-mode order. Empty
    /// means all zero. Infinite values mark fully delayed photons.
    std::vector<double> delays;
    int max_pairs_per_source = 2;

    /// Throws DomainError when a field is out of range.
    void check() const;
};

/// Bucket detectors behind each output mode, with an optional beam-splitter
/// tap that resolves two photons in a mode.
struct DetectionModel {
    /// Per output mode; empty means unit efficiency everywhere.
    std::vector<double> efficiencies;
    /// Probability that a photon in a tapped mode takes the first tap port.
    double splitter_ratio = 0.5;
    /// Efficiencies of the two detectors behind each tap.
    double tap_efficiencies[2] = {1.0, 1.0};
    /// 0-based output modes fitted with the number-resolving tap.
    std::vector<int> tapped_modes;

    void check(size_t m) const;
    double efficiency(size_t mode) const;
    bool tapped(size_t mode) const;
};

/// S_kk = 1, S_kl = purity * exp(-(tau_k - tau_l)^2 / (4 sigma_tau^2)).
GramMatrix gram_from_delays(const SourceModel &model, size_t n);

struct HomPoint {
    double delay;
    double probability;
    /// (p_classical - probability) / p_classical; NaN if p_classical is 0.
    double visibility;
};

/// Two-photon output probability as the second photon is delayed by each
/// grid value relative to the first.
std::vector<HomPoint> hom_scan(
    const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t, const SourceModel &model,
    std::span<const double> delay_grid);

/// One emission pattern of the sources feeding the circuit.
struct EmissionPattern {
    ModeConfiguration input;
    /// Per photon, in ModeConfiguration::photon_modes() order: the nominal
    /// photon index (0-based, ascending mode), or -1 for an excess photon
    /// that is distinguishable from every other photon.
    std::vector<int> photon_tags;
    double weight = 0;
};

/// Enumerates multi-pair emissions behind a collision-free nominal input.
///
/// With a trigger, the photon entering `trigger` (0-based input mode) is
/// heralded by its twin; the remaining nominal photons are paired in
/// ascending mode order, each pair coming from one source. Every source
/// fires at least once: heralding removes vacuum for the triggered source
/// and the n-fold coincidence requirement removes it for the others.
std::vector<EmissionPattern> spdc_input_ensemble(
    const SourceModel &model, const ModeConfiguration &nominal, std::optional<int> trigger);

/// Predicted coincidence rate per output configuration for the imperfect
/// source and detectors, filled into p_model (p_quantum and p_classical are
/// the ideal values). An event counts for T when every detector that T
/// requires fires; extra clicks elsewhere are ignored. Two photons in a mode
/// require its tap; rows the detectors cannot register have no p_model.
OutcomeTable predict_measured_table(
    const TransferMatrix &u, const ModeConfiguration &nominal, const SourceModel &model, const DetectionModel &detection,
    std::optional<int> trigger, bool collision_free_only);

/// Chance that two photons in a tapped mode are registered as a coincidence
/// on the two tap detectors.
double number_resolved_probability(double two_photon_mode_prob, const DetectionModel &detection);

}  // namespace bosim

#endif
