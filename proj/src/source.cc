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

#include "bosim/source.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "bosim/errors.h"
#include "bosim/parallel.h"

namespace bosim {

void SourceModel::check() const {
    if (!(eta >= 0 && eta < 0.5)) {
        throw DomainError("eta must lie in [0, 0.5)");
    }
    if (!(purity >= 0 && purity <= 1)) {
        throw DomainError("purity must lie in [0, 1]");
    }
    if (!(sigma_tau > 0) || !std::isfinite(sigma_tau)) {
        throw DomainError("sigma_tau must be positive and finite");
    }
    if (max_pairs_per_source < 1) {
        throw DomainError("max_pairs_per_source must be at least 1");
    }
    for (double d : delays) {
        if (std::isnan(d)) {
            throw DomainError("delays must not be NaN");
        }
    }
}

void DetectionModel::check(size_t m) const {
    if (!efficiencies.empty() && efficiencies.size() != m) {
        throw DimensionError("detector efficiencies must list one value per output mode");
    }
    for (double e : efficiencies) {
        if (!(e > 0 && e <= 1)) {
            throw DomainError("detector efficiencies must lie in (0, 1]");
        }
    }
    if (!(splitter_ratio > 0 && splitter_ratio < 1)) {
        throw DomainError("splitter ratio must lie in (0, 1)");
    }
    for (double e : tap_efficiencies) {
        if (!(e > 0 && e <= 1)) {
            throw DomainError("tap detector efficiencies must lie in (0, 1]");
        }
    }
    for (int mode : tapped_modes) {
        if (mode < 0 || static_cast<size_t>(mode) >= m) {
            throw DimensionError("tapped mode " + std::to_string(mode + 1) + " outside the circuit");
        }
    }
}

double DetectionModel::efficiency(size_t mode) const {
    return efficiencies.empty() ? 1.0 : efficiencies[mode];
}

bool DetectionModel::tapped(size_t mode) const {
    return std::find(tapped_modes.begin(), tapped_modes.end(), static_cast<int>(mode)) != tapped_modes.end();
}

GramMatrix gram_from_delays(const SourceModel &model, size_t n) {
    if (!(model.sigma_tau > 0)) {
        throw DomainError("sigma_tau must be positive");
    }
    if (!(model.purity >= 0 && model.purity <= 1)) {
        throw DomainError("purity must lie in [0, 1]");
    }
    if (!model.delays.empty() && model.delays.size() != n) {
        throw DimensionError(
            "source model lists " + std::to_string(model.delays.size()) + " delays for " + std::to_string(n) + " photons");
    }
    auto delay = [&](size_t k) { return model.delays.empty() ? 0.0 : model.delays[k]; };

    auto size = static_cast<Eigen::Index>(n);
    ComplexMatrix g = ComplexMatrix::Identity(size, size);
    for (size_t k = 0; k < n; k++) {
        for (size_t l = 0; l < n; l++) {
            if (k == l) {
                continue;
            }
            // Equal delays (including equal infinities) overlap fully.
            double d = delay(k) == delay(l) ? 0.0 : delay(k) - delay(l);
            double overlap = model.purity * std::exp(-d * d / (4 * model.sigma_tau * model.sigma_tau));
            g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = overlap;
        }
    }
    return GramMatrix(std::move(g));
}

std::vector<HomPoint> hom_scan(
    const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t, const SourceModel &model,
    std::span<const double> delay_grid) {
    if (s.photons() != 2) {
        throw DimensionError("hom_scan needs exactly two input photons");
    }
    double classical = p_classical(u, s, t);
    std::vector<HomPoint> curve(delay_grid.size());
    parallel_for(delay_grid.size(), [&](size_t k) {
        SourceModel at = model;
        at.delays = {0.0, delay_grid[k]};
        double p = p_partial(u, s, t, gram_from_delays(at, 2));
        double v = classical > 0 ? (classical - p) / classical : std::numeric_limits<double>::quiet_NaN();
        curve[k] = HomPoint{delay_grid[k], p, v};
    });
    return curve;
}

namespace {

struct SourceAssignment {
    std::vector<int> modes;  // 0-based input modes fed by this source
};

std::vector<SourceAssignment> assign_sources(const ModeConfiguration &nominal, std::optional<int> trigger) {
    std::vector<int> modes = nominal.photon_modes();
    std::vector<SourceAssignment> sources;
    if (trigger.has_value()) {
        auto it = std::find(modes.begin(), modes.end(), *trigger);
        if (it == modes.end()) {
            throw DimensionError("trigger mode " + std::to_string(*trigger + 1) + " carries no nominal photon");
        }
        sources.push_back({{*trigger}});
        modes.erase(it);
    }
    if (modes.size() % 2 != 0) {
        throw DimensionError("nominal photons outside the heralded mode must come in pairs");
    }
    for (size_t k = 0; k < modes.size(); k += 2) {
        sources.push_back({{modes[k], modes[k + 1]}});
    }
    std::sort(sources.begin(), sources.end(), [](const auto &a, const auto &b) { return a.modes.front() < b.modes.front(); });
    return sources;
}

}  // namespace

std::vector<EmissionPattern> spdc_input_ensemble(
    const SourceModel &model, const ModeConfiguration &nominal, std::optional<int> trigger) {
    model.check();
    if (!nominal.collision_free()) {
        throw DomainError("nominal input " + nominal.str() + " must be collision-free");
    }
    if (nominal.photons() < 1) {
        throw DimensionError("nominal input must hold at least one photon");
    }
    std::vector<SourceAssignment> sources = assign_sources(nominal, trigger);

    int cap = model.max_pairs_per_source;
    std::vector<double> pair_weight(static_cast<size_t>(cap) + 1, 0.0);
    if (model.eta == 0) {
        pair_weight[1] = 1;
    } else {
        double norm = 0;
        for (int k = 1; k <= cap; k++) {
            pair_weight[static_cast<size_t>(k)] = std::pow(model.eta, 2 * k);
            norm += pair_weight[static_cast<size_t>(k)];
        }
        for (auto &w : pair_weight) {
            w /= norm;
        }
    }

    std::vector<int> nominal_index(nominal.modes(), -1);
    {
        int idx = 0;
        for (int mode : nominal.photon_modes()) {
            nominal_index[static_cast<size_t>(mode)] = idx++;
        }
    }

    std::vector<EmissionPattern> patterns;
    std::vector<int> pairs(sources.size(), 1);
    while (true) {
        double weight = 1;
        std::vector<int> occ = nominal.occupations();
        for (size_t src = 0; src < sources.size(); src++) {
            weight *= pair_weight[static_cast<size_t>(pairs[src])];
            for (int mode : sources[src].modes) {
                occ[static_cast<size_t>(mode)] += pairs[src] - 1;
            }
        }
        if (weight > 0) {
            EmissionPattern pattern;
            pattern.input = ModeConfiguration(occ);
            for (size_t mode = 0; mode < occ.size(); mode++) {
                for (int k = 0; k < occ[mode]; k++) {
                    pattern.photon_tags.push_back(k == 0 ? nominal_index[mode] : -1);
                }
            }
            pattern.weight = weight;
            patterns.push_back(std::move(pattern));
        }

        size_t pos = 0;
        while (pos < pairs.size() && ++pairs[pos] > cap) {
            pairs[pos] = 1;
            pos++;
        }
        if (pos == pairs.size()) {
            break;
        }
    }
    return patterns;
}

namespace {

/// Probability that the detectors behind `mode` register `required` (1 or 2)
/// photons when `arriving` photons reach it. Two photons need a tapped mode.
double registration_probability(const DetectionModel &det, size_t mode, int required, int arriving) {
    if (arriving == 0) {
        return 0.0;
    }
    if (!det.tapped(mode)) {
        return 1 - std::pow(1 - det.efficiency(mode), arriving);
    }
    double a = det.splitter_ratio * det.tap_efficiencies[0];
    double b = (1 - det.splitter_ratio) * det.tap_efficiencies[1];
    if (required == 1) {
        return 1 - std::pow(1 - a - b, arriving);
    }
    return 1 - std::pow(1 - a, arriving) - std::pow(1 - b, arriving) + std::pow(1 - a - b, arriving);
}

using Distribution = std::map<std::vector<int>, double>;

}  // namespace

OutcomeTable predict_measured_table(
    const TransferMatrix &u, const ModeConfiguration &nominal, const SourceModel &model, const DetectionModel &detection,
    std::optional<int> trigger, bool collision_free_only) {
    model.check();
    detection.check(u.modes());
    if (nominal.modes() != u.modes()) {
        throw DimensionError("nominal input length does not match the transfer matrix");
    }
    int n = nominal.photons();
    if (n > kPartialMaxPhotons) {
        throw DimensionError("imperfect-source prediction supports at most " + std::to_string(kPartialMaxPhotons) + " photons");
    }
    std::vector<EmissionPattern> ensemble = spdc_input_ensemble(model, nominal, trigger);
    GramMatrix gram = gram_from_delays(model, static_cast<size_t>(n));

    // Nominal photons interfere according to the Gram matrix; excess photons
    // are distinguishable from all others and scatter independently.
    OutcomeTable nominal_table = full_distribution(u, nominal, PartialFlavor{gram}, false);
    Distribution nominal_dist;
    for (const auto &rec : nominal_table.records) {
        nominal_dist[rec.config.occupations()] = *rec.p_model;
    }

    std::vector<Distribution> pattern_dists;
    for (const EmissionPattern &pattern : ensemble) {
        Distribution dist = nominal_dist;
        std::vector<int> modes = pattern.input.photon_modes();
        for (size_t k = 0; k < modes.size(); k++) {
            if (pattern.photon_tags[k] != -1) {
                continue;
            }
            Distribution next;
            for (const auto &[occ, p] : dist) {
                for (size_t j = 0; j < u.modes(); j++) {
                    double q = std::norm(u(static_cast<size_t>(modes[k]), j));
                    if (q == 0) {
                        continue;
                    }
                    std::vector<int> moved = occ;
                    moved[j]++;
                    next[moved] += p * q;
                }
            }
            dist = std::move(next);
        }
        pattern_dists.push_back(std::move(dist));
    }

    OutcomeTable table;
    table.input = nominal;
    table.warnings = nominal_table.warnings;
    std::vector<ModeConfiguration> outputs = enumerate_output_configurations(u.modes(), n, collision_free_only);
    table.records.resize(outputs.size());
    std::vector<char> unresolvable(outputs.size(), 0);
    parallel_for(outputs.size(), [&](size_t r) {
        const ModeConfiguration &t = outputs[r];
        ProbabilityRecord &rec = table.records[r];
        rec.config = t;
        rec.p_quantum = p_quantum(u, nominal, t);
        rec.p_classical = p_classical(u, nominal, t);
        for (size_t j = 0; j < t.modes(); j++) {
            if (t[j] > 2 || (t[j] == 2 && !detection.tapped(j))) {
                unresolvable[r] = 1;
                return;
            }
        }

        double rate = 0;
        for (size_t e = 0; e < ensemble.size(); e++) {
            double acc = 0;
            for (const auto &[occ, p] : pattern_dists[e]) {
                double accept = 1;
                for (size_t j = 0; j < t.modes() && accept > 0; j++) {
                    if (t[j] == 0) {
                        continue;
                    }
                    accept *= registration_probability(detection, j, t[j], occ[j]);
                }
                acc += p * accept;
            }
            rate += ensemble[e].weight * acc;
        }
        rec.p_model = rate;
    });
    for (size_t r = 0; r < outputs.size(); r++) {
        if (unresolvable[r]) {
            table.warnings.push_back("output " + outputs[r].str() + " cannot be registered by the detectors");
        }
    }
    return table;
}

double number_resolved_probability(double two_photon_mode_prob, const DetectionModel &detection) {
    double r = detection.splitter_ratio;
    if (!(r > 0 && r < 1)) {
        throw DomainError("splitter ratio must lie in (0, 1)");
    }
    return two_photon_mode_prob * 2 * r * (1 - r) * detection.tap_efficiencies[0] * detection.tap_efficiencies[1];
}

}  // namespace bosim
