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

#include "bosim/analysis.h"

#include <cmath>
#include <limits>
#include <string>

#include "bosim/coherent.h"
#include "bosim/errors.h"
#include "bosim/parallel.h"

namespace bosim {

namespace {
constexpr double kUnreachableProbability = 1e-15;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

std::string_view to_string(VisibilitySource source) {
    switch (source) {
        case VisibilitySource::fock_prediction:
            return "fock_prediction";
        case VisibilitySource::coherent_prediction:
            return "coherent_prediction";
        case VisibilitySource::model_prediction:
            return "model_prediction";
        case VisibilitySource::sampled:
            return "sampled";
    }
    return "sampled";
}

VisibilitySource parse_visibility_source(std::string_view name) {
    for (auto s : {VisibilitySource::fock_prediction, VisibilitySource::coherent_prediction,
                   VisibilitySource::model_prediction, VisibilitySource::sampled}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw SchemaError("unknown visibility source '" + std::string(name) + "'");
}

std::vector<std::string_view> flag_names(unsigned flags) {
    std::vector<std::string_view> names;
    if (flags & kUnreachable) {
        names.push_back("unreachable");
    }
    if (flags & kInsufficientStatistics) {
        names.push_back("insufficient-statistics");
    }
    if (flags & kUnresolvable) {
        names.push_back("unresolvable");
    }
    return names;
}

unsigned parse_flag(std::string_view name) {
    if (name == "unreachable") {
        return kUnreachable;
    }
    if (name == "insufficient-statistics") {
        return kInsufficientStatistics;
    }
    if (name == "unresolvable") {
        return kUnresolvable;
    }
    throw SchemaError("unknown visibility flag '" + std::string(name) + "'");
}

double visibility(double p_classical, double p_quantum) {
    if (!(p_classical > 0)) {
        throw DomainError("visibility undefined: classical probability is zero");
    }
    return (p_classical - p_quantum) / p_classical;
}

std::vector<std::vector<double>> classical_reference_delays(int n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (n == 3) {
        return {{-inf, 0, inf}, {inf, 0, -inf}};
    }
    // Spacing whose square overflows to infinity: overlaps become exactly zero.
    constexpr double kFar = 1e200;
    std::vector<double> delays;
    for (int k = 0; k < n; k++) {
        delays.push_back(k * kFar);
    }
    return {delays};
}

namespace {

VisibilityRecord make_record(const ModeConfiguration &t, VisibilitySource source, double pc, double pq) {
    if (!(pc > kUnreachableProbability)) {
        return {t, kNaN, source, kUnreachable};
    }
    return {t, visibility(pc, pq), source, kVisibilityOk};
}

}  // namespace

std::vector<VisibilityRecord> visibility_table(
    const TransferMatrix &u, const ModeConfiguration &s, const VisibilityMethod &method, bool collision_free_only) {
    if (s.modes() != u.modes()) {
        throw DimensionError("input configuration length does not match the transfer matrix");
    }
    std::vector<ModeConfiguration> outputs = enumerate_output_configurations(u.modes(), s.photons(), collision_free_only);
    std::vector<VisibilityRecord> records(outputs.size());

    if (std::holds_alternative<FockMethod>(method)) {
        // Ideal distinguishable photons: both mirrored n = 3 delay settings
        // give the same p_classical, so their average is exact.
        parallel_for(outputs.size(), [&](size_t k) {
            const ModeConfiguration &t = outputs[k];
            records[k] = make_record(t, VisibilitySource::fock_prediction, p_classical(u, s, t), p_quantum(u, s, t));
        });
        return records;
    }

    if (std::holds_alternative<CoherentMethod>(method)) {
        CoherentInput inputs = CoherentInput::from_configuration(s);
        parallel_for(outputs.size(), [&](size_t k) {
            const ModeConfiguration &t = outputs[k];
            records[k] = make_record(
                t, VisibilitySource::coherent_prediction, coherent_pinf(u, inputs, t), coherent_p0(u, inputs, t));
        });
        return records;
    }

    const auto &model = std::get<ModelMethod>(method);
    int n = s.photons();
    SourceModel indistinguishable = model.source;
    indistinguishable.delays.assign(static_cast<size_t>(n), 0.0);
    OutcomeTable quantum =
        predict_measured_table(u, s, indistinguishable, model.detection, model.trigger, collision_free_only);

    std::vector<std::vector<double>> settings = classical_reference_delays(n);
    std::vector<double> classical(outputs.size(), 0.0);
    std::vector<char> missing(outputs.size(), 0);
    for (const auto &delays : settings) {
        SourceModel delayed = model.source;
        delayed.delays = delays;
        OutcomeTable table = predict_measured_table(u, s, delayed, model.detection, model.trigger, collision_free_only);
        for (size_t k = 0; k < outputs.size(); k++) {
            if (table.records[k].p_model.has_value()) {
                classical[k] += *table.records[k].p_model / static_cast<double>(settings.size());
            } else {
                missing[k] = 1;
            }
        }
    }
    for (size_t k = 0; k < outputs.size(); k++) {
        const auto &q = quantum.records[k].p_model;
        if (missing[k] || !q.has_value()) {
            records[k] = {outputs[k], kNaN, VisibilitySource::model_prediction, kUnresolvable};
        } else {
            records[k] = make_record(outputs[k], VisibilitySource::model_prediction, classical[k], *q);
        }
    }
    return records;
}

ComparisonReport l1_distance(const std::vector<VisibilityRecord> &a, const std::vector<VisibilityRecord> &b) {
    if (a.size() != b.size()) {
        throw SchemaError(
            "visibility tables differ in size (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    ComparisonReport report;
    double sum = 0;
    for (size_t k = 0; k < a.size(); k++) {
        if (a[k].config != b[k].config) {
            throw SchemaError("visibility tables list different configurations at row " + std::to_string(k));
        }
        report.configs.push_back(a[k].config);
        if (a[k].usable() && b[k].usable()) {
            double d = std::abs(a[k].value - b[k].value);
            report.abs_diff.push_back(d);
            sum += d;
            report.compared++;
        } else {
            report.abs_diff.push_back(kNaN);
            report.excluded++;
        }
    }
    report.l1 = report.compared > 0 ? sum / static_cast<double>(report.compared) : kNaN;
    return report;
}

CountsTable CountsTable::from_samples(const SampleCounts &samples) {
    CountsTable table;
    table.configs = samples.configs;
    for (uint64_t c : samples.counts) {
        table.counts.push_back(static_cast<double>(c));
    }
    table.exposure = static_cast<double>(samples.shots);
    return table;
}

std::vector<VisibilityRecord> visibilities_from_counts(
    const CountsTable &indistinguishable, const CountsTable &distinguishable) {
    const CountsTable &q = indistinguishable;
    const CountsTable &c = distinguishable;
    if (q.configs != c.configs || q.counts.size() != q.configs.size() || c.counts.size() != c.configs.size()) {
        throw SchemaError("count tables must list the same configurations in the same order");
    }
    if (!(q.exposure > 0) || !(c.exposure > 0)) {
        throw DomainError("count tables need a positive exposure");
    }
    std::vector<VisibilityRecord> records;
    for (size_t k = 0; k < q.configs.size(); k++) {
        if (!(c.counts[k] > 0)) {
            records.push_back({q.configs[k], kNaN, VisibilitySource::sampled, kInsufficientStatistics});
            continue;
        }
        double rate_q = q.counts[k] / q.exposure;
        double rate_c = c.counts[k] / c.exposure;
        records.push_back({q.configs[k], 1 - rate_q / rate_c, VisibilitySource::sampled, kVisibilityOk});
    }
    return records;
}

}  // namespace bosim
