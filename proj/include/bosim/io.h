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

#ifndef BOSIM_IO_H
#define BOSIM_IO_H

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bosim/analysis.h"
#include "bosim/characterize.h"
#include "bosim/core.h"
#include "bosim/scattering.h"
#include "bosim/source.h"

namespace bosim::io {

using nlohmann::json;

// Every *_from_json function throws SchemaError on malformed input.

/// {"m": int, "re": [[...]], "im": [[...]], "label": string}
json to_json(const TransferMatrix &u);
TransferMatrix transfer_matrix_from_json(const json &j);

/// [int; m]
json to_json(const ModeConfiguration &c);
ModeConfiguration configuration_from_json(const json &j);

/// [{"T": [...], "pQ": f, "pC": f, "pModel": f|null}]
json to_json(const OutcomeTable &table);
std::string to_csv(const OutcomeTable &table);

/// [{"T": [...], "V": f|null, "source": str, "flags": [str]}]
json to_json(const std::vector<VisibilityRecord> &records);
std::vector<VisibilityRecord> visibility_records_from_json(const json &j);
std::string to_csv(const std::vector<VisibilityRecord> &records);

json to_json(const ComparisonReport &report);
std::string to_csv(const ComparisonReport &report);

/// {"exposure": f, "counts": [{"T": [...], "count": f}]}
json to_json(const CountsTable &table);
CountsTable counts_table_from_json(const json &j);
std::string to_csv(const CountsTable &table);

/// {"m": int, "probes": [{"kind": "single"|"dual", "input": 1-based, "phase": f, "intensities": [...]}]}
json probes_to_json(const std::vector<ProbeReading> &probes, size_t m);
std::vector<ProbeReading> probes_from_json(const json &j, size_t &m);

json to_json(const CharacterizationReport &report);

/// {"eta", "purity", "sigma_tau", "delays": [f|"inf"|"-inf"], "max_pairs_per_source"}
json to_json(const SourceModel &model);
SourceModel source_model_from_json(const json &j);

/// {"efficiencies": [...], "splitter_ratio", "tap_efficiencies": [a, b], "tapped_modes": [1-based]}
json to_json(const DetectionModel &model);
DetectionModel detection_model_from_json(const json &j);

std::string hom_scan_csv(const std::vector<HomPoint> &curve);

/// "1 0 1 0 0 0"
std::string configuration_field(const ModeConfiguration &c);
/// Shortest round-trip decimal form.
std::string format_double(double x);

json parse_json(const std::string &text, const std::string &what);

}  // namespace bosim::io

#endif
