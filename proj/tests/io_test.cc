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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "bosim/errors.h"
#include "bosim/io.h"
#include "bosim/published.h"

namespace bosim {
namespace {

using io::json;

ModeConfiguration cfg(std::vector<int> occ) {
    return ModeConfiguration(std::move(occ));
}

TEST(IoTransferMatrix, RoundTripIsExact) {
    auto u = random_unitary(5, 3);
    auto text = io::to_json(u).dump();
    auto back = io::transfer_matrix_from_json(io::parse_json(text, "test"));
    EXPECT_TRUE(back.entries() == u.entries());
    EXPECT_EQ(back.label(), u.label());
}

TEST(IoTransferMatrix, SchemaErrors) {
    EXPECT_THROW(io::parse_json("{", "x"), SchemaError);
    EXPECT_THROW(io::transfer_matrix_from_json(json{{"m", 2}}), SchemaError);
    json bad = io::to_json(TransferMatrix::identity(2));
    bad["re"][1] = json::array({1});
    EXPECT_THROW(io::transfer_matrix_from_json(bad), SchemaError);
    bad = io::to_json(TransferMatrix::identity(2));
    bad["im"][0][0] = "zero";
    EXPECT_THROW(io::transfer_matrix_from_json(bad), SchemaError);
    bad = io::to_json(TransferMatrix::identity(2));
    bad["m"] = 0;
    EXPECT_THROW(io::transfer_matrix_from_json(bad), SchemaError);
}

TEST(IoConfiguration, RoundTripAndErrors) {
    auto c = cfg({1, 0, 2});
    EXPECT_EQ(io::configuration_from_json(io::to_json(c)), c);
    EXPECT_EQ(io::configuration_field(c), "1 0 2");
    EXPECT_THROW(io::configuration_from_json(json::array({1, -1})), SchemaError);
    EXPECT_THROW(io::configuration_from_json(json{{"a", 1}}), SchemaError);
    EXPECT_THROW(io::configuration_from_json(json::array({1.5})), SchemaError);
}

TEST(IoOutcomeTable, Shapes) {
    auto table = full_distribution(random_unitary(3, 1), cfg({1, 1, 0}), QuantumFlavor{}, true);
    table.records[0].p_model = 0.25;
    json j = io::to_json(table);
    ASSERT_EQ(j.size(), 3u);
    EXPECT_EQ(j[0]["pModel"], 0.25);
    EXPECT_TRUE(j[1]["pModel"].is_null());
    EXPECT_EQ(j[0]["T"], json::array({1, 1, 0}));
    std::string csv = io::to_csv(table);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "T,pQ,pC,pModel");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(IoVisibility, RoundTrip) {
    std::vector<VisibilityRecord> records{
        {cfg({1, 1, 0}), 0.5, VisibilitySource::fock_prediction, kVisibilityOk},
        {cfg({0, 1, 1}), std::numeric_limits<double>::quiet_NaN(), VisibilitySource::model_prediction,
         kUnreachable | kUnresolvable},
    };
    auto back = io::visibility_records_from_json(io::to_json(records));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].value, 0.5);
    EXPECT_EQ(back[1].flags, kUnreachable | kUnresolvable);
    EXPECT_TRUE(std::isnan(back[1].value));
    EXPECT_EQ(back[1].source, VisibilitySource::model_prediction);
    std::string csv = io::to_csv(records);
    EXPECT_NE(csv.find("T,V,source,flags\n1 1 0,0.5,fock_prediction,\n"), std::string::npos);
    EXPECT_NE(csv.find("unreachable|unresolvable"), std::string::npos);

    json missing_flag = io::to_json(records);
    missing_flag[1]["flags"] = json::array();
    EXPECT_THROW(io::visibility_records_from_json(missing_flag), SchemaError);
    json bad_source = io::to_json(records);
    bad_source[0]["source"] = "oracle";
    EXPECT_THROW(io::visibility_records_from_json(bad_source), SchemaError);
}

TEST(IoCounts, RoundTripAndDefaultExposure) {
    CountsTable t{{cfg({1, 0}), cfg({0, 1})}, {3, 7}, 10};
    auto back = io::counts_table_from_json(io::to_json(t));
    EXPECT_EQ(back.counts, t.counts);
    EXPECT_EQ(back.exposure, 10.0);
    json j = io::to_json(t);
    j.erase("exposure");
    EXPECT_EQ(io::counts_table_from_json(j).exposure, 10.0);
    j["counts"][0]["count"] = -1;
    EXPECT_THROW(io::counts_table_from_json(j), SchemaError);
}

TEST(IoProbes, RoundTripIsOneBased) {
    auto probes = simulate_probes(random_unitary(3, 2), 0.01, 5);
    json j = io::probes_to_json(probes, 3);
    EXPECT_EQ(j["probes"][0]["input"], 1);
    size_t m = 0;
    auto back = io::probes_from_json(j, m);
    EXPECT_EQ(m, 3u);
    ASSERT_EQ(back.size(), probes.size());
    for (size_t k = 0; k < probes.size(); k++) {
        EXPECT_EQ(back[k].input, probes[k].input);
        EXPECT_EQ(back[k].kind, probes[k].kind);
        EXPECT_EQ(back[k].phase, probes[k].phase);
        EXPECT_EQ(back[k].intensities, probes[k].intensities);
    }
    j["probes"][0]["kind"] = "triple";
    EXPECT_THROW(io::probes_from_json(j, m), SchemaError);
}

TEST(IoSourceModel, InfiniteDelays) {
    SourceModel m;
    m.eta = 0.1;
    m.delays = {-std::numeric_limits<double>::infinity(), 0, std::numeric_limits<double>::infinity()};
    json j = io::to_json(m);
    EXPECT_EQ(j["delays"][0], "-inf");
    auto back = io::source_model_from_json(j);
    EXPECT_EQ(back.delays, m.delays);
    EXPECT_EQ(back.eta, 0.1);
    j["eta"] = 0.7;
    EXPECT_THROW(io::source_model_from_json(j), SchemaError);
    j["eta"] = 0.1;
    j["delays"][0] = "soon";
    EXPECT_THROW(io::source_model_from_json(j), SchemaError);
}

TEST(IoDetectionModel, OneBasedTappedModes) {
    DetectionModel d;
    d.tapped_modes = {0, 4};
    d.splitter_ratio = 0.4;
    json j = io::to_json(d);
    EXPECT_EQ(j["tapped_modes"], json::array({1, 5}));
    auto back = io::detection_model_from_json(j);
    EXPECT_EQ(back.tapped_modes, d.tapped_modes);
    EXPECT_EQ(back.splitter_ratio, 0.4);
    j["tap_efficiencies"] = json::array({1});
    EXPECT_THROW(io::detection_model_from_json(j), SchemaError);
}

TEST(IoFormat, ShortestRoundTrip) {
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(std::nan("")), "");
    double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(io::format_double(x)), x);
}

TEST(IoCharacterization, ReportFields) {
    auto report = reconstruct(simulate_probes(TransferMatrix::identity(2), 0, 1), 2);
    report.residual = 0.0;
    json j = io::to_json(report);
    EXPECT_EQ(j["gauge"], "first-row-column-real");
    EXPECT_EQ(j["probe_configurations"], 3);
    EXPECT_EQ(j["residual"], 0.0);
    EXPECT_EQ(j["validation"]["status"], "unitary");
}

}  // namespace
}  // namespace bosim
