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

#include "bosim/io.h"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bosim/errors.h"

namespace bosim::io {

namespace {

[[noreturn]] void schema_fail(const std::string &what) {
    throw SchemaError(what);
}

const json &require(const json &j, const char *key, const std::string &ctx) {
    if (!j.is_object() || !j.contains(key)) {
        schema_fail(ctx + ": missing field '" + key + "'");
    }
    return j.at(key);
}

double number(const json &j, const std::string &ctx) {
    if (!j.is_number()) {
        schema_fail(ctx + ": expected a number");
    }
    return j.get<double>();
}

double optional_number(const json &j, const char *key, double fallback, const std::string &ctx) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    return number(j.at(key), ctx + "." + key);
}

int integer(const json &j, const std::string &ctx) {
    if (!j.is_number_integer()) {
        schema_fail(ctx + ": expected an integer");
    }
    return j.get<int>();
}

json nullable(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

json delay_to_json(double d) {
    if (std::isinf(d)) {
        return d > 0 ? "inf" : "-inf";
    }
    return d;
}

double delay_from_json(const json &j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        schema_fail("delay string must be 'inf' or '-inf'");
    }
    return number(j, "delay");
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "";
    }
    return fmt::format("{}", x);
}

std::string configuration_field(const ModeConfiguration &c) {
    std::string s;
    for (size_t i = 0; i < c.modes(); i++) {
        if (i > 0) {
            s += ' ';
        }
        s += std::to_string(c[i]);
    }
    return s;
}

json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw SchemaError(what + ": invalid JSON (" + e.what() + ")");
    }
}

json to_json(const TransferMatrix &u) {
    json re = json::array();
    json im = json::array();
    for (size_t i = 0; i < u.modes(); i++) {
        json rrow = json::array();
        json irow = json::array();
        for (size_t j = 0; j < u.modes(); j++) {
            rrow.push_back(u(i, j).real());
            irow.push_back(u(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"m", u.modes()}, {"re", re}, {"im", im}, {"label", u.label()}};
}

TransferMatrix transfer_matrix_from_json(const json &j) {
    const std::string ctx = "transfer matrix";
    int m = integer(require(j, "m", ctx), ctx + ".m");
    if (m < 1) {
        schema_fail(ctx + ": m must be positive");
    }
    const json &re = require(j, "re", ctx);
    const json &im = require(j, "im", ctx);
    auto check_grid = [&](const json &g, const char *name) {
        if (!g.is_array() || g.size() != static_cast<size_t>(m)) {
            schema_fail(ctx + "." + name + ": expected " + std::to_string(m) + " rows");
        }
        for (const auto &row : g) {
            if (!row.is_array() || row.size() != static_cast<size_t>(m)) {
                schema_fail(ctx + "." + name + ": expected " + std::to_string(m) + " columns per row");
            }
        }
    };
    check_grid(re, "re");
    check_grid(im, "im");
    ComplexMatrix u(m, m);
    for (int i = 0; i < m; i++) {
        for (int k = 0; k < m; k++) {
            u(i, k) = Complex(number(re[static_cast<size_t>(i)][static_cast<size_t>(k)], ctx + ".re"),
                              number(im[static_cast<size_t>(i)][static_cast<size_t>(k)], ctx + ".im"));
        }
    }
    std::string label;
    if (j.contains("label")) {
        if (!j["label"].is_string()) {
            schema_fail(ctx + ".label: expected a string");
        }
        label = j["label"].get<std::string>();
    }
    return TransferMatrix(std::move(u), std::move(label));
}

json to_json(const ModeConfiguration &c) {
    return json(c.occupations());
}

ModeConfiguration configuration_from_json(const json &j) {
    if (!j.is_array()) {
        schema_fail("mode configuration: expected an array of integers");
    }
    std::vector<int> occ;
    for (const auto &x : j) {
        int k = integer(x, "mode configuration");
        if (k < 0) {
            schema_fail("mode configuration: occupations must be non-negative");
        }
        occ.push_back(k);
    }
    return ModeConfiguration(std::move(occ));
}

json to_json(const OutcomeTable &table) {
    json rows = json::array();
    for (const auto &rec : table.records) {
        rows.push_back({
            {"T", to_json(rec.config)},
            {"pQ", rec.p_quantum},
            {"pC", rec.p_classical},
            {"pModel", rec.p_model.has_value() ? nullable(*rec.p_model) : json(nullptr)},
        });
    }
    return rows;
}

std::string to_csv(const OutcomeTable &table) {
    std::string out = "T,pQ,pC,pModel\n";
    for (const auto &rec : table.records) {
        out += configuration_field(rec.config) + "," + format_double(rec.p_quantum) + "," +
               format_double(rec.p_classical) + "," + (rec.p_model ? format_double(*rec.p_model) : "") + "\n";
    }
    return out;
}

json to_json(const std::vector<VisibilityRecord> &records) {
    json rows = json::array();
    for (const auto &rec : records) {
        json flags = json::array();
        for (auto name : flag_names(rec.flags)) {
            flags.push_back(std::string(name));
        }
        rows.push_back({
            {"T", to_json(rec.config)},
            {"V", rec.usable() ? nullable(rec.value) : json(nullptr)},
            {"source", std::string(to_string(rec.source))},
            {"flags", flags},
        });
    }
    return rows;
}

std::vector<VisibilityRecord> visibility_records_from_json(const json &j) {
    if (!j.is_array()) {
        schema_fail("visibility table: expected an array");
    }
    std::vector<VisibilityRecord> records;
    for (const auto &row : j) {
        const std::string ctx = "visibility record";
        VisibilityRecord rec{configuration_from_json(require(row, "T", ctx)), std::numeric_limits<double>::quiet_NaN(),
                             VisibilitySource::sampled, kVisibilityOk};
        const json &src = require(row, "source", ctx);
        if (!src.is_string()) {
            schema_fail(ctx + ".source: expected a string");
        }
        rec.source = parse_visibility_source(src.get<std::string>());
        if (row.contains("flags")) {
            if (!row["flags"].is_array()) {
                schema_fail(ctx + ".flags: expected an array");
            }
            for (const auto &f : row["flags"]) {
                if (!f.is_string()) {
                    schema_fail(ctx + ".flags: expected strings");
                }
                rec.flags |= parse_flag(f.get<std::string>());
            }
        }
        const json &v = require(row, "V", ctx);
        if (v.is_null()) {
            if (rec.flags == kVisibilityOk) {
                schema_fail(ctx + ": null V needs a flag");
            }
        } else {
            rec.value = number(v, ctx + ".V");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string to_csv(const std::vector<VisibilityRecord> &records) {
    std::string out = "T,V,source,flags\n";
    for (const auto &rec : records) {
        std::string flags;
        for (auto name : flag_names(rec.flags)) {
            flags += (flags.empty() ? "" : "|") + std::string(name);
        }
        out += configuration_field(rec.config) + "," + (rec.usable() ? format_double(rec.value) : "") + "," +
               std::string(to_string(rec.source)) + "," + flags + "\n";
    }
    return out;
}

json to_json(const ComparisonReport &report) {
    json rows = json::array();
    for (size_t k = 0; k < report.configs.size(); k++) {
        rows.push_back({{"T", to_json(report.configs[k])}, {"abs_diff", nullable(report.abs_diff[k])}});
    }
    return json{
        {"l1", nullable(report.l1)},
        {"compared", report.compared},
        {"excluded", report.excluded},
        {"per_config", rows},
    };
}

std::string to_csv(const ComparisonReport &report) {
    std::string out = "T,abs_diff\n";
    for (size_t k = 0; k < report.configs.size(); k++) {
        out += configuration_field(report.configs[k]) + "," + format_double(report.abs_diff[k]) + "\n";
    }
    return out;
}

json to_json(const CountsTable &table) {
    json rows = json::array();
    for (size_t k = 0; k < table.configs.size(); k++) {
        rows.push_back({{"T", to_json(table.configs[k])}, {"count", table.counts[k]}});
    }
    return json{{"exposure", table.exposure}, {"counts", rows}};
}

CountsTable counts_table_from_json(const json &j) {
    const std::string ctx = "counts table";
    CountsTable table;
    const json &rows = require(j, "counts", ctx);
    if (!rows.is_array()) {
        schema_fail(ctx + ".counts: expected an array");
    }
    double total = 0;
    for (const auto &row : rows) {
        table.configs.push_back(configuration_from_json(require(row, "T", ctx)));
        double c = number(require(row, "count", ctx), ctx + ".count");
        if (c < 0) {
            schema_fail(ctx + ": counts must be non-negative");
        }
        table.counts.push_back(c);
        total += c;
    }
    table.exposure = optional_number(j, "exposure", total, ctx);
    return table;
}

std::string to_csv(const CountsTable &table) {
    std::string out = "T,count\n";
    for (size_t k = 0; k < table.configs.size(); k++) {
        out += configuration_field(table.configs[k]) + "," + format_double(table.counts[k]) + "\n";
    }
    return out;
}

json probes_to_json(const std::vector<ProbeReading> &probes, size_t m) {
    json rows = json::array();
    for (const auto &p : probes) {
        rows.push_back({
            {"kind", p.kind == ProbeKind::single ? "single" : "dual"},
            {"input", p.input + 1},
            {"phase", p.phase},
            {"intensities", p.intensities},
        });
    }
    return json{{"m", m}, {"probes", rows}};
}

std::vector<ProbeReading> probes_from_json(const json &j, size_t &m) {
    const std::string ctx = "probe set";
    int modes = integer(require(j, "m", ctx), ctx + ".m");
    if (modes < 1) {
        schema_fail(ctx + ": m must be positive");
    }
    m = static_cast<size_t>(modes);
    const json &rows = require(j, "probes", ctx);
    if (!rows.is_array()) {
        schema_fail(ctx + ".probes: expected an array");
    }
    std::vector<ProbeReading> probes;
    for (const auto &row : rows) {
        ProbeReading p;
        const json &kind = require(row, "kind", ctx);
        if (kind == "single") {
            p.kind = ProbeKind::single;
        } else if (kind == "dual") {
            p.kind = ProbeKind::dual;
        } else {
            schema_fail(ctx + ": kind must be 'single' or 'dual'");
        }
        p.input = integer(require(row, "input", ctx), ctx + ".input") - 1;
        p.phase = optional_number(row, "phase", 0.0, ctx);
        const json &intensities = require(row, "intensities", ctx);
        if (!intensities.is_array()) {
            schema_fail(ctx + ".intensities: expected an array");
        }
        for (const auto &x : intensities) {
            p.intensities.push_back(number(x, ctx + ".intensities"));
        }
        probes.push_back(std::move(p));
    }
    return probes;
}

json to_json(const CharacterizationReport &report) {
    json indeterminate = json::array();
    for (auto [i, k] : report.phase_indeterminate) {
        indeterminate.push_back({i + 1, k + 1});
    }
    ValidationReport v = validate(report.reconstructed);
    return json{
        {"reconstructed", to_json(report.reconstructed)},
        {"gauge", report.gauge},
        {"probe_configurations", report.probe_configurations},
        {"phase_indeterminate", indeterminate},
        {"residual", report.residual ? nullable(*report.residual) : json(nullptr)},
        {"validation", {{"status", std::string(to_string(v.status))}, {"deviation", nullable(v.deviation)}}},
    };
}

json to_json(const SourceModel &model) {
    json delays = json::array();
    for (double d : model.delays) {
        delays.push_back(delay_to_json(d));
    }
    return json{
        {"eta", model.eta},
        {"purity", model.purity},
        {"sigma_tau", model.sigma_tau},
        {"delays", delays},
        {"max_pairs_per_source", model.max_pairs_per_source},
    };
}

SourceModel source_model_from_json(const json &j) {
    const std::string ctx = "source model";
    if (!j.is_object()) {
        schema_fail(ctx + ": expected an object");
    }
    SourceModel model;
    model.eta = optional_number(j, "eta", model.eta, ctx);
    model.purity = optional_number(j, "purity", model.purity, ctx);
    model.sigma_tau = optional_number(j, "sigma_tau", model.sigma_tau, ctx);
    if (j.contains("max_pairs_per_source")) {
        model.max_pairs_per_source = integer(j["max_pairs_per_source"], ctx + ".max_pairs_per_source");
    }
    if (j.contains("delays")) {
        if (!j["delays"].is_array()) {
            schema_fail(ctx + ".delays: expected an array");
        }
        for (const auto &d : j["delays"]) {
            model.delays.push_back(delay_from_json(d));
        }
    }
    try {
        model.check();
    } catch (const DomainError &e) {
        throw SchemaError(ctx + ": " + e.what());
    }
    return model;
}

json to_json(const DetectionModel &model) {
    std::vector<int> tapped;
    for (int mode : model.tapped_modes) {
        tapped.push_back(mode + 1);
    }
    return json{
        {"efficiencies", model.efficiencies},
        {"splitter_ratio", model.splitter_ratio},
        {"tap_efficiencies", {model.tap_efficiencies[0], model.tap_efficiencies[1]}},
        {"tapped_modes", tapped},
    };
}

DetectionModel detection_model_from_json(const json &j) {
    const std::string ctx = "detection model";
    if (!j.is_object()) {
        schema_fail(ctx + ": expected an object");
    }
    DetectionModel model;
    if (j.contains("efficiencies")) {
        if (!j["efficiencies"].is_array()) {
            schema_fail(ctx + ".efficiencies: expected an array");
        }
        for (const auto &e : j["efficiencies"]) {
            model.efficiencies.push_back(number(e, ctx + ".efficiencies"));
        }
    }
    model.splitter_ratio = optional_number(j, "splitter_ratio", model.splitter_ratio, ctx);
    if (j.contains("tap_efficiencies")) {
        const json &t = j["tap_efficiencies"];
        if (!t.is_array() || t.size() != 2) {
            schema_fail(ctx + ".tap_efficiencies: expected two numbers");
        }
        model.tap_efficiencies[0] = number(t[0], ctx);
        model.tap_efficiencies[1] = number(t[1], ctx);
    }
    if (j.contains("tapped_modes")) {
        if (!j["tapped_modes"].is_array()) {
            schema_fail(ctx + ".tapped_modes: expected an array");
        }
        for (const auto &mode : j["tapped_modes"]) {
            model.tapped_modes.push_back(integer(mode, ctx + ".tapped_modes") - 1);
        }
    }
    return model;
}

std::string hom_scan_csv(const std::vector<HomPoint> &curve) {
    std::string out = "delay,probability,visibility\n";
    for (const auto &p : curve) {
        out += format_double(p.delay) + "," + format_double(p.probability) + "," + format_double(p.visibility) + "\n";
    }
    return out;
}

}  // namespace bosim::io
