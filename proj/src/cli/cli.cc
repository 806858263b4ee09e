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

#include "bosim/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bosim/analysis.h"
#include "bosim/characterize.h"
#include "bosim/coherent.h"
#include "bosim/errors.h"
#include "bosim/io.h"
#include "bosim/manifest.h"
#include "bosim/permanent.h"
#include "bosim/scattering.h"
#include "bosim/source.h"

namespace bosim::cli {

namespace {

using io::json;

struct Context {
    explicit Context(std::ostream &o) : out(o) {}

    std::ostream &out;
    std::string command;
    std::vector<std::string> args;
    std::optional<uint64_t> seed;
    std::vector<FileDigest> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::string manifest_path;
};

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

std::string read_file(Context &ctx, const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();
    ctx.inputs.push_back({path, sha256_hex(content)});
    return content;
}

json read_json(Context &ctx, const std::string &path) {
    return io::parse_json(read_file(ctx, path), path);
}

void emit(Context &ctx, std::string path, std::string content) {
    ctx.outputs.emplace_back(std::move(path), std::move(content));
}

/// "run.json" and "run" both map to "run".
std::string stem_of(const std::string &out) {
    for (std::string_view ext : {".json", ".csv"}) {
        if (out.size() > ext.size() && out.ends_with(ext)) {
            return out.substr(0, out.size() - ext.size());
        }
    }
    return out;
}

// All outputs go to temporary siblings first, so a failure leaves nothing behind.
void write_atomically(const std::vector<std::pair<std::string, std::string>> &files) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    auto cleanup = [&] {
        std::error_code ec;
        for (const auto &tmp : written) {
            fs::remove(tmp, ec);
        }
    };
    for (const auto &[path, content] : files) {
        std::string tmp = path + ".tmp";
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (f) {
            written.push_back(tmp);
            f << content;
            f.close();
        }
        if (!f) {
            cleanup();
            throw IoError("cannot write '" + path + "'");
        }
    }
    for (size_t k = 0; k < files.size(); k++) {
        std::error_code ec;
        fs::rename(written[k], files[k].first, ec);
        if (ec) {
            cleanup();
            throw IoError("cannot write '" + files[k].first + "': " + ec.message());
        }
    }
}

void commit(Context &ctx) {
    RunManifest manifest{kToolName, kToolVersion, ctx.command, ctx.args, ctx.seed, ctx.inputs, {}};
    for (const auto &[path, content] : ctx.outputs) {
        manifest.outputs.push_back({path, sha256_hex(content)});
    }
    auto files = ctx.outputs;
    files.emplace_back(ctx.manifest_path, dump(to_json(manifest)));
    write_atomically(files);
}

// ---- argument parsing helpers ----

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else if (c != ' ') {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

int parse_int(const std::string &text, const std::string &what) {
    int value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw SchemaError(what + ": '" + text + "' is not an integer");
    }
    return value;
}

double parse_double(const std::string &text, const std::string &what) {
    if (text == "inf" || text == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || std::isnan(value)) {
        throw SchemaError(what + ": '" + text + "' is not a number");
    }
    return value;
}

std::vector<int> parse_int_list(const std::string &text, const std::string &what) {
    std::vector<int> values;
    for (const auto &part : split(text, ',')) {
        values.push_back(parse_int(part, what));
    }
    return values;
}

std::vector<double> parse_double_list(const std::string &text, const std::string &what) {
    std::vector<double> values;
    for (const auto &part : split(text, ',')) {
        values.push_back(parse_double(part, what));
    }
    return values;
}

/// "min:max:count", evenly spaced and inclusive.
std::vector<double> parse_grid(const std::string &text) {
    auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw SchemaError("--grid: expected min:max:count");
    }
    double lo = parse_double(parts[0], "--grid");
    double hi = parse_double(parts[1], "--grid");
    int count = parse_int(parts[2], "--grid");
    if (count < 1 || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw SchemaError("--grid: need finite bounds and a positive count");
    }
    std::vector<double> grid(static_cast<size_t>(count));
    for (int k = 0; k < count; k++) {
        grid[static_cast<size_t>(k)] = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
    }
    return grid;
}

ModeConfiguration parse_configuration(const std::string &modes, const std::string &occ, size_t m, const char *name) {
    if (modes.empty() == occ.empty()) {
        throw SchemaError(std::string("give exactly one of --") + name + " and --" + name + "-occ");
    }
    if (!modes.empty()) {
        auto list = parse_int_list(modes, std::string("--") + name);
        for (int mode : list) {
            if (mode < 1 || static_cast<size_t>(mode) > m) {
                throw DimensionError(fmt::format("--{}: mode {} outside 1..{}", name, mode, m));
            }
        }
        return ModeConfiguration::from_modes(list, m);
    }
    auto list = parse_int_list(occ, std::string("--") + name + "-occ");
    if (list.size() != m) {
        throw DimensionError(fmt::format("--{}-occ: {} entries for {} modes", name, list.size(), m));
    }
    for (int k : list) {
        if (k < 0) {
            throw SchemaError(fmt::format("--{}-occ: occupations must be non-negative", name));
        }
    }
    return ModeConfiguration(list);
}

TransferMatrix load_unitary(Context &ctx, const std::string &path) {
    return io::transfer_matrix_from_json(read_json(ctx, path));
}

void print_warnings(Context &ctx, const std::vector<std::string> &warnings) {
    for (const auto &w : warnings) {
        ctx.out << "warning: " << w << "\n";
    }
}

// ---- commands ----

struct GenUnitaryArgs {
    size_t modes = 0;
    uint64_t seed = 0;
    std::string out;
    std::string label;
};

void cmd_gen_unitary(Context &ctx, const GenUnitaryArgs &a) {
    if (a.modes < 1) {
        throw DimensionError("--modes must be at least 1");
    }
    ctx.seed = a.seed;
    TransferMatrix u = random_unitary(a.modes, a.seed);
    if (!a.label.empty()) {
        u = TransferMatrix(u.entries(), a.label, u.unitarity_tolerance());
    }
    ValidationReport v = validate(u);
    ctx.out << "status: " << to_string(v.status) << "\n";
    ctx.out << "deviation: " << io::format_double(v.deviation) << "\n";
    emit(ctx, a.out, dump(io::to_json(u)));
    ctx.manifest_path = stem_of(a.out) + ".manifest.json";
}

struct CharacterizeArgs {
    std::string device;
    std::string probes;
    double noise = 0;
    uint64_t seed = 0;
    std::string out;
    std::string truth;
    std::string probes_out;
};

void cmd_characterize(Context &ctx, const CharacterizeArgs &a) {
    if (a.device.empty() == a.probes.empty()) {
        throw SchemaError("give exactly one of --device and --probes");
    }
    if (!(a.noise >= 0)) {
        throw DomainError("--noise must be non-negative");
    }
    std::vector<ProbeReading> probes;
    size_t m = 0;
    if (!a.device.empty()) {
        ctx.seed = a.seed;
        TransferMatrix device = load_unitary(ctx, a.device);
        m = device.modes();
        probes = simulate_probes(device, a.noise, a.seed);
    } else {
        probes = io::probes_from_json(read_json(ctx, a.probes), m);
    }
    CharacterizationReport report = reconstruct(probes, m);
    if (!a.truth.empty()) {
        TransferMatrix truth = load_unitary(ctx, a.truth);
        if (truth.modes() != m) {
            throw DimensionError(fmt::format("--truth has {} modes, probes cover {}", truth.modes(), m));
        }
        report.residual = gauge_align(truth, report.reconstructed).residual;
        ctx.out << "residual: " << io::format_double(*report.residual) << "\n";
    }
    ctx.out << "probe configurations: " << report.probe_configurations << "\n";
    if (!report.phase_indeterminate.empty()) {
        ctx.out << "warning: " << report.phase_indeterminate.size() << " phase-indeterminate entries\n";
    }
    emit(ctx, a.out, dump(io::to_json(report)));
    if (!a.probes_out.empty()) {
        emit(ctx, a.probes_out, dump(io::probes_to_json(probes, m)));
    }
    ctx.manifest_path = stem_of(a.out) + ".manifest.json";
}

struct ModelFile {
    SourceModel source;
    DetectionModel detection;
    std::optional<int> trigger;
};

ModelFile load_model(Context &ctx, const std::string &path, size_t m) {
    json j = read_json(ctx, path);
    if (!j.is_object()) {
        throw SchemaError(path + ": expected an object");
    }
    ModelFile model;
    if (j.contains("source")) {
        model.source = io::source_model_from_json(j["source"]);
    }
    if (j.contains("detection")) {
        model.detection = io::detection_model_from_json(j["detection"]);
    }
    if (j.contains("trigger") && !j["trigger"].is_null()) {
        if (!j["trigger"].is_number_integer()) {
            throw SchemaError(path + ": trigger must be a 1-based mode");
        }
        int trigger = j["trigger"].get<int>();
        if (trigger < 1 || static_cast<size_t>(trigger) > m) {
            throw DimensionError(fmt::format("trigger mode {} outside 1..{}", trigger, m));
        }
        model.trigger = trigger - 1;
    }
    return model;
}

struct PredictArgs {
    std::string unitary;
    std::string input;
    std::string input_occ;
    std::string flavor = "fock";
    std::string model;
    bool collisions = false;
    std::string out;
};

void cmd_predict(Context &ctx, const PredictArgs &a) {
    TransferMatrix u = load_unitary(ctx, a.unitary);
    ModeConfiguration s = parse_configuration(a.input, a.input_occ, u.modes(), "input");
    bool cf_only = !a.collisions;
    if (a.flavor != "model" && !a.model.empty()) {
        throw SchemaError("--model only applies to --flavor model");
    }

    OutcomeTable table;
    std::vector<VisibilityRecord> vis;
    if (a.flavor == "fock" || a.flavor == "classical") {
        table = full_distribution(u, s, QuantumFlavor{}, cf_only);
        for (auto &rec : table.records) {
            rec.p_model = a.flavor == "fock" ? rec.p_quantum : rec.p_classical;
        }
        vis = visibility_table(u, s, FockMethod{}, cf_only);
    } else if (a.flavor == "coherent") {
        CoherentInput inputs = CoherentInput::from_configuration(s);
        table = full_distribution(u, s, QuantumFlavor{}, cf_only);
        for (auto &rec : table.records) {
            rec.p_model = coherent_p0(u, inputs, rec.config);
        }
        vis = visibility_table(u, s, CoherentMethod{}, cf_only);
    } else if (a.flavor == "model") {
        if (a.model.empty()) {
            throw SchemaError("--flavor model needs --model");
        }
        ModelFile model = load_model(ctx, a.model, u.modes());
        table = predict_measured_table(u, s, model.source, model.detection, model.trigger, cf_only);
        vis = visibility_table(u, s, ModelMethod{model.source, model.detection, model.trigger}, cf_only);
    } else {
        throw SchemaError("--flavor must be fock, classical, coherent or model");
    }
    print_warnings(ctx, table.warnings);
    size_t usable = std::count_if(vis.begin(), vis.end(), [](const auto &r) { return r.usable(); });
    ctx.out << "outputs: " << table.records.size() << ", visibilities: " << usable << " usable\n";

    std::string stem = stem_of(a.out);
    emit(ctx, stem + ".outcomes.json", dump(io::to_json(table)));
    emit(ctx, stem + ".outcomes.csv", io::to_csv(table));
    emit(ctx, stem + ".visibility.json", dump(io::to_json(vis)));
    emit(ctx, stem + ".visibility.csv", io::to_csv(vis));
    ctx.manifest_path = stem + ".manifest.json";
}

struct SampleArgs {
    std::string unitary;
    std::string input;
    std::string input_occ;
    uint64_t shots = 0;
    std::string delays;
    double sigma = 1;
    double purity = 1;
    bool distinguishable = false;
    uint64_t seed = 0;
    std::string out;
};

void cmd_sample(Context &ctx, const SampleArgs &a) {
    ctx.seed = a.seed;
    TransferMatrix u = load_unitary(ctx, a.unitary);
    ModeConfiguration s = parse_configuration(a.input, a.input_occ, u.modes(), "input");
    Flavor flavor = QuantumFlavor{};
    if (a.distinguishable) {
        if (!a.delays.empty()) {
            throw SchemaError("--delays and --distinguishable are exclusive");
        }
        flavor = ClassicalFlavor{};
    } else if (!a.delays.empty() || a.purity != 1) {
        SourceModel model;
        model.sigma_tau = a.sigma;
        model.purity = a.purity;
        if (!a.delays.empty()) {
            model.delays = parse_double_list(a.delays, "--delays");
        }
        if (!model.delays.empty() && model.delays.size() != static_cast<size_t>(s.photons())) {
            throw DimensionError(fmt::format("--delays: {} values for {} photons", model.delays.size(), s.photons()));
        }
        model.check();
        flavor = PartialFlavor{gram_from_delays(model, static_cast<size_t>(s.photons()))};
    }
    CountsTable counts = CountsTable::from_samples(sample(u, s, flavor, a.shots, a.seed));
    ctx.out << "shots: " << a.shots << ", outputs: " << counts.configs.size() << "\n";
    std::string stem = stem_of(a.out);
    emit(ctx, stem + ".json", dump(io::to_json(counts)));
    emit(ctx, stem + ".csv", io::to_csv(counts));
    ctx.manifest_path = stem + ".manifest.json";
}

struct HomScanArgs {
    std::string unitary;
    std::string input;
    std::string input_occ;
    std::string output;
    std::string output_occ;
    double sigma = 1;
    double purity = 1;
    std::string grid = "-5:5:101";
    std::string out;
};

void cmd_hom_scan(Context &ctx, const HomScanArgs &a) {
    TransferMatrix u = load_unitary(ctx, a.unitary);
    ModeConfiguration s = parse_configuration(a.input, a.input_occ, u.modes(), "input");
    ModeConfiguration t = parse_configuration(a.output, a.output_occ, u.modes(), "output");
    SourceModel model;
    model.sigma_tau = a.sigma;
    model.purity = a.purity;
    model.check();
    std::vector<double> grid = parse_grid(a.grid);
    std::vector<HomPoint> curve = hom_scan(u, s, t, model, grid);

    json rows = json::array();
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto &p : curve) {
        rows.push_back({{"delay", p.delay},
                        {"probability", p.probability},
                        {"visibility", std::isfinite(p.visibility) ? json(p.visibility) : json(nullptr)}});
        lowest = std::min(lowest, p.probability);
    }
    ctx.out << "points: " << curve.size() << ", minimum probability: " << io::format_double(lowest) << "\n";
    std::string stem = stem_of(a.out);
    emit(ctx, stem + ".csv", io::hom_scan_csv(curve));
    emit(ctx, stem + ".json", dump(rows));
    ctx.manifest_path = stem + ".manifest.json";
}

struct CompareArgs {
    std::string a;
    std::string b;
    std::string out;
};

void cmd_compare(Context &ctx, const CompareArgs &a) {
    auto va = io::visibility_records_from_json(read_json(ctx, a.a));
    auto vb = io::visibility_records_from_json(read_json(ctx, a.b));
    ComparisonReport report = l1_distance(va, vb);
    ctx.out << "L1: " << (std::isnan(report.l1) ? std::string("undefined") : io::format_double(report.l1))
            << " (compared " << report.compared << ", excluded " << report.excluded << ")\n";
    std::string stem = stem_of(a.out);
    emit(ctx, stem + ".json", dump(io::to_json(report)));
    emit(ctx, stem + ".csv", io::to_csv(report));
    ctx.manifest_path = stem + ".manifest.json";
}

struct SpdcSweepArgs {
    std::string unitary;
    std::string input;
    std::string input_occ;
    std::string eta_grid = "0,0.05,0.1,0.15,0.2";
    std::string purity_grid = "1";
    double sigma = 1;
    int trigger = 0;
    int cap = 2;
    bool collisions = false;
    std::string out;
};

void cmd_spdc_sweep(Context &ctx, const SpdcSweepArgs &a) {
    TransferMatrix u = load_unitary(ctx, a.unitary);
    ModeConfiguration s = parse_configuration(a.input, a.input_occ, u.modes(), "input");
    std::vector<double> etas = parse_double_list(a.eta_grid, "--eta-grid");
    std::vector<double> purities = parse_double_list(a.purity_grid, "--purity-grid");
    std::optional<int> trigger;
    if (a.trigger != 0) {
        if (a.trigger < 1 || static_cast<size_t>(a.trigger) > u.modes()) {
            throw DimensionError(fmt::format("--trigger: mode {} outside 1..{}", a.trigger, u.modes()));
        }
        trigger = a.trigger - 1;
    }
    bool cf_only = !a.collisions;
    auto fock = visibility_table(u, s, FockMethod{}, cf_only);
    auto coherent = visibility_table(u, s, CoherentMethod{}, cf_only);

    std::string csv = "eta,purity,L1_fock,L1_coherent\n";
    json rows = json::array();
    for (double eta : etas) {
        for (double purity : purities) {
            SourceModel source;
            source.eta = eta;
            source.purity = purity;
            source.sigma_tau = a.sigma;
            source.max_pairs_per_source = a.cap;
            source.check();
            auto model = visibility_table(u, s, ModelMethod{source, DetectionModel{}, trigger}, cf_only);
            double l1_fock = l1_distance(model, fock).l1;
            double l1_coherent = l1_distance(model, coherent).l1;
            csv += fmt::format("{},{},{},{}\n", io::format_double(eta), io::format_double(purity),
                               io::format_double(l1_fock), io::format_double(l1_coherent));
            rows.push_back({{"eta", eta},
                            {"purity", purity},
                            {"L1_fock", std::isfinite(l1_fock) ? json(l1_fock) : json(nullptr)},
                            {"L1_coherent", std::isfinite(l1_coherent) ? json(l1_coherent) : json(nullptr)}});
        }
    }
    ctx.out << "grid points: " << rows.size() << "\n";
    std::string stem = stem_of(a.out);
    emit(ctx, stem + ".csv", csv);
    emit(ctx, stem + ".json", dump(rows));
    ctx.manifest_path = stem + ".manifest.json";
}

struct PermArgs {
    std::string matrix;
    std::string algorithm = "ryser";
    std::string out;
};

ComplexMatrix load_square_matrix(Context &ctx, const std::string &path) {
    json j = read_json(ctx, path);
    if (!j.is_object() || !j.contains("re") || !j["re"].is_array()) {
        throw SchemaError(path + ": expected {\"re\": [[...]], \"im\": [[...]]}");
    }
    const json &re = j["re"];
    const json *im = j.contains("im") ? &j["im"] : nullptr;
    size_t n = re.size();
    if (im != nullptr && (!im->is_array() || im->size() != n)) {
        throw DimensionError(path + ": 're' and 'im' differ in shape");
    }
    ComplexMatrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; i++) {
        if (!re[i].is_array() || re[i].size() != n || (im != nullptr && (!(*im)[i].is_array() || (*im)[i].size() != n))) {
            throw DimensionError(path + ": matrix must be square");
        }
        for (size_t k = 0; k < n; k++) {
            const json &x = re[i][k];
            if (!x.is_number() || (im != nullptr && !(*im)[i][k].is_number())) {
                throw SchemaError(path + ": entries must be numbers");
            }
            double imag = im != nullptr ? (*im)[i][k].get<double>() : 0.0;
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = Complex(x.get<double>(), imag);
        }
    }
    return a;
}

void cmd_perm(Context &ctx, const PermArgs &a) {
    ComplexMatrix matrix = load_square_matrix(ctx, a.matrix);
    PermanentAlgorithm algorithm;
    try {
        algorithm = parse_permanent_algorithm(a.algorithm);
    } catch (const std::exception &) {
        throw SchemaError("--algorithm must be naive, ryser or glynn");
    }
    auto start = std::chrono::steady_clock::now();
    PermanentResult result = permanent(matrix, algorithm);
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    ctx.out << "value: " << io::format_double(result.value.real()) << " " << io::format_double(result.value.imag())
            << "i\n";
    ctx.out << "algorithm: " << to_string(result.algorithm) << "\n";
    ctx.out << "n: " << result.n << "\n";
    ctx.out << "seconds: " << fmt::format("{:.6f}", elapsed.count()) << "\n";
    if (!a.out.empty()) {
        json j{{"n", result.n},
               {"algorithm", std::string(to_string(result.algorithm))},
               {"re", result.value.real()},
               {"im", result.value.imag()}};
        emit(ctx, a.out, dump(j));
        ctx.manifest_path = stem_of(a.out) + ".manifest.json";
    }
}

// ---- dispatch ----

/// Parses and runs one command into `ctx` without touching the file system
/// beyond reading inputs. Returns false when only help was requested.
bool execute(const std::vector<std::string> &args, Context &ctx, const std::function<void(const std::string &)> &replay);

int exit_code_for(const std::exception_ptr &error, std::ostream &err) {
    try {
        std::rethrow_exception(error);
    } catch (const SchemaError &e) {
        err << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const DimensionError &e) {
        err << "error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

bool execute(const std::vector<std::string> &args, Context &ctx, const std::function<void(const std::string &)> &replay) {
    CLI::App app{"BosonSampling simulation and verification toolkit", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GenUnitaryArgs gen;
    auto *gen_cmd = app.add_subcommand("gen-unitary", "Draw a Haar-random transfer matrix");
    gen_cmd->add_option("--modes", gen.modes, "Number of modes")->required();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
    gen_cmd->add_option("--out", gen.out, "Output JSON path")->required();
    gen_cmd->add_option("--label", gen.label, "Matrix label");

    CharacterizeArgs ch;
    auto *ch_cmd = app.add_subcommand("characterize", "Reconstruct a transfer matrix from coherent probes");
    ch_cmd->add_option("--device", ch.device, "Transfer matrix to probe (simulated)");
    ch_cmd->add_option("--probes", ch.probes, "Recorded probe intensities");
    ch_cmd->add_option("--noise", ch.noise, "Relative intensity noise");
    ch_cmd->add_option("--seed", ch.seed, "RNG seed for the noise");
    ch_cmd->add_option("--out", ch.out, "Report JSON path")->required();
    ch_cmd->add_option("--truth", ch.truth, "Known matrix for the residual");
    ch_cmd->add_option("--probes-out", ch.probes_out, "Also write the probe set");

    PredictArgs pr;
    auto *pr_cmd = app.add_subcommand("predict", "Outcome and visibility tables");
    pr_cmd->add_option("--unitary", pr.unitary, "Transfer matrix JSON")->required();
    pr_cmd->add_option("--input", pr.input, "Input modes, e.g. 1,3,5");
    pr_cmd->add_option("--input-occ", pr.input_occ, "Input occupations, e.g. 1,0,1,0,1,0");
    pr_cmd->add_option("--flavor", pr.flavor, "fock, classical, coherent or model");
    pr_cmd->add_option("--model", pr.model, "Source/detection model JSON");
    pr_cmd->add_flag("--collisions", pr.collisions, "Include colliding outputs");
    pr_cmd->add_option("--out", pr.out, "Output prefix")->required();

    SampleArgs sa;
    auto *sa_cmd = app.add_subcommand("sample", "Draw output samples");
    sa_cmd->add_option("--unitary", sa.unitary, "Transfer matrix JSON")->required();
    sa_cmd->add_option("--input", sa.input, "Input modes");
    sa_cmd->add_option("--input-occ", sa.input_occ, "Input occupations");
    sa_cmd->add_option("--shots", sa.shots, "Number of samples")->required();
    sa_cmd->add_option("--delays", sa.delays, "Per-photon delays (inf allowed)");
    sa_cmd->add_option("--sigma", sa.sigma, "Wavepacket width");
    sa_cmd->add_option("--purity", sa.purity, "Spectral purity");
    sa_cmd->add_flag("--distinguishable", sa.distinguishable, "Fully distinguishable photons");
    sa_cmd->add_option("--seed", sa.seed, "RNG seed")->required();
    sa_cmd->add_option("--out", sa.out, "Output prefix")->required();

    HomScanArgs hs;
    auto *hs_cmd = app.add_subcommand("hom-scan", "Two-photon delay scan");
    hs_cmd->add_option("--unitary", hs.unitary, "Transfer matrix JSON")->required();
    hs_cmd->add_option("--input", hs.input, "Input modes");
    hs_cmd->add_option("--input-occ", hs.input_occ, "Input occupations");
    hs_cmd->add_option("--output", hs.output, "Output modes");
    hs_cmd->add_option("--output-occ", hs.output_occ, "Output occupations");
    hs_cmd->add_option("--sigma", hs.sigma, "Wavepacket width");
    hs_cmd->add_option("--purity", hs.purity, "Spectral purity");
    hs_cmd->add_option("--grid", hs.grid, "Delays as min:max:count");
    hs_cmd->add_option("--out", hs.out, "Output prefix")->required();

    CompareArgs cmp;
    auto *cmp_cmd = app.add_subcommand("compare", "L1 distance between two visibility tables");
    cmp_cmd->add_option("--a", cmp.a, "Visibility JSON")->required();
    cmp_cmd->add_option("--b", cmp.b, "Visibility JSON")->required();
    cmp_cmd->add_option("--out", cmp.out, "Output prefix")->required();

    SpdcSweepArgs sw;
    auto *sw_cmd = app.add_subcommand("spdc-sweep", "Model visibilities over pump strength and purity");
    sw_cmd->add_option("--unitary", sw.unitary, "Transfer matrix JSON")->required();
    sw_cmd->add_option("--input", sw.input, "Input modes");
    sw_cmd->add_option("--input-occ", sw.input_occ, "Input occupations");
    sw_cmd->add_option("--eta-grid", sw.eta_grid, "Comma-separated eta values");
    sw_cmd->add_option("--purity-grid", sw.purity_grid, "Comma-separated purities");
    sw_cmd->add_option("--sigma", sw.sigma, "Wavepacket width");
    sw_cmd->add_option("--trigger", sw.trigger, "Heralded input mode (1-based)");
    sw_cmd->add_option("--cap", sw.cap, "Maximum pairs per source");
    sw_cmd->add_flag("--collisions", sw.collisions, "Include colliding outputs");
    sw_cmd->add_option("--out", sw.out, "Output prefix")->required();

    PermArgs pm;
    auto *pm_cmd = app.add_subcommand("perm", "Permanent of a square matrix");
    pm_cmd->add_option("--matrix", pm.matrix, "JSON with re/im arrays")->required();
    pm_cmd->add_option("--algorithm", pm.algorithm, "naive, ryser or glynn");
    pm_cmd->add_option("--out", pm.out, "Optional result JSON");

    std::string manifest_path;
    auto *rp_cmd = app.add_subcommand("replay", "Re-run a manifest and check its outputs");
    rp_cmd->add_option("--manifest", manifest_path, "Manifest JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        auto subs = app.get_subcommands();
        ctx.out << (subs.empty() ? app.help() : subs.front()->help());
        return false;
    } catch (const CLI::CallForVersion &) {
        ctx.out << kToolVersion << "\n";
        return false;
    }

    CLI::App *chosen = app.get_subcommands().front();
    ctx.command = chosen->get_name();
    ctx.args = args;
    if (chosen == gen_cmd) {
        cmd_gen_unitary(ctx, gen);
    } else if (chosen == ch_cmd) {
        cmd_characterize(ctx, ch);
    } else if (chosen == pr_cmd) {
        cmd_predict(ctx, pr);
    } else if (chosen == sa_cmd) {
        cmd_sample(ctx, sa);
    } else if (chosen == hs_cmd) {
        cmd_hom_scan(ctx, hs);
    } else if (chosen == cmp_cmd) {
        cmd_compare(ctx, cmp);
    } else if (chosen == sw_cmd) {
        cmd_spdc_sweep(ctx, sw);
    } else if (chosen == pm_cmd) {
        cmd_perm(ctx, pm);
    } else if (chosen == rp_cmd) {
        replay(manifest_path);
        return false;
    }
    return true;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    int status = kExitOk;
    auto replay = [&](const std::string &path) {
        Context outer(out);
        RunManifest manifest = manifest_from_json(read_json(outer, path));
        if (manifest.command == "replay") {
            throw SchemaError("a manifest cannot replay a replay");
        }
        std::ostringstream quiet;
        Context silent(quiet);
        execute(manifest.args, silent, [](const std::string &) { throw SchemaError("nested replay"); });

        std::map<std::string, std::string> current;
        for (const auto &f : silent.inputs) {
            current[f.path] = f.sha256;
        }
        for (const auto &f : manifest.inputs) {
            if (current[f.path] != f.sha256) {
                out << "input changed: " << f.path << "\n";
                status = kExitFailure;
            }
        }
        std::map<std::string, std::string> produced;
        for (const auto &[p, content] : silent.outputs) {
            produced[p] = sha256_hex(content);
        }
        for (const auto &f : manifest.outputs) {
            auto it = produced.find(f.path);
            bool same = it != produced.end() && it->second == f.sha256;
            out << (same ? "identical: " : "MISMATCH: ") << f.path << "\n";
            if (!same) {
                status = kExitFailure;
            }
        }
        if (produced.size() != manifest.outputs.size()) {
            out << "MISMATCH: output set differs\n";
            status = kExitFailure;
        }
    };

    Context ctx(out);
    try {
        if (execute(args, ctx, replay) && !ctx.outputs.empty()) {
            commit(ctx);
        }
    } catch (...) {
        return exit_code_for(std::current_exception(), err);
    }
    if (status != kExitOk) {
        err << "error: replay found differences\n";
    }
    return status;
}

}  // namespace bosim::cli
