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

#include "bosim/scattering.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "bosim/errors.h"
#include "bosim/parallel.h"
#include "bosim/permanent.h"

namespace bosim {

namespace {

void check_shapes(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t) {
    if (s.modes() != u.modes() || t.modes() != u.modes()) {
        throw DimensionError(
            "configuration length does not match the " + std::to_string(u.modes()) + "-mode transfer matrix");
    }
    if (s.photons() != t.photons()) {
        throw DimensionError(
            "input " + s.str() + " and output " + t.str() + " carry different photon numbers");
    }
}

}  // namespace

ScatteringSubmatrix build_submatrix(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t) {
    check_shapes(u, s, t);
    auto m = static_cast<Eigen::Index>(u.modes());
    auto n = static_cast<Eigen::Index>(t.photons());

    std::vector<int> out_modes = t.photon_modes();
    ComplexMatrix columns(m, n);
    for (Eigen::Index c = 0; c < n; c++) {
        columns.col(c) = u.entries().col(out_modes[static_cast<size_t>(c)]);
    }

    std::vector<int> in_modes = s.photon_modes();
    ComplexMatrix sub(n, n);
    for (Eigen::Index r = 0; r < n; r++) {
        sub.row(r) = columns.row(in_modes[static_cast<size_t>(r)]);
    }
    return ScatteringSubmatrix{std::move(columns), std::move(sub), s, t};
}

GramMatrix::GramMatrix(ComplexMatrix overlaps) : overlaps_(std::move(overlaps)) {
    constexpr double kTol = 1e-12;
    if (overlaps_.rows() != overlaps_.cols()) {
        throw DimensionError("Gram matrix must be square");
    }
    if (!overlaps_.allFinite()) {
        throw DomainError("Gram matrix has non-finite entries");
    }
    auto n = overlaps_.rows();
    for (Eigen::Index k = 0; k < n; k++) {
        if (std::abs(overlaps_(k, k) - Complex(1, 0)) > kTol) {
            throw DomainError("Gram matrix diagonal must be 1");
        }
        for (Eigen::Index l = 0; l < n; l++) {
            if (std::abs(overlaps_(k, l) - std::conj(overlaps_(l, k))) > kTol) {
                throw DomainError("Gram matrix must be Hermitian");
            }
            if (std::abs(overlaps_(k, l)) > 1 + kTol) {
                throw DomainError("Gram matrix overlaps must have modulus <= 1");
            }
        }
    }
    ComplexMatrix jittered = overlaps_ + kTol * ComplexMatrix::Identity(n, n);
    Eigen::LLT<ComplexMatrix> llt(jittered);
    if (llt.info() != Eigen::Success) {
        throw DomainError("Gram matrix is not positive semidefinite");
    }
}

GramMatrix GramMatrix::indistinguishable(size_t n) {
    auto k = static_cast<Eigen::Index>(n);
    return GramMatrix(ComplexMatrix::Ones(k, k));
}

GramMatrix GramMatrix::distinguishable(size_t n) {
    auto k = static_cast<Eigen::Index>(n);
    return GramMatrix(ComplexMatrix::Identity(k, k));
}

GramMatrix GramMatrix::uniform(size_t n, double lambda) {
    auto k = static_cast<Eigen::Index>(n);
    ComplexMatrix g = ComplexMatrix::Constant(k, k, Complex(lambda, 0));
    g.diagonal().setOnes();
    return GramMatrix(std::move(g));
}

double p_quantum(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t) {
    ScatteringSubmatrix sub = build_submatrix(u, s, t);
    double amplitude2 = std::norm(permanent_ryser(sub.submatrix));
    return amplitude2 / (s.factorial_product() * t.factorial_product());
}

double p_classical(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t) {
    ScatteringSubmatrix sub = build_submatrix(u, s, t);
    RealMatrix weights = sub.submatrix.cwiseAbs2();
    // Distinguishable photons leave a shared input mode independently, so only
    // the output multiplicities are divided out.
    return permanent_nonneg(weights) / t.factorial_product();
}

double p_partial(const TransferMatrix &u, const ModeConfiguration &s, const ModeConfiguration &t, const GramMatrix &gram) {
    ScatteringSubmatrix sub = build_submatrix(u, s, t);
    auto n = static_cast<size_t>(sub.submatrix.rows());
    if (gram.photons() != n) {
        throw DimensionError(
            "Gram matrix describes " + std::to_string(gram.photons()) + " photons, configuration has " +
            std::to_string(n));
    }
    if (n > static_cast<size_t>(kPartialMaxPhotons)) {
        throw DimensionError("p_partial supports at most " + std::to_string(kPartialMaxPhotons) + " photons");
    }

    std::vector<std::vector<Eigen::Index>> perms;
    std::vector<Complex> amplitudes;
    std::vector<Eigen::Index> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Complex a = 1;
        for (size_t k = 0; k < n; k++) {
            a *= sub.submatrix(perm[k], static_cast<Eigen::Index>(k));
        }
        perms.push_back(perm);
        amplitudes.push_back(a);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const ComplexMatrix &g = gram.overlaps();
    Complex total = 0;
    for (size_t x = 0; x < perms.size(); x++) {
        if (amplitudes[x] == Complex(0)) {
            continue;
        }
        for (size_t y = 0; y < perms.size(); y++) {
            Complex overlap = 1;
            for (size_t k = 0; k < n; k++) {
                overlap *= g(perms[y][k], perms[x][k]);
            }
            total += overlap * amplitudes[x] * std::conj(amplitudes[y]);
        }
    }
    // Norm of the input state: photons sharing an input mode contribute the
    // permanent of their Gram block (s_i! when identical, 1 when orthogonal).
    double input_norm = 1;
    Eigen::Index first = 0;
    for (size_t mode = 0; mode < s.modes(); mode++) {
        Eigen::Index count = s[mode];
        if (count > 1) {
            input_norm *= permanent(ComplexMatrix(g.block(first, first, count, count))).value.real();
        }
        first += count;
    }
    double p = total.real() / (input_norm * t.factorial_product());
    return std::clamp(p, 0.0, 1.0);
}

double flavor_probability(const ProbabilityRecord &record, const Flavor &flavor) {
    if (std::holds_alternative<QuantumFlavor>(flavor)) {
        return record.p_quantum;
    }
    if (std::holds_alternative<ClassicalFlavor>(flavor)) {
        return record.p_classical;
    }
    return record.p_model.value_or(0.0);
}

OutcomeTable full_distribution(
    const TransferMatrix &u, const ModeConfiguration &s, const Flavor &flavor, bool collision_free_only) {
    if (s.modes() != u.modes()) {
        throw DimensionError("input configuration length does not match the transfer matrix");
    }
    if (s.photons() < 1) {
        throw DimensionError("input configuration must hold at least one photon");
    }
    ValidationReport report = validate(u);
    if (report.status == MatrixStatus::invalid) {
        throw SchemaError("transfer matrix is invalid: " + report.message);
    }
    const auto *partial = std::get_if<PartialFlavor>(&flavor);
    if (partial != nullptr && partial->gram.photons() != static_cast<size_t>(s.photons())) {
        throw DimensionError("Gram matrix size does not match the photon number");
    }

    OutcomeTable table;
    table.input = s;
    if (report.status != MatrixStatus::unitary) {
        table.warnings.push_back(
            "transfer matrix is " + std::string(to_string(report.status)) + " (deviation " +
            std::to_string(report.deviation) + "); probabilities need not sum to 1");
    }
    std::vector<ModeConfiguration> outputs = enumerate_output_configurations(u.modes(), s.photons(), collision_free_only);
    table.records.resize(outputs.size());
    parallel_for(outputs.size(), [&](size_t k) {
        ProbabilityRecord &rec = table.records[k];
        rec.config = outputs[k];
        rec.p_quantum = p_quantum(u, s, outputs[k]);
        rec.p_classical = p_classical(u, s, outputs[k]);
        if (partial != nullptr) {
            rec.p_model = p_partial(u, s, outputs[k], partial->gram);
        }
    });
    return table;
}

SampleCounts sample(const TransferMatrix &u, const ModeConfiguration &s, const Flavor &flavor, uint64_t shots, uint64_t seed) {
    if (shots < 1) {
        throw DomainError("shots must be positive");
    }
    OutcomeTable table = full_distribution(u, s, flavor, false);
    std::vector<double> cumulative(table.records.size());
    double running = 0;
    for (size_t k = 0; k < table.records.size(); k++) {
        running += std::max(0.0, flavor_probability(table.records[k], flavor));
        cumulative[k] = running;
    }
    if (!(running > 0)) {
        throw DomainError("output distribution has zero total probability");
    }

    SampleCounts result;
    result.shots = shots;
    result.counts.assign(table.records.size(), 0);
    for (auto &rec : table.records) {
        result.configs.push_back(rec.config);
    }

    std::mt19937_64 rng(seed);
    for (uint64_t shot = 0; shot < shots; shot++) {
        double x = std::ldexp(static_cast<double>(rng() >> 11), -53) * running;
        // upper_bound never lands on a zero-probability entry: its cumulative
        // value equals its predecessor's.
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        if (it == cumulative.end()) {
            // x rounded up to the total; take the last entry with positive weight.
            it = std::lower_bound(cumulative.begin(), cumulative.end(), running);
        }
        result.counts[static_cast<size_t>(it - cumulative.begin())]++;
    }
    return result;
}

}  // namespace bosim
