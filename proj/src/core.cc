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

#include "bosim/core.h"

#include <array>
#include <cmath>
#include <random>

#include "bosim/errors.h"

namespace bosim {

TransferMatrix::TransferMatrix(ComplexMatrix entries, std::string label, double unitarity_tolerance)
    : entries_(std::move(entries)), label_(std::move(label)), unitarity_tolerance_(unitarity_tolerance) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
        throw DimensionError(
            "transfer matrix must be square with at least one mode, got " + std::to_string(entries_.rows()) + "x" +
            std::to_string(entries_.cols()));
    }
    if (!(unitarity_tolerance_ >= 0)) {
        throw DomainError("unitarity tolerance must be non-negative");
    }
}

TransferMatrix TransferMatrix::identity(size_t m) {
    auto n = static_cast<Eigen::Index>(m);
    return TransferMatrix(ComplexMatrix::Identity(n, n), "identity");
}

TransferMatrix TransferMatrix::adjoint() const {
    return TransferMatrix(entries_.adjoint(), label_.empty() ? label_ : label_ + "^dagger", unitarity_tolerance_);
}

std::string_view to_string(MatrixStatus status) {
    switch (status) {
        case MatrixStatus::unitary:
            return "unitary";
        case MatrixStatus::near_unitary:
            return "near_unitary";
        case MatrixStatus::non_unitary:
            return "non_unitary";
        case MatrixStatus::invalid:
            return "invalid";
    }
    return "invalid";
}

ValidationReport validate(const TransferMatrix &matrix) {
    const ComplexMatrix &u = matrix.entries();
    ValidationReport report{};
    report.finite = u.allFinite();
    if (!report.finite) {
        report.deviation = std::numeric_limits<double>::infinity();
        report.loss_normalized_deviation = report.deviation;
        report.status = MatrixStatus::invalid;
        report.message = "matrix has non-finite entries";
        return report;
    }

    ComplexMatrix gram = u.adjoint() * u;
    auto m = gram.rows();
    ComplexMatrix id = ComplexMatrix::Identity(m, m);
    report.deviation = (gram - id).cwiseAbs().maxCoeff();
    double mean_power = gram.diagonal().real().mean();
    report.loss_normalized_deviation =
        mean_power > 0 ? (gram / mean_power - id).cwiseAbs().maxCoeff() : report.deviation;

    constexpr double kDead = 1e-15;
    bool dead_line = (u.cwiseAbs2().rowwise().sum().array() <= kDead).any() ||
                     (u.cwiseAbs2().colwise().sum().array() <= kDead).any();
    if (dead_line) {
        report.status = MatrixStatus::invalid;
        report.message = "an input or output mode carries no amplitude";
    } else if (report.deviation <= matrix.unitarity_tolerance()) {
        report.status = MatrixStatus::unitary;
    } else if (report.deviation <= kNearUnitaryThreshold) {
        report.status = MatrixStatus::near_unitary;
    } else {
        report.status = MatrixStatus::non_unitary;
        report.message = "deviation from unitarity exceeds the near-unitary bound";
    }
    return report;
}

ModeConfiguration::ModeConfiguration(std::vector<int> occupations) : occupations_(std::move(occupations)) {
    for (int k : occupations_) {
        if (k < 0) {
            throw DomainError("occupation numbers must be non-negative");
        }
    }
}

ModeConfiguration ModeConfiguration::from_modes(std::span<const int> one_based_modes, size_t m) {
    std::vector<int> occ(m, 0);
    for (int mode : one_based_modes) {
        if (mode < 1 || static_cast<size_t>(mode) > m) {
            throw DimensionError("mode index " + std::to_string(mode) + " outside 1.." + std::to_string(m));
        }
        occ[static_cast<size_t>(mode - 1)]++;
    }
    return ModeConfiguration(std::move(occ));
}

int ModeConfiguration::photons() const {
    int total = 0;
    for (int k : occupations_) {
        total += k;
    }
    return total;
}

bool ModeConfiguration::collision_free() const {
    for (int k : occupations_) {
        if (k > 1) {
            return false;
        }
    }
    return true;
}

std::vector<int> ModeConfiguration::photon_modes() const {
    std::vector<int> result;
    for (size_t mode = 0; mode < occupations_.size(); mode++) {
        for (int k = 0; k < occupations_[mode]; k++) {
            result.push_back(static_cast<int>(mode));
        }
    }
    return result;
}

double ModeConfiguration::factorial_product() const {
    double product = 1;
    for (int k : occupations_) {
        product *= std::tgamma(k + 1.0);
    }
    return product;
}

std::string ModeConfiguration::str() const {
    std::string s = "(";
    for (size_t i = 0; i < occupations_.size(); i++) {
        if (i > 0) {
            s += ',';
        }
        s += std::to_string(occupations_[i]);
    }
    return s + ")";
}

namespace {

void enumerate_rec(
    size_t mode, int remaining, bool collision_free_only, std::vector<int> &current,
    std::vector<ModeConfiguration> &out) {
    if (mode + 1 == current.size()) {
        if (collision_free_only && remaining > 1) {
            return;
        }
        current[mode] = remaining;
        out.emplace_back(current);
        current[mode] = 0;
        return;
    }
    int top = collision_free_only ? std::min(remaining, 1) : remaining;
    for (int k = top; k >= 0; k--) {
        current[mode] = k;
        enumerate_rec(mode + 1, remaining - k, collision_free_only, current, out);
    }
    current[mode] = 0;
}

}  // namespace

std::vector<ModeConfiguration> enumerate_output_configurations(size_t m, int n, bool collision_free_only) {
    if (m < 1) {
        throw DimensionError("mode count must be positive");
    }
    if (n < 0) {
        throw DomainError("photon count must be non-negative");
    }
    std::vector<ModeConfiguration> out;
    std::vector<int> current(m, 0);
    enumerate_rec(0, n, collision_free_only, current, out);
    return out;
}

TransferMatrix random_unitary(size_t m, uint64_t seed) {
    if (m < 1) {
        throw DimensionError("mode count must be positive");
    }
    auto n = static_cast<Eigen::Index>(m);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    ComplexMatrix z(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            double re = gauss(rng);
            double im = gauss(rng);
            z(i, j) = Complex(re, im);
        }
    }

    // Q alone is not Haar distributed; absorbing the phases of R's diagonal fixes that.
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; j++) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        Complex phase = mag > 0 ? d / mag : Complex(1, 0);
        q.col(j) *= phase;
    }
    return TransferMatrix(std::move(q), "haar(m=" + std::to_string(m) + ",seed=" + std::to_string(seed) + ")", 1e-12);
}

namespace {
constexpr std::array<std::string_view, ModeLabeling::kModes> kModeLabels = {"H1", "V1", "H2", "V2", "H3", "V3"};
}

std::string_view ModeLabeling::label(int one_based_mode) {
    if (one_based_mode < 1 || one_based_mode > static_cast<int>(kModes)) {
        throw DimensionError("mode label requested for mode " + std::to_string(one_based_mode));
    }
    return kModeLabels[static_cast<size_t>(one_based_mode - 1)];
}

int ModeLabeling::mode(std::string_view label) {
    for (size_t i = 0; i < kModeLabels.size(); i++) {
        if (kModeLabels[i] == label) {
            return static_cast<int>(i + 1);
        }
    }
    throw SchemaError("unknown mode label '" + std::string(label) + "'");
}

}  // namespace bosim
