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

#include "bosim/characterize.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bosim/errors.h"

namespace bosim {

namespace {

double phase_of_setting(int setting) {
    return setting * std::numbers::pi / 2;
}

int setting_of_phase(double phase) {
    for (int s = 0; s < kDualPhaseSettings; s++) {
        if (std::abs(phase - phase_of_setting(s)) < 1e-9) {
            return s;
        }
    }
    throw SchemaError("dual probe phase " + std::to_string(phase) + " is not one of 0, pi/2, pi, 3pi/2");
}

Complex unit_phase(Complex z) {
    double mag = std::abs(z);
    return mag > 0 ? z / mag : Complex(1, 0);
}

}  // namespace

std::vector<ProbeReading> simulate_probes(const TransferMatrix &device, double noise_sigma, uint64_t seed) {
    if (!(noise_sigma >= 0)) {
        throw DomainError("noise sigma must be non-negative");
    }
    size_t m = device.modes();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    auto noisy = [&](double intensity) {
        double eps = noise_sigma > 0 ? noise_sigma * noise(rng) : 0.0;
        return std::max(0.0, intensity * (1 + eps));
    };

    std::vector<ProbeReading> probes;
    for (size_t i = 0; i < m; i++) {
        ProbeReading p{ProbeKind::single, static_cast<int>(i), 0.0, std::vector<double>(m)};
        for (size_t j = 0; j < m; j++) {
            p.intensities[j] = noisy(std::norm(device(i, j)));
        }
        probes.push_back(std::move(p));
    }
    for (size_t k = 1; k < m; k++) {
        for (int s = 0; s < kDualPhaseSettings; s++) {
            double phi = phase_of_setting(s);
            Complex rot = std::polar(1.0, phi);
            ProbeReading p{ProbeKind::dual, static_cast<int>(k), phi, std::vector<double>(m)};
            for (size_t j = 0; j < m; j++) {
                p.intensities[j] = noisy(std::norm(device(0, j) + rot * device(k, j)));
            }
            probes.push_back(std::move(p));
        }
    }
    return probes;
}

CharacterizationReport reconstruct(const std::vector<ProbeReading> &probes, size_t m) {
    if (m < 1) {
        throw DimensionError("mode count must be positive");
    }
    std::vector<const ProbeReading *> singles(m, nullptr);
    std::vector<std::vector<const ProbeReading *>> duals(m, std::vector<const ProbeReading *>(kDualPhaseSettings, nullptr));
    for (const ProbeReading &p : probes) {
        if (p.intensities.size() != m) {
            throw SchemaError("probe reading has " + std::to_string(p.intensities.size()) + " intensities, expected " + std::to_string(m));
        }
        for (double x : p.intensities) {
            if (!std::isfinite(x) || x < 0) {
                throw DomainError("probe intensities must be finite and non-negative");
            }
        }
        if (p.input < 0 || static_cast<size_t>(p.input) >= m) {
            throw SchemaError("probe input mode " + std::to_string(p.input) + " out of range");
        }
        auto input = static_cast<size_t>(p.input);
        if (p.kind == ProbeKind::single) {
            if (singles[input] != nullptr) {
                throw SchemaError("duplicate single probe for input " + std::to_string(p.input));
            }
            singles[input] = &p;
        } else {
            if (input == 0) {
                throw SchemaError("dual probes pair mode 0 with another mode");
            }
            int s = setting_of_phase(p.phase);
            if (duals[input][static_cast<size_t>(s)] != nullptr) {
                throw SchemaError("duplicate dual probe reading");
            }
            duals[input][static_cast<size_t>(s)] = &p;
        }
    }
    for (size_t i = 0; i < m; i++) {
        if (singles[i] == nullptr) {
            throw SchemaError("incomplete probe set: missing single probe for input " + std::to_string(i));
        }
        for (size_t s = 0; i > 0 && s < static_cast<size_t>(kDualPhaseSettings); s++) {
            if (duals[i][s] == nullptr) {
                throw SchemaError("incomplete probe set: missing dual probe (0," + std::to_string(i) + ") setting " + std::to_string(s));
            }
        }
    }

    auto rows = static_cast<Eigen::Index>(m);
    RealMatrix moduli(rows, rows);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < m; j++) {
            moduli(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::sqrt(singles[i]->intensities[j]);
        }
    }

    CharacterizationReport report{TransferMatrix::identity(m), "first-row-column-real", static_cast<int>(2 * m - 1), {}, {}};

    // I(phi) = r_1j^2 + r_kj^2 + 2 r_1j r_kj cos(theta_kj - theta_1j + phi), so
    // I(0) - I(pi) and I(3pi/2) - I(pi/2) are 4 r r' times cos and sin of the difference.
    RealMatrix relative = RealMatrix::Zero(rows, rows);
    for (size_t k = 1; k < m; k++) {
        for (size_t j = 0; j < m; j++) {
            auto kk = static_cast<Eigen::Index>(k);
            auto jj = static_cast<Eigen::Index>(j);
            if (moduli(0, jj) * moduli(kk, jj) < kPhaseIndeterminateThreshold) {
                report.phase_indeterminate.emplace_back(static_cast<int>(k), static_cast<int>(j));
                continue;
            }
            double cos_part = duals[k][0]->intensities[j] - duals[k][2]->intensities[j];
            double sin_part = duals[k][3]->intensities[j] - duals[k][1]->intensities[j];
            relative(kk, jj) = std::atan2(sin_part, cos_part);
        }
    }

    // Output phases already make row 0 real; input phases then clear column 0.
    ComplexMatrix u(rows, rows);
    for (Eigen::Index i = 0; i < rows; i++) {
        for (Eigen::Index j = 0; j < rows; j++) {
            u(i, j) = std::polar(moduli(i, j), relative(i, j) - relative(i, 0));
        }
    }
    report.reconstructed = TransferMatrix(std::move(u), "reconstructed");
    return report;
}

GaugeAlignment gauge_align(const TransferMatrix &a, const TransferMatrix &b) {
    if (a.modes() != b.modes()) {
        throw DimensionError("gauge_align needs matrices of equal size");
    }
    const ComplexMatrix &x = a.entries();
    const ComplexMatrix &y = b.entries();
    auto m = x.rows();

    GaugeAlignment result{b, std::vector<Complex>(static_cast<size_t>(m), 1.0), std::vector<Complex>(static_cast<size_t>(m), 1.0), 0, false};
    result.degenerate = (y.cwiseAbs().rowwise().maxCoeff().array() == 0).any() ||
                        (y.cwiseAbs().colwise().maxCoeff().array() == 0).any();

    // Pivot on the column holding the strongest common entry.
    Eigen::Index pr = 0;
    Eigen::Index pc = 0;
    (x.cwiseAbs().cwiseProduct(y.cwiseAbs())).maxCoeff(&pr, &pc);
    std::vector<Complex> &rp = result.row_phases;
    std::vector<Complex> &cp = result.column_phases;
    for (Eigen::Index i = 0; i < m; i++) {
        rp[static_cast<size_t>(i)] = unit_phase(x(i, pc) * std::conj(y(i, pc)));
    }

    // Alternate least-squares phase updates; exact gauge orbits converge immediately.
    for (int iter = 0; iter < 20; iter++) {
        for (Eigen::Index j = 0; j < m; j++) {
            Complex acc = 0;
            for (Eigen::Index i = 0; i < m; i++) {
                acc += x(i, j) * std::conj(rp[static_cast<size_t>(i)] * y(i, j));
            }
            cp[static_cast<size_t>(j)] = unit_phase(acc);
        }
        double change = 0;
        for (Eigen::Index i = 0; i < m; i++) {
            Complex acc = 0;
            for (Eigen::Index j = 0; j < m; j++) {
                acc += x(i, j) * std::conj(y(i, j) * cp[static_cast<size_t>(j)]);
            }
            Complex next = unit_phase(acc);
            change = std::max(change, std::abs(next - rp[static_cast<size_t>(i)]));
            rp[static_cast<size_t>(i)] = next;
        }
        if (change < 1e-15) {
            break;
        }
    }

    ComplexMatrix aligned(m, m);
    for (Eigen::Index i = 0; i < m; i++) {
        for (Eigen::Index j = 0; j < m; j++) {
            aligned(i, j) = rp[static_cast<size_t>(i)] * y(i, j) * cp[static_cast<size_t>(j)];
        }
    }
    result.residual = (x - aligned).cwiseAbs().maxCoeff();
    result.aligned = TransferMatrix(std::move(aligned), b.label(), b.unitarity_tolerance());
    return result;
}

}  // namespace bosim
