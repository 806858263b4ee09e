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
#include <map>
#include <numeric>
#include <random>

#include "bosim/errors.h"
#include "bosim/parallel.h"
#include "bosim/published.h"
#include "bosim/scattering.h"
#include "oracles.h"

namespace bosim {
namespace {

using testing::balanced_splitter;

ModeConfiguration cfg(std::vector<int> occ) {
    return ModeConfiguration(std::move(occ));
}

// Random collision-free input with n photons in m modes.
ModeConfiguration random_input(size_t m, int n, std::mt19937_64 &rng) {
    std::vector<int> occ(m, 0);
    std::fill(occ.begin(), occ.begin() + n, 1);
    std::shuffle(occ.begin(), occ.end(), rng);
    return cfg(occ);
}

TEST(BuildSubmatrix, PublishedCase) {
    auto sub = build_submatrix(measured_two_photon_unitary(), cfg({1, 0, 1, 0, 0, 0}), cfg({0, 1, 0, 0, 1, 0}));
    ASSERT_EQ(sub.submatrix.rows(), 2);
    EXPECT_LT(std::abs(sub.submatrix(0, 0) - Complex(0.325, 0)), 1e-12);
    EXPECT_LT(std::abs(sub.submatrix(0, 1) - Complex(0.430, 0)), 1e-12);
    EXPECT_LT(std::abs(sub.submatrix(1, 0) - Complex(0.182, 0.248)), 1e-12);
    EXPECT_LT(std::abs(sub.submatrix(1, 1) - Complex(-0.127, -0.386)), 1e-12);
    EXPECT_EQ(sub.output_columns.rows(), 6);
    EXPECT_EQ(sub.output_columns.cols(), 2);
}

TEST(BuildSubmatrix, IdentityAndDuplication) {
    auto id = build_submatrix(TransferMatrix::identity(3), cfg({1, 1, 0}), cfg({1, 1, 0}));
    EXPECT_TRUE(id.submatrix.isApprox(ComplexMatrix::Identity(2, 2)));
    auto u = random_unitary(4, 1);
    auto dup = build_submatrix(u, cfg({1, 1, 0, 0}), cfg({0, 2, 0, 0}));
    for (Eigen::Index i = 0; i < 2; i++) {
        EXPECT_EQ(dup.submatrix(i, 0), u(static_cast<size_t>(i), 1));
        EXPECT_EQ(dup.submatrix(i, 1), u(static_cast<size_t>(i), 1));
    }
}

TEST(BuildSubmatrix, Mismatches) {
    auto u = random_unitary(3, 1);
    EXPECT_THROW(build_submatrix(u, cfg({1, 1, 0}), cfg({1, 0, 0})), DimensionError);
    EXPECT_THROW(build_submatrix(u, cfg({1, 1}), cfg({1, 1})), DimensionError);
}

TEST(Probabilities, PublishedCase) {
    auto u = measured_two_photon_unitary();
    auto s = cfg({1, 0, 1, 0, 0, 0});
    auto t = cfg({0, 1, 0, 0, 1, 0});
    EXPECT_NEAR(p_quantum(u, s, t), 0.0017, 5e-4);
    EXPECT_NEAR(p_classical(u, s, t), 0.0349, 5e-4);
}

TEST(Probabilities, HongOuMandel) {
    auto bs = balanced_splitter();
    EXPECT_NEAR(p_quantum(bs, cfg({1, 1}), cfg({1, 1})), 0.0, 1e-15);
    EXPECT_NEAR(p_classical(bs, cfg({1, 1}), cfg({1, 1})), 0.5, 1e-15);
    EXPECT_NEAR(p_quantum(bs, cfg({1, 1}), cfg({2, 0})), 0.5, 1e-15);
}

TEST(Probabilities, VacuumAndIdentity) {
    auto u = random_unitary(4, 2);
    EXPECT_EQ(p_quantum(u, cfg({0, 0, 0, 0}), cfg({0, 0, 0, 0})), 1.0);
    auto id = TransferMatrix::identity(4);
    EXPECT_NEAR(p_classical(id, cfg({1, 0, 1, 1}), cfg({1, 0, 1, 1})), 1.0, 1e-15);
    EXPECT_NEAR(p_quantum(id, cfg({1, 0, 1, 1}), cfg({1, 0, 1, 1})), 1.0, 1e-15);
}

TEST(Probabilities, MatchFockSpaceOracle) {
    // Includes colliding inputs and outputs.
    for (uint64_t seed = 0; seed < 6; seed++) {
        auto u = random_unitary(4, seed);
        for (auto s : {cfg({1, 1, 1, 0}), cfg({2, 0, 1, 0}), cfg({0, 3, 0, 0}), cfg({1, 0, 0, 1})}) {
            for (const auto &t : enumerate_output_configurations(4, s.photons(), false)) {
                EXPECT_NEAR(p_quantum(u, s, t), testing::fock_oracle(u, s, t), 1e-13);
                EXPECT_NEAR(p_classical(u, s, t), testing::distinguishable_oracle(u, s, t), 1e-13);
            }
        }
    }
}

TEST(Probabilities, Normalization) {
    for (size_t m : {2u, 4u, 6u, 8u}) {
        for (int n = 1; n <= 4; n++) {
            if (static_cast<size_t>(n) > m) {
                continue;
            }
            std::mt19937_64 rng(m * 10 + n);
            auto u = random_unitary(m, m + n);
            for (auto s : {random_input(m, n, rng), cfg([&] {
                     std::vector<int> occ(m, 0);
                     occ[0] = n;
                     return occ;
                 }())}) {
                auto table = full_distribution(u, s, QuantumFlavor{}, false);
                double q = 0, c = 0;
                for (const auto &r : table.records) {
                    q += r.p_quantum;
                    c += r.p_classical;
                }
                EXPECT_NEAR(q, 1.0, 1e-9) << m << " " << n << " " << s.str();
                EXPECT_NEAR(c, 1.0, 1e-9) << m << " " << n << " " << s.str();
            }
        }
    }
}

TEST(Probabilities, TimeReversal) {
    std::mt19937_64 rng(4);
    for (uint64_t seed = 0; seed < 5; seed++) {
        auto u = random_unitary(5, seed);
        auto s = random_input(5, 3, rng);
        for (const auto &t : enumerate_output_configurations(5, 3, false)) {
            EXPECT_NEAR(p_quantum(u, s, t), p_quantum(u.adjoint(), t, s), 1e-13);
        }
    }
}

TEST(Probabilities, InputPermutationCovariance) {
    auto u = random_unitary(4, 8);
    std::vector<int> perm{2, 0, 3, 1};
    ComplexMatrix permuted(4, 4);
    for (int i = 0; i < 4; i++) {
        permuted.row(perm[static_cast<size_t>(i)]) = u.entries().row(i);
    }
    TransferMatrix v(permuted);
    std::vector<int> occ{1, 1, 0, 1};
    std::vector<int> moved(4);
    for (size_t i = 0; i < 4; i++) {
        moved[static_cast<size_t>(perm[i])] = occ[i];
    }
    for (const auto &t : enumerate_output_configurations(4, 3, false)) {
        EXPECT_NEAR(p_quantum(u, cfg(occ), t), p_quantum(v, cfg(moved), t), 1e-14);
        EXPECT_NEAR(p_classical(u, cfg(occ), t), p_classical(v, cfg(moved), t), 1e-14);
    }
}

TEST(GramMatrix, Validation) {
    EXPECT_NO_THROW(GramMatrix::uniform(3, 0.4));
    ComplexMatrix bad_diag = ComplexMatrix::Identity(2, 2);
    bad_diag(1, 1) = 0.9;
    EXPECT_THROW(GramMatrix{bad_diag}, DomainError);
    ComplexMatrix not_hermitian = ComplexMatrix::Identity(2, 2);
    not_hermitian(0, 1) = 0.5;
    EXPECT_THROW(GramMatrix{not_hermitian}, DomainError);
    // Pairwise valid overlaps that are jointly impossible.
    ComplexMatrix not_psd = ComplexMatrix::Identity(3, 3);
    not_psd(0, 1) = not_psd(1, 0) = 0.9;
    not_psd(0, 2) = not_psd(2, 0) = 0.9;
    not_psd(1, 2) = not_psd(2, 1) = -0.9;
    EXPECT_THROW(GramMatrix{not_psd}, DomainError);
}

TEST(PartialDistinguishability, BalancedSplitterExample) {
    EXPECT_NEAR(p_partial(balanced_splitter(), cfg({1, 1}), cfg({1, 1}), GramMatrix::uniform(2, 0.5)), 0.375, 1e-15);
}

TEST(PartialDistinguishability, TwoPhotonsInterpolateLinearlyInOverlapSquared) {
    // For n = 2: P = pC + |g|^2 (pQ - pC).
    auto u = random_unitary(5, 12);
    auto s = cfg({0, 1, 0, 1, 0});
    for (const auto &t : enumerate_output_configurations(5, 2, false)) {
        for (Complex g : {Complex(0.3, 0.4), Complex(-0.8, 0), Complex(0, 1)}) {
            ComplexMatrix gram = ComplexMatrix::Identity(2, 2);
            gram(0, 1) = g;
            gram(1, 0) = std::conj(g);
            double expected = p_classical(u, s, t) + std::norm(g) * (p_quantum(u, s, t) - p_classical(u, s, t));
            EXPECT_NEAR(p_partial(u, s, t, GramMatrix(gram)), expected, 1e-14);
        }
    }
}

TEST(PartialDistinguishability, MatchesInternalModeOracle) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int rep = 0; rep < 8; rep++) {
        auto u = random_unitary(3, static_cast<uint64_t>(rep));
        // Colliding inputs exercise the input-state normalization.
        auto s = rep % 2 == 0 ? cfg({1, 1, 1}) : cfg({2, 1, 0});
        // Random Gram matrix from random unit vectors.
        ComplexMatrix vecs(3, 3);
        for (Eigen::Index k = 0; k < 3; k++) {
            for (Eigen::Index d = 0; d < 3; d++) {
                vecs(d, k) = Complex(unit(rng), unit(rng));
            }
            vecs.col(k).normalize();
        }
        ComplexMatrix gram = vecs.adjoint() * vecs;
        gram.diagonal().setOnes();
        for (const auto &t : enumerate_output_configurations(3, 3, false)) {
            EXPECT_NEAR(p_partial(u, s, t, GramMatrix(gram)), testing::partial_oracle(u, s, t, gram), 1e-12)
                << s.str() << " -> " << t.str();
        }
    }
}

TEST(PartialDistinguishability, LimitsIncludingCollisions) {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; rep++) {
        auto u = random_unitary(4, static_cast<uint64_t>(100 + rep));
        int n = 1 + rep % 4;
        auto s = rep % 3 == 0 ? cfg({n, 0, 0, 0}) : random_input(4, n, rng);
        for (const auto &t : enumerate_output_configurations(4, n, false)) {
            auto nn = static_cast<size_t>(n);
            EXPECT_NEAR(p_partial(u, s, t, GramMatrix::indistinguishable(nn)), p_quantum(u, s, t), 1e-12);
            EXPECT_NEAR(p_partial(u, s, t, GramMatrix::distinguishable(nn)), p_classical(u, s, t), 1e-12);
        }
    }
}

TEST(PartialDistinguishability, ContinuousInLambda) {
    auto u = random_unitary(4, 77);
    auto s = cfg({1, 1, 1, 0});
    auto t = cfg({0, 1, 1, 1});
    double previous = p_partial(u, s, t, GramMatrix::uniform(3, 0.0));
    EXPECT_NEAR(previous, p_classical(u, s, t), 1e-13);
    for (int k = 1; k <= 1000; k++) {
        double p = p_partial(u, s, t, GramMatrix::uniform(3, k / 1000.0));
        EXPECT_LT(std::abs(p - previous), 1e-2);
        previous = p;
    }
    EXPECT_NEAR(previous, p_quantum(u, s, t), 1e-13);
}

TEST(PartialDistinguishability, Limits) {
    auto u = random_unitary(6, 1);
    auto s = cfg({1, 1, 1, 1, 1, 1});
    EXPECT_THROW(p_partial(u, s, s, GramMatrix::indistinguishable(6)), DimensionError);
    EXPECT_THROW(p_partial(u, cfg({1, 1, 0, 0, 0, 0}), cfg({1, 1, 0, 0, 0, 0}), GramMatrix::indistinguishable(3)),
                 DimensionError);
}

TEST(FullDistribution, HongOuMandel) {
    auto table = full_distribution(balanced_splitter(), cfg({1, 1}), QuantumFlavor{}, false);
    ASSERT_EQ(table.records.size(), 3u);
    EXPECT_NEAR(table.records[0].p_quantum, 0.5, 1e-15);
    EXPECT_NEAR(table.records[1].p_quantum, 0.0, 1e-15);
    EXPECT_NEAR(table.records[2].p_quantum, 0.5, 1e-15);
    EXPECT_TRUE(table.warnings.empty());
}

TEST(FullDistribution, HaarCase) {
    auto table = full_distribution(random_unitary(6, 7), cfg({1, 0, 1, 0, 1, 0}), QuantumFlavor{}, false);
    ASSERT_EQ(table.records.size(), 56u);
    double sum = 0;
    for (const auto &r : table.records) {
        sum += r.p_quantum;
        EXPECT_FALSE(r.p_model.has_value());
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(FullDistribution, IdentityIsPointMass) {
    auto s = cfg({1, 1, 0, 0, 0, 0});
    for (Flavor f : {Flavor(QuantumFlavor{}), Flavor(ClassicalFlavor{}),
                     Flavor(PartialFlavor{GramMatrix::uniform(2, 0.3)})}) {
        auto table = full_distribution(TransferMatrix::identity(6), s, f, false);
        for (const auto &r : table.records) {
            EXPECT_NEAR(flavor_probability(r, f), r.config == s ? 1.0 : 0.0, 1e-15);
        }
    }
}

TEST(FullDistribution, LossyMatrixWarns) {
    auto table = full_distribution(measured_two_photon_unitary(), cfg({1, 0, 1, 0, 0, 0}), QuantumFlavor{}, true);
    EXPECT_EQ(table.records.size(), 15u);
    EXPECT_FALSE(table.warnings.empty());
    ComplexMatrix broken = ComplexMatrix::Identity(2, 2);
    broken(0, 0) = std::nan("");
    EXPECT_THROW(full_distribution(TransferMatrix(broken), cfg({1, 1}), QuantumFlavor{}, false), SchemaError);
}

TEST(FullDistribution, OrderIndependentOfThreads) {
    auto u = random_unitary(7, 3);
    auto s = cfg({1, 1, 0, 1, 0, 0, 0});
    set_max_threads(1);
    auto a = full_distribution(u, s, QuantumFlavor{}, false);
    set_max_threads(6);
    auto b = full_distribution(u, s, QuantumFlavor{}, false);
    set_max_threads(0);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (size_t k = 0; k < a.records.size(); k++) {
        EXPECT_EQ(a.records[k].config, b.records[k].config);
        EXPECT_EQ(a.records[k].p_quantum, b.records[k].p_quantum);
    }
}

TEST(Sample, HongOuMandelNeverCoincident) {
    auto counts = sample(balanced_splitter(), cfg({1, 1}), QuantumFlavor{}, 10000, 4);
    uint64_t total = 0;
    for (size_t k = 0; k < counts.configs.size(); k++) {
        total += counts.counts[k];
        if (counts.configs[k] == cfg({1, 1})) {
            EXPECT_EQ(counts.counts[k], 0u);
        }
    }
    EXPECT_EQ(total, 10000u);
}

TEST(Sample, SingleShotAndDeterminism) {
    auto u = random_unitary(5, 9);
    auto s = cfg({1, 0, 1, 0, 1});
    auto one = sample(u, s, QuantumFlavor{}, 1, 1);
    EXPECT_EQ(std::accumulate(one.counts.begin(), one.counts.end(), uint64_t{0}), 1u);
    auto a = sample(u, s, ClassicalFlavor{}, 5000, 42);
    auto b = sample(u, s, ClassicalFlavor{}, 5000, 42);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, sample(u, s, ClassicalFlavor{}, 5000, 43).counts);
}

TEST(Sample, ConvergesInTotalVariation) {
    auto u = random_unitary(6, 7);
    auto s = cfg({1, 0, 1, 0, 1, 0});
    const uint64_t shots = 100000;
    auto exact = full_distribution(u, s, QuantumFlavor{}, false);
    auto counts = sample(u, s, QuantumFlavor{}, shots, 2024);
    ASSERT_EQ(counts.configs.size(), exact.records.size());
    double tv = 0;
    for (size_t k = 0; k < counts.configs.size(); k++) {
        double freq = static_cast<double>(counts.counts[k]) / shots;
        tv += std::abs(freq - exact.records[k].p_quantum);
        if (exact.records[k].p_quantum == 0) {
            EXPECT_EQ(counts.counts[k], 0u);
        }
    }
    tv /= 2;
    EXPECT_LT(tv, 0.02);
    EXPECT_LT(tv, 5 / std::sqrt(double(shots)) * std::sqrt(double(counts.configs.size())));
}

}  // namespace
}  // namespace bosim
