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
#include <random>

#include "bosim/coherent.h"
#include "bosim/errors.h"
#include "oracles.h"

namespace bosim {
namespace {

using testing::balanced_splitter;

ModeConfiguration cfg(std::vector<int> occ) {
    return ModeConfiguration(std::move(occ));
}

TEST(CoherentInput, Validation) {
    EXPECT_THROW(CoherentInput({}), DomainError);
    EXPECT_THROW(CoherentInput({1, 1}), DomainError);
    EXPECT_EQ(CoherentInput::from_configuration(cfg({0, 1, 1})).modes(), (std::vector<int>{1, 2}));
    EXPECT_THROW(CoherentInput::from_configuration(cfg({2, 0})), DomainError);
}

TEST(Coherent, BalancedSplitter) {
    auto bs = balanced_splitter();
    CoherentInput both({0, 1});
    EXPECT_NEAR(coherent_p0(bs, both, cfg({1, 1})), 0.5, 1e-15);
    EXPECT_NEAR(coherent_pinf(bs, both, cfg({1, 1})), 1.0, 1e-15);
    EXPECT_NEAR(coherent_visibility(bs, both, cfg({1, 1})), 0.5, 1e-9);
    EXPECT_NEAR(coherent_p0(bs, both, cfg({2, 0})), 0.75, 1e-15);
}

TEST(Coherent, SingleInputHasNoInterference) {
    auto u = random_unitary(4, 6);
    for (int i = 0; i < 4; i++) {
        CoherentInput one({i});
        for (size_t j = 0; j < 4; j++) {
            std::vector<int> occ(4, 0);
            occ[j] = 1;
            EXPECT_NEAR(coherent_p0(u, one, cfg(occ)), std::norm(u(static_cast<size_t>(i), j)), 1e-15);
            EXPECT_NEAR(coherent_pinf(u, one, cfg(occ)), std::norm(u(static_cast<size_t>(i), j)), 1e-15);
            EXPECT_NEAR(coherent_visibility(u, one, cfg(occ)), 0.0, 1e-12);
        }
    }
}

TEST(Coherent, IdentityIncoherentSum) {
    EXPECT_NEAR(coherent_pinf(TransferMatrix::identity(4), CoherentInput({0, 1}), cfg({1, 1, 0, 0})), 1.0, 1e-15);
}

TEST(Coherent, UnreachableOutput) {
    ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    u(2, 2) = 0;
    EXPECT_THROW(coherent_visibility(TransferMatrix(u), CoherentInput({0, 1}), cfg({0, 1, 1})), DomainError);
}

TEST(Coherent, Mismatches) {
    auto u = random_unitary(3, 1);
    EXPECT_THROW(coherent_p0(u, CoherentInput({0, 1}), cfg({1, 0, 0})), DimensionError);
    EXPECT_THROW(coherent_p0(u, CoherentInput({0, 1}), cfg({1, 1})), DimensionError);
    EXPECT_THROW(coherent_p0(u, CoherentInput({0, 5}), cfg({1, 1, 0})), DimensionError);
    auto big = random_unitary(6, 1);
    EXPECT_THROW(coherent_p0(big, CoherentInput({0, 1, 2, 3, 4, 5}), cfg({1, 1, 1, 1, 1, 1})), DimensionError);
}

TEST(Coherent, MatchesMonteCarlo) {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 6; rep++) {
        auto u = random_unitary(4, static_cast<uint64_t>(rep + 40));
        int n = 1 + rep % 3;
        std::vector<int> modes{0, 1, 2, 3};
        std::shuffle(modes.begin(), modes.end(), rng);
        modes.resize(static_cast<size_t>(n));
        std::sort(modes.begin(), modes.end());
        CoherentInput inputs(modes);
        auto outputs = enumerate_output_configurations(4, n, false);
        const auto &t = outputs[static_cast<size_t>(rep) % outputs.size()];
        auto mc = testing::coherent_monte_carlo(u, modes, t, 200000, static_cast<uint64_t>(rep), false);
        // A single input has no phase dependence: the sample mean only carries summation rounding.
        EXPECT_NEAR(coherent_p0(u, inputs, t), mc.mean, 3 * mc.standard_error + 1e-12) << t.str();
        auto inc = testing::coherent_monte_carlo(u, modes, t, 10, 0, true);
        EXPECT_NEAR(coherent_pinf(u, inputs, t), inc.mean, 1e-14);
    }
}

TEST(Coherent, IntensityConservation) {
    for (int n = 1; n <= 4; n++) {
        auto u = random_unitary(5, static_cast<uint64_t>(n));
        std::vector<int> modes;
        for (int k = 0; k < n; k++) {
            modes.push_back(k);
        }
        CoherentInput inputs(modes);
        double s0 = 0, sinf = 0;
        for (const auto &t : enumerate_output_configurations(5, n, false)) {
            double p0 = coherent_p0(u, inputs, t);
            double pinf = coherent_pinf(u, inputs, t);
            EXPECT_GE(p0, 0.0);
            EXPECT_GE(pinf, 0.0);
            EXPECT_LE(coherent_visibility(u, inputs, t), 1.0);
            s0 += p0;
            sinf += pinf;
        }
        EXPECT_NEAR(s0, sinf, 1e-9) << n;
    }
}

}  // namespace
}  // namespace bosim
