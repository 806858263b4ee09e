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

#include "bosim/published.h"

namespace bosim {

namespace {

using C = Complex;

TransferMatrix from_rows(const C (&rows)[6][6], const char *label) {
    ComplexMatrix u(6, 6);
    for (int i = 0; i < 6; i++) {
        for (int j = 0; j < 6; j++) {
            u(i, j) = rows[i][j];
        }
    }
    return TransferMatrix(std::move(u), label);
}

}  // namespace

TransferMatrix measured_two_photon_unitary() {
    static const C rows[6][6] = {
        {C(0.297, 0), C(0.325, 0.000), C(0.126, 0.000), C(0.500, 0.000), C(0.430, 0.000), C(0.253, 0.000)},
        {C(0.330, 0), C(-0.302, -0.011), C(0.001, 0.503), C(0.028, -0.390), C(0.221, 0.118), C(-0.385, -0.213)},
        {C(0.388, 0), C(0.182, 0.248), C(-0.220, 0.133), C(-0.212, 0.204), C(-0.127, -0.386), C(0.108, -0.081)},
        {C(0.311, 0), C(-0.220, -0.315), C(-0.169, -0.246), C(0.190, 0.157), C(-0.073, -0.089), C(-0.227, 0.355)},
        {C(0.396, 0), C(-0.222, -0.169), C(0.387, -0.130), C(-0.265, 0.004), C(-0.103, 0.202), C(0.353, -0.112)},
        {C(0.279, 0), C(0.322, 0.244), C(-0.101, -0.239), C(-0.051, -0.400), C(-0.184, 0.320), C(-0.217, 0.074)},
    };
    return from_rows(rows, "U_exp_2photon");
}

TransferMatrix measured_three_photon_unitary() {
    static const C rows[6][6] = {
        {C(0.334, 0), C(0.277, 0.000), C(0.125, 0.000), C(0.479, 0.000), C(0.415, 0.000), C(0.237, 0.000)},
        {C(0.273, 0), C(-0.329, -0.051), C(0.055, 0.478), C(0.021, -0.121), C(0.197, 0.128), C(-0.345, -0.253)},
        {C(0.420, 0), C(0.140, 0.242), C(-0.191, 0.198), C(-0.195, 0.204), C(-0.139, -0.393), C(0.113, -0.085)},
        {C(0.284, 0), C(-0.197, -0.367), C(-0.194, -0.224), C(0.189, 0.190), C(-0.072, -0.106), C(-0.278, 0.333)},
        {C(0.340, 0), C(-0.329, -0.049), C(0.328, -0.312), C(-0.144, 0.042), C(-0.131, 0.187), C(0.283, -0.216)},
        {C(0.324, 0), C(0.344, 0.036), C(-0.114, -0.101), C(-0.206, -0.398), C(-0.111, 0.351), C(-0.098, 0.208)},
    };
    return from_rows(rows, "U_exp_3photon");
}

}  // namespace bosim
