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

#include "bosim/coherent.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "bosim/errors.h"

namespace bosim {

CoherentInput::CoherentInput(std::vector<int> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) {
        throw DomainError("coherent input needs at least one mode");
    }
    std::set<int> seen(modes_.begin(), modes_.end());
    if (seen.size() != modes_.size()) {
        throw DomainError("coherent input modes must be distinct");
    }
    if (*seen.begin() < 0) {
        throw DomainError("coherent input modes must be non-negative");
    }
}

CoherentInput CoherentInput::from_configuration(const ModeConfiguration &s) {
    if (!s.collision_free()) {
        throw DomainError("coherent inputs need one field per mode; " + s.str() + " collides");
    }
    return CoherentInput(s.photon_modes());
}

namespace {

std::vector<int> check_and_outputs(const TransferMatrix &u, const CoherentInput &inputs, const ModeConfiguration &t) {
    if (t.modes() != u.modes()) {
        throw DimensionError("output configuration length does not match the transfer matrix");
    }
    if (t.photons() != inputs.size()) {
        throw DimensionError(
            "output " + t.str() + " must hold one count per coherent input (" + std::to_string(inputs.size()) + ")");
    }
    if (inputs.size() > kCoherentMaxInputs) {
        throw DimensionError("at most " + std::to_string(kCoherentMaxInputs) + " coherent inputs are supported");
    }
    for (int mode : inputs.modes()) {
        if (static_cast<size_t>(mode) >= u.modes()) {
            throw DimensionError("coherent input mode outside the transfer matrix");
        }
    }
    return t.photon_modes();
}

}  // namespace

double coherent_p0(const TransferMatrix &u, const CoherentInput &inputs, const ModeConfiguration &t) {
    std::vector<int> outputs = check_and_outputs(u, inputs, t);
    const std::vector<int> &in = inputs.modes();
    auto n = outputs.size();

    // prod_k |E_{o_k}|^2 = sum over index tuples a, b of
    // prod_k U_{a_k o_k} conj(U_{b_k o_k}) exp(i sum_k (theta_{a_k} - theta_{b_k})).
    // The phase average keeps exactly the terms where b is a rearrangement of a.
    Complex total = 0;
    std::vector<size_t> a(n, 0);
    while (true) {
        Complex left = 1;
        for (size_t k = 0; k < n; k++) {
            left *= u(static_cast<size_t>(in[a[k]]), static_cast<size_t>(outputs[k]));
        }
        if (left != Complex(0)) {
            std::vector<size_t> b = a;
            std::sort(b.begin(), b.end());
            do {
                Complex right = 1;
                for (size_t k = 0; k < n; k++) {
                    right *= std::conj(u(static_cast<size_t>(in[b[k]]), static_cast<size_t>(outputs[k])));
                }
                total += left * right;
            } while (std::next_permutation(b.begin(), b.end()));
        }

        size_t pos = 0;
        while (pos < n && ++a[pos] == in.size()) {
            a[pos] = 0;
            pos++;
        }
        if (pos == n) {
            break;
        }
    }
    return std::max(0.0, total.real()) / t.factorial_product();
}

double coherent_pinf(const TransferMatrix &u, const CoherentInput &inputs, const ModeConfiguration &t) {
    std::vector<int> outputs = check_and_outputs(u, inputs, t);
    double product = 1;
    for (int j : outputs) {
        double intensity = 0;
        for (int i : inputs.modes()) {
            intensity += std::norm(u(static_cast<size_t>(i), static_cast<size_t>(j)));
        }
        product *= intensity;
    }
    return product / t.factorial_product();
}

double coherent_visibility(const TransferMatrix &u, const CoherentInput &inputs, const ModeConfiguration &t) {
    double pinf = coherent_pinf(u, inputs, t);
    if (pinf <= 1e-15) {
        throw DomainError("output " + t.str() + " is unreachable from the coherent inputs");
    }
    return (pinf - coherent_p0(u, inputs, t)) / pinf;
}

}  // namespace bosim
