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

#ifndef BOSIM_CORE_H
#define BOSIM_CORE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bosim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Deviation bound accepted for measured (rounded, noisy) transfer matrices.
inline constexpr double kNearUnitaryThreshold = 0.05;
/// Default bound for matrices that claim to be exactly unitary.
inline constexpr double kDefaultUnitarityTolerance = 1e-10;

/// An m-mode linear optical network.
///
/// Entry (i, j) is the amplitude r_ij * exp(i theta_ij) for a photon entering
/// input mode i to leave through output mode j. Rows are inputs, columns are
/// outputs. Immutable after construction.
class TransferMatrix {
   public:
    /// Throws DimensionError unless `entries` is square with at least one mode.
    explicit TransferMatrix(
        ComplexMatrix entries, std::string label = {}, double unitarity_tolerance = kDefaultUnitarityTolerance);

    static TransferMatrix identity(size_t m);

    size_t modes() const {
        return static_cast<size_t>(entries_.rows());
    }
    const ComplexMatrix &entries() const {
        return entries_;
    }
    Complex operator()(size_t input, size_t output) const {
        return entries_(static_cast<Eigen::Index>(input), static_cast<Eigen::Index>(output));
    }
    const std::string &label() const {
        return label_;
    }
    double unitarity_tolerance() const {
        return unitarity_tolerance_;
    }

    /// The time-reversed network (conjugate transpose).
    TransferMatrix adjoint() const;

   private:
    ComplexMatrix entries_;
    std::string label_;
    double unitarity_tolerance_;
};

enum class MatrixStatus {
    unitary,       ///< deviation <= the matrix's unitarity tolerance
    near_unitary,  ///< deviation <= kNearUnitaryThreshold
    non_unitary,   ///< finite and connected but lossy beyond the near-unitary bound
    invalid,       ///< non-finite entry, or an input/output that carries no amplitude
};

std::string_view to_string(MatrixStatus status);

struct ValidationReport {
    /// max |(U^dagger U - I)_kl|
    double deviation;
    /// Same deviation after dividing U^dagger U by its mean diagonal (uniform loss removed).
    double loss_normalized_deviation;
    bool finite;
    MatrixStatus status;
    std::string message;
};

ValidationReport validate(const TransferMatrix &matrix);

/// Photon occupation numbers, one entry per mode.
class ModeConfiguration {
   public:
    ModeConfiguration() = default;
    /// Throws DomainError on negative occupations.
    explicit ModeConfiguration(std::vector<int> occupations);

    /// Builds a configuration from 1-based mode indices; repeated indices collide.
    static ModeConfiguration from_modes(std::span<const int> one_based_modes, size_t m);

    size_t modes() const {
        return occupations_.size();
    }
    int operator[](size_t mode) const {
        return occupations_[mode];
    }
    const std::vector<int> &occupations() const {
        return occupations_;
    }
    int photons() const;
    bool collision_free() const;

    /// 0-based mode index of every photon in ascending mode order, with
    /// repeats for multiply occupied modes.
    std::vector<int> photon_modes() const;

    /// Product of occupation factorials.
    double factorial_product() const;

    /// "(1,0,1,0,0,0)"
    std::string str() const;

    auto operator<=>(const ModeConfiguration &) const = default;

   private:
    std::vector<int> occupations_;
};

/// All ways of placing n photons into m modes, in descending lexicographic
/// order of the occupation vectors. With `collision_free_only`, only
/// configurations with at most one photon per mode.
std::vector<ModeConfiguration> enumerate_output_configurations(size_t m, int n, bool collision_free_only);

/// Haar-random m x m unitary. Deterministic for a fixed seed.
TransferMatrix random_unitary(size_t m, uint64_t seed);

/// Polarisation/spatial names of the six modes of the reference circuit:
/// 1..6 = H1, V1, H2, V2, H3, V3.
struct ModeLabeling {
    static constexpr size_t kModes = 6;

    /// Label for a 1-based mode index. Throws DimensionError outside 1..6.
    static std::string_view label(int one_based_mode);
    /// Inverse of label(). Throws SchemaError for unknown labels.
    static int mode(std::string_view label);
};

}  // namespace bosim

#endif
