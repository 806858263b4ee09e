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

#include "bosim/permanent.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "bosim/errors.h"
#include "bosim/parallel.h"

namespace bosim {

std::string_view to_string(PermanentAlgorithm algorithm) {
    switch (algorithm) {
        case PermanentAlgorithm::naive:
            return "naive";
        case PermanentAlgorithm::ryser:
            return "ryser";
        case PermanentAlgorithm::glynn:
            return "glynn";
    }
    return "ryser";
}

PermanentAlgorithm parse_permanent_algorithm(std::string_view name) {
    if (name == "naive") {
        return PermanentAlgorithm::naive;
    }
    if (name == "ryser") {
        return PermanentAlgorithm::ryser;
    }
    if (name == "glynn") {
        return PermanentAlgorithm::glynn;
    }
    throw SchemaError("unknown permanent algorithm '" + std::string(name) + "'");
}

namespace {

// Subset ranges are always cut into this many chunks (or fewer for tiny
// matrices), regardless of the thread count.
constexpr uint64_t kChunkCount = 64;

/// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const {
        return sum + carry;
    }
};

template <typename T>
struct Accumulator;

template <>
struct Accumulator<double> {
    bool compensated = false;
    double plain = 0;
    CompensatedSum comp;

    void add(double x) {
        if (compensated) {
            comp.add(x);
        } else {
            plain += x;
        }
    }
    double value() const {
        return compensated ? comp.value() : plain;
    }
};

template <>
struct Accumulator<Complex> {
    bool compensated = false;
    Complex plain = 0;
    CompensatedSum re;
    CompensatedSum im;

    void add(Complex x) {
        if (compensated) {
            re.add(x.real());
            im.add(x.imag());
        } else {
            plain += x;
        }
    }
    Complex value() const {
        return compensated ? Complex(re.value(), im.value()) : plain;
    }
};

uint64_t gray(uint64_t k) {
    return k ^ (k >> 1);
}

template <typename T>
T pairwise_reduce(std::vector<T> &values) {
    size_t count = values.size();
    while (count > 1) {
        size_t half = (count + 1) / 2;
        for (size_t i = 0; i + half < count; i++) {
            values[i] += values[i + half];
        }
        count = half;
    }
    return values.empty() ? T(0) : values[0];
}

/// Runs chunk(lo, hi) over a fixed partition of [0, total) and reduces.
template <typename T, typename ChunkFn>
T chunked_sum(uint64_t total, ChunkFn chunk) {
    uint64_t chunks = std::min(total, kChunkCount);
    std::vector<T> partial(chunks, T(0));
    parallel_for(chunks, [&](size_t c) {
        uint64_t lo = total / chunks * c + std::min<uint64_t>(c, total % chunks);
        uint64_t hi = lo + total / chunks + (c < total % chunks ? 1 : 0);
        partial[c] = chunk(lo, hi);
    });
    return pairwise_reduce(partial);
}

template <typename T, typename Matrix>
void check_square(const Matrix &matrix, size_t cap, const char *name) {
    if (matrix.rows() != matrix.cols()) {
        throw DimensionError(std::string(name) + ": matrix must be square");
    }
    if (static_cast<size_t>(matrix.rows()) > cap) {
        throw DimensionError(
            std::string(name) + ": dimension " + std::to_string(matrix.rows()) + " exceeds the limit of " +
            std::to_string(cap));
    }
}

template <typename T>
T naive_kernel(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> &a) {
    check_square<T>(a, kNaivePermanentMaxN, "permanent_naive");
    auto n = static_cast<size_t>(a.rows());
    std::vector<Eigen::Index> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    T total = 0;
    do {
        T product = 1;
        for (size_t k = 0; k < n; k++) {
            product *= a(static_cast<Eigen::Index>(k), perm[k]);
        }
        total += product;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

template <typename T>
T ryser_kernel(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> &a) {
    check_square<T>(a, kPermanentMaxN, "permanent_ryser");
    auto n = static_cast<size_t>(a.rows());
    if (n == 0) {
        return T(1);
    }
    // Column-major copy so adding a column to the row sums walks contiguous memory.
    std::vector<T> columns(n * n);
    for (size_t j = 0; j < n; j++) {
        for (size_t i = 0; i < n; i++) {
            columns[j * n + i] = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    bool compensated = n >= kCompensatedSummationMinN;

    auto chunk = [&](uint64_t lo, uint64_t hi) {
        std::vector<T> row_sums(n, T(0));
        uint64_t subset = gray(lo);
        for (size_t j = 0; j < n; j++) {
            if ((subset >> j) & 1) {
                for (size_t i = 0; i < n; i++) {
                    row_sums[i] += columns[j * n + i];
                }
            }
        }
        Accumulator<T> acc;
        acc.compensated = compensated;
        for (uint64_t k = lo; k < hi; k++) {
            if (k != lo) {
                auto j = static_cast<size_t>(std::countr_zero(k));
                subset = gray(k);
                const T *col = &columns[j * n];
                if ((subset >> j) & 1) {
                    for (size_t i = 0; i < n; i++) {
                        row_sums[i] += col[i];
                    }
                } else {
                    for (size_t i = 0; i < n; i++) {
                        row_sums[i] -= col[i];
                    }
                }
            }
            T product = row_sums[0];
            for (size_t i = 1; i < n; i++) {
                product *= row_sums[i];
            }
            acc.add(std::popcount(subset) % 2 == 0 ? product : -product);
        }
        return acc.value();
    };

    T total = chunked_sum<T>(uint64_t{1} << n, chunk);
    return n % 2 == 0 ? total : -total;
}

template <typename T>
T glynn_kernel(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> &a) {
    check_square<T>(a, kPermanentMaxN, "permanent_glynn");
    auto n = static_cast<size_t>(a.rows());
    if (n == 0) {
        return T(1);
    }
    bool compensated = n >= kCompensatedSummationMinN;

    // Sign vector delta has delta_0 = +1; bit b of the Gray code flips delta_{b+1}.
    auto chunk = [&](uint64_t lo, uint64_t hi) {
        std::vector<T> col_sums(n, T(0));
        uint64_t code = gray(lo);
        for (size_t i = 0; i < n; i++) {
            double delta = (i > 0 && ((code >> (i - 1)) & 1)) ? -1.0 : 1.0;
            for (size_t j = 0; j < n; j++) {
                col_sums[j] += delta * a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        Accumulator<T> acc;
        acc.compensated = compensated;
        for (uint64_t k = lo; k < hi; k++) {
            if (k != lo) {
                auto b = static_cast<size_t>(std::countr_zero(k));
                code = gray(k);
                auto row = a.row(static_cast<Eigen::Index>(b + 1));
                // Newly negative: subtract twice the row; newly positive: add it back.
                double step = ((code >> b) & 1) ? -2.0 : 2.0;
                for (size_t j = 0; j < n; j++) {
                    col_sums[j] += step * row(static_cast<Eigen::Index>(j));
                }
            }
            T product = col_sums[0];
            for (size_t j = 1; j < n; j++) {
                product *= col_sums[j];
            }
            acc.add(std::popcount(code) % 2 == 0 ? product : -product);
        }
        return acc.value();
    };

    T total = chunked_sum<T>(uint64_t{1} << (n - 1), chunk);
    return total / std::ldexp(1.0, static_cast<int>(n - 1));
}

}  // namespace

Complex permanent_naive(const ComplexMatrix &matrix) {
    return naive_kernel<Complex>(matrix);
}

Complex permanent_ryser(const ComplexMatrix &matrix) {
    return ryser_kernel<Complex>(matrix);
}

Complex permanent_glynn(const ComplexMatrix &matrix) {
    return glynn_kernel<Complex>(matrix);
}

PermanentResult permanent(const ComplexMatrix &matrix, PermanentAlgorithm algorithm) {
    Complex value;
    switch (algorithm) {
        case PermanentAlgorithm::naive:
            value = permanent_naive(matrix);
            break;
        case PermanentAlgorithm::glynn:
            value = permanent_glynn(matrix);
            break;
        case PermanentAlgorithm::ryser:
        default:
            value = permanent_ryser(matrix);
            break;
    }
    return PermanentResult{value, algorithm, static_cast<size_t>(matrix.rows())};
}

double permanent_nonneg(const RealMatrix &matrix, PermanentAlgorithm algorithm) {
    if (matrix.size() > 0 && !(matrix.array() >= 0).all()) {
        throw DomainError("permanent_nonneg: matrix has negative or NaN entries");
    }
    double value = 0;
    switch (algorithm) {
        case PermanentAlgorithm::naive:
            value = naive_kernel<double>(matrix);
            break;
        case PermanentAlgorithm::glynn:
            value = glynn_kernel<double>(matrix);
            break;
        case PermanentAlgorithm::ryser:
        default:
            value = ryser_kernel<double>(matrix);
            break;
    }
    return std::max(value, 0.0);
}

}  // namespace bosim
