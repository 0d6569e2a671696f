/*
   Copyright 2026 The lafbf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "lafbf/random_stream.hpp"

namespace lafbf {

/// Hurst index H, strictly inside (0, 1).
class HurstIndex {
public:
    /// Throws ConfigError outside (0, 1).
    explicit HurstIndex(double value);

    double value() const noexcept { return value_; }
    double twice() const noexcept { return 2.0 * value_; }

private:
    double value_;
};

/// Cov(B(s), B(t)) = (|s|^2H + |t|^2H - |s-t|^2H) / 2, so Var B(t) = |t|^2H.
double fbm_covariance(HurstIndex h, double s, double t);

/// Autocovariance of unit-step increments B(j+1) - B(j) at lag k.
double fgn_autocovariance(HurstIndex h, std::int64_t k);

/// Samples of a fractional Brownian motion at the integers j_min..j_max,
/// pinned so that the value at 0 is exactly zero.
class FbmLine {
public:
    FbmLine(HurstIndex hurst, std::int64_t j_min, std::vector<double> values);

    HurstIndex hurst() const noexcept { return hurst_; }
    std::int64_t j_min() const noexcept { return j_min_; }
    std::int64_t j_max() const noexcept {
        return j_min_ + static_cast<std::int64_t>(values_.size()) - 1;
    }
    std::size_t size() const noexcept { return values_.size(); }

    double operator[](std::int64_t j) const {
        assert(j >= j_min() && j <= j_max());
        return values_[static_cast<std::size_t>(j - j_min_)];
    }

    /// Row storage; element 0 corresponds to j_min.
    std::span<const double> values() const noexcept { return values_; }

private:
    HurstIndex hurst_;
    std::int64_t j_min_;
    std::vector<double> values_;
};

/// Eigenvalues of the minimal power-of-two circulant embedding of a Toeplitz
/// autocovariance sequence. Negative eigenvalues within 1e-9 of the largest
/// (relative) are clamped to zero; larger ones raise NumericalError.
std::vector<double> circulant_eigenvalues(std::span<const double> autocovariance);

/// Exact sampler of FBM on an integer range through circulant embedding of
/// the increment (fractional Gaussian noise) covariance. The spectrum is
/// computed once, so one sampler can produce many independent lines.
class CirculantFbm {
public:
    CirculantFbm(HurstIndex hurst, std::int64_t j_min, std::int64_t j_max);

    /// Consumes 2 * embedding_size() normals from rng.
    FbmLine sample(RandomStream& rng) const;

    std::size_t embedding_size() const noexcept { return sqrt_eigen_.size(); }
    std::int64_t j_min() const noexcept { return j_min_; }
    std::int64_t j_max() const noexcept { return j_max_; }

private:
    HurstIndex hurst_;
    std::int64_t j_min_;
    std::int64_t j_max_;
    std::vector<double> sqrt_eigen_;  // sqrt(lambda_k / M)
};

/// Requires j_min <= 0 <= j_max and j_max - j_min >= 1 (ConfigError
/// otherwise).
FbmLine generate_fbm_line(HurstIndex h, std::int64_t j_min, std::int64_t j_max,
                          RandomStream& rng);

}  // namespace lafbf
