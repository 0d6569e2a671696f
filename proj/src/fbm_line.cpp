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

#include "lafbf/fbm_line.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <string>

#include "lafbf/error.hpp"
#include "lafbf/fft.hpp"

namespace lafbf {

namespace {
constexpr double kEigenTolerance = 1e-9;

double abs_pow(double x, double e) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), e); }
}  // namespace

HurstIndex::HurstIndex(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
        throw ConfigError("hurst index must lie in (0, 1), got " + std::to_string(value));
    }
}

double fbm_covariance(HurstIndex h, double s, double t) {
    const double e = h.twice();
    return 0.5 * (abs_pow(s, e) + abs_pow(t, e) - abs_pow(s - t, e));
}

double fgn_autocovariance(HurstIndex h, std::int64_t k) {
    const double e = h.twice();
    const auto kd = static_cast<double>(k);
    return 0.5 * (abs_pow(kd + 1.0, e) - 2.0 * abs_pow(kd, e) + abs_pow(kd - 1.0, e));
}

FbmLine::FbmLine(HurstIndex hurst, std::int64_t j_min, std::vector<double> values)
    : hurst_(hurst), j_min_(j_min), values_(std::move(values)) {
    if (j_min_ > 0 || j_max() < 0) {
        throw ConfigError("fbm line range must contain the origin");
    }
}

std::vector<double> circulant_eigenvalues(std::span<const double> autocovariance) {
    const std::size_t n = autocovariance.size();
    if (n == 0) throw ConfigError("empty autocovariance");
    const std::size_t m = std::bit_ceil(2 * n);

    // First row of the circulant: c_k = r(min(k, m - k)).
    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t lag = std::min(k, m - k);
        row[k] = lag < n ? autocovariance[lag] : 0.0;
    }
    fft_forward(row);

    std::vector<double> eigen(m);
    double largest = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        eigen[k] = row[k].real();
        largest = std::max(largest, eigen[k]);
    }
    const double floor = -kEigenTolerance * largest;
    for (std::size_t k = 0; k < m; ++k) {
        if (eigen[k] < floor) {
            throw NumericalError("circulant embedding is not nonnegative definite: eigenvalue " +
                                 std::to_string(eigen[k]) + " at index " + std::to_string(k));
        }
        eigen[k] = std::max(eigen[k], 0.0);
    }
    return eigen;
}

CirculantFbm::CirculantFbm(HurstIndex hurst, std::int64_t j_min, std::int64_t j_max)
    : hurst_(hurst), j_min_(j_min), j_max_(j_max) {
    if (j_min > 0 || j_max < 0 || j_max - j_min < 1) {
        throw ConfigError("fbm line needs j_min <= 0 <= j_max and at least two samples");
    }
    const auto increments = static_cast<std::size_t>(j_max - j_min);
    std::vector<double> autocov(increments);
    for (std::size_t k = 0; k < increments; ++k) {
        autocov[k] = fgn_autocovariance(hurst, static_cast<std::int64_t>(k));
    }
    sqrt_eigen_ = circulant_eigenvalues(autocov);
    const auto m = static_cast<double>(sqrt_eigen_.size());
    for (double& v : sqrt_eigen_) v = std::sqrt(v / m);
}

FbmLine CirculantFbm::sample(RandomStream& rng) const {
    const std::size_t m = sqrt_eigen_.size();
    std::vector<std::complex<double>> spectrum(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double re = rng.normal();
        const double im = rng.normal();
        spectrum[k] = {sqrt_eigen_[k] * re, sqrt_eigen_[k] * im};
    }
    fft_forward(spectrum);

    // The real part is a stationary sequence with the fGn autocovariance.
    // Increment m joins j_min + m and j_min + m + 1.
    const auto count = static_cast<std::size_t>(j_max_ - j_min_) + 1;
    const auto origin = static_cast<std::size_t>(-j_min_);
    std::vector<double> values(count, 0.0);
    for (std::size_t j = origin + 1; j < count; ++j) {
        values[j] = values[j - 1] + spectrum[j - 1].real();
    }
    for (std::size_t j = origin; j-- > 0;) {
        values[j] = values[j + 1] - spectrum[j].real();
    }
    return FbmLine(hurst_, j_min_, std::move(values));
}

FbmLine generate_fbm_line(HurstIndex h, std::int64_t j_min, std::int64_t j_max,
                          RandomStream& rng) {
    return CirculantFbm(h, j_min, j_max).sample(rng);
}

}  // namespace lafbf
