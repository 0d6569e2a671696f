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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lafbf/band_plan.hpp"
#include "lafbf/fbm_line.hpp"
#include "lafbf/orientation.hpp"
#include "lafbf/synthesis.hpp"

namespace lafbf {

using Lag = std::array<int, 2>;  ///< pixel offset (d_k1, d_k2)

struct VariogramEstimate {
    Lag lag{};
    double value = 0.0;
    double std_error = 0.0;  ///< across realizations
    std::int64_t n_pairs = 0;
};

/// (1/2) gamma(H) \int_{-pi/2}^{pi/2} c(alpha0, theta) |x . u(theta)|^{2H} dtheta,
/// by tanh-sinh quadrature on pieces split at the sector edges, the kink of
/// the periodic distance and the zero of x . u(theta). Relative error is
/// well below 1e-9.
double theoretical_variogram(HurstIndex h, double alpha0, const AngularWeightParams& weight,
                             std::array<double, 2> x);

/// Variogram of the discrete turning-band field,
/// (1/2) gamma(H) sum_i lambda_i c(alpha0, theta_i) |x . u(theta_i)|^{2H}.
double turning_band_variogram(const BandPlan& plan, HurstIndex h, double alpha0,
                              const AngularWeightParams& weight, std::array<double, 2> x);

/// Stationary estimate: (1/2) mean of (X(y + lag) - X(y))^2 over all pixel
/// pairs inside each grid, then averaged over grids. Grids must share their
/// size. Throws ConfigError for lags that leave no pair.
std::vector<VariogramEstimate> empirical_variogram(std::span<const FieldGrid> grids,
                                                   std::span<const Lag> lags);

/// Same estimator at a single base pixel x0 (one pair per grid).
std::vector<VariogramEstimate> local_variogram(std::span<const FieldGrid> grids, Lag x0,
                                               std::span<const Lag> lags);

/// Monte-Carlo local variogram of the locally anisotropic field at x0, over
/// n_seeds syntheses with seeds params.seed, params.seed + 1, ... Only the
/// pixels involved are evaluated.
std::vector<VariogramEstimate> local_variogram_lafbf(const SynthesisParams& params,
                                                     const OrientationField& field, Lag x0,
                                                     std::span<const Lag> lags, int n_seeds);

/// Same estimate at several base pixels, sharing each synthesis. Entry b
/// holds the estimates at bases[b].
std::vector<std::vector<VariogramEstimate>> local_variogram_lafbf(const SynthesisParams& params,
                                                                  const OrientationField& field,
                                                                  std::span<const Lag> bases,
                                                                  std::span<const Lag> lags, int n_seeds);

/// Direction, in (-pi/2, pi/2], along which the normalized variogram
/// v(x) / |x|^{2H} is smallest, from a least-squares fit of
/// a + b cos(2 phi) + c sin(2 phi) over the lag directions.
double minimal_growth_direction(std::span<const Lag> lags, std::span<const double> values,
                                HurstIndex h);

/// Coarse H estimate from second-order increments along rows at dilations
/// 1, 2, 4, 8: log-log slope of their mean square, halved. Throws
/// NumericalError for constant grids.
double estimate_hurst(const FieldGrid& grid);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteOptions {
    int seeds = 50;          ///< realizations for Monte-Carlo checks
    int fbm_replicates = 4000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

/// Reduced-size statistical self-test of the whole pipeline.
std::vector<CheckResult> run_validation_suite(const SuiteOptions& options);

}  // namespace lafbf
