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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lafbf/band_plan.hpp"
#include "lafbf/fbm_line.hpp"
#include "lafbf/orientation.hpp"

namespace lafbf {

/// Inputs of one synthesis run.
struct SynthesisParams {
    HurstIndex hurst{0.2};
    double alpha = 0.1;
    double epsilon = 0.01;
    int grid_order = 255;  ///< r; the grid is (r + 1) x (r + 1), r + 1 a power of two
    std::uint64_t seed = 0;
    bool regularized = true;
    double sigma = 0.1;
    int q_max = 0;         ///< candidate bound for band selection, 0 = automatic
    unsigned threads = 0;  ///< worker threads, 0 = hardware concurrency; never affects output

    int side() const noexcept { return grid_order + 1; }
    AngularWeightParams weight() const { return {alpha, regularized, sigma}; }
    /// Throws ConfigError on any out-of-range field.
    void validate() const;
};

/// gamma(H) = pi / (H Gamma(2H) sin(pi H)).
double gamma_factor(HurstIndex h);

/// Integer range [j_min, j_max] holding every k1*q + k2*p for 0 <= k1, k2 <= r.
std::pair<std::int64_t, std::int64_t> band_line_range(const Band& band, int grid_order);

/// (cos(theta) / (r q))^H, or (1 / r)^H for the vertical band.
double band_scale(const Band& band, int grid_order, HurstIndex h);

/// Line value at the projection of pixel (k1, k2), rescaled so that it has
/// the law of B^H((k1 cos(theta) + k2 sin(theta)) / r).
double band_sample(const FbmLine& line, const Band& band, int k1, int k2, int grid_order);

/// Band plan plus one sampled FBM line per band. Independent of the
/// orientation field, so one state serves any number of syntheses.
class PreparedState {
public:
    PreparedState(SynthesisParams params, std::shared_ptr<const BandPlan> plan,
                  std::vector<FbmLine> lines);

    const SynthesisParams& params() const noexcept { return params_; }
    const BandPlan& plan() const noexcept { return *plan_; }
    std::span<const FbmLine> lines() const noexcept { return lines_; }
    std::span<const double> thetas() const noexcept { return thetas_; }
    double gamma() const noexcept { return gamma_; }

    // Hot-loop view of band i: pointer to the line sample at index 0, and
    // the projection coefficients (q = 0, p = 1 for the vertical band).
    const double* origin(std::size_t i) const noexcept { return origins_[i]; }
    int coef_k1(std::size_t i) const noexcept { return plan_->bands[i].q; }
    int coef_k2(std::size_t i) const noexcept { return plan_->bands[i].p; }
    double scale(std::size_t i) const noexcept { return scales_[i]; }

private:
    SynthesisParams params_;
    std::shared_ptr<const BandPlan> plan_;
    std::vector<FbmLine> lines_;
    std::vector<double> thetas_;
    std::vector<double> scales_;
    std::vector<const double*> origins_;
    double gamma_;
};

/// Band plan and per-band circulant spectra for fixed params; draw() samples
/// the FBM lines for a seed. Line i uses RandomStream::substream(seed, i).
class Precomputer {
public:
    explicit Precomputer(const SynthesisParams& params);

    PreparedState draw(std::uint64_t seed) const;

    const BandPlan& plan() const noexcept { return *plan_; }

private:
    SynthesisParams params_;
    std::shared_ptr<const BandPlan> plan_;
    std::vector<CirculantFbm> samplers_;
};

/// Precomputer(params).draw(params.seed).
PreparedState precompute(const SynthesisParams& params);

/// Contiguous circular run of bands with nonnegligible weight: indices
/// start, start + 1, ... (mod n), `count` of them. Sharp weights keep bands
/// with periodic distance <= alpha; regularized weights keep bands with
/// weight >= kWeightCutoff.
struct ActiveArc {
    std::size_t start = 0;
    std::size_t count = 0;
};

inline constexpr double kWeightCutoff = 1e-8;

/// Locates the band nearest alpha0 by binary search over the sorted angles
/// and widens to its active neighbours.
ActiveArc find_active_bands(std::span<const double> thetas, const AngularWeightParams& weight,
                            double alpha0);

/// Real-valued texture of size (r + 1) x (r + 1), row k1, column k2.
struct FieldGrid {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;
    SynthesisParams params;
    std::string orientation;
    std::uint64_t plan_digest = 0;

    double at(int k1, int k2) const { return values[static_cast<std::size_t>(k1) * cols + k2]; }
};

/// Stationary turning-band field with a single orientation alpha0.
FieldGrid synthesize_elementary(const SynthesisParams& params, double alpha0,
                                const PreparedState& state);

/// Locally anisotropic field: every pixel takes the turning-band value of the
/// elementary field oriented along alpha0 at that pixel.
FieldGrid synthesize_lafbf(const SynthesisParams& params, const OrientationField& field,
                           const PreparedState& state);

/// Single pixel of the field oriented along alpha0 (same arithmetic as the
/// full syntheses).
double synthesize_pixel(const PreparedState& state, double alpha0, int k1, int k2);

}  // namespace lafbf
