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

#include "lafbf/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <numbers>
#include <optional>

#include "lafbf/error.hpp"
#include "lafbf/random_stream.hpp"
#include "parallel.hpp"

namespace lafbf {

namespace {

constexpr double kPi = std::numbers::pi;

void check_state(const SynthesisParams& params, const PreparedState& state) {
    const SynthesisParams& prepared = state.params();
    if (prepared.grid_order != params.grid_order ||
        prepared.hurst.value() != params.hurst.value() || prepared.epsilon != params.epsilon) {
        throw ConfigError("prepared state was computed for different grid order, hurst or epsilon");
    }
}

// Per-band coefficient sqrt(lambda * gamma * c) * scale for the bands of an arc.
void arc_coefficients(const PreparedState& state, const AngularWeightParams& weight, double alpha0,
                      ActiveArc arc, std::vector<double>& out) {
    const auto& bands = state.plan().bands;
    const std::size_t n = bands.size();
    out.resize(arc.count);
    std::size_t i = arc.start;
    for (std::size_t t = 0; t < arc.count; ++t) {
        const double c = angular_weight(weight, alpha0, bands[i].theta);
        out[t] = std::sqrt(bands[i].lambda * state.gamma() * c) * state.scale(i);
        i = i + 1 == n ? 0 : i + 1;
    }
}

double accumulate(const PreparedState& state, ActiveArc arc, const double* coef, int k1, int k2) {
    const std::size_t n = state.plan().size();
    double sum = 0.0;
    std::size_t i = arc.start;
    for (std::size_t t = 0; t < arc.count; ++t) {
        const std::int64_t j = static_cast<std::int64_t>(k1) * state.coef_k1(i) +
                               static_cast<std::int64_t>(k2) * state.coef_k2(i);
        sum += coef[t] * state.origin(i)[j];
        i = i + 1 == n ? 0 : i + 1;
    }
    return sum;
}

FieldGrid empty_grid(const SynthesisParams& params, const PreparedState& state, std::string orientation) {
    FieldGrid grid;
    grid.rows = params.side();
    grid.cols = params.side();
    grid.values.assign(static_cast<std::size_t>(grid.rows) * grid.cols, 0.0);
    grid.params = params;
    grid.orientation = std::move(orientation);
    grid.plan_digest = state.plan().digest();
    return grid;
}

}  // namespace

void SynthesisParams::validate() const {
    if (grid_order < 1 || !std::has_single_bit(static_cast<unsigned>(grid_order) + 1u)) {
        throw ConfigError("grid size r + 1 must be a power of two (r = 2^k - 1), got r = " +
                          std::to_string(grid_order));
    }
    if (!(epsilon > 0.0 && std::isfinite(epsilon))) {
        throw ConfigError("epsilon must be positive, got " + std::to_string(epsilon));
    }
    if (q_max < 0) throw ConfigError("q_max must be >= 0");
    weight().validate();
}

double gamma_factor(HurstIndex h) {
    const double hv = h.value();
    return kPi / (hv * std::tgamma(2.0 * hv) * std::sin(hv * kPi));
}

std::pair<std::int64_t, std::int64_t> band_line_range(const Band& band, int grid_order) {
    const std::int64_t r = grid_order;
    if (band.vertical()) return {0, r};
    return {r * std::min(band.p, 0), r * (band.q + std::max(band.p, 0))};
}

double band_scale(const Band& band, int grid_order, HurstIndex h) {
    const double r = grid_order;
    if (band.vertical()) return std::pow(1.0 / r, h.value());
    return std::pow(std::cos(band.theta) / (r * band.q), h.value());
}

double band_sample(const FbmLine& line, const Band& band, int k1, int k2, int grid_order) {
    assert(k1 >= 0 && k1 <= grid_order && k2 >= 0 && k2 <= grid_order);
    const std::int64_t j = band.vertical()
                               ? k2
                               : static_cast<std::int64_t>(k1) * band.q + static_cast<std::int64_t>(k2) * band.p;
    return band_scale(band, grid_order, line.hurst()) * line[j];
}

PreparedState::PreparedState(SynthesisParams params, std::shared_ptr<const BandPlan> plan,
                             std::vector<FbmLine> lines)
    : params_(std::move(params)), plan_(std::move(plan)), lines_(std::move(lines)),
      gamma_(gamma_factor(params_.hurst)) {
    if (lines_.size() != plan_->size()) throw ConfigError("one fbm line per band is required");
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        const Band& b = plan_->bands[i];
        const auto [lo, hi] = band_line_range(b, params_.grid_order);
        if (lines_[i].j_min() > lo || lines_[i].j_max() < hi) {
            throw ConfigError("fbm line too short for its band");
        }
        thetas_.push_back(b.theta);
        scales_.push_back(band_scale(b, params_.grid_order, params_.hurst));
        origins_.push_back(lines_[i].values().data() - lines_[i].j_min());
    }
}

Precomputer::Precomputer(const SynthesisParams& params) : params_(params) {
    params_.validate();
    plan_ = std::make_shared<const BandPlan>(plan_bands(params.epsilon, params.grid_order, params.q_max));
    samplers_.reserve(plan_->size());
    for (const Band& b : plan_->bands) {
        const auto [lo, hi] = band_line_range(b, params.grid_order);
        samplers_.emplace_back(params.hurst, lo, hi);
    }
}

PreparedState Precomputer::draw(std::uint64_t seed) const {
    std::vector<std::optional<FbmLine>> slots(samplers_.size());
    parallel_for(samplers_.size(), params_.threads, [&](std::size_t i) {
        RandomStream rng = RandomStream::substream(seed, i);
        slots[i].emplace(samplers_[i].sample(rng));
    });
    std::vector<FbmLine> lines;
    lines.reserve(slots.size());
    for (auto& s : slots) lines.push_back(std::move(*s));
    SynthesisParams p = params_;
    p.seed = seed;
    return PreparedState(std::move(p), plan_, std::move(lines));
}

PreparedState precompute(const SynthesisParams& params) {
    return Precomputer(params).draw(params.seed);
}

ActiveArc find_active_bands(std::span<const double> thetas, const AngularWeightParams& weight,
                            double alpha0) {
    const std::size_t n = thetas.size();
    if (n == 0) return {};
    alpha0 = reduce_angle(alpha0);
    auto active = [&](std::size_t i) {
        return angular_weight(weight, alpha0, thetas[i]) >= kWeightCutoff;
    };

    // Nearest band: the first angle >= alpha0 or its circular predecessor.
    const auto it = std::lower_bound(thetas.begin(), thetas.end(), alpha0);
    const std::size_t above = static_cast<std::size_t>(it - thetas.begin()) % n;
    const std::size_t below = (above + n - 1) % n;
    const std::size_t seed = periodic_distance(thetas[below], alpha0) <= periodic_distance(thetas[above], alpha0)
                                 ? below
                                 : above;
    if (!active(seed)) return {seed, 0};

    std::size_t right = 0;
    while (right + 1 < n && active((seed + right + 1) % n)) ++right;
    std::size_t left = 0;
    while (left + right + 1 < n && active((seed + n - left - 1) % n)) ++left;
    return {(seed + n - left) % n, left + right + 1};
}

FieldGrid synthesize_elementary(const SynthesisParams& params, double alpha0,
                                const PreparedState& state) {
    params.validate();
    check_state(params, state);
    alpha0 = reduce_angle(alpha0);
    FieldGrid grid = empty_grid(params, state, OrientationField::constant(alpha0).describe());

    const AngularWeightParams weight = params.weight();
    const ActiveArc arc = find_active_bands(state.thetas(), weight, alpha0);
    std::vector<double> coef;
    arc_coefficients(state, weight, alpha0, arc, coef);

    const int side = params.side();
    parallel_for(static_cast<std::size_t>(side), params.threads, [&](std::size_t row) {
        const int k1 = static_cast<int>(row);
        double* out = grid.values.data() + row * side;
        for (int k2 = 0; k2 < side; ++k2) out[k2] = accumulate(state, arc, coef.data(), k1, k2);
    });
    return grid;
}

FieldGrid synthesize_lafbf(const SynthesisParams& params, const OrientationField& field,
                           const PreparedState& state) {
    params.validate();
    check_state(params, state);
    FieldGrid grid = empty_grid(params, state, field.describe());

    const AngularWeightParams weight = params.weight();
    const std::vector<double> alpha0 = field.eval_grid(params.grid_order);
    const int side = params.side();
    parallel_for(static_cast<std::size_t>(side), params.threads, [&](std::size_t row) {
        const int k1 = static_cast<int>(row);
        double* out = grid.values.data() + row * side;
        std::vector<double> coef;
        for (int k2 = 0; k2 < side; ++k2) {
            const double a = alpha0[row * side + k2];
            const ActiveArc arc = find_active_bands(state.thetas(), weight, a);
            arc_coefficients(state, weight, a, arc, coef);
            out[k2] = accumulate(state, arc, coef.data(), k1, k2);
        }
    });
    return grid;
}

double synthesize_pixel(const PreparedState& state, double alpha0, int k1, int k2) {
    const SynthesisParams& params = state.params();
    if (k1 < 0 || k2 < 0 || k1 > params.grid_order || k2 > params.grid_order) {
        throw ConfigError("pixel outside the grid");
    }
    alpha0 = reduce_angle(alpha0);
    const AngularWeightParams weight = params.weight();
    const ActiveArc arc = find_active_bands(state.thetas(), weight, alpha0);
    std::vector<double> coef;
    arc_coefficients(state, weight, alpha0, arc, coef);
    return accumulate(state, arc, coef.data(), k1, k2);
}

}  // namespace lafbf
