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

#include "lafbf/band_plan.hpp"

#include <algorithm>
#include <cstring>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

#include "lafbf/error.hpp"

namespace lafbf {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ConfigError("epsilon must be positive and finite");
    }
}
}  // namespace

std::int64_t band_cost(int p, int q, int grid_order) {
    return static_cast<std::int64_t>(grid_order) * (std::abs(p) + std::abs(q)) + 1;
}

double BandPlan::max_width() const noexcept {
    double w = 0.0;
    for (const Band& b : bands) w = std::max(w, b.lambda);
    return w;
}

std::vector<double> BandPlan::thetas() const {
    std::vector<double> out;
    out.reserve(bands.size());
    for (const Band& b : bands) out.push_back(b.theta);
    return out;
}

std::uint64_t BandPlan::digest() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffu;
            h *= 0x100000001b3ull;
        }
    };
    for (const Band& b : bands) {
        mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(b.p)));
        mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(b.q)));
    }
    std::uint64_t eps_bits = 0;
    static_assert(sizeof(eps_bits) == sizeof(epsilon));
    std::memcpy(&eps_bits, &epsilon, sizeof(eps_bits));
    mix(eps_bits);
    mix(static_cast<std::uint64_t>(grid_order));
    return h;
}

std::vector<Band> enumerate_candidates(int q_max) {
    if (q_max < 1) throw ConfigError("q_max must be at least 1");
    std::vector<Band> out;
    out.push_back(Band{1, 0, std::atan2(1.0, 0.0), 0.0, 0});
    for (int q = 1; q <= q_max; ++q) {
        for (int p = -q_max; p <= q_max; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            out.push_back(Band{p, q, std::atan2(static_cast<double>(p), static_cast<double>(q)), 0.0, 0});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Band& a, const Band& b) { return a.theta < b.theta; });
    return out;
}

double max_circular_gap(std::span<const Band> sorted) {
    if (sorted.empty()) return kPi;
    double gap = sorted.front().theta + kPi - sorted.back().theta;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        gap = std::max(gap, sorted[i].theta - sorted[i - 1].theta);
    }
    return gap;
}

BandPlan select_bands(std::span<const Band> candidates, double epsilon, int grid_order) {
    check_epsilon(epsilon);
    if (grid_order < 1) throw ConfigError("grid order must be at least 1");
    if (candidates.empty()) throw InfeasibleError("no candidate bands", kPi);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (!(candidates[i].theta > candidates[i - 1].theta)) {
            throw ConfigError("candidate bands must be sorted by strictly increasing angle");
        }
    }
    const double widest = max_circular_gap(candidates);
    if (widest > epsilon) {
        std::ostringstream msg;
        msg << "no band plan with gaps <= " << epsilon << ": candidate gap of " << widest
            << " rad cannot be covered; raise q_max";
        throw InfeasibleError(msg.str(), widest);
    }

    const std::size_t n = candidates.size();
    std::vector<std::int64_t> cost(n);
    for (std::size_t i = 0; i < n; ++i) {
        cost[i] = band_cost(candidates[i].p, candidates[i].q, grid_order);
    }
    // Ordering of DP states: cheaper total, then cheaper band, then lower index.
    auto key = [&](const std::vector<std::int64_t>& dp, std::size_t j) {
        return std::make_tuple(dp[j], cost[j], j);
    };

    std::vector<std::int64_t> dp(n);
    std::vector<std::size_t> pred(n);
    std::vector<std::size_t> best_path;
    std::int64_t best_cost = kUnreachable;
    std::int64_t best_first_cost = kUnreachable;

    // The first selected band must sit within epsilon of -pi/2, otherwise the
    // wrap gap to the last band (at most pi/2) exceeds epsilon.
    for (std::size_t first = 0; first < n && candidates[first].theta <= -kPi / 2 + epsilon;
         ++first) {
        std::fill(dp.begin(), dp.end(), kUnreachable);
        dp[first] = cost[first];
        std::deque<std::size_t> window;  // increasing key order
        std::size_t next_push = first;
        for (std::size_t i = first + 1; i < n; ++i) {
            for (; next_push < i; ++next_push) {
                if (dp[next_push] == kUnreachable) continue;
                while (!window.empty() && key(dp, window.back()) >= key(dp, next_push)) {
                    window.pop_back();
                }
                window.push_back(next_push);
            }
            while (!window.empty() &&
                   candidates[i].theta - candidates[window.front()].theta > epsilon) {
                window.pop_front();
            }
            if (window.empty()) continue;
            dp[i] = dp[window.front()] + cost[i];
            pred[i] = window.front();
        }

        std::size_t last = n;
        for (std::size_t l = n; l-- > first;) {
            if (candidates[first].theta + kPi - candidates[l].theta > epsilon) break;
            if (dp[l] == kUnreachable) continue;
            if (last == n || key(dp, l) < key(dp, last)) last = l;
        }
        if (last == n) continue;
        if (std::tie(dp[last], cost[first]) >= std::tie(best_cost, best_first_cost)) continue;

        best_cost = dp[last];
        best_first_cost = cost[first];
        best_path.clear();
        for (std::size_t j = last;; j = pred[j]) {
            best_path.push_back(j);
            if (j == first) break;
        }
        std::reverse(best_path.begin(), best_path.end());
    }

    if (best_path.empty()) {
        throw InfeasibleError("band selection found no feasible plan", widest);
    }

    BandPlan plan;
    plan.epsilon = epsilon;
    plan.grid_order = grid_order;
    plan.total_cost = best_cost;
    for (std::size_t idx : best_path) {
        Band b = candidates[idx];
        b.cost = cost[idx];
        plan.bands.push_back(b);
    }
    const std::size_t m = plan.bands.size();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        plan.bands[i].lambda = plan.bands[i + 1].theta - plan.bands[i].theta;
    }
    plan.bands[m - 1].lambda = plan.bands[0].theta + kPi - plan.bands[m - 1].theta;
    return plan;
}

int default_q_max(double epsilon) {
    check_epsilon(epsilon);
    const double start = std::ceil(2.0 / epsilon);
    if (start > 1e5) throw ConfigError("epsilon too small for band enumeration");
    for (int q = std::max(1, static_cast<int>(start)); q <= 1 << 20; q *= 2) {
        if (max_circular_gap(enumerate_candidates(q)) <= epsilon) return q;
    }
    throw InfeasibleError("no q_max makes the candidate set feasible", kPi);
}

BandPlan plan_bands(double epsilon, int grid_order, int q_max) {
    if (q_max <= 0) q_max = default_q_max(epsilon);
    const auto candidates = enumerate_candidates(q_max);
    return select_bands(candidates, epsilon, grid_order);
}

}  // namespace lafbf
