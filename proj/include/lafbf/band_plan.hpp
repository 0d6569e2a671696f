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

#include <cstdint>
#include <span>
#include <vector>

namespace lafbf {

/// One turning-band direction tan(theta) = p / q with q >= 1 and
/// gcd(|p|, q) = 1, or the vertical direction (p, q) = (1, 0).
struct Band {
    int p = 0;
    int q = 1;
    double theta = 0.0;   ///< atan2(p, q), in (-pi/2, pi/2]
    double lambda = 0.0;  ///< angular width, set by select_bands
    std::int64_t cost = 0;

    bool vertical() const noexcept { return q == 0; }
    int l1() const noexcept { return (p < 0 ? -p : p) + q; }
};

/// FBM samples needed to cover every projection k1*q + k2*p on a grid of
/// order r: r * (|p| + |q|) + 1.
std::int64_t band_cost(int p, int q, int grid_order);

struct BandPlan {
    std::vector<Band> bands;  ///< increasing theta
    double epsilon = 0.0;
    int grid_order = 0;
    std::int64_t total_cost = 0;

    std::size_t size() const noexcept { return bands.size(); }
    double max_width() const noexcept;
    std::vector<double> thetas() const;
    /// Stable 64-bit FNV-1a digest of (p, q) pairs, epsilon and grid order.
    std::uint64_t digest() const noexcept;
};

/// All coprime (p, q) with |p| <= q_max and 1 <= q <= q_max, plus (1, 0),
/// sorted by angle. Widths and costs are left at zero.
std::vector<Band> enumerate_candidates(int q_max);

/// Largest angular gap between consecutive sorted bands, counting the
/// pi-periodic wrap gap from the last band back to the first.
double max_circular_gap(std::span<const Band> sorted);

/// Minimum-cost subset whose circular gaps are all <= epsilon, found by
/// dynamic programming over the sorted candidates. Ties at equal total cost
/// go to the cheaper individual band at each decision, then to the lower
/// candidate index. Throws InfeasibleError when the candidates themselves
/// leave a gap wider than epsilon.
BandPlan select_bands(std::span<const Band> candidates, double epsilon, int grid_order);

/// Smallest q_max in the doubling sequence ceil(2/epsilon), 2*ceil(2/epsilon),
/// ... whose candidate set is epsilon-feasible.
int default_q_max(double epsilon);

/// enumerate_candidates + select_bands; q_max <= 0 selects default_q_max.
BandPlan plan_bands(double epsilon, int grid_order, int q_max = 0);

}  // namespace lafbf
