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

#include "lafbf/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "lafbf/error.hpp"
#include "lafbf/random_stream.hpp"

namespace lafbf {

namespace {

constexpr double kPi = std::numbers::pi;

double abs_pow(double x, double e) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), e); }

double projection(std::array<double, 2> x, double theta) {
    return x[0] * std::cos(theta) + x[1] * std::sin(theta);
}

struct Moments {
    double mean = 0.0;
    double std_error = 0.0;
};

Moments moments(std::span<const double> samples) {
    Moments m;
    const auto n = static_cast<double>(samples.size());
    if (samples.empty()) return m;
    for (double s : samples) m.mean += s;
    m.mean /= n;
    if (samples.size() < 2) return m;
    double ss = 0.0;
    for (double s : samples) ss += (s - m.mean) * (s - m.mean);
    m.std_error = std::sqrt(ss / (n - 1.0) / n);
    return m;
}

// Number of pixel pairs (y, y + lag) inside a rows x cols grid.
std::int64_t pair_count(int rows, int cols, Lag lag) {
    return static_cast<std::int64_t>(std::max(0, rows - std::abs(lag[0]))) *
           std::max(0, cols - std::abs(lag[1]));
}

}  // namespace

double theoretical_variogram(HurstIndex h, double alpha0, const AngularWeightParams& weight,
                             std::array<double, 2> x) {
    weight.validate();
    if (x[0] == 0.0 && x[1] == 0.0) return 0.0;
    alpha0 = reduce_angle(alpha0);
    const double e = h.twice();

    std::vector<double> cuts{-kPi / 2, kPi / 2};
    auto add_cut = [&cuts](double angle) {
        const double a = reduce_angle(angle);
        if (a > -kPi / 2 && a < kPi / 2) cuts.push_back(a);
    };
    add_cut(std::atan2(x[1], x[0]) + kPi / 2);  // zero of x . u(theta)
    add_cut(alpha0 + kPi / 2);                   // kink of the periodic distance
    if (!weight.regularized && weight.alpha < kPi / 2) {
        add_cut(alpha0 - weight.alpha);
        add_cut(alpha0 + weight.alpha);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    boost::math::quadrature::tanh_sinh<double> integrator;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k];
        const double b = cuts[k + 1];
        if (!(b > a)) continue;
        if (!weight.regularized) {
            // The indicator is constant on each piece.
            if (angular_weight(weight, alpha0, 0.5 * (a + b)) == 0.0) continue;
            total += integrator.integrate(
                [&](double t) { return abs_pow(projection(x, t), e); }, a, b, 1e-13);
        } else {
            total += integrator.integrate(
                [&](double t) { return angular_weight(weight, alpha0, t) * abs_pow(projection(x, t), e); },
                a, b, 1e-13);
        }
    }
    return 0.5 * gamma_factor(h) * total;
}

double turning_band_variogram(const BandPlan& plan, HurstIndex h, double alpha0,
                              const AngularWeightParams& weight, std::array<double, 2> x) {
    const double e = h.twice();
    double sum = 0.0;
    for (const Band& b : plan.bands) {
        sum += b.lambda * angular_weight(weight, alpha0, b.theta) * abs_pow(projection(x, b.theta), e);
    }
    return 0.5 * gamma_factor(h) * sum;
}

std::vector<VariogramEstimate> empirical_variogram(std::span<const FieldGrid> grids,
                                                   std::span<const Lag> lags) {
    if (grids.empty()) throw ConfigError("empirical variogram needs at least one grid");
    const int rows = grids.front().rows;
    const int cols = grids.front().cols;
    for (const FieldGrid& g : grids) {
        if (g.rows != rows || g.cols != cols) throw ConfigError("grids differ in size");
    }

    std::vector<VariogramEstimate> out;
    std::vector<double> per_grid(grids.size());
    for (const Lag& lag : lags) {
        const std::int64_t pairs = pair_count(rows, cols, lag);
        if (pairs == 0) {
            throw ConfigError("lag (" + std::to_string(lag[0]) + ", " + std::to_string(lag[1]) +
                              ") exceeds the grid size");
        }
        const int k1_lo = std::max(0, -lag[0]);
        const int k1_hi = std::min(rows, rows - lag[0]);
        const int k2_lo = std::max(0, -lag[1]);
        const int k2_hi = std::min(cols, cols - lag[1]);
        for (std::size_t g = 0; g < grids.size(); ++g) {
            const FieldGrid& grid = grids[g];
            double acc = 0.0;
            for (int k1 = k1_lo; k1 < k1_hi; ++k1) {
                for (int k2 = k2_lo; k2 < k2_hi; ++k2) {
                    const double d = grid.at(k1 + lag[0], k2 + lag[1]) - grid.at(k1, k2);
                    acc += d * d;
                }
            }
            per_grid[g] = 0.5 * acc / static_cast<double>(pairs);
        }
        const Moments m = moments(per_grid);
        out.push_back({lag, m.mean, m.std_error, pairs * static_cast<std::int64_t>(grids.size())});
    }
    return out;
}

std::vector<VariogramEstimate> local_variogram(std::span<const FieldGrid> grids, Lag x0,
                                               std::span<const Lag> lags) {
    if (grids.empty()) throw ConfigError("local variogram needs at least one grid");
    std::vector<VariogramEstimate> out;
    std::vector<double> samples(grids.size());
    for (const Lag& lag : lags) {
        const int k1 = x0[0] + lag[0];
        const int k2 = x0[1] + lag[1];
        for (std::size_t g = 0; g < grids.size(); ++g) {
            const FieldGrid& grid = grids[g];
            if (x0[0] < 0 || x0[1] < 0 || x0[0] >= grid.rows || x0[1] >= grid.cols || k1 < 0 ||
                k2 < 0 || k1 >= grid.rows || k2 >= grid.cols) {
                throw ConfigError("lag leaves the grid from the base pixel");
            }
            const double d = grid.at(k1, k2) - grid.at(x0[0], x0[1]);
            samples[g] = 0.5 * d * d;
        }
        const Moments m = moments(samples);
        out.push_back({lag, m.mean, m.std_error, static_cast<std::int64_t>(grids.size())});
    }
    return out;
}

std::vector<std::vector<VariogramEstimate>> local_variogram_lafbf(const SynthesisParams& params,
                                                                  const OrientationField& field,
                                                                  std::span<const Lag> bases,
                                                                  std::span<const Lag> lags, int n_seeds) {
    if (n_seeds < 1) throw ConfigError("need at least one seed");
    const int side = params.side();
    auto inside = [side](int k1, int k2) { return k1 >= 0 && k2 >= 0 && k1 < side && k2 < side; };
    for (const Lag& x0 : bases) {
        if (!inside(x0[0], x0[1])) throw ConfigError("base pixel outside the grid");
        for (const Lag& lag : lags) {
            if (!inside(x0[0] + lag[0], x0[1] + lag[1])) {
                throw ConfigError("lag leaves the grid from the base pixel");
            }
        }
    }

    const Precomputer pre(params);
    const std::vector<double> alpha0 = field.eval_grid(params.grid_order);
    auto angle_at = [&](int k1, int k2) { return alpha0[static_cast<std::size_t>(k1) * side + k2]; };

    const std::size_t nl = lags.size();
    std::vector<std::vector<double>> samples(bases.size() * nl, std::vector<double>(n_seeds));
    for (int s = 0; s < n_seeds; ++s) {
        const PreparedState state = pre.draw(params.seed + static_cast<std::uint64_t>(s));
        for (std::size_t b = 0; b < bases.size(); ++b) {
            const Lag& x0 = bases[b];
            const double base = synthesize_pixel(state, angle_at(x0[0], x0[1]), x0[0], x0[1]);
            for (std::size_t l = 0; l < nl; ++l) {
                const int k1 = x0[0] + lags[l][0];
                const int k2 = x0[1] + lags[l][1];
                const double d = synthesize_pixel(state, angle_at(k1, k2), k1, k2) - base;
                samples[b * nl + l][static_cast<std::size_t>(s)] = 0.5 * d * d;
            }
        }
    }

    std::vector<std::vector<VariogramEstimate>> out(bases.size());
    for (std::size_t b = 0; b < bases.size(); ++b) {
        for (std::size_t l = 0; l < nl; ++l) {
            const Moments m = moments(samples[b * nl + l]);
            out[b].push_back({lags[l], m.mean, m.std_error, n_seeds});
        }
    }
    return out;
}

std::vector<VariogramEstimate> local_variogram_lafbf(const SynthesisParams& params,
                                                     const OrientationField& field, Lag x0,
                                                     std::span<const Lag> lags, int n_seeds) {
    const Lag bases[] = {x0};
    return std::move(local_variogram_lafbf(params, field, bases, lags, n_seeds).front());
}

double minimal_growth_direction(std::span<const Lag> lags, std::span<const double> values,
                                HurstIndex h) {
    if (lags.size() != values.size() || lags.size() < 3) {
        throw ConfigError("need at least three lags with one value each");
    }
    // Normal equations for g = a + b cos(2 phi) + c sin(2 phi).
    double m[3][3] = {};
    double rhs[3] = {};
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const double lx = lags[i][0];
        const double ly = lags[i][1];
        const double len = std::hypot(lx, ly);
        if (len == 0.0) throw ConfigError("zero lag has no direction");
        const double phi = std::atan2(ly, lx);
        const double basis[3] = {1.0, std::cos(2.0 * phi), std::sin(2.0 * phi)};
        const double g = values[i] / std::pow(len, h.twice());
        for (int r = 0; r < 3; ++r) {
            rhs[r] += basis[r] * g;
            for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
        }
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-12) throw NumericalError("lag directions do not determine an orientation");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    double coef[3];
    for (int r = 2; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < 3; ++c) s -= m[r][c] * coef[c];
        coef[r] = s / m[r][r];
    }
    // b cos(2 phi) + c sin(2 phi) peaks at phi = atan2(c, b) / 2.
    return reduce_angle(0.5 * std::atan2(coef[2], coef[1]) + kPi / 2);
}

double estimate_hurst(const FieldGrid& grid) {
    if (grid.rows < 32 || grid.cols < 32) throw ConfigError("hurst estimation needs a grid of at least 32x32");
    constexpr int kDilations[] = {1, 2, 4, 8};
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int a : kDilations) {
        double acc = 0.0;
        std::int64_t count = 0;
        for (int k1 = 0; k1 < grid.rows; ++k1) {
            for (int k2 = 0; k2 + 2 * a < grid.cols; ++k2) {
                const double d = grid.at(k1, k2 + 2 * a) - 2.0 * grid.at(k1, k2 + a) + grid.at(k1, k2);
                acc += d * d;
                ++count;
            }
        }
        const double v = acc / static_cast<double>(count);
        if (!(v > 0.0)) throw NumericalError("hurst estimator undefined: grid has no second-order variation");
        const double lx = std::log(static_cast<double>(a));
        const double ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    constexpr double n = std::size(kDilations);
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return 0.5 * slope;
}

namespace {

std::string format_detail(const char* fmt_name, double value, double limit) {
    std::ostringstream out;
    out.precision(4);
    out << fmt_name << " = " << value << " (limit " << limit << ")";
    return out.str();
}

CheckResult check_fbm(const SuiteOptions& opt) {
    constexpr int kLength = 32;
    double worst = 0.0;
    for (double hv : {0.2, 0.5, 0.8}) {
        const HurstIndex h(hv);
        const CirculantFbm gen(h, 0, kLength - 1);
        std::vector<double> sum(kLength * kLength, 0.0), sum2(kLength * kLength, 0.0);
        RandomStream rng = RandomStream::substream(opt.seed, static_cast<std::uint64_t>(hv * 1000));
        for (int rep = 0; rep < opt.fbm_replicates; ++rep) {
            const FbmLine line = gen.sample(rng);
            for (int s = 1; s < kLength; ++s) {
                for (int t = s; t < kLength; ++t) {
                    const double prod = line[s] * line[t];
                    sum[s * kLength + t] += prod;
                    sum2[s * kLength + t] += prod * prod;
                }
            }
        }
        const double n = opt.fbm_replicates;
        for (int s = 1; s < kLength; ++s) {
            for (int t = s; t < kLength; ++t) {
                const double mean = sum[s * kLength + t] / n;
                const double var = (sum2[s * kLength + t] / n - mean * mean) * n / (n - 1.0);
                const double z = (mean - fbm_covariance(h, s, t)) / std::sqrt(var / n);
                worst = std::max(worst, std::abs(z));
            }
        }
    }
    return {"fbm_covariance", worst <= 4.5, format_detail("max |z|", worst, 4.5)};
}

CheckResult check_band_plans() {
    double worst_ratio = 0.0;
    double worst_sum = 0.0;
    for (double eps : {0.1, 0.01}) {
        const BandPlan plan = plan_bands(eps, 255);
        double total = 0.0;
        for (const Band& b : plan.bands) total += b.lambda;
        worst_ratio = std::max(worst_ratio, plan.max_width() / eps);
        worst_sum = std::max(worst_sum, std::abs(total - kPi));
    }
    return {"band_plan", worst_ratio <= 1.0 && worst_sum <= 1e-9,
            format_detail("max width / epsilon", worst_ratio, 1.0)};
}

CheckResult check_riemann(const SuiteOptions& opt) {
    const BandPlan plan = plan_bands(0.01, 255);
    RandomStream rng(opt.seed ^ 0x5eedull);
    double worst = 0.0;
    for (double hv : {0.2, 0.5}) {
        const HurstIndex h(hv);
        for (const AngularWeightParams w : {AngularWeightParams{kPi / 2, false, 0.0},
                                            AngularWeightParams{0.1, true, 0.1}}) {
            for (int i = 0; i < 20; ++i) {
                const std::array<double, 2> x{rng.uniform(), rng.uniform()};
                const double a0 = kPi * (rng.uniform() - 0.5);
                const double exact = theoretical_variogram(h, a0, w, x);
                const double discrete = turning_band_variogram(plan, h, a0, w, x);
                worst = std::max(worst, std::abs(discrete - exact) / exact);
            }
        }
    }
    return {"riemann_convergence", worst <= 0.01, format_detail("max relative error", worst, 0.01)};
}

CheckResult check_stationary_variogram(const SuiteOptions& opt) {
    SynthesisParams p;
    p.hurst = HurstIndex(0.5);
    p.alpha = kPi / 2;
    p.regularized = false;
    p.grid_order = 63;
    p.threads = opt.threads;
    const Precomputer pre(p);
    std::vector<FieldGrid> grids;
    for (int s = 0; s < opt.seeds; ++s) {
        grids.push_back(synthesize_elementary(p, 0.0, pre.draw(opt.seed + static_cast<std::uint64_t>(s))));
    }
    const Lag lags[] = {{4, 0}, {0, 4}, {3, 3}, {4, -4}};
    const auto est = empirical_variogram(grids, lags);
    double worst = 0.0;
    for (const auto& e : est) {
        const double r = p.grid_order;
        const double th = theoretical_variogram(p.hurst, 0.0, p.weight(), {e.lag[0] / r, e.lag[1] / r});
        worst = std::max(worst, std::abs(e.value - th) / th);
    }
    return {"stationary_variogram", worst <= 0.15, format_detail("max relative error", worst, 0.15)};
}

CheckResult check_constant_reduction(const SuiteOptions& opt) {
    SynthesisParams p;
    p.grid_order = 31;
    p.seed = opt.seed;
    p.threads = opt.threads;
    const PreparedState state = precompute(p);
    const FieldGrid a = synthesize_elementary(p, 0.4, state);
    const FieldGrid b = synthesize_lafbf(p, OrientationField::constant(0.4), state);
    const bool same = a.values.size() == b.values.size() &&
                      std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0;
    return {"constant_field_reduction", same, same ? "bit-identical" : "outputs differ"};
}

CheckResult check_hurst(const SuiteOptions& opt) {
    SynthesisParams p;
    p.hurst = HurstIndex(0.5);
    p.alpha = kPi / 2;
    p.regularized = false;
    p.threads = opt.threads;
    const Precomputer pre(p);
    const int n = std::max(2, opt.seeds / 10);
    double mean = 0.0;
    for (int s = 0; s < n; ++s) {
        mean += estimate_hurst(synthesize_elementary(p, 0.0, pre.draw(opt.seed + static_cast<std::uint64_t>(s))));
    }
    mean /= n;
    std::ostringstream detail;
    detail << "mean estimate = " << mean << " (expected in [0.4, 0.6])";
    return {"hurst_estimate", mean >= 0.4 && mean <= 0.6, detail.str()};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(const SuiteOptions& options) {
    if (options.seeds < 2 || options.fbm_replicates < 2) {
        throw ConfigError("validation needs at least two seeds and two replicates");
    }
    return {check_fbm(options),
            check_band_plans(),
            check_riemann(options),
            check_stationary_variogram(options),
            check_constant_reduction(options),
            check_hurst(options)};
}

}  // namespace lafbf
