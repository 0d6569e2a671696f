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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "lafbf/error.hpp"
#include "lafbf/random_stream.hpp"
#include "lafbf/validation.hpp"

using namespace lafbf;

namespace {
constexpr double kPi = std::numbers::pi;

// Plain midpoint rule. Sharp weights integrate over the sector alone (the
// integrand has period pi), so the rule never straddles the jump.
double midpoint_variogram(HurstIndex h, double alpha0, const AngularWeightParams& w,
                          std::array<double, 2> x, int panels) {
    const double lo = w.regularized ? -kPi / 2 : alpha0 - w.alpha;
    const double hi = w.regularized ? kPi / 2 : alpha0 + w.alpha;
    const double dt = (hi - lo) / panels;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double t = lo + (i + 0.5) * dt;
        const double proj = std::abs(x[0] * std::cos(t) + x[1] * std::sin(t));
        const double c = w.regularized ? angular_weight(w, alpha0, t) : 1.0;
        acc += c * std::pow(proj, h.twice());
    }
    return 0.5 * gamma_factor(h) * acc * dt;
}

FieldGrid make_grid(int rows, int cols, std::vector<double> values) {
    FieldGrid g;
    g.rows = rows;
    g.cols = cols;
    g.values = std::move(values);
    return g;
}
}  // namespace

TEST_CASE("theoretical variogram examples") {
    const HurstIndex h(0.5);
    const AngularWeightParams iso{kPi / 2, false, 1.0};
    CHECK(theoretical_variogram(h, 0.0, iso, {1.0, 0.0}) == doctest::Approx(2 * kPi).epsilon(1e-10));
    CHECK(theoretical_variogram(h, 0.3, iso, {0.0, 0.0}) == 0.0);
    const AngularWeightParams sector{kPi / 6, false, 1.0};
    CHECK(theoretical_variogram(h, 0.0, sector, {0.0, 1.0}) ==
          doctest::Approx(0.841787214476933).epsilon(1e-10));
}

TEST_CASE("theoretical variogram agrees with a fine midpoint rule") {
    RandomStream rng(17);
    for (int t = 0; t < 12; ++t) {
        const HurstIndex h(0.1 + 0.8 * rng.uniform());
        const bool reg = (t % 2) == 0;
        const AngularWeightParams w{0.05 + 1.4 * rng.uniform(), reg, 0.05 + 0.5 * rng.uniform()};
        const double a0 = kPi * (rng.uniform() - 0.5);
        const std::array<double, 2> x{20 * rng.uniform() - 10, 20 * rng.uniform() - 10};
        const double exact = theoretical_variogram(h, a0, w, x);
        CHECK(exact == doctest::Approx(midpoint_variogram(h, a0, w, x, 1000000)).epsilon(1e-6));
    }
}

TEST_CASE("theoretical variogram is homogeneous, rotation covariant and monotone in the sector") {
    RandomStream rng(23);
    for (int t = 0; t < 40; ++t) {
        const HurstIndex h(0.1 + 0.8 * rng.uniform());
        const AngularWeightParams w{0.05 + 1.4 * rng.uniform(), (t % 2) == 0, 0.3};
        const double a0 = kPi * (rng.uniform() - 0.5);
        const std::array<double, 2> x{4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
        const double v = theoretical_variogram(h, a0, w, x);

        const double s = 0.1 + 5 * rng.uniform();
        CHECK(theoretical_variogram(h, a0, w, {s * x[0], s * x[1]}) ==
              doctest::Approx(std::pow(s, h.twice()) * v).epsilon(1e-9));

        const double phi = kPi * (rng.uniform() - 0.5);
        const std::array<double, 2> rx{std::cos(phi) * x[0] - std::sin(phi) * x[1],
                                       std::sin(phi) * x[0] + std::cos(phi) * x[1]};
        CHECK(theoretical_variogram(h, a0 + phi, w, rx) == doctest::Approx(v).epsilon(1e-9));
        CHECK(theoretical_variogram(h, a0, w, {-x[0], -x[1]}) == doctest::Approx(v).epsilon(1e-12));

        if (!w.regularized) {
            const AngularWeightParams narrower{w.alpha * 0.5, false, 0.3};
            CHECK(theoretical_variogram(h, a0, narrower, x) <= v * (1 + 1e-12));
        }
    }
}

TEST_CASE("turning-band variogram converges to the integral") {
    const HurstIndex h(0.3);
    const AngularWeightParams w{kPi / 2, false, 1.0};
    const auto plan = plan_bands(0.01, 255);
    for (std::array<double, 2> x : {std::array{1.0, 0.0}, std::array{0.3, 0.7}, std::array{-2.0, 1.0}}) {
        const double exact = theoretical_variogram(h, 0.2, w, x);
        CHECK(std::abs(turning_band_variogram(plan, h, 0.2, w, x) - exact) <= 0.01 * exact);
    }
}

TEST_CASE("empirical variogram on a hand-computed grid") {
    const std::vector<FieldGrid> grids{make_grid(2, 2, {0, 1, 2, 3})};
    const std::vector<Lag> lags{{0, 1}, {1, 0}, {1, 1}, {1, -1}, {0, -1}};
    const auto est = empirical_variogram(grids, lags);
    CHECK(est[0].value == 0.5);
    CHECK(est[0].n_pairs == 2);
    CHECK(est[1].value == 2.0);
    CHECK(est[2].value == 4.5);
    CHECK(est[2].n_pairs == 1);
    CHECK(est[3].value == 0.5);
    CHECK(est[4].value == est[0].value);
    for (const auto& e : est) CHECK(e.std_error == 0.0);
}

TEST_CASE("empirical variogram averages grids and reports their spread") {
    const std::vector<FieldGrid> grids{make_grid(2, 2, {0, 1, 2, 3}), make_grid(2, 2, {0, 3, 0, 3})};
    const std::vector<Lag> lags{{0, 1}};
    const auto est = empirical_variogram(grids, lags);
    // Per-grid values 0.5 and 4.5.
    CHECK(est[0].value == 2.5);
    CHECK(est[0].std_error == doctest::Approx(2.0));
    CHECK(est[0].n_pairs == 4);
}

TEST_CASE("empirical variogram rejects unusable input") {
    const std::vector<FieldGrid> grids{make_grid(2, 2, {0, 1, 2, 3})};
    const std::vector<Lag> too_far{{2, 0}};
    CHECK_THROWS_AS(empirical_variogram(grids, too_far), ConfigError);
    const std::vector<Lag> lags{{0, 1}};
    CHECK_THROWS_AS(empirical_variogram(std::span<const FieldGrid>{}, lags), ConfigError);
    const std::vector<FieldGrid> mixed{make_grid(2, 2, {0, 1, 2, 3}), make_grid(1, 2, {0, 1})};
    CHECK_THROWS_AS(empirical_variogram(mixed, lags), ConfigError);
    CHECK_THROWS_AS(local_variogram(grids, {1, 1}, lags), ConfigError);

    const std::vector<FieldGrid> zeros{make_grid(2, 2, {0, 0, 0, 0})};
    CHECK(empirical_variogram(zeros, lags)[0].value == 0.0);
}

TEST_CASE("local variogram of a constant orientation matches the elementary fields") {
    SynthesisParams p;
    p.grid_order = 31;
    p.epsilon = 0.05;
    p.seed = 40;
    const double a0 = 0.6;
    const std::vector<Lag> lags{{1, 0}, {2, 1}, {0, 3}, {-2, 2}};
    const Lag x0{10, 12};
    const int n = 6;
    std::vector<FieldGrid> grids;
    for (int s = 0; s < n; ++s) {
        auto q = p;
        q.seed = p.seed + s;
        grids.push_back(synthesize_elementary(q, a0, precompute(q)));
    }
    const auto ref = local_variogram(grids, x0, lags);
    const auto got = local_variogram_lafbf(p, OrientationField::constant(a0), x0, lags, n);
    REQUIRE(got.size() == ref.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].value == ref[i].value);
        CHECK(got[i].std_error == ref[i].std_error);
        CHECK(got[i].n_pairs == n);
    }
}

TEST_CASE("several base pixels share realizations without changing the estimates") {
    SynthesisParams p;
    p.grid_order = 31;
    p.epsilon = 0.05;
    p.seed = 9;
    const auto field = OrientationField::preset_v2();
    const std::vector<Lag> lags{{1, 0}, {-1, 2}, {3, 3}};
    const std::vector<Lag> bases{{4, 4}, {20, 10}, {15, 25}};
    const auto all = local_variogram_lafbf(p, field, bases, lags, 5);
    REQUIRE(all.size() == bases.size());
    for (std::size_t b = 0; b < bases.size(); ++b) {
        const auto one = local_variogram_lafbf(p, field, bases[b], lags, 5);
        for (std::size_t l = 0; l < lags.size(); ++l) {
            CHECK(all[b][l].value == one[l].value);
            CHECK(all[b][l].std_error == one[l].std_error);
        }
    }
    const std::vector<Lag> outside{{4, 4}, {31, 31}};
    CHECK_THROWS_AS(local_variogram_lafbf(p, field, outside, lags, 5), ConfigError);
}

TEST_CASE("minimal growth direction of synthetic variograms") {
    const HurstIndex h(0.35);
    const std::vector<Lag> lags{{2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {-1, 2}, {-2, 2}, {-2, 1}};
    for (double phi0 : {-1.4, -0.5, 0.0, 0.3, 1.2, kPi / 2}) {
        std::vector<double> v;
        for (const auto& l : lags) {
            const double phi = std::atan2(double(l[1]), double(l[0]));
            v.push_back(std::pow(std::hypot(l[0], l[1]), h.twice()) * (2.0 + std::cos(2 * (phi - phi0))));
        }
        CHECK(periodic_distance(minimal_growth_direction(lags, v, h), phi0 + kPi / 2) < 1e-10);
    }
    // Theoretical variogram of a narrow sector: slowest growth orthogonal to alpha0.
    const AngularWeightParams w{0.2, false, 1.0};
    std::vector<double> v;
    for (const auto& l : lags) v.push_back(theoretical_variogram(h, 0.4, w, {double(l[0]), double(l[1])}));
    CHECK(periodic_distance(minimal_growth_direction(lags, v, h), 0.4 + kPi / 2) < 0.05);
}

TEST_CASE("hurst estimates from isotropic fields") {
    for (double hv : {0.2, 0.5}) {
        SynthesisParams p;
        p.hurst = HurstIndex(hv);
        p.grid_order = 255;
        p.epsilon = 0.02;
        p.alpha = kPi / 2;
        p.regularized = false;
        const Precomputer pre(p);
        double sum = 0.0;
        const int n = 20;
        for (int s = 0; s < n; ++s) sum += estimate_hurst(synthesize_elementary(p, 0.0, pre.draw(s)));
        const double mean = sum / n;
        CHECK(mean >= hv - 0.1);
        CHECK(mean <= hv + 0.1);
    }
    CHECK_THROWS_AS(estimate_hurst(make_grid(32, 32, std::vector<double>(1024, 1.0))), NumericalError);
    CHECK_THROWS_AS(estimate_hurst(make_grid(8, 8, std::vector<double>(64, 1.0))), ConfigError);
}

TEST_CASE("reduced validation suite passes") {
    SuiteOptions opt;
    opt.seeds = 20;
    opt.fbm_replicates = 2000;
    opt.seed = 1;
    const auto results = run_validation_suite(opt);
    CHECK(results.size() == 6);
    for (const auto& r : results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
}
