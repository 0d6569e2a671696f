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
#include <cstring>
#include <limits>
#include <vector>

#include "lafbf/error.hpp"
#include "lafbf/fbm_line.hpp"

using namespace lafbf;

namespace {

// Sample mean of products and its standard error, for centered pairs.
struct CovEstimate {
    double mean = 0.0;
    double se = 0.0;
};

CovEstimate covariance(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double p = a[i] * b[i];
        s += p;
        s2 += p * p;
    }
    const double mean = s / n;
    const double var = (s2 / n - mean * mean) * n / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("hurst index accepts only the open unit interval") {
    CHECK_NOTHROW(HurstIndex(0.5));
    CHECK_NOTHROW(HurstIndex(1e-6));
    CHECK_THROWS_AS(HurstIndex(0.0), ConfigError);
    CHECK_THROWS_AS(HurstIndex(1.0), ConfigError);
    CHECK_THROWS_AS(HurstIndex(1.5), ConfigError);
    CHECK_THROWS_AS(HurstIndex(-0.1), ConfigError);
    CHECK_THROWS_AS(HurstIndex(std::numeric_limits<double>::quiet_NaN()), ConfigError);
}

TEST_CASE("fbm covariance closed form") {
    CHECK(fbm_covariance(HurstIndex(0.5), 2.0, 3.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (double h : {0.1, 0.5, 0.9}) CHECK(fbm_covariance(HurstIndex(h), 0.0, 5.0) == 0.0);
    CHECK(fbm_covariance(HurstIndex(0.3), 1.0, 2.0) == doctest::Approx(0.757858283255199).epsilon(1e-13));
    // Var B(t) = |t|^{2H}
    CHECK(fbm_covariance(HurstIndex(0.7), -3.0, -3.0) == doctest::Approx(std::pow(3.0, 1.4)).epsilon(1e-14));
}

TEST_CASE("fgn autocovariance") {
    CHECK(fgn_autocovariance(HurstIndex(0.5), 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fgn_autocovariance(HurstIndex(0.5), 3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(fgn_autocovariance(HurstIndex(0.7), 1) == doctest::Approx(0.319507910772894).epsilon(1e-13));
    CHECK(fgn_autocovariance(HurstIndex(0.3), -4) == fgn_autocovariance(HurstIndex(0.3), 4));
}

TEST_CASE("increment autocovariances telescope to Var B(n)") {
    for (double hv : {0.15, 0.5, 0.85}) {
        const HurstIndex h(hv);
        for (int n : {1, 2, 7, 33}) {
            double sum = 0.0;
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) sum += fgn_autocovariance(h, j - k);
            }
            CHECK(sum == doctest::Approx(std::pow(n, 2.0 * hv)).epsilon(1e-10));
        }
    }
}

TEST_CASE("lines are pinned at zero and span the requested range") {
    RandomStream rng(11);
    for (double hv : {0.2, 0.5, 0.8}) {
        for (auto [lo, hi] : {std::pair{0, 1}, std::pair{0, 1024}, std::pair{-8, 8}, std::pair{-765, 0},
                              std::pair{-3, 6}}) {
            const FbmLine line = generate_fbm_line(HurstIndex(hv), lo, hi, rng);
            CHECK(line.j_min() == lo);
            CHECK(line.j_max() == hi);
            CHECK(line.size() == static_cast<std::size_t>(hi - lo + 1));
            CHECK(line[0] == 0.0);
        }
    }
}

TEST_CASE("invalid ranges are rejected") {
    RandomStream rng(1);
    CHECK_THROWS_AS(generate_fbm_line(HurstIndex(0.5), 1, 5, rng), ConfigError);
    CHECK_THROWS_AS(generate_fbm_line(HurstIndex(0.5), -5, -1, rng), ConfigError);
    CHECK_THROWS_AS(generate_fbm_line(HurstIndex(0.5), 0, 0, rng), ConfigError);
}

TEST_CASE("embedding size is the smallest power of two covering twice the span") {
    CHECK(CirculantFbm(HurstIndex(0.5), 0, 1024).embedding_size() == 2048);
    CHECK(CirculantFbm(HurstIndex(0.5), -8, 8).embedding_size() == 32);
    CHECK(CirculantFbm(HurstIndex(0.5), 0, 3).embedding_size() == 8);
}

TEST_CASE("a non positive definite autocovariance aborts the embedding") {
    const std::vector<double> bad{1.0, 2.0};
    CHECK_THROWS_AS(circulant_eigenvalues(bad), NumericalError);
    const std::vector<double> white{1.0, 0.0, 0.0};
    for (double ev : circulant_eigenvalues(white)) CHECK(ev == doctest::Approx(1.0));
}

TEST_CASE("identical streams give bit-identical lines") {
    RandomStream a = RandomStream::substream(42, 3);
    RandomStream b = RandomStream::substream(42, 3);
    RandomStream c = RandomStream::substream(42, 4);
    const auto la = generate_fbm_line(HurstIndex(0.3), -10, 40, a);
    const auto lb = generate_fbm_line(HurstIndex(0.3), -10, 40, b);
    const auto lc = generate_fbm_line(HurstIndex(0.3), -10, 40, c);
    CHECK(std::memcmp(la.values().data(), lb.values().data(), la.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(la.values().data(), lc.values().data(), la.size() * sizeof(double)) != 0);
}

TEST_CASE("Brownian case reproduces min(s, t) over 1e4 replicates") {
    const HurstIndex h(0.5);
    const CirculantFbm gen(h, 0, 1024);
    RandomStream rng(2024);
    const std::vector<std::pair<int, int>> pairs{{1, 2}, {100, 300}, {512, 1024}, {1024, 1024}, {7, 900}};
    const int reps = 10000;
    std::vector<std::vector<double>> at(1025);
    for (int r = 0; r < reps; ++r) {
        const FbmLine line = gen.sample(rng);
        for (int j : {1, 2, 7, 100, 300, 512, 900, 1024}) at[j].push_back(line[j]);
    }
    for (auto [s, t] : pairs) {
        const CovEstimate est = covariance(at[s], at[t]);
        CHECK(std::abs(est.mean - std::min(s, t)) <= 3.0 * est.se);
    }
}

TEST_CASE("self-similarity: Var B(4) / Var B(1) = 4^{2H} on a line through the origin") {
    const HurstIndex h(0.3);
    const CirculantFbm gen(h, -8, 8);
    RandomStream rng(77);
    const int reps = 10000;
    std::vector<double> a(reps), b(reps);
    for (int r = 0; r < reps; ++r) {
        const FbmLine line = gen.sample(rng);
        a[r] = line[4] * line[4];
        b[r] = line[1] * line[1];
    }
    double ma = 0, mb = 0;
    for (int r = 0; r < reps; ++r) {
        ma += a[r];
        mb += b[r];
    }
    ma /= reps;
    mb /= reps;
    double vaa = 0, vbb = 0, vab = 0;
    for (int r = 0; r < reps; ++r) {
        vaa += (a[r] - ma) * (a[r] - ma);
        vbb += (b[r] - mb) * (b[r] - mb);
        vab += (a[r] - ma) * (b[r] - mb);
    }
    vaa /= (reps - 1.0) * reps;
    vbb /= (reps - 1.0) * reps;
    vab /= (reps - 1.0) * reps;
    const double ratio = ma / mb;
    // Delta-method standard error of a ratio of means.
    const double se = ratio * std::sqrt(vaa / (ma * ma) + vbb / (mb * mb) - 2.0 * vab / (ma * mb));
    CHECK(std::abs(ratio - 2.2973967099940699) <= 3.0 * se);
}

TEST_CASE("increments are stationary on both sides of the origin") {
    const HurstIndex h(0.7);
    const CirculantFbm gen(h, -20, 20);
    RandomStream rng(5);
    const int reps = 10000;
    const int gap = 3;
    const std::vector<int> starts{-20, -8, -3, 0, 5, 17};
    std::vector<std::vector<double>> sq(starts.size(), std::vector<double>(reps));
    for (int r = 0; r < reps; ++r) {
        const FbmLine line = gen.sample(rng);
        for (std::size_t s = 0; s < starts.size(); ++s) {
            const double d = line[starts[s] + gap] - line[starts[s]];
            sq[s][r] = d * d;
        }
    }
    const double expected = std::pow(gap, 1.4);
    for (const auto& v : sq) {
        double m = 0, m2 = 0;
        for (double x : v) {
            m += x;
            m2 += x * x;
        }
        m /= reps;
        const double se = std::sqrt((m2 / reps - m * m) / reps);
        CHECK(std::abs(m - expected) <= 3.0 * se);
    }
}
