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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lafbf {

/// Reproducible source of uniform and Gaussian variates.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms use the top 53 bits of each draw. Gaussians use the
/// Box-Muller transform (both outputs of a pair are used, cosine branch
/// first); std::normal_distribution is avoided because its algorithm differs
/// between standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for (master seed, index), derived through
    /// std::seed_seq over the four 32-bit halves plus a fixed tag.
    static RandomStream substream(std::uint64_t master, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(master),
                          static_cast<std::uint32_t>(master >> 32),
                          static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32),
                          std::uint32_t{0x6c616662u}};
        return RandomStream(seq);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on (0, 1].
    double uniform() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    explicit RandomStream(std::seed_seq& seq) : engine_(seq) {}

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lafbf
