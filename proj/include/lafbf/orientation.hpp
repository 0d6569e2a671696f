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
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lafbf {

/// Reduce an angle modulo pi into (-pi/2, pi/2]. Orientations are directions
/// without an arrow head.
double reduce_angle(double angle);

/// pi-periodic distance between two directions, in [0, pi/2].
double periodic_distance(double a, double b);

struct AngularWeightParams {
    double alpha = 0.1;        ///< sector half-width, (0, pi/2]
    bool regularized = true;   ///< Gaussian in place of the sector indicator
    double sigma = 0.1;        ///< Gaussian standard deviation (regularized only)

    /// Throws ConfigError when alpha or sigma is out of range.
    void validate() const;
};

/// Angular spectral weight c(alpha0, theta). Sharp: indicator of
/// periodic_distance <= alpha. Regularized: exp(-d^2 / (2 sigma^2)).
double angular_weight(const AngularWeightParams& params, double alpha0, double theta);

/// Dense grid of scalars read from text: "rows cols" then row-major values.
/// Row i sits at x = i / (rows - 1), column j at y = j / (cols - 1).
class Raster {
public:
    Raster(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Raster parse(std::istream& in);
    static Raster load(const std::string& path);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

enum class OrientationKind { constant, preset_v1, preset_v2, preset_v3, raster, gradient_of_raster };

/// Gradient of F(x, y) = (4x - 2) exp(-(4x - 2)^2 - (4y - 2)^2).
std::array<double, 2> preset_v3_gradient(double x, double y);

/// The prescribed orientation alpha0 over the unit square.
class OrientationField {
public:
    static OrientationField constant(double angle);
    static OrientationField preset_v1();  ///< (cos(-pi/2 + y), sin(-pi/2 + y))
    static OrientationField preset_v2();  ///< (cos(cos(36xy)), sin(cos(36xy)))
    static OrientationField preset_v3();  ///< gradient of F
    /// Angles interpolated bilinearly in the doubled-angle representation.
    static OrientationField from_angle_raster(Raster angles);
    /// Direction of the gradient of a bilinearly interpolated scalar raster.
    static OrientationField gradient_of(Raster scalar);

    /// Parses constant:<radians> | v1 | v2 | v3 | raster:<path> | gradient:<path>.
    static OrientationField parse(std::string_view spec);

    OrientationKind kind() const noexcept { return kind_; }
    bool is_constant() const noexcept { return kind_ == OrientationKind::constant; }
    double constant_angle() const noexcept { return constant_; }
    std::string describe() const;

    /// Angle at (x, y) in [0, 1]^2, or nullopt where the vector vanishes.
    std::optional<double> try_eval(double x, double y) const;

    /// As try_eval, but throws UndefinedOrientationError where the
    /// orientation vector vanishes.
    double eval(double x, double y) const;

    /// Orientation at every pixel (k1, k2) of a grid of order r, stored
    /// row-major with k1 as the row, evaluated at (k1 / r, k2 / r). Where the
    /// vector vanishes the previous pixel in that scan order supplies the
    /// angle; the very first pixel falls back to 0.
    std::vector<double> eval_grid(int grid_order) const;

private:
    OrientationField() = default;

    std::optional<std::array<double, 2>> vector_at(double x, double y) const;

    OrientationKind kind_ = OrientationKind::constant;
    double constant_ = 0.0;
    std::string source_;
    // Raster kinds: node vectors (doubled-angle unit vectors, or gradients).
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::array<double, 2>> nodes_;
};

}  // namespace lafbf
