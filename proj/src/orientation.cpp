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

#include "lafbf/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "lafbf/error.hpp"

namespace lafbf {

namespace {
constexpr double kPi = std::numbers::pi;

double parse_real(std::string_view text, std::string_view what) {
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
        throw ConfigError(std::string(what) + ": expected a real number, got '" + s + "'");
    }
    return v;
}

// Bilinear weights for a coordinate in [0, 1] over `count` nodes.
struct Axis {
    std::size_t lo;
    std::size_t hi;
    double frac;
};

Axis locate(double t, std::size_t count) {
    if (count == 1) return {0, 0, 0.0};
    const double pos = std::clamp(t, 0.0, 1.0) * static_cast<double>(count - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    lo = std::min(lo, count - 2);
    return {lo, lo + 1, pos - static_cast<double>(lo)};
}
}  // namespace

double reduce_angle(double angle) {
    double t = std::fmod(angle + kPi / 2, kPi);
    if (t <= 0.0) t += kPi;
    return t - kPi / 2;
}

double periodic_distance(double a, double b) { return std::abs(reduce_angle(a - b)); }

void AngularWeightParams::validate() const {
    if (!(alpha > 0.0 && alpha <= kPi / 2)) {
        throw ConfigError("alpha must lie in (0, pi/2], got " + std::to_string(alpha));
    }
    if (regularized && !(sigma > 0.0 && std::isfinite(sigma))) {
        throw ConfigError("sigma must be positive, got " + std::to_string(sigma));
    }
}

double angular_weight(const AngularWeightParams& params, double alpha0, double theta) {
    const double d = periodic_distance(theta, alpha0);
    if (!params.regularized) return d <= params.alpha ? 1.0 : 0.0;
    return std::exp(-d * d / (2.0 * params.sigma * params.sigma));
}

Raster::Raster(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0) throw ConfigError("raster must have at least one row and column");
    if (values_.size() != rows_ * cols_) {
        throw ConfigError("raster holds " + std::to_string(values_.size()) + " values, expected " +
                          std::to_string(rows_ * cols_));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw ConfigError("raster contains a non-finite value");
    }
}

Raster Raster::parse(std::istream& in) {
    long long rows = 0;
    long long cols = 0;
    if (!(in >> rows >> cols) || rows <= 0 || cols <= 0) {
        throw ConfigError("raster header must be 'rows cols' with positive integers");
    }
    const auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    std::vector<double> values;
    values.reserve(count);
    std::string token;
    while (in >> token) values.push_back(parse_real(token, "raster value"));
    return Raster(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(values));
}

Raster Raster::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open raster file '" + path + "'");
    return parse(in);
}

std::array<double, 2> preset_v3_gradient(double x, double y) {
    const double u = 4.0 * x - 2.0;
    const double v = 4.0 * y - 2.0;
    const double e = std::exp(-u * u - v * v);
    return {4.0 * (1.0 - 2.0 * u * u) * e, -8.0 * u * v * e};
}

OrientationField OrientationField::constant(double angle) {
    if (!std::isfinite(angle)) throw ConfigError("constant orientation must be finite");
    OrientationField f;
    f.kind_ = OrientationKind::constant;
    f.constant_ = reduce_angle(angle);
    return f;
}

OrientationField OrientationField::preset_v1() {
    OrientationField f;
    f.kind_ = OrientationKind::preset_v1;
    return f;
}

OrientationField OrientationField::preset_v2() {
    OrientationField f;
    f.kind_ = OrientationKind::preset_v2;
    return f;
}

OrientationField OrientationField::preset_v3() {
    OrientationField f;
    f.kind_ = OrientationKind::preset_v3;
    return f;
}

OrientationField OrientationField::from_angle_raster(Raster angles) {
    OrientationField f;
    f.kind_ = OrientationKind::raster;
    f.rows_ = angles.rows();
    f.cols_ = angles.cols();
    f.nodes_.reserve(f.rows_ * f.cols_);
    for (std::size_t i = 0; i < f.rows_; ++i) {
        for (std::size_t j = 0; j < f.cols_; ++j) {
            const double a = angles.at(i, j);
            f.nodes_.push_back({std::cos(2.0 * a), std::sin(2.0 * a)});
        }
    }
    return f;
}

OrientationField OrientationField::gradient_of(Raster scalar) {
    OrientationField f;
    f.kind_ = OrientationKind::gradient_of_raster;
    f.rows_ = scalar.rows();
    f.cols_ = scalar.cols();
    const std::size_t rows = f.rows_;
    const std::size_t cols = f.cols_;
    // Finite differences in unit-square coordinates: central inside,
    // one-sided at the border.
    auto diff = [](std::size_t n, std::size_t k, auto value) {
        if (n == 1) return 0.0;
        const double h = 1.0 / static_cast<double>(n - 1);
        const std::size_t lo = k == 0 ? 0 : k - 1;
        const std::size_t hi = k + 1 == n ? k : k + 1;
        return (value(hi) - value(lo)) / (static_cast<double>(hi - lo) * h);
    };
    f.nodes_.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double gx = diff(rows, i, [&](std::size_t k) { return scalar.at(k, j); });
            const double gy = diff(cols, j, [&](std::size_t k) { return scalar.at(i, k); });
            f.nodes_.push_back({gx, gy});
        }
    }
    return f;
}

OrientationField OrientationField::parse(std::string_view spec) {
    if (spec == "v1") return preset_v1();
    if (spec == "v2") return preset_v2();
    if (spec == "v3") return preset_v3();
    const auto colon = spec.find(':');
    if (colon != std::string_view::npos) {
        const auto head = spec.substr(0, colon);
        const auto tail = spec.substr(colon + 1);
        if (head == "constant") {
            auto f = constant(parse_real(tail, "constant orientation"));
            f.source_ = std::string(tail);
            return f;
        }
        if (head == "raster" || head == "gradient") {
            if (tail.empty()) throw ConfigError("orientation '" + std::string(head) + "' needs a path");
            auto raster = Raster::load(std::string(tail));
            auto f = head == "raster" ? from_angle_raster(std::move(raster)) : gradient_of(std::move(raster));
            f.source_ = std::string(tail);
            return f;
        }
    }
    throw ConfigError("unknown orientation '" + std::string(spec) +
                      "' (accepted: constant:<radians>, v1, v2, v3, raster:<path>, gradient:<path>)");
}

std::string OrientationField::describe() const {
    std::ostringstream out;
    switch (kind_) {
        case OrientationKind::constant:
            out.precision(17);
            out << "constant:" << constant_;
            break;
        case OrientationKind::preset_v1: out << "v1"; break;
        case OrientationKind::preset_v2: out << "v2"; break;
        case OrientationKind::preset_v3: out << "v3"; break;
        case OrientationKind::raster: out << "raster:" << source_; break;
        case OrientationKind::gradient_of_raster: out << "gradient:" << source_; break;
    }
    return out.str();
}

std::optional<std::array<double, 2>> OrientationField::vector_at(double x, double y) const {
    const Axis ax = locate(x, rows_);
    const Axis ay = locate(y, cols_);
    auto node = [&](std::size_t i, std::size_t j) { return nodes_[i * cols_ + j]; };
    std::array<double, 2> out{};
    for (int c = 0; c < 2; ++c) {
        const double top = (1.0 - ay.frac) * node(ax.lo, ay.lo)[c] + ay.frac * node(ax.lo, ay.hi)[c];
        const double bottom = (1.0 - ay.frac) * node(ax.hi, ay.lo)[c] + ay.frac * node(ax.hi, ay.hi)[c];
        out[c] = (1.0 - ax.frac) * top + ax.frac * bottom;
    }
    if (out[0] == 0.0 && out[1] == 0.0) return std::nullopt;
    return out;
}

std::optional<double> OrientationField::try_eval(double x, double y) const {
    switch (kind_) {
        case OrientationKind::constant:
            return constant_;
        case OrientationKind::preset_v1:
            return reduce_angle(-kPi / 2 + y);
        case OrientationKind::preset_v2:
            return reduce_angle(std::cos(36.0 * x * y));
        case OrientationKind::preset_v3: {
            const auto g = preset_v3_gradient(x, y);
            if (g[0] == 0.0 && g[1] == 0.0) return std::nullopt;
            return reduce_angle(std::atan2(g[1], g[0]));
        }
        case OrientationKind::raster: {
            const auto v = vector_at(x, y);
            if (!v) return std::nullopt;
            return reduce_angle(0.5 * std::atan2((*v)[1], (*v)[0]));
        }
        case OrientationKind::gradient_of_raster: {
            const auto v = vector_at(x, y);
            if (!v) return std::nullopt;
            return reduce_angle(std::atan2((*v)[1], (*v)[0]));
        }
    }
    return std::nullopt;
}

double OrientationField::eval(double x, double y) const {
    const auto a = try_eval(x, y);
    if (!a) {
        std::ostringstream msg;
        msg << "orientation vector vanishes at (" << x << ", " << y << ")";
        throw UndefinedOrientationError(msg.str());
    }
    return *a;
}

std::vector<double> OrientationField::eval_grid(int grid_order) const {
    if (grid_order < 1) throw ConfigError("grid order must be at least 1");
    const auto side = static_cast<std::size_t>(grid_order) + 1;
    const double r = grid_order;
    std::vector<double> out(side * side);
    double previous = 0.0;
    for (std::size_t k1 = 0; k1 < side; ++k1) {
        for (std::size_t k2 = 0; k2 < side; ++k2) {
            const auto a = try_eval(static_cast<double>(k1) / r, static_cast<double>(k2) / r);
            if (a) previous = *a;
            out[k1 * side + k2] = previous;
        }
    }
    return out;
}

}  // namespace lafbf
