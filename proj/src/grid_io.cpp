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

#include "lafbf/grid_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "lafbf/error.hpp"

namespace lafbf {

namespace {

constexpr char kMagic[4] = {'L', 'A', 'F', 'B'};
constexpr std::uint16_t kRawVersion = 1;
constexpr std::size_t kRawHeader = 16;

template <class T>
void put_le(std::string& out, T value) {
    using U = std::make_unsigned_t<T>;
    auto bits = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>(bits & 0xffu));
        bits = static_cast<U>(bits >> 8);
    }
}

std::uint64_t get_le(std::string_view in, std::size_t offset, std::size_t width) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
    }
    return v;
}

}  // namespace

GridFormat parse_grid_format(std::string_view name) {
    if (name == "pgm") return GridFormat::pgm;
    if (name == "raw") return GridFormat::raw;
    if (name == "csv") return GridFormat::csv;
    throw ConfigError("format must be one of pgm, raw, csv; got '" + std::string(name) + "'");
}

std::vector<std::uint8_t> pgm_pixels(const FieldGrid& grid) {
    std::vector<std::uint8_t> out(grid.values.size(), 128);
    if (grid.values.empty()) return out;
    const auto [lo_it, hi_it] = std::minmax_element(grid.values.begin(), grid.values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) return out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double scaled = std::round((grid.values[i] - lo) / (hi - lo) * 255.0);
        out[i] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
    }
    return out;
}

std::string encode_grid(const FieldGrid& grid, GridFormat format) {
    if (grid.rows < 0 || grid.cols < 0 ||
        grid.values.size() != static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols)) {
        throw ConfigError("grid dimensions do not match its values");
    }
    std::string out;
    switch (format) {
        case GridFormat::raw: {
            if (grid.rows > std::numeric_limits<std::uint16_t>::max()) {
                throw ConfigError("raw format supports at most 65535 rows");
            }
            out.reserve(kRawHeader + grid.values.size() * 8);
            out.append(kMagic, sizeof(kMagic));
            put_le(out, kRawVersion);
            put_le(out, static_cast<std::uint16_t>(grid.rows));
            put_le(out, static_cast<std::uint32_t>(grid.cols));
            put_le(out, std::uint32_t{0});
            for (double v : grid.values) put_le(out, std::bit_cast<std::uint64_t>(v));
            break;
        }
        case GridFormat::pgm: {
            out = "P5\n" + std::to_string(grid.cols) + " " + std::to_string(grid.rows) + "\n255\n";
            const auto pixels = pgm_pixels(grid);
            out.append(pixels.begin(), pixels.end());
            break;
        }
        case GridFormat::csv: {
            char buf[32];
            for (int k1 = 0; k1 < grid.rows; ++k1) {
                for (int k2 = 0; k2 < grid.cols; ++k2) {
                    std::snprintf(buf, sizeof(buf), "%.17g", grid.at(k1, k2));
                    if (k2 > 0) out.push_back(',');
                    out.append(buf);
                }
                out.push_back('\n');
            }
            break;
        }
    }
    return out;
}

void write_grid(const FieldGrid& grid, const std::string& path, GridFormat format, bool force) {
    const std::string bytes = encode_grid(grid, format);
    std::error_code ec;
    if (!force && std::filesystem::exists(path, ec)) {
        throw IoError("output '" + path + "' already exists (use --force to overwrite)");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

FieldGrid decode_raw(std::string_view bytes) {
    if (bytes.size() < kRawHeader || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
        throw IoError("not a raw grid file (bad magic)");
    }
    const auto version = get_le(bytes, 4, 2);
    if (version != kRawVersion) throw IoError("unsupported raw grid version " + std::to_string(version));
    FieldGrid grid;
    grid.rows = static_cast<int>(get_le(bytes, 6, 2));
    grid.cols = static_cast<int>(get_le(bytes, 8, 4));
    const std::size_t count = static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols);
    if (bytes.size() != kRawHeader + 8 * count) throw IoError("raw grid file has the wrong length");
    grid.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.values[i] = std::bit_cast<double>(get_le(bytes, kRawHeader + 8 * i, 8));
    }
    return grid;
}

FieldGrid read_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_raw(bytes);
}

}  // namespace lafbf
