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
#include <string>
#include <string_view>
#include <vector>

#include "lafbf/synthesis.hpp"

namespace lafbf {

enum class GridFormat { pgm, raw, csv };

/// "pgm", "raw" or "csv"; ConfigError otherwise.
GridFormat parse_grid_format(std::string_view name);

/// 8-bit pixels, per-image affine: round((v - min) / (max - min) * 255),
/// halves away from zero. Constant grids map to 128.
std::vector<std::uint8_t> pgm_pixels(const FieldGrid& grid);

/// Serialized file contents.
///   raw: "LAFB", u16 version = 1, u16 rows, u32 cols, u32 reserved = 0, then
///        row-major little-endian IEEE-754 doubles.
///   pgm: binary P5 header "P5\n<cols> <rows>\n255\n" followed by pgm_pixels.
///   csv: one line per row, values printed with 17 significant digits.
std::string encode_grid(const FieldGrid& grid, GridFormat format);

/// Writes encode_grid to path. An existing file is only replaced when
/// `force` is set (IoError otherwise).
void write_grid(const FieldGrid& grid, const std::string& path, GridFormat format, bool force);

/// Inverse of the raw encoding; provenance fields are left at defaults.
FieldGrid decode_raw(std::string_view bytes);
FieldGrid read_raw(const std::string& path);

}  // namespace lafbf
