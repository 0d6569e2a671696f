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

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "lafbf/error.hpp"
#include "lafbf/grid_io.hpp"
#include "lafbf/random_stream.hpp"

using namespace lafbf;

namespace {
FieldGrid make_grid(int rows, int cols, std::vector<double> values) {
    FieldGrid g;
    g.rows = rows;
    g.cols = cols;
    g.values = std::move(values);
    return g;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("lafbf_io_" + name)).string();
}
}  // namespace

TEST_CASE("format names") {
    CHECK(parse_grid_format("pgm") == GridFormat::pgm);
    CHECK(parse_grid_format("raw") == GridFormat::raw);
    CHECK(parse_grid_format("csv") == GridFormat::csv);
    CHECK_THROWS_AS(parse_grid_format("png"), ConfigError);
}

TEST_CASE("pgm quantization") {
    const auto g = make_grid(1, 4, {0.0, 1.0, 2.0, 3.0});
    CHECK(pgm_pixels(g) == std::vector<std::uint8_t>{0, 85, 170, 255});
    CHECK(pgm_pixels(make_grid(2, 2, {-4.5, -4.5, -4.5, -4.5})) == std::vector<std::uint8_t>(4, 128));
    // 0.5 / 255 of the range lands exactly on a half and rounds up.
    CHECK(pgm_pixels(make_grid(1, 3, {0.0, 0.5, 255.0}))[1] == 1);
    CHECK(pgm_pixels(make_grid(1, 3, {-7.0, 100.0, -7.0}))[1] == 255);
}

TEST_CASE("pgm header") {
    const auto bytes = encode_grid(make_grid(2, 3, {0, 1, 2, 3, 4, 5}), GridFormat::pgm);
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 6);
    CHECK(bytes.substr(0, header.size()) == header);
    CHECK(static_cast<unsigned char>(bytes.back()) == 255);
}

TEST_CASE("raw header layout") {
    const auto bytes = encode_grid(make_grid(2, 3, {0, 1, 2, 3, 4, -0.5}), GridFormat::raw);
    REQUIRE(bytes.size() == 16 + 6 * 8);
    CHECK(bytes.substr(0, 4) == "LAFB");
    const unsigned char expect[12] = {1, 0, 2, 0, 3, 0, 0, 0, 0, 0, 0, 0};
    CHECK(std::memcmp(bytes.data() + 4, expect, 12) == 0);
    // Last value, -0.5, little-endian.
    const unsigned char minus_half[8] = {0, 0, 0, 0, 0, 0, 0xe0, 0xbf};
    CHECK(std::memcmp(bytes.data() + 16 + 5 * 8, minus_half, 8) == 0);
}

TEST_CASE("raw round trip preserves every bit") {
    RandomStream rng(4);
    for (int t = 0; t < 50; ++t) {
        const int rows = 1 + static_cast<int>(rng.next_u64() % 20);
        const int cols = 1 + static_cast<int>(rng.next_u64() % 20);
        std::vector<double> v(static_cast<std::size_t>(rows) * cols);
        for (auto& x : v) x = std::bit_cast<double>(rng.next_u64() & 0x7fefffffffffffffULL) * (rng.uniform() < 0.5 ? -1 : 1);
        v.front() = -0.0;
        const auto g = make_grid(rows, cols, v);
        const auto back = decode_raw(encode_grid(g, GridFormat::raw));
        CHECK(back.rows == rows);
        CHECK(back.cols == cols);
        REQUIRE(back.values.size() == v.size());
        CHECK(std::memcmp(back.values.data(), v.data(), v.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("malformed raw input") {
    const auto good = encode_grid(make_grid(1, 2, {1, 2}), GridFormat::raw);
    CHECK_THROWS_AS(decode_raw("LAF"), IoError);
    CHECK_THROWS_AS(decode_raw("XAFB" + good.substr(4)), IoError);
    auto bad_version = good;
    bad_version[4] = 2;
    CHECK_THROWS_AS(decode_raw(bad_version), IoError);
    CHECK_THROWS_AS(decode_raw(good.substr(0, good.size() - 1)), IoError);
    CHECK_THROWS_AS(decode_raw(good + "x"), IoError);
    CHECK_THROWS_AS(read_raw(temp_path("does_not_exist.raw")), IoError);
}

TEST_CASE("csv output") {
    const auto text = encode_grid(make_grid(2, 2, {0.1, -2.0, 1e-300, 3.0}), GridFormat::csv);
    CHECK(text == "0.10000000000000001,-2\n1e-300,3\n");
}

TEST_CASE("existing files are kept unless forced") {
    const auto path = temp_path("force.raw");
    std::filesystem::remove(path);
    const auto a = make_grid(1, 2, {1, 2});
    const auto b = make_grid(1, 2, {3, 4});
    write_grid(a, path, GridFormat::raw, false);
    CHECK_THROWS_AS(write_grid(b, path, GridFormat::raw, false), IoError);
    CHECK(read_raw(path).values == a.values);
    write_grid(b, path, GridFormat::raw, true);
    CHECK(read_raw(path).values == b.values);
    CHECK(slurp(path) == encode_grid(b, GridFormat::raw));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_grid(a, "/nonexistent_dir/x.raw", GridFormat::raw, true), IoError);
}
