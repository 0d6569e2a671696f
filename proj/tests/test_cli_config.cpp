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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <string>
#include <vector>

#include "cli_config.hpp"

using namespace lafbf::cli;

namespace {
std::optional<RunConfig> parse(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"lafbf"};
    argv.insert(argv.end(), args.begin(), args.end());
    return parse_config(static_cast<int>(argv.size()), argv.data());
}

std::string config_file(const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::temp_directory_path() / ("lafbf_cli_" + name)).string();
    std::ofstream(path) << text;
    return path;
}
}  // namespace

TEST_CASE("synth flags") {
    const auto cfg = parse({"synth", "--size", "256", "--hurst", "0.2", "--orientation", "v1", "--seed", "7",
                            "--out", "t.pgm"});
    REQUIRE(cfg);
    CHECK(cfg->command == Command::synth);
    CHECK(cfg->params.grid_order == 255);
    CHECK(cfg->params.hurst == 0.2);
    CHECK(cfg->params.seed == 7);
    CHECK(cfg->orientation == "v1");
    CHECK(cfg->out == "t.pgm");
    CHECK(cfg->format == LAFBF_FORMAT_PGM);
    CHECK_FALSE(cfg->force);
}

TEST_CASE("defaults") {
    const auto cfg = parse({"synth", "--out", "a.raw"});
    REQUIRE(cfg);
    CHECK(cfg->params.grid_order == 255);
    CHECK(cfg->params.alpha == 0.1);
    CHECK(cfg->params.sigma == 0.1);
    CHECK(cfg->params.epsilon == 0.01);
    CHECK(cfg->params.regularized == 1);
    CHECK(cfg->format == LAFBF_FORMAT_RAW);
    CHECK(cfg->seeds == 50);
    CHECK_FALSE(cfg->base_pixel.has_value());
    CHECK(cfg->lags == default_lags());
}

TEST_CASE("sigma follows alpha unless given") {
    auto cfg = parse({"synth", "--out", "a.pgm", "--alpha", "0.3"});
    CHECK(cfg->params.sigma == 0.3);
    cfg = parse({"synth", "--out", "a.pgm", "--alpha", "0.3", "--sigma", "0.05"});
    CHECK(cfg->params.sigma == 0.05);
}

TEST_CASE("invalid values are rejected") {
    CHECK_THROWS_AS(parse({"synth", "--hurst", "1.5", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--size", "100", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--size", "1", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--alpha", "2", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--epsilon", "0", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--seed", "-3", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--hurst", "abc", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--format", "png", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth"}), ConfigError);
    CHECK_THROWS_AS(parse({"synth", "--bogus", "1", "--out", "t.pgm"}), ConfigError);
    CHECK_THROWS_AS(parse({}), ConfigError);
    CHECK_THROWS_AS(parse({"variogram", "--size", "32", "--x0", "40,2"}), ConfigError);
    CHECK_THROWS_AS(parse({"variogram", "--lags", "1;2"}), ConfigError);
}

TEST_CASE("the message names the offending key") {
    try {
        parse({"synth", "--hurst", "1.5", "--out", "t.pgm"});
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("hurst") != std::string::npos);
    }
}

TEST_CASE("config files, overridden by flags") {
    const auto path = config_file("ok.cfg", "# texture\nsize = 64\nhurst=0.7\nregularized = false\nout = a.csv\n");
    auto cfg = parse({"synth", "--config", path.c_str()});
    REQUIRE(cfg);
    CHECK(cfg->params.grid_order == 63);
    CHECK(cfg->params.hurst == 0.7);
    CHECK(cfg->params.regularized == 0);
    CHECK(cfg->format == LAFBF_FORMAT_CSV);
    cfg = parse({"synth", "--config", path.c_str(), "--hurst", "0.4", "--size", "128"});
    CHECK(cfg->params.hurst == 0.4);
    CHECK(cfg->params.grid_order == 127);
    std::filesystem::remove(path);

    const auto bad = config_file("bad.cfg", "size = 64\ncolour = red\n");
    CHECK_THROWS_AS(parse({"synth", "--config", bad.c_str(), "--out", "x.pgm"}), ConfigError);
    std::filesystem::remove(bad);
    const auto junk = config_file("junk.cfg", "size 64\n");
    CHECK_THROWS_AS(parse({"synth", "--config", junk.c_str(), "--out", "x.pgm"}), ConfigError);
    std::filesystem::remove(junk);
    CHECK_THROWS_AS(parse({"synth", "--config", "/no/such.cfg", "--out", "x.pgm"}), ConfigError);
}

TEST_CASE("variogram options") {
    const auto cfg = parse({"variogram", "--size", "64", "--x0", "10,20", "--lags", "1,0;0,1; -2,3", "--seeds", "9"});
    REQUIRE(cfg);
    CHECK(cfg->command == Command::variogram);
    CHECK(cfg->base_pixel == std::array<int, 2>{10, 20});
    CHECK(cfg->lags == std::vector<std::array<int, 2>>{{1, 0}, {0, 1}, {-2, 3}});
    CHECK(cfg->seeds == 9);
}

TEST_CASE("other subcommands and flags") {
    auto cfg = parse({"bands", "--epsilon", "0.1"});
    REQUIRE(cfg);
    CHECK(cfg->command == Command::bands);
    CHECK(cfg->params.epsilon == 0.1);
    cfg = parse({"validate", "--seeds", "20", "--replicates", "100"});
    CHECK(cfg->command == Command::validate);
    CHECK(cfg->replicates == 100);
    CHECK_THROWS_AS(parse({"validate", "--seeds", "1"}), ConfigError);
    cfg = parse({"synth", "--out", "x.pgm", "--force", "--format", "raw"});
    CHECK(cfg->force);
    CHECK(cfg->format == LAFBF_FORMAT_RAW);
    CHECK_FALSE(parse({"synth", "--help"}).has_value());
}

TEST_CASE("thread count from the environment") {
    ::setenv("LAFBF_THREADS", "3", 1);
    CHECK(parse({"synth", "--out", "x.pgm"})->params.threads == 3);
    ::setenv("LAFBF_THREADS", "many", 1);
    CHECK_THROWS_AS(parse({"synth", "--out", "x.pgm"}), ConfigError);
    ::unsetenv("LAFBF_THREADS");
    CHECK(parse({"synth", "--out", "x.pgm"})->params.threads == 0);
}
