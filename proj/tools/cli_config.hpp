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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lafbf/lafbf.h"

namespace lafbf::cli {

enum class Command { synth, bands, variogram, validate };

/// Raised for any malformed flag, key or value; the message names the key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything one CLI invocation needs.
struct RunConfig {
    Command command = Command::synth;
    lafbf_params params{};
    std::string orientation = "v1";
    std::string out;              ///< empty: stdout for text outputs
    lafbf_format format = LAFBF_FORMAT_PGM;
    bool force = false;
    int seeds = 50;               ///< variogram / validate realizations
    int replicates = 4000;        ///< validate: FBM replicates
    std::optional<std::array<int, 2>> base_pixel;  ///< variogram: local mode
    std::vector<std::array<int, 2>> lags;
};

/// Lags used by `variogram` when none are given: axis and diagonal lags of
/// length 1 to 16 pixels.
std::vector<std::array<int, 2>> default_lags();

/// Parses argv (argv[0] is the program name). A `--config <file>` of flat
/// key=value lines is applied first, flags override it. Keys mirror the long
/// flag names. Throws ConfigError; `--help` output is reported by returning
/// nullopt after printing to stdout.
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

}  // namespace lafbf::cli
