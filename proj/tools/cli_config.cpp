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

#include "cli_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

namespace lafbf::cli {

namespace {

using Settings = std::map<std::string, std::string>;

const char* const kKeys[] = {"size",   "hurst",  "alpha", "epsilon", "seed",     "regularized",
                             "sigma",  "q-max",  "orientation", "out", "format", "force",
                             "seeds",  "replicates", "x0", "lags"};

bool known_key(const std::string& key) {
    for (const char* k : kKeys) {
        if (key == k) return true;
    }
    return false;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Settings read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    Settings out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(number) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (!known_key(key)) {
            throw ConfigError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

double to_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
        throw ConfigError(key + ": expected a real number, got '" + text + "'");
    }
    return v;
}

long long to_integer(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::array<int, 2> to_pair(const std::string& key, const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError(key + ": expected 'a,b', got '" + text + "'");
    const auto a = to_integer(key, trim(text.substr(0, comma)));
    const auto b = to_integer(key, trim(text.substr(comma + 1)));
    return {static_cast<int>(a), static_cast<int>(b)};
}

std::vector<std::array<int, 2>> to_pairs(const std::string& key, std::string text) {
    for (char& c : text) {
        if (c == ';') c = ' ';
    }
    std::istringstream in(text);
    std::vector<std::array<int, 2>> out;
    std::string item;
    while (in >> item) out.push_back(to_pair(key, item));
    if (out.empty()) throw ConfigError(key + ": expected at least one 'a,b' lag");
    return out;
}

void apply_settings(RunConfig& cfg, const Settings& settings) {
    constexpr double kPi = std::numbers::pi;
    bool sigma_given = false;
    bool format_given = false;
    for (const auto& [key, value] : settings) {
        if (key == "size") {
            const auto size = to_integer(key, value);
            if (size < 2 || size > (1 << 15) || (size & (size - 1)) != 0) {
                throw ConfigError("size: must be a power of two between 2 and 32768 (r = 2^k - 1), got " + value);
            }
            cfg.params.grid_order = static_cast<int32_t>(size - 1);
        } else if (key == "hurst") {
            const double h = to_real(key, value);
            if (!(h > 0.0 && h < 1.0)) throw ConfigError("hurst: must lie in (0, 1), got " + value);
            cfg.params.hurst = h;
        } else if (key == "alpha") {
            const double a = to_real(key, value);
            if (!(a > 0.0 && a <= kPi / 2)) throw ConfigError("alpha: must lie in (0, pi/2], got " + value);
            cfg.params.alpha = a;
        } else if (key == "epsilon") {
            const double e = to_real(key, value);
            if (!(e > 0.0)) throw ConfigError("epsilon: must be > 0, got " + value);
            cfg.params.epsilon = e;
        } else if (key == "sigma") {
            const double s = to_real(key, value);
            if (!(s > 0.0)) throw ConfigError("sigma: must be > 0, got " + value);
            cfg.params.sigma = s;
            sigma_given = true;
        } else if (key == "seed") {
            if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
                throw ConfigError("seed: expected an unsigned 64-bit integer, got '" + value + "'");
            }
            try {
                cfg.params.seed = std::stoull(value);
            } catch (const std::exception&) {
                throw ConfigError("seed: expected an unsigned 64-bit integer, got '" + value + "'");
            }
        } else if (key == "regularized") {
            cfg.params.regularized = to_bool(key, value) ? 1 : 0;
        } else if (key == "q-max") {
            const auto q = to_integer(key, value);
            if (q < 0 || q > 100000) throw ConfigError("q-max: must lie in [0, 100000], got " + value);
            cfg.params.q_max = static_cast<int32_t>(q);
        } else if (key == "orientation") {
            cfg.orientation = value;
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "format") {
            if (lafbf_format_parse(value.c_str(), &cfg.format) != LAFBF_OK) {
                throw ConfigError("format: must be one of pgm, raw, csv; got '" + value + "'");
            }
            format_given = true;
        } else if (key == "force") {
            cfg.force = to_bool(key, value);
        } else if (key == "seeds") {
            const auto s = to_integer(key, value);
            if (s < 1 || s > 1000000) throw ConfigError("seeds: must lie in [1, 1000000], got " + value);
            cfg.seeds = static_cast<int>(s);
        } else if (key == "replicates") {
            const auto s = to_integer(key, value);
            if (s < 2 || s > 10000000) throw ConfigError("replicates: must lie in [2, 10000000], got " + value);
            cfg.replicates = static_cast<int>(s);
        } else if (key == "x0") {
            cfg.base_pixel = to_pair(key, value);
        } else if (key == "lags") {
            cfg.lags = to_pairs(key, value);
        }
    }
    if (!sigma_given) cfg.params.sigma = cfg.params.alpha;
    if (!format_given) {
        auto ends_with = [&](const char* ext) {
            const std::string e(ext);
            return cfg.out.size() >= e.size() && cfg.out.compare(cfg.out.size() - e.size(), e.size(), e) == 0;
        };
        if (ends_with(".raw")) cfg.format = LAFBF_FORMAT_RAW;
        else if (ends_with(".csv")) cfg.format = LAFBF_FORMAT_CSV;
        else cfg.format = LAFBF_FORMAT_PGM;
    }
    if (cfg.base_pixel) {
        const auto [k1, k2] = *cfg.base_pixel;
        if (k1 < 0 || k2 < 0 || k1 > cfg.params.grid_order || k2 > cfg.params.grid_order) {
            throw ConfigError("x0: base pixel must lie inside the " + std::to_string(cfg.params.grid_order + 1) +
                              "x" + std::to_string(cfg.params.grid_order + 1) + " grid");
        }
    }
    if (cfg.command == Command::synth && cfg.out.empty()) throw ConfigError("out: synth needs an output path");
    if (cfg.command == Command::validate && cfg.seeds < 2) throw ConfigError("seeds: validate needs at least 2");
}

}  // namespace

std::vector<std::array<int, 2>> default_lags() {
    std::vector<std::array<int, 2>> out;
    for (int d : {1, 2, 4, 8, 16}) out.push_back({d, 0});
    for (int d : {1, 2, 4, 8, 16}) out.push_back({0, d});
    for (int d : {1, 2, 4, 8}) out.push_back({d, d});
    for (int d : {1, 2, 4, 8}) out.push_back({d, -d});
    return out;
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
    CLI::App app{"Oriented fractional Brownian texture synthesis"};
    app.require_subcommand(1);

    Settings flags;
    std::string config_path;
    bool force = false;
    auto add_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key=value file; flags override its keys");
        cmd->add_option("--size", flags["size"], "grid side r + 1, a power of two (default 256)");
        cmd->add_option("--hurst", flags["hurst"], "Hurst index in (0, 1) (default 0.2)");
        cmd->add_option("--alpha", flags["alpha"], "sector half-width in (0, pi/2] (default 0.1)");
        cmd->add_option("--epsilon", flags["epsilon"], "maximal band width (default 0.01)");
        cmd->add_option("--sigma", flags["sigma"], "Gaussian weight deviation (default alpha)");
        cmd->add_option("--seed", flags["seed"], "random seed (default 0)");
        cmd->add_option("--regularized", flags["regularized"], "true: Gaussian weight, false: sector indicator");
        cmd->add_option("--q-max", flags["q-max"], "band candidate bound, 0 = automatic");
        cmd->add_option("--orientation", flags["orientation"],
                        "constant:<rad> | v1 | v2 | v3 | raster:<path> | gradient:<path>");
        cmd->add_option("--out", flags["out"], "output path");
        cmd->add_option("--format", flags["format"], "pgm | raw | csv (default from extension)");
        cmd->add_flag("--force", force, "overwrite an existing output");
        cmd->add_option("--seeds", flags["seeds"], "number of realizations (default 50)");
        cmd->add_option("--replicates", flags["replicates"], "FBM replicates for validate (default 4000)");
        cmd->add_option("--x0", flags["x0"], "variogram base pixel 'k1,k2' (local mode)");
        cmd->add_option("--lags", flags["lags"], "variogram lags 'a,b;c,d;...'");
    };
    auto* synth = app.add_subcommand("synth", "synthesize a texture");
    auto* bands = app.add_subcommand("bands", "print the band plan as CSV");
    auto* vario = app.add_subcommand("variogram", "Monte-Carlo variogram against the exact one");
    auto* validate = app.add_subcommand("validate", "run the statistical self-test");
    for (auto* cmd : {synth, bands, vario, validate}) add_options(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig cfg;
    lafbf_params_default(&cfg.params);
    if (synth->parsed()) cfg.command = Command::synth;
    else if (bands->parsed()) cfg.command = Command::bands;
    else if (vario->parsed()) cfg.command = Command::variogram;
    else cfg.command = Command::validate;

    Settings settings;
    if (!config_path.empty()) settings = read_config_file(config_path);
    for (const auto& [key, value] : flags) {
        if (!value.empty()) settings[key] = value;
    }
    if (force) settings["force"] = "true";
    apply_settings(cfg, settings);

    if (const char* env = std::getenv("LAFBF_THREADS")) {
        const auto t = to_integer("LAFBF_THREADS", env);
        if (t < 0 || t > 4096) throw ConfigError("LAFBF_THREADS: must lie in [0, 4096], got " + std::string(env));
        cfg.params.threads = static_cast<uint32_t>(t);
    }
    if (cfg.lags.empty()) cfg.lags = default_lags();
    return cfg;
}

}  // namespace lafbf::cli
