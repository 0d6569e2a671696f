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

// Command-line front end; talks to the library only through the C API.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <vector>

#include "cli_config.hpp"
#include "lafbf/lafbf.h"

namespace {

using lafbf::cli::Command;
using lafbf::cli::RunConfig;

constexpr int kExitValidationFailed = 1;
constexpr int kExitConfig = 2;

struct Failure {
    lafbf_status status;
};

void check(lafbf_status status) {
    if (status != LAFBF_OK) throw Failure{status};
}

int exit_code(lafbf_status status) {
    switch (status) {
        case LAFBF_ERROR_CONFIG: return 2;
        case LAFBF_ERROR_INFEASIBLE: return 3;
        case LAFBF_ERROR_NUMERICAL:
        case LAFBF_ERROR_UNDEFINED_ORIENTATION: return 4;
        case LAFBF_ERROR_IO: return 5;
        default: return 1;
    }
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};
using Orientation = std::unique_ptr<lafbf_orientation, Deleter<lafbf_orientation, lafbf_orientation_destroy>>;
using Plan = std::unique_ptr<lafbf_plan, Deleter<lafbf_plan, lafbf_plan_destroy>>;
using State = std::unique_ptr<lafbf_state, Deleter<lafbf_state, lafbf_state_destroy>>;
using Grid = std::unique_ptr<lafbf_grid, Deleter<lafbf_grid, lafbf_grid_destroy>>;
using Report = std::unique_ptr<lafbf_report, Deleter<lafbf_report, lafbf_report_destroy>>;

// Text output goes to --out when given, stdout otherwise.
class TextSink {
public:
    TextSink(const std::string& path, bool force) {
        if (path.empty()) return;
        if (!force) {
            if (std::FILE* existing = std::fopen(path.c_str(), "rb")) {
                std::fclose(existing);
                std::cerr << "lafbf: output '" << path << "' already exists (use --force to overwrite)\n";
                throw Failure{LAFBF_ERROR_IO};
            }
        }
        file_ = std::fopen(path.c_str(), "w");
        if (file_ == nullptr) {
            std::cerr << "lafbf: cannot open '" << path << "' for writing\n";
            throw Failure{LAFBF_ERROR_IO};
        }
    }
    ~TextSink() {
        if (file_ != nullptr) std::fclose(file_);
    }
    TextSink(const TextSink&) = delete;
    TextSink& operator=(const TextSink&) = delete;

    std::FILE* get() const { return file_ != nullptr ? file_ : stdout; }

private:
    std::FILE* file_ = nullptr;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_synth(const RunConfig& cfg) {
    lafbf_orientation* raw_field = nullptr;
    check(lafbf_orientation_parse(cfg.orientation.c_str(), &raw_field));
    Orientation field(raw_field);

    const auto t0 = std::chrono::steady_clock::now();
    lafbf_state* raw_state = nullptr;
    check(lafbf_state_create(&cfg.params, &raw_state));
    State state(raw_state);
    const double t_pre = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    lafbf_grid* raw_grid = nullptr;
    check(lafbf_synthesize(&cfg.params, state.get(), field.get(), &raw_grid));
    Grid grid(raw_grid);
    const double t_synth = seconds_since(t1);

    check(lafbf_grid_write(grid.get(), cfg.out.c_str(), cfg.format, cfg.force ? 1 : 0));
    std::fprintf(stderr, "lafbf: %dx%d texture, %zu bands, precompute %.3fs, synthesis %.3fs -> %s\n",
                 lafbf_grid_rows(grid.get()), lafbf_grid_cols(grid.get()), lafbf_state_band_count(state.get()),
                 t_pre, t_synth, cfg.out.c_str());
    return 0;
}

int run_bands(const RunConfig& cfg) {
    lafbf_plan* raw_plan = nullptr;
    check(lafbf_plan_create(cfg.params.epsilon, cfg.params.grid_order, cfg.params.q_max, &raw_plan));
    Plan plan(raw_plan);
    TextSink sink(cfg.out, cfg.force);
    std::fprintf(sink.get(), "p,q,theta,lambda,cost\n");
    for (size_t i = 0; i < lafbf_plan_size(plan.get()); ++i) {
        lafbf_band b{};
        check(lafbf_plan_band(plan.get(), i, &b));
        std::fprintf(sink.get(), "%d,%d,%.17g,%.17g,%lld\n", b.p, b.q, b.theta, b.lambda,
                     static_cast<long long>(b.cost));
    }
    return 0;
}

int run_variogram(const RunConfig& cfg) {
    lafbf_orientation* raw_field = nullptr;
    const std::string spec = cfg.orientation == "v1" && !cfg.base_pixel ? "constant:0" : cfg.orientation;
    check(lafbf_orientation_parse(spec.c_str(), &raw_field));
    Orientation field(raw_field);

    std::vector<int32_t> lags;
    for (const auto& l : cfg.lags) {
        lags.push_back(l[0]);
        lags.push_back(l[1]);
    }
    std::vector<lafbf_variogram_row> rows(cfg.lags.size());
    const int local = cfg.base_pixel ? 1 : 0;
    const int32_t k1 = cfg.base_pixel ? (*cfg.base_pixel)[0] : 0;
    const int32_t k2 = cfg.base_pixel ? (*cfg.base_pixel)[1] : 0;
    check(lafbf_variogram(&cfg.params, field.get(), local, k1, k2, lags.data(), cfg.lags.size(), cfg.seeds,
                          rows.data()));

    TextSink sink(cfg.out, cfg.force);
    std::fprintf(sink.get(), "lag_x,lag_y,empirical,theoretical,std_error,n_pairs\n");
    for (const auto& r : rows) {
        std::fprintf(sink.get(), "%d,%d,%.17g,%.17g,%.17g,%lld\n", r.lag_k1, r.lag_k2, r.empirical, r.theoretical,
                     r.std_error, static_cast<long long>(r.n_pairs));
    }
    return 0;
}

int run_validate(const RunConfig& cfg) {
    lafbf_report* raw_report = nullptr;
    check(lafbf_validate(cfg.params.seed, cfg.seeds, cfg.replicates, cfg.params.threads, &raw_report));
    Report report(raw_report);
    bool all = true;
    for (size_t i = 0; i < lafbf_report_size(report.get()); ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        check(lafbf_report_entry(report.get(), i, &name, &passed, &detail));
        std::printf("%s %-26s %s\n", passed ? "PASS" : "FAIL", name, detail);
        all = all && passed;
    }
    return all ? 0 : kExitValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    std::optional<RunConfig> cfg;
    try {
        cfg = lafbf::cli::parse_config(argc, argv);
    } catch (const lafbf::cli::ConfigError& e) {
        std::cerr << "lafbf: " << e.what() << "\n";
        return kExitConfig;
    }
    if (!cfg) return 0;

    try {
        check(lafbf_params_validate(&cfg->params));
        switch (cfg->command) {
            case Command::synth: return run_synth(*cfg);
            case Command::bands: return run_bands(*cfg);
            case Command::variogram: return run_variogram(*cfg);
            case Command::validate: return run_validate(*cfg);
        }
    } catch (const Failure& f) {
        const char* msg = lafbf_last_error();
        if (msg != nullptr && *msg != '\0') std::cerr << "lafbf: " << lafbf_status_name(f.status) << ": " << msg << "\n";
        return exit_code(f.status);
    }
    return 1;
}
