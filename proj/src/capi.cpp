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

#include "lafbf/lafbf.h"

#include <array>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "lafbf/band_plan.hpp"
#include "lafbf/error.hpp"
#include "lafbf/grid_io.hpp"
#include "lafbf/orientation.hpp"
#include "lafbf/synthesis.hpp"
#include "lafbf/validation.hpp"

struct lafbf_orientation {
    lafbf::OrientationField field;
};

struct lafbf_plan {
    lafbf::BandPlan plan;
};

struct lafbf_state {
    lafbf::PreparedState state;
};

struct lafbf_grid {
    lafbf::FieldGrid grid;
};

struct lafbf_report {
    std::vector<lafbf::CheckResult> checks;
};

namespace {

thread_local std::string g_last_error;

lafbf_status fail(lafbf_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
lafbf_status guarded(Body&& body) {
    try {
        body();
        return LAFBF_OK;
    } catch (const lafbf::Error& e) {
        return fail(static_cast<lafbf_status>(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(LAFBF_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LAFBF_ERROR_INTERNAL, e.what());
    }
}

template <class... Ptrs>
void require(Ptrs... ptrs) {
    if (((ptrs == nullptr) || ...)) throw lafbf::ConfigError("null argument");
}

lafbf::SynthesisParams to_cpp(const lafbf_params& p) {
    lafbf::SynthesisParams out;
    out.hurst = lafbf::HurstIndex(p.hurst);
    out.alpha = p.alpha;
    out.epsilon = p.epsilon;
    out.grid_order = p.grid_order;
    out.q_max = p.q_max;
    out.seed = p.seed;
    out.regularized = p.regularized != 0;
    out.sigma = p.sigma;
    out.threads = p.threads;
    out.validate();
    return out;
}

template <class Handle, class Value>
Handle* wrap(Value&& value) {
    return new Handle{std::forward<Value>(value)};
}

}  // namespace

extern "C" {

const char* lafbf_version(void) { return "1.0.0"; }

const char* lafbf_last_error(void) { return g_last_error.c_str(); }

const char* lafbf_status_name(lafbf_status status) {
    switch (status) {
        case LAFBF_OK: return "ok";
        case LAFBF_ERROR_CONFIG: return "config error";
        case LAFBF_ERROR_INFEASIBLE: return "infeasible band plan";
        case LAFBF_ERROR_NUMERICAL: return "numerical failure";
        case LAFBF_ERROR_IO: return "i/o error";
        case LAFBF_ERROR_UNDEFINED_ORIENTATION: return "undefined orientation";
        case LAFBF_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void lafbf_params_default(lafbf_params* params) {
    if (params == nullptr) return;
    *params = lafbf_params{};
    params->hurst = 0.2;
    params->alpha = 0.1;
    params->epsilon = 0.01;
    params->grid_order = 255;
    params->q_max = 0;
    params->seed = 0;
    params->regularized = 1;
    params->sigma = 0.1;
    params->threads = 0;
}

lafbf_status lafbf_params_validate(const lafbf_params* params) {
    return guarded([&] {
        require(params);
        to_cpp(*params);
    });
}

lafbf_status lafbf_format_parse(const char* name, lafbf_format* out) {
    return guarded([&] {
        require(name, out);
        switch (lafbf::parse_grid_format(name)) {
            case lafbf::GridFormat::pgm: *out = LAFBF_FORMAT_PGM; break;
            case lafbf::GridFormat::raw: *out = LAFBF_FORMAT_RAW; break;
            case lafbf::GridFormat::csv: *out = LAFBF_FORMAT_CSV; break;
        }
    });
}

lafbf_status lafbf_orientation_parse(const char* spec, lafbf_orientation** out) {
    return guarded([&] {
        require(spec, out);
        *out = wrap<lafbf_orientation>(lafbf::OrientationField::parse(spec));
    });
}

lafbf_status lafbf_orientation_eval(const lafbf_orientation* field, double x, double y, double* angle) {
    return guarded([&] {
        require(field, angle);
        if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
            throw lafbf::ConfigError("orientation is defined on the unit square only");
        }
        *angle = field->field.eval(x, y);
    });
}

int lafbf_orientation_is_constant(const lafbf_orientation* field, double* angle) {
    if (field == nullptr || !field->field.is_constant()) return 0;
    if (angle != nullptr) *angle = field->field.constant_angle();
    return 1;
}

void lafbf_orientation_destroy(lafbf_orientation* field) { delete field; }

lafbf_status lafbf_plan_create(double epsilon, int32_t grid_order, int32_t q_max, lafbf_plan** out) {
    return guarded([&] {
        require(out);
        *out = wrap<lafbf_plan>(lafbf::plan_bands(epsilon, grid_order, q_max));
    });
}

size_t lafbf_plan_size(const lafbf_plan* plan) { return plan == nullptr ? 0 : plan->plan.size(); }

lafbf_status lafbf_plan_band(const lafbf_plan* plan, size_t index, lafbf_band* out) {
    return guarded([&] {
        require(plan, out);
        if (index >= plan->plan.size()) throw lafbf::ConfigError("band index out of range");
        const lafbf::Band& b = plan->plan.bands[index];
        *out = lafbf_band{b.p, b.q, b.theta, b.lambda, b.cost};
    });
}

int64_t lafbf_plan_total_cost(const lafbf_plan* plan) { return plan == nullptr ? 0 : plan->plan.total_cost; }

void lafbf_plan_destroy(lafbf_plan* plan) { delete plan; }

lafbf_status lafbf_state_create(const lafbf_params* params, lafbf_state** out) {
    return guarded([&] {
        require(params, out);
        *out = wrap<lafbf_state>(lafbf::precompute(to_cpp(*params)));
    });
}

size_t lafbf_state_band_count(const lafbf_state* state) {
    return state == nullptr ? 0 : state->state.plan().size();
}

void lafbf_state_destroy(lafbf_state* state) { delete state; }

lafbf_status lafbf_synthesize(const lafbf_params* params, const lafbf_state* state,
                              const lafbf_orientation* field, lafbf_grid** out) {
    return guarded([&] {
        require(params, state, field, out);
        const auto p = to_cpp(*params);
        *out = wrap<lafbf_grid>(lafbf::synthesize_lafbf(p, field->field, state->state));
    });
}

lafbf_status lafbf_synthesize_elementary(const lafbf_params* params, const lafbf_state* state,
                                         double alpha0, lafbf_grid** out) {
    return guarded([&] {
        require(params, state, out);
        const auto p = to_cpp(*params);
        *out = wrap<lafbf_grid>(lafbf::synthesize_elementary(p, alpha0, state->state));
    });
}

int32_t lafbf_grid_rows(const lafbf_grid* grid) { return grid == nullptr ? 0 : grid->grid.rows; }
int32_t lafbf_grid_cols(const lafbf_grid* grid) { return grid == nullptr ? 0 : grid->grid.cols; }
const double* lafbf_grid_data(const lafbf_grid* grid) {
    return grid == nullptr ? nullptr : grid->grid.values.data();
}
uint64_t lafbf_grid_plan_digest(const lafbf_grid* grid) { return grid == nullptr ? 0 : grid->grid.plan_digest; }

lafbf_status lafbf_grid_write(const lafbf_grid* grid, const char* path, lafbf_format format, int force) {
    return guarded([&] {
        require(grid, path);
        lafbf::GridFormat f = lafbf::GridFormat::raw;
        switch (format) {
            case LAFBF_FORMAT_PGM: f = lafbf::GridFormat::pgm; break;
            case LAFBF_FORMAT_RAW: f = lafbf::GridFormat::raw; break;
            case LAFBF_FORMAT_CSV: f = lafbf::GridFormat::csv; break;
            default: throw lafbf::ConfigError("unknown output format");
        }
        lafbf::write_grid(grid->grid, path, f, force != 0);
    });
}

lafbf_status lafbf_grid_read_raw(const char* path, lafbf_grid** out) {
    return guarded([&] {
        require(path, out);
        *out = wrap<lafbf_grid>(lafbf::read_raw(path));
    });
}

lafbf_status lafbf_grid_estimate_hurst(const lafbf_grid* grid, double* out) {
    return guarded([&] {
        require(grid, out);
        *out = lafbf::estimate_hurst(grid->grid);
    });
}

void lafbf_grid_destroy(lafbf_grid* grid) { delete grid; }

lafbf_status lafbf_variogram(const lafbf_params* params, const lafbf_orientation* field, int local,
                             int32_t base_k1, int32_t base_k2, const int32_t* lags, size_t n_lags,
                             int32_t n_seeds, lafbf_variogram_row* rows) {
    return guarded([&] {
        require(params, field);
        if (n_lags > 0) require(lags, rows);
        if (n_seeds < 1) throw lafbf::ConfigError("seeds must be at least 1");
        const auto p = to_cpp(*params);
        std::vector<lafbf::Lag> lag_list(n_lags);
        for (size_t i = 0; i < n_lags; ++i) lag_list[i] = {lags[2 * i], lags[2 * i + 1]};

        std::vector<lafbf::VariogramEstimate> est;
        double alpha0 = 0.0;
        if (local == 0) {
            if (!field->field.is_constant()) {
                throw lafbf::ConfigError("stationary variogram needs a constant orientation (or a base pixel)");
            }
            alpha0 = field->field.constant_angle();
            const lafbf::Precomputer pre(p);
            std::vector<lafbf::FieldGrid> grids;
            grids.reserve(static_cast<size_t>(n_seeds));
            for (int32_t s = 0; s < n_seeds; ++s) {
                grids.push_back(lafbf::synthesize_elementary(p, alpha0, pre.draw(p.seed + static_cast<uint64_t>(s))));
            }
            est = lafbf::empirical_variogram(grids, lag_list);
        } else {
            if (base_k1 < 0 || base_k2 < 0 || base_k1 > p.grid_order || base_k2 > p.grid_order) {
                throw lafbf::ConfigError("base pixel outside the grid");
            }
            alpha0 = field->field.eval_grid(p.grid_order)[static_cast<size_t>(base_k1) * p.side() + base_k2];
            est = lafbf::local_variogram_lafbf(p, field->field, {base_k1, base_k2}, lag_list, n_seeds);
        }
        const double r = p.grid_order;
        for (size_t i = 0; i < n_lags; ++i) {
            const std::array<double, 2> x{lag_list[i][0] / r, lag_list[i][1] / r};
            rows[i] = lafbf_variogram_row{lag_list[i][0], lag_list[i][1], est[i].value,
                                          lafbf::theoretical_variogram(p.hurst, alpha0, p.weight(), x),
                                          est[i].std_error, est[i].n_pairs};
        }
    });
}

lafbf_status lafbf_validate(uint64_t seed, int32_t seeds, int32_t fbm_replicates, uint32_t threads,
                            lafbf_report** out) {
    return guarded([&] {
        require(out);
        lafbf::SuiteOptions opt;
        opt.seed = seed;
        opt.seeds = seeds;
        opt.fbm_replicates = fbm_replicates;
        opt.threads = threads;
        *out = wrap<lafbf_report>(lafbf::run_validation_suite(opt));
    });
}

size_t lafbf_report_size(const lafbf_report* report) { return report == nullptr ? 0 : report->checks.size(); }

lafbf_status lafbf_report_entry(const lafbf_report* report, size_t index, const char** name, int* passed,
                                const char** detail) {
    return guarded([&] {
        require(report);
        if (index >= report->checks.size()) throw lafbf::ConfigError("report index out of range");
        const auto& c = report->checks[index];
        if (name != nullptr) *name = c.name.c_str();
        if (passed != nullptr) *passed = c.passed ? 1 : 0;
        if (detail != nullptr) *detail = c.detail.c_str();
    });
}

void lafbf_report_destroy(lafbf_report* report) { delete report; }

}  // extern "C"
