// Copyright 2026 The srfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srfx/srfx.h"

#include "srfx/commands.hpp"
#include "srfx/cost_model.hpp"
#include "srfx/errors.hpp"
#include "srfx/expr.hpp"
#include "srfx/fixed_eval.hpp"
#include "srfx/lut.hpp"

#include <fmt/format.h>

#include <cstring>
#include <new>
#include <string>

struct srfx_expr {
    srfx::Expr expr;
};

struct srfx_lut {
    srfx::LutTable table;
};

struct srfx_cost_tables {
    srfx::CostTables tables;
};

namespace {

thread_local std::string last_error;

srfx_status fail(srfx_status code, std::string msg)
{
    last_error = std::move(msg);
    return code;
}

template <class F>
srfx_status guarded(F&& f)
{
    try {
        f();
        last_error.clear();
        return SRFX_OK;
    } catch (const srfx::Error& e) {
        return fail(static_cast<srfx_status>(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(SRFX_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(SRFX_ERR_RUNTIME, e.what());
    }
}

srfx_status null_arg(const char* name)
{
    return fail(SRFX_ERR_RUNTIME, fmt::format("argument '{}' is null", name));
}

#define SRFX_REQUIRE(p)                       \
    do {                                      \
        if (!(p)) return null_arg(#p);        \
    } while (0)

srfx::FixedSpec to_spec(const srfx_fixed_spec& s)
{
    if (s.overflow != SRFX_OVERFLOW_WRAP && s.overflow != SRFX_OVERFLOW_SATURATE)
        throw srfx::ConfigError(fmt::format("unknown overflow mode {}", s.overflow));
    if (s.rounding != SRFX_ROUND_TRUNCATE && s.rounding != SRFX_ROUND_NEAREST)
        throw srfx::ConfigError(fmt::format("unknown rounding mode {}", s.rounding));
    return srfx::FixedSpec(s.total_bits, s.int_bits,
                           s.overflow == SRFX_OVERFLOW_WRAP ? srfx::Overflow::Wrap : srfx::Overflow::Saturate,
                           s.rounding == SRFX_ROUND_TRUNCATE ? srfx::Rounding::Truncate : srfx::Rounding::RoundNearest);
}

srfx::UnaryOp function_named(const char* name)
{
    auto op = srfx::unary_op_from_name(name);
    if (!op || !srfx::is_function(*op)) throw srfx::ConfigError(fmt::format("'{}' is not a tabulable function", name));
    return *op;
}

srfx::RunOptions run_options(const srfx_run_options* opt)
{
    srfx::RunOptions r;
    if (!opt) return r;
    if (opt->out_dir) r.out_dir = opt->out_dir;
    if (opt->has_seed) r.seed = opt->seed;
    if (opt->log) {
        auto fn = opt->log;
        void* user = opt->log_user;
        r.log = [fn, user](std::string_view msg) { fn(std::string(msg).c_str(), user); };
    }
    return r;
}

void report_written(const srfx::RunOptions& r, const std::vector<std::string>& paths)
{
    if (!r.log) return;
    for (const auto& p : paths) r.log("wrote " + p);
}

} // namespace

extern "C" {

const char* srfx_last_error(void)
{
    return last_error.c_str();
}

const char* srfx_version(void)
{
    return "0.1.0";
}

srfx_status srfx_quantize(double x, const srfx_fixed_spec* spec, double* out)
{
    SRFX_REQUIRE(spec);
    SRFX_REQUIRE(out);
    return guarded([&] { *out = srfx::to_f64(srfx::quantize(x, to_spec(*spec))); });
}

srfx_status srfx_expr_parse(const char* text, size_t n_features, srfx_expr** out)
{
    SRFX_REQUIRE(text);
    SRFX_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new srfx_expr{srfx::parse(text, n_features)}; });
}

void srfx_expr_free(srfx_expr* e)
{
    delete e;
}

srfx_status srfx_expr_format(const srfx_expr* e, char* buf, size_t cap, size_t* needed)
{
    SRFX_REQUIRE(e);
    return guarded([&] {
        const std::string s = srfx::format(e->expr);
        if (needed) *needed = s.size() + 1;
        if (buf && cap > 0) {
            const size_t n = std::min(cap - 1, s.size());
            std::memcpy(buf, s.data(), n);
            buf[n] = '\0';
        }
    });
}

srfx_status srfx_expr_complexity(const srfx_expr* e, int* out)
{
    SRFX_REQUIRE(e);
    SRFX_REQUIRE(out);
    return guarded([&] { *out = srfx::complexity(e->expr, srfx::ComplexityMap::unit()); });
}

srfx_status srfx_expr_eval(const srfx_expr* e, const double* x, size_t n_features, double* out)
{
    SRFX_REQUIRE(e);
    SRFX_REQUIRE(out);
    if (n_features > 0) SRFX_REQUIRE(x);
    return guarded([&] {
        if (e->expr.min_features() > n_features) throw srfx::DataError("expression uses more features than given");
        *out = srfx::eval_f64(e->expr, {x, n_features});
    });
}

srfx_status srfx_expr_eval_fixed(const srfx_expr* e, const double* x, size_t n_features, const srfx_fixed_spec* spec,
                                 const srfx_lut* const* luts, size_t n_luts, double* out)
{
    SRFX_REQUIRE(e);
    SRFX_REQUIRE(spec);
    SRFX_REQUIRE(out);
    if (n_features > 0) SRFX_REQUIRE(x);
    if (n_luts > 0) SRFX_REQUIRE(luts);
    return guarded([&] {
        if (e->expr.min_features() > n_features) throw srfx::DataError("expression uses more features than given");
        srfx::FunctionImpl impl = srfx::FunctionImpl::math();
        if (luts) {
            auto set = std::make_shared<srfx::LutSet>();
            for (size_t i = 0; i < n_luts; ++i) {
                if (!luts[i]) throw srfx::RuntimeError(fmt::format("lut {} is null", i));
                set->add(luts[i]->table);
            }
            impl = srfx::FunctionImpl::lut(std::move(set));
        }
        *out = srfx::to_f64(srfx::eval_fixed(e->expr, {x, n_features}, to_spec(*spec), impl));
    });
}

srfx_status srfx_lut_create(const char* func, double range_start, double range_end, size_t size,
                            const srfx_fixed_spec* value_spec, srfx_lut** out)
{
    SRFX_REQUIRE(func);
    SRFX_REQUIRE(value_spec);
    SRFX_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        srfx::LutSpec s;
        s.func = function_named(func);
        s.range_start = range_start;
        s.range_end = range_end;
        s.size = size;
        s.value_spec = to_spec(*value_spec);
        *out = new srfx_lut{srfx::LutTable(s)};
    });
}

void srfx_lut_free(srfx_lut* t)
{
    delete t;
}

srfx_status srfx_lut_eval(const srfx_lut* t, double x, double* out)
{
    SRFX_REQUIRE(t);
    SRFX_REQUIRE(out);
    return guarded([&] {
        const auto& spec = t->table.spec().value_spec;
        *out = srfx::to_f64(t->table.lookup(srfx::quantize(x, spec)));
    });
}

srfx_status srfx_lut_size(const srfx_lut* t, size_t* out)
{
    SRFX_REQUIRE(t);
    SRFX_REQUIRE(out);
    *out = t->table.spec().size;
    last_error.clear();
    return SRFX_OK;
}

srfx_status srfx_cost_tables_load(const char* path, srfx_cost_tables** out)
{
    SRFX_REQUIRE(path);
    SRFX_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const std::string p = path;
        *out = new srfx_cost_tables{p == "builtin" ? srfx::CostTables::builtin() : srfx::CostTables::load(p)};
    });
}

void srfx_cost_tables_free(srfx_cost_tables* t)
{
    delete t;
}

srfx_status srfx_cost_estimate(const srfx_cost_tables* t, const srfx_expr* e, const srfx_fixed_spec* spec,
                               size_t lut_size, srfx_cost* out)
{
    SRFX_REQUIRE(t);
    SRFX_REQUIRE(e);
    SRFX_REQUIRE(spec);
    SRFX_REQUIRE(out);
    return guarded([&] {
        const auto mode = lut_size ? srfx::CostMode::lut(lut_size) : srfx::CostMode::math();
        const auto p = srfx::estimate_latency(e->expr, t->tables, to_spec(*spec), mode);
        *out = srfx_cost{p.latency_cycles, p.latency_ns, p.dsp, p.lut};
    });
}

srfx_status srfx_cmd_search(const char* config_path, const srfx_run_options* opt)
{
    SRFX_REQUIRE(config_path);
    return guarded([&] {
        const auto r = run_options(opt);
        report_written(r, srfx::cmd_search(srfx::ExperimentConfig::load(config_path), r));
    });
}

srfx_status srfx_cmd_eval(const char* config_path, const char* model_path, const srfx_run_options* opt)
{
    SRFX_REQUIRE(config_path);
    SRFX_REQUIRE(model_path);
    return guarded([&] {
        const auto r = run_options(opt);
        report_written(r, srfx::cmd_eval(srfx::ExperimentConfig::load(config_path), model_path, r));
    });
}

srfx_status srfx_cmd_sweep(const char* config_path, const srfx_run_options* opt)
{
    SRFX_REQUIRE(config_path);
    return guarded([&] {
        const auto r = run_options(opt);
        report_written(r, srfx::cmd_sweep(srfx::ExperimentConfig::load(config_path), r));
    });
}

srfx_status srfx_cmd_lut_report(const char* func, const char* range, const srfx_fixed_spec* spec, size_t grid_points,
                                const srfx_run_options* opt)
{
    SRFX_REQUIRE(func);
    SRFX_REQUIRE(range);
    SRFX_REQUIRE(spec);
    return guarded([&] {
        const auto r = run_options(opt);
        const std::string dir = r.out_dir.empty() ? "out" : r.out_dir;
        report_written(r, srfx::cmd_lut_report(function_named(func), range, to_spec(*spec), grid_points, dir));
    });
}

srfx_status srfx_cmd_complexity_map(const char* cost_table, const srfx_fixed_spec* spec, const char* out_path,
                                    const srfx_run_options* opt)
{
    SRFX_REQUIRE(spec);
    SRFX_REQUIRE(out_path);
    return guarded([&] {
        const auto r = run_options(opt);
        report_written(r, srfx::cmd_complexity_map(cost_table ? cost_table : "builtin", to_spec(*spec), out_path));
    });
}

srfx_status srfx_cmd_report(const char* name, const char* config_path, const srfx_run_options* opt)
{
    SRFX_REQUIRE(name);
    SRFX_REQUIRE(config_path);
    return guarded([&] {
        const auto r = run_options(opt);
        report_written(r, srfx::cmd_report(name, srfx::ExperimentConfig::load(config_path), r));
    });
}

} // extern "C"
