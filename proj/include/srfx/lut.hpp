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

#pragma once

#include "srfx/expr.hpp"
#include "srfx/fixed_point.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace srfx {

// Table over [range_start, range_end] with `size` equal-width bins. Entries
// hold the function sampled at bin midpoints, quantized to value_spec.
struct LutSpec {
    UnaryOp func = UnaryOp::Sin;
    double range_start = -4.0;
    double range_end = 4.0;
    std::size_t size = 1024;
    FixedSpec value_spec{16, 6};

    void validate() const;  // throws ConfigError

    // "[start, end; size]"
    std::string range_string() const;
};

// Parses the "[start, end; size]" notation into an otherwise default spec.
LutSpec parse_lut_range(std::string_view text, UnaryOp func, const FixedSpec& value_spec);

class LutTable {
public:
    explicit LutTable(LutSpec spec);

    const LutSpec& spec() const { return spec_; }
    const std::vector<FixedValue>& entries() const { return entries_; }

    std::size_t index_of(double x) const;  // clamped to [0, size-1]
    FixedValue lookup(const FixedValue& v) const;

    // Left boundary of bin k (k == size gives range_end).
    double bin_edge(std::size_t k) const;
    double bin_midpoint(std::size_t k) const;

private:
    LutSpec spec_;
    std::vector<FixedValue> entries_;
};

LutTable build_table(const LutSpec& spec);
FixedValue lookup(const LutTable& t, const FixedValue& v);

struct DeviationPoint {
    double x;       // grid point
    double x_in;    // grid point as seen by hardware (quantized)
    double truth;   // f(x_in) in double precision
    double approx;  // table output
    double deviation;
};

struct DeviationReport {
    double max_abs_err = 0.0;
    double mean_abs_err = 0.0;
    std::vector<DeviationPoint> points;
};

// Uniform grid over [start, end] (both ends included). Each point is
// quantized to the table's value format before lookup, and the reference is
// the double-precision function at that same quantized input.
DeviationReport deviation_report(const LutTable& t, std::size_t grid_points);

// Set of tables keyed by function, used for LUT-mode evaluation.
class LutSet {
public:
    void add(LutTable table);
    const LutTable* find(UnaryOp op) const;
    std::vector<UnaryOp> functions() const;
    bool empty() const { return tables_.empty(); }

private:
    std::map<UnaryOp, LutTable> tables_;
};

enum class FunctionMode { Math, Lut };

std::string_view mode_name(FunctionMode m);
FunctionMode parse_function_mode(std::string_view s);

// How unary functions are realised when evaluating in fixed point.
struct FunctionImpl {
    FunctionMode mode = FunctionMode::Math;
    std::shared_ptr<const LutSet> luts;

    static FunctionImpl math() { return {}; }
    static FunctionImpl lut(std::shared_ptr<const LutSet> set) { return {FunctionMode::Lut, std::move(set)}; }
};

} // namespace srfx
