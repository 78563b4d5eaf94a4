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
#include "srfx/lut.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace srfx {

inline constexpr double kClockPeriodNs = 5.0;  // 200 MHz
inline constexpr int kLookupCycles = 1;
inline constexpr int kLutCellBits = 64;  // storage heuristic: one LUT per 64 table bits

struct OpCost {
    int cycles = 0;
    int dsp = 0;
    int lut = 0;
    friend bool operator==(const OpCost&, const OpCost&) = default;
};

// Per-operator, per-format costs. Rows may use B = I = '*' as a wildcard that
// applies to any format lacking an exact row. Square without its own row is
// costed as a multiply.
class CostTables {
public:
    // <16,6> cycle counts from the latency-aware search study; DSP/LUT columns
    // are coarse heuristics (only orderings matter).
    static CostTables builtin();
    // Every operator 1 cycle, no resources, in the given bucket.
    static CostTables unit(const FixedSpec& spec);

    // Text rows "op, B, I, cycles, dsp, lut"; '#' comments and an optional
    // header row starting with "op" are skipped.
    static CostTables parse(std::string_view text);
    static CostTables load(const std::string& path);
    std::string to_text() const;

    void set(std::string_view op, int total_bits, int int_bits, OpCost cost);
    void set_wildcard(std::string_view op, OpCost cost);

    std::optional<OpCost> find(UnaryOp op, const FixedSpec& spec) const;
    std::optional<OpCost> find(BinaryOp op, const FixedSpec& spec) const;
    bool has_bucket(const FixedSpec& spec) const;  // exact rows only
    std::vector<std::string> operators_in_bucket(const FixedSpec& spec) const;

    int lookup_op_cycles() const { return kLookupCycles; }

    // Exact row, else wildcard row; no square-as-mul fallback.
    std::optional<OpCost> find_row(std::string_view op, const FixedSpec& spec) const;

private:
    std::map<std::tuple<std::string, int, int>, OpCost, std::less<>> rows_;  // wildcard: (op, 0, 0)
};

// Function realisation as seen by the cost model.
struct CostMode {
    FunctionMode mode = FunctionMode::Math;
    std::map<UnaryOp, std::size_t> lut_sizes;
    std::size_t default_lut_size = 1024;

    static CostMode math() { return {}; }
    static CostMode lut(std::size_t size = 1024) { return {FunctionMode::Lut, {}, size}; }
    static CostMode from(const FunctionImpl& impl);
    std::size_t lut_size(UnaryOp op) const;
};

struct PipelineEstimate {
    int latency_cycles = 0;
    double latency_ns = 0.0;
    int dsp = 0;
    int lut = 0;
    int initiation_interval = 1;
};

struct ResourceEstimate {
    int dsp = 0;
    int lut = 0;
};

// Critical-path latency with zero-cost leaves; resources summed over every
// node (fully spatial, II = 1). Throws ConfigError on an uncosted operator.
PipelineEstimate estimate_latency(const Expr& e, const CostTables& tables, const FixedSpec& spec,
                                  const CostMode& mode = CostMode::math());
ResourceEstimate estimate_resources(const Expr& e, const CostTables& tables, const FixedSpec& spec,
                                    const CostMode& mode = CostMode::math());

// Operator weight = cycles (at least 1); Const/Var weight 1. Requires an exact
// bucket for `spec`.
ComplexityMap generate_complexity_map(const CostTables& tables, const FixedSpec& spec);

} // namespace srfx
