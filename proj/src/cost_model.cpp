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

#include "srfx/cost_model.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace srfx {

CostTables CostTables::builtin()
{
    CostTables t;
    // op, cycles, dsp, lut at <16,6>
    t.set("add", 16, 6, {1, 0, 16});
    t.set("sub", 16, 6, {1, 0, 16});
    t.set("mul", 16, 6, {1, 1, 0});
    t.set("log_abs", 16, 6, {4, 2, 260});
    t.set("sin", 16, 6, {8, 4, 310});
    t.set("tan", 16, 6, {48, 14, 1450});
    t.set("cosh", 16, 6, {8, 6, 400});
    t.set("sinh", 16, 6, {9, 6, 420});
    t.set("exp", 16, 6, {3, 2, 190});
    // Estimated, not measured. gauss is a square feeding exp; div is a
    // pipelined restoring divider.
    t.set("gauss", 16, 6, {4, 3, 190});
    t.set("div", 16, 6, {12, 0, 380});
    return t;
}

CostTables CostTables::unit(const FixedSpec& spec)
{
    CostTables t;
    for (auto op : kAllBinaryOps) t.set(op_name(op), spec.total_bits(), spec.int_bits(), {1, 0, 0});
    for (auto op : kAllUnaryOps) t.set(op_name(op), spec.total_bits(), spec.int_bits(), {1, 0, 0});
    return t;
}

namespace {

void check_op_name(std::string_view op)
{
    if (!unary_op_from_name(op) && !binary_op_from_name(op))
        throw ConfigError(fmt::format("unknown operator '{}' in cost table", op));
}

std::string canonical(std::string_view op)
{
    if (auto b = binary_op_from_name(op)) return std::string(op_name(*b));
    return std::string(op);
}

} // namespace

void CostTables::set(std::string_view op, int total_bits, int int_bits, OpCost cost)
{
    check_op_name(op);
    if (cost.cycles < 0 || cost.dsp < 0 || cost.lut < 0)
        throw ConfigError(fmt::format("negative cost for operator '{}'", op));
    FixedSpec(total_bits, int_bits);  // validates the bucket
    rows_[{canonical(op), total_bits, int_bits}] = cost;
}

void CostTables::set_wildcard(std::string_view op, OpCost cost)
{
    check_op_name(op);
    if (cost.cycles < 0 || cost.dsp < 0 || cost.lut < 0)
        throw ConfigError(fmt::format("negative cost for operator '{}'", op));
    rows_[{canonical(op), 0, 0}] = cost;
}

CostTables CostTables::parse(std::string_view text)
{
    CostTables t;
    std::size_t line_no = 0;
    for (std::string_view line : detail::split(text, '\n')) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto cells = detail::split(line, ',');
        for (auto& c : cells) c = detail::trim(c);
        if (cells.size() != 6)
            throw ConfigError(fmt::format("cost table line {}: expected 6 columns, got {}", line_no, cells.size()));
        if (cells[0] == "op") continue;
        const OpCost cost{detail::parse_int(cells[3], "cycles"), detail::parse_int(cells[4], "dsp"),
                          detail::parse_int(cells[5], "lut")};
        try {
            if (cells[1] == "*" && cells[2] == "*") t.set_wildcard(cells[0], cost);
            else t.set(cells[0], detail::parse_int(cells[1], "B"), detail::parse_int(cells[2], "I"), cost);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("cost table line {}: {}", line_no, e.what()));
        }
    }
    return t;
}

CostTables CostTables::load(const std::string& path)
{
    return parse(detail::read_file(path, ErrorKind::Config));
}

std::string CostTables::to_text() const
{
    std::string out = "op, B, I, cycles, dsp, lut\n";
    for (const auto& [key, c] : rows_) {
        const auto& [op, b, i] = key;
        if (b == 0) out += fmt::format("{}, *, *, {}, {}, {}\n", op, c.cycles, c.dsp, c.lut);
        else out += fmt::format("{}, {}, {}, {}, {}, {}\n", op, b, i, c.cycles, c.dsp, c.lut);
    }
    return out;
}

std::optional<OpCost> CostTables::find_row(std::string_view op, const FixedSpec& spec) const
{
    const int b = spec.total_bits();
    const int i = spec.int_bits();
    if (auto it = rows_.find(std::make_tuple(std::string(op), b, i)); it != rows_.end()) return it->second;
    if (auto it = rows_.find(std::make_tuple(std::string(op), 0, 0)); it != rows_.end()) return it->second;
    return std::nullopt;
}

std::optional<OpCost> CostTables::find(UnaryOp op, const FixedSpec& spec) const
{
    auto c = find_row(op_name(op), spec);
    if (!c && op == UnaryOp::Square) return find(BinaryOp::Mul, spec);
    return c;
}

std::optional<OpCost> CostTables::find(BinaryOp op, const FixedSpec& spec) const
{
    return find_row(op_name(op), spec);
}

bool CostTables::has_bucket(const FixedSpec& spec) const
{
    return std::any_of(rows_.begin(), rows_.end(), [&](const auto& row) {
        return std::get<1>(row.first) == spec.total_bits() && std::get<2>(row.first) == spec.int_bits();
    });
}

std::vector<std::string> CostTables::operators_in_bucket(const FixedSpec& spec) const
{
    std::vector<std::string> out;
    for (const auto& [key, _] : rows_)
        if (std::get<1>(key) == spec.total_bits() && std::get<2>(key) == spec.int_bits())
            out.push_back(std::get<0>(key));
    return out;
}

CostMode CostMode::from(const FunctionImpl& impl)
{
    CostMode m;
    m.mode = impl.mode;
    if (impl.luts)
        for (auto op : impl.luts->functions()) m.lut_sizes[op] = impl.luts->find(op)->spec().size;
    return m;
}

std::size_t CostMode::lut_size(UnaryOp op) const
{
    auto it = lut_sizes.find(op);
    return it == lut_sizes.end() ? default_lut_size : it->second;
}

namespace {

struct NodeCost {
    int cycles;
    int dsp;
    int lut;
};

NodeCost node_cost(const ExprNode& n, const CostTables& tables, const FixedSpec& spec, const CostMode& mode)
{
    if (n.kind == NodeKind::Unary) {
        const auto op = static_cast<UnaryOp>(n.op);
        if (is_function(op) && mode.mode == FunctionMode::Lut) {
            const auto bits = mode.lut_size(op) * static_cast<std::size_t>(spec.total_bits());
            const int cells = static_cast<int>((bits + kLutCellBits - 1) / kLutCellBits);
            return {tables.lookup_op_cycles(), 0, cells};
        }
        auto c = tables.find(op, spec);
        if (!c) throw ConfigError(fmt::format("operator '{}' has no cost at {}", op_name(op), spec.to_string()));
        return {c->cycles, c->dsp, c->lut};
    }
    const auto op = static_cast<BinaryOp>(n.op);
    auto c = tables.find(op, spec);
    if (!c) throw ConfigError(fmt::format("operator '{}' has no cost at {}", op_name(op), spec.to_string()));
    return {c->cycles, c->dsp, c->lut};
}

struct Walk {
    int latency = 0;
    int dsp = 0;
    int lut = 0;
};

Walk walk(const ExprNode& n, const CostTables& tables, const FixedSpec& spec, const CostMode& mode)
{
    if (n.kind == NodeKind::Const || n.kind == NodeKind::Var) return {};
    const NodeCost self = node_cost(n, tables, spec, mode);
    Walk w = walk(*n.lhs, tables, spec, mode);
    if (n.rhs) {
        Walk r = walk(*n.rhs, tables, spec, mode);
        w.latency = std::max(w.latency, r.latency);
        w.dsp += r.dsp;
        w.lut += r.lut;
    }
    w.latency += self.cycles;
    w.dsp += self.dsp;
    w.lut += self.lut;
    return w;
}

} // namespace

PipelineEstimate estimate_latency(const Expr& e, const CostTables& tables, const FixedSpec& spec,
                                  const CostMode& mode)
{
    const Walk w = walk(e.node(), tables, spec, mode);
    PipelineEstimate est;
    est.latency_cycles = w.latency;
    est.latency_ns = w.latency * kClockPeriodNs;
    est.dsp = w.dsp;
    est.lut = w.lut;
    est.initiation_interval = 1;
    return est;
}

ResourceEstimate estimate_resources(const Expr& e, const CostTables& tables, const FixedSpec& spec,
                                    const CostMode& mode)
{
    const Walk w = walk(e.node(), tables, spec, mode);
    return {w.dsp, w.lut};
}

ComplexityMap generate_complexity_map(const CostTables& tables, const FixedSpec& spec)
{
    if (!tables.has_bucket(spec))
        throw ConfigError(fmt::format("cost table has no bucket for {}", spec.to_string()));
    ComplexityMap m = ComplexityMap::without_operators();
    for (auto op : kAllBinaryOps)
        if (auto c = tables.find(op, spec)) m.set(op, std::max(1, c->cycles));
    // Square is left unset unless it has its own row; ComplexityMap then
    // falls back to the mul weight.
    for (auto op : kAllUnaryOps)
        if (auto c = tables.find_row(op_name(op), spec)) m.set(op, std::max(1, c->cycles));
    return m;
}

} // namespace srfx
