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

#include "srfx/lut.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace srfx {

void LutSpec::validate() const
{
    if (!std::isfinite(range_start) || !std::isfinite(range_end) || !(range_start < range_end))
        throw ConfigError(fmt::format("LUT range [{}, {}] must satisfy start < end", range_start, range_end));
    if (size < 2 || (size & (size - 1)) != 0)
        throw ConfigError(fmt::format("LUT size {} must be a power of two >= 2", size));
    if (!is_function(func)) throw ConfigError("square is arithmetic and has no lookup table");
}

std::string LutSpec::range_string() const { return fmt::format("[{}, {}; {}]", range_start, range_end, size); }

LutSpec parse_lut_range(std::string_view text, UnaryOp func, const FixedSpec& value_spec)
{
    auto s = detail::trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ConfigError(fmt::format("LUT config '{}' must look like [start, end; size]", text));
    s = s.substr(1, s.size() - 2);
    const auto semi = s.find(';');
    if (semi == std::string_view::npos)
        throw ConfigError(fmt::format("LUT config '{}' is missing '; size'", text));
    auto range = detail::split(s.substr(0, semi), ',');
    if (range.size() != 2) throw ConfigError(fmt::format("LUT config '{}' needs start, end", text));
    LutSpec spec;
    spec.func = func;
    spec.range_start = detail::parse_double(range[0], "LUT range start");
    spec.range_end = detail::parse_double(range[1], "LUT range end");
    const int size = detail::parse_int(s.substr(semi + 1), "LUT size");
    if (size < 0) throw ConfigError("LUT size must be positive");
    spec.size = static_cast<std::size_t>(size);
    spec.value_spec = value_spec;
    spec.validate();
    return spec;
}

LutTable::LutTable(LutSpec spec) : spec_(spec)
{
    spec_.validate();
    entries_.reserve(spec_.size);
    for (std::size_t k = 0; k < spec_.size; ++k)
        entries_.push_back(quantize(apply(spec_.func, bin_midpoint(k)), spec_.value_spec));
}

double LutTable::bin_edge(std::size_t k) const
{
    const double width = spec_.range_end - spec_.range_start;
    return spec_.range_start + width * static_cast<double>(k) / static_cast<double>(spec_.size);
}

double LutTable::bin_midpoint(std::size_t k) const
{
    const double width = spec_.range_end - spec_.range_start;
    return spec_.range_start + (static_cast<double>(k) + 0.5) * width / static_cast<double>(spec_.size);
}

std::size_t LutTable::index_of(double x) const
{
    const double pos = std::floor((x - spec_.range_start) * static_cast<double>(spec_.size) /
                                  (spec_.range_end - spec_.range_start));
    if (!(pos > 0.0)) return 0;  // also catches NaN
    if (pos >= static_cast<double>(spec_.size - 1)) return spec_.size - 1;
    return static_cast<std::size_t>(pos);
}

FixedValue LutTable::lookup(const FixedValue& v) const { return entries_[index_of(v.to_f64())]; }

LutTable build_table(const LutSpec& spec) { return LutTable(spec); }

FixedValue lookup(const LutTable& t, const FixedValue& v) { return t.lookup(v); }

DeviationReport deviation_report(const LutTable& t, std::size_t grid_points)
{
    if (grid_points < 2) throw ConfigError("deviation grid needs at least 2 points");
    const LutSpec& s = t.spec();
    DeviationReport report;
    report.points.reserve(grid_points);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = s.range_start +
                         (s.range_end - s.range_start) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const FixedValue xq = quantize(x, s.value_spec);
        DeviationPoint p;
        p.x = x;
        p.x_in = xq.to_f64();
        p.truth = apply(s.func, p.x_in);
        p.approx = t.lookup(xq).to_f64();
        p.deviation = p.approx - p.truth;
        const double err = std::fabs(p.deviation);
        report.max_abs_err = std::max(report.max_abs_err, err);
        sum += err;
        report.points.push_back(p);
    }
    report.mean_abs_err = sum / static_cast<double>(grid_points);
    return report;
}

void LutSet::add(LutTable table)
{
    const UnaryOp op = table.spec().func;
    tables_.insert_or_assign(op, std::move(table));
}

const LutTable* LutSet::find(UnaryOp op) const
{
    auto it = tables_.find(op);
    return it == tables_.end() ? nullptr : &it->second;
}

std::vector<UnaryOp> LutSet::functions() const
{
    std::vector<UnaryOp> out;
    for (const auto& [op, _] : tables_) out.push_back(op);
    return out;
}

std::string_view mode_name(FunctionMode m) { return m == FunctionMode::Math ? "math" : "lut"; }

FunctionMode parse_function_mode(std::string_view s)
{
    s = detail::trim(s);
    if (s == "math") return FunctionMode::Math;
    if (s == "lut") return FunctionMode::Lut;
    throw ConfigError(fmt::format("function mode must be 'math' or 'lut', got '{}'", s));
}

} // namespace srfx
