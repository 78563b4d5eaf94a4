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

#include "srfx/cost_model.hpp"
#include "srfx/dataset.hpp"
#include "srfx/fixed_point.hpp"
#include "srfx/lut.hpp"
#include "srfx/search.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srfx {

enum class Family { Polynomial, Trigonometric, Exponential, Logarithmic, Custom };

std::string_view family_name(Family f);
Family parse_family(std::string_view s);

// Operator set for a named family; Custom returns an empty set.
OperatorSet family_operators(Family f);
int family_int_bits(Family f);  // 12 for exponential, 6 otherwise

// Sectioned key=value file; see configs/ for annotated examples.
struct ExperimentConfig {
    // [data]
    std::string data_path;
    DataFormat data_format = DataFormat::Auto;
    std::string aliases_path;
    std::size_t select_k = 6;  // 0 keeps every feature
    std::vector<std::string> features;  // explicit choice, overrides select_k
    double test_fraction = 0.2;
    std::uint64_t split_seed = 0;
    std::size_t max_samples = 0;  // 0 = all rows
    ForestOptions forest;

    // [search]
    Family family = Family::Trigonometric;
    SearchConfig search;  // ops are filled from family (or custom lists)
    std::vector<int> c_max_list{20};
    std::vector<std::uint64_t> seeds{0};
    bool latency_aware = false;
    bool compare_latency_aware = false;  // sweep both plain and latency-aware runs
    std::optional<FixedSpec> latency_spec;  // bucket for cycle weights; defaults to cost.reference
    std::string complexity_map_path;

    // [fixed]
    std::vector<FixedSpec> precisions;
    Overflow overflow = Overflow::Wrap;
    Rounding rounding = Rounding::Truncate;

    // [lut]
    std::vector<FunctionMode> modes{FunctionMode::Math};
    double lut_range_start = -4.0;
    double lut_range_end = 4.0;
    std::size_t lut_size = 1024;
    std::map<UnaryOp, LutSpec> lut_overrides;  // value_spec is replaced per precision

    // [cost]
    std::string cost_table_path = "builtin";
    FixedSpec cost_reference{16, 6};

    // [output]
    std::string out_dir = "out";
    std::string baseline_path;

    std::string base_dir;  // relative paths resolve against this

    static ExperimentConfig parse(std::string_view text, const std::string& base_dir = ".");
    static ExperimentConfig load(const std::string& path);

    void validate() const;  // throws ConfigError
    std::string canonical() const;
    std::string hash() const;  // 16 hex digits over canonical()

    std::string resolve(const std::string& path) const;
    CostTables cost_tables() const;
    ComplexityMap complexity_map() const;  // latency-aware map or unit weights
    SearchConfig search_config(int c_max, std::uint64_t seed) const;
    LutSpec lut_spec(UnaryOp op, const FixedSpec& value_spec) const;
    std::shared_ptr<LutSet> lut_set(const std::vector<UnaryOp>& funcs, const FixedSpec& value_spec) const;
};

} // namespace srfx
