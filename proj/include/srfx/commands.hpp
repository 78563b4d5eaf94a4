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
#include "srfx/experiment.hpp"
#include "srfx/metrics.hpp"
#include "srfx/search.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srfx {

struct TaggerModel {
    std::string class_name;
    Expr expr = Expr::constant(0.0);
    std::optional<int> complexity;
    std::optional<double> loss;
};

// Selected taggers plus the preprocessing needed to reproduce their inputs.
// Text layout: "key = value" header lines, then a "[taggers]" line followed
// by "class<TAB>complexity<TAB>loss<TAB>expression" rows ('-' for unknown).
// Expressions use the names listed in `features`.
struct Model {
    std::vector<std::string> features;
    std::optional<StandardizationParams> standardization;  // fit on the train split when absent
    std::vector<TaggerModel> taggers;
    std::string config_hash;
    std::optional<std::uint64_t> seed;
    std::optional<int> c_max;
    std::string family;
    bool latency_aware = false;

    FeatureAliases aliases() const;  // feature name -> column of the model input
    std::vector<Expr> expressions() const;
    std::vector<UnaryOp> functions() const;  // unary functions used by any tagger

    std::string to_text() const;
    static Model parse(std::string_view text);
    static Model load(const std::string& path);
};

// Train/test split restricted to the chosen features and standardized with
// training statistics (or the given ones).
struct PreparedData {
    Dataset train;
    Dataset test;
    StandardizationParams standardization;
    std::vector<double> importance;  // empty unless features were selected here
};

// `features` picks columns by name (or x<i>); when empty the config's
// explicit list or forest selection decides.
PreparedData prepare_data(const ExperimentConfig& cfg, const std::vector<std::string>& features = {},
                          const std::optional<StandardizationParams>& standardization = std::nullopt);

struct CostSummary {
    int latency_cycles = 0;  // slowest tagger; taggers run side by side
    double latency_ns = 0.0;
    int dsp = 0;             // summed over taggers
    int lut = 0;
    std::string bucket;      // cost-table bucket used, e.g. "<16,6>"
    std::vector<PipelineEstimate> per_tagger;
};

struct EvalPoint {
    std::optional<FixedSpec> spec;  // nullopt = double precision reference
    FunctionMode mode = FunctionMode::Math;
    Metrics metrics;
    std::optional<double> relative_accuracy;
    std::optional<CostSummary> cost;
};

CostSummary estimate_model_cost(const std::vector<Expr>& taggers, const CostTables& tables, const FixedSpec& spec,
                                const FixedSpec& fallback, const CostMode& mode);

// Scores with the given implementation; spec nullopt means double precision.
Matrix model_scores(const std::vector<Expr>& taggers, const Matrix& X, const std::optional<FixedSpec>& spec,
                    const FunctionImpl& impl);

// Reference point first, then every (precision, mode) pair of the config.
std::vector<EvalPoint> evaluate_model(const Model& model, const ExperimentConfig& cfg, const Dataset& test);

struct RunOptions {
    std::optional<std::uint64_t> seed;  // replaces the config's seed list
    std::string out_dir;                // replaces [output] dir
    std::function<void(std::string_view)> log;
};

// Each writes its outputs below the output directory and returns the paths
// written, in order.
std::vector<std::string> cmd_search(const ExperimentConfig& cfg, const RunOptions& opt);
std::vector<std::string> cmd_eval(const ExperimentConfig& cfg, const std::string& model_path, const RunOptions& opt);
std::vector<std::string> cmd_sweep(const ExperimentConfig& cfg, const RunOptions& opt);
std::vector<std::string> cmd_lut_report(UnaryOp func, std::string_view range, const FixedSpec& spec,
                                        std::size_t grid_points, const std::string& out_dir);
std::vector<std::string> cmd_complexity_map(const std::string& cost_table, const FixedSpec& spec,
                                            const std::string& out_path);
// Templates: fig1, fig2, fig3, fig5.
std::vector<std::string> cmd_report(std::string_view name, const ExperimentConfig& cfg, const RunOptions& opt);

} // namespace srfx
