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

#include "srfx/dataset.hpp"
#include "srfx/expr.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace srfx {

// Margin loss for +-1 tagger labels; squared error for regression targets.
enum class LossKind { Margin, Squared };

std::string_view loss_name(LossKind k);
LossKind parse_loss_kind(std::string_view s);

struct MutationWeights {
    double replace = 1.0;   // swap an operator for another of the same arity
    double perturb = 2.0;   // scale a constant
    double insert = 1.0;    // wrap a subtree in a new operator
    double remove = 1.0;    // promote a child over its parent
    double append = 1.0;    // grow a leaf into a small subtree
};

struct SearchConfig {
    OperatorSet ops;
    ComplexityMap complexity;
    int c_max = 20;
    int population_size = 400;  // total over all islands
    int generations = 100;
    int tournament_size = 8;
    MutationWeights mutation;
    double crossover_probability = 0.1;
    double parsimony_tolerance = 0.0;  // losses within this of the best count as tied in select_model
    std::uint64_t seed = 0;
    int islands = 4;
    LossKind loss = LossKind::Margin;
    int constant_iterations = 3;  // coordinate sweeps per optimization
    int constant_restarts = 2;
    int max_retries = 16;         // mutation/crossover resampling budget

    void validate() const;  // throws ConfigError
    int island_size() const;
};

struct Candidate {
    Expr expr = Expr::constant(0.0);
    double loss = 0.0;
    int complexity = 0;
};

// Best candidate per complexity level 1..c_max.
class HallOfFame {
public:
    explicit HallOfFame(int c_max = 0) : c_max_(c_max) {}

    // Stores c when its level is empty or c.loss is strictly lower. Candidates
    // with non-finite loss or complexity outside 1..c_max are ignored.
    bool offer(const Candidate& c);
    // Loss that a candidate at `level` has to beat (inf when empty).
    double bar(int level) const;

    const std::map<int, Candidate>& levels() const { return levels_; }
    int c_max() const { return c_max_; }
    bool empty() const { return levels_.empty(); }

    // Entries in increasing complexity with strictly decreasing loss.
    std::vector<Candidate> pareto_front() const;

    // One line per level: complexity<TAB>loss<TAB>expression.
    std::string to_text(const FeatureAliases* aliases = nullptr) const;
    // Complexities and losses are taken from the file as written.
    static HallOfFame parse(std::string_view text, std::size_t n_features, const FeatureAliases* aliases = nullptr);

private:
    int c_max_;
    std::map<int, Candidate> levels_;
};

double l2_margin_loss(double y_hat, double y);
double squared_loss(double y_hat, double y);

// Mean per-sample loss; +inf when any prediction is non-finite.
double tagger_objective(const Expr& e, const Matrix& X, std::span<const double> y, LossKind kind = LossKind::Margin);

using Rng = std::mt19937_64;

// Random tree built from cfg.ops with complexity <= limit that passes the
// constraint check; constants drawn from N(0, 1).
Expr random_tree(const SearchConfig& cfg, std::size_t n_features, int limit, Rng& rng);

Expr mutate(const Expr& e, const SearchConfig& cfg, std::size_t n_features, Rng& rng);
std::pair<Expr, Expr> crossover(const Expr& a, const Expr& b, const SearchConfig& cfg, Rng& rng);

// Coordinate-wise golden-section search over the constants, then random
// restarts around the incumbent. The returned loss never exceeds the input's.
Expr optimize_constants(const Expr& e, const Matrix& X, std::span<const double> y, int iterations,
                        LossKind kind = LossKind::Margin, int restarts = 0, std::uint64_t seed = 0);

// Called after every generation (generation 0 is the initial population).
using SearchObserver = std::function<void(int generation, const HallOfFame& hof)>;

HallOfFame evolve_tagger(const Matrix& X, std::span<const double> y, const SearchConfig& cfg,
                         const SearchObserver& observer = {});

// Lowest loss among levels <= c_max; ties (within tolerance) go to the lower
// complexity. Throws RuntimeError when no level qualifies.
Candidate select_model(const HallOfFame& hof, int c_max, double tolerance = 0.0);

struct TaggerResult {
    std::string class_name;
    HallOfFame hof;
    Candidate selected;
};

// One independent search per class with +1 for the class and -1 otherwise.
std::vector<TaggerResult> train_multiclass(const Matrix& X, std::span<const int> y, std::size_t n_classes,
                                           const SearchConfig& cfg, const std::vector<std::string>& class_names = {},
                                           const std::function<void(std::size_t, int, const HallOfFame&)>& observer = {});

std::vector<double> one_vs_rest(std::span<const int> y, int positive);

// Scores of each tagger on every sample, one column per tagger.
Matrix tagger_scores(std::span<const Expr> taggers, const Matrix& X);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace srfx
