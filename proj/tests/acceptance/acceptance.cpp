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

// Acceptance checks, one line per criterion.
//   srfx_acceptance [--only 1,4,6] [--dataset FILE]
// Criteria 7-9 need the jet dataset (--dataset or JET_DATASET); without it
// they are reported as SKIP and the process exits 77 when nothing else ran.

#include "srfx/commands.hpp"
#include "srfx/cost_model.hpp"
#include "srfx/errors.hpp"
#include "srfx/experiment.hpp"
#include "srfx/fixed_point.hpp"
#include "srfx/lut.hpp"
#include "srfx/metrics.hpp"
#include "srfx/search.hpp"

#include "support/random_expr.hpp"
#include "support/table_expressions.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>

using namespace srfx;
namespace fs = std::filesystem;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

Outcome pass_if(bool ok, std::string detail)
{
    return {ok ? Verdict::Pass : Verdict::Fail, std::move(detail)};
}

// ---- tolerances ----
constexpr double kC2Samples = 1e5;
constexpr double kC3StaircaseMin = 0.3;
constexpr int kC6Seeds = 3;
constexpr int kC6SeedsNeeded = 2;
constexpr double kC6Sigma = 0.01;
constexpr double kC7AucT = 0.89;
constexpr double kC7AucG = 0.86;
constexpr double kC7Accuracy = 0.68;
constexpr double kC8AucTolerance = 0.02;
constexpr double kC9AccuracyDrop = 0.02;
constexpr double kC11Exact = 1e-12;

const FixedSpec k16_6(16, 6);

Outcome c1_loss_identities()
{
    struct Case {
        double y_hat, y, loss;
    };
    const Case cases[] = {{1, 1, 0}, {0, 1, 1}, {0, -1, 1}, {-1, 1, 4}};
    int ok = 0;
    for (const auto& c : cases) ok += l2_margin_loss(c.y_hat, c.y) == c.loss;
    return pass_if(ok == 4, fmt::format("{}/4 exact", ok));
}

Outcome c2_fixed_point_bound()
{
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<int> bits(8, 24), ints(2, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_trunc = 0, worst_near = 0;  // in units of 2^-F
    std::size_t violations = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(kC2Samples); ++i) {
        const int B = bits(rng);
        const int I = std::min(ints(rng), B - 1);
        const FixedSpec t(B, I, Overflow::Wrap, Rounding::Truncate);
        const FixedSpec r(B, I, Overflow::Wrap, Rounding::RoundNearest);
        const double x = t.min_value() + unit(rng) * (t.max_value() - t.min_value());
        const double res = t.resolution();
        const double et = std::abs(to_f64(quantize(x, t)) - x);
        const double er = std::abs(to_f64(quantize(x, r)) - x);
        violations += (et > res) + (er > res / 2);
        worst_trunc = std::max(worst_trunc, et / res);
        worst_near = std::max(worst_near, er / res);
    }
    return pass_if(violations == 0, fmt::format("{} violations; worst truncate {:.3f}, round_nearest {:.3f} (x 2^-F)",
                                                violations, worst_trunc, worst_near));
}

Outcome c3_lut_error_law()
{
    struct Fn {
        UnaryOp op;
        double a, b, lipschitz;
    };
    const Fn fns[] = {{UnaryOp::Sin, -4, 4, 1.0}, {UnaryOp::Exp, -4, 2, std::exp(2.0)}};
    std::size_t checked = 0, failed = 0;
    double worst_ratio = 0;
    for (const auto& f : fns)
        for (std::size_t size : {8u, 64u, 1024u})
            for (const FixedSpec spec : {FixedSpec(12, 6), FixedSpec(16, 6)}) {
                LutSpec s{f.op, f.a, f.b, size, spec};
                const double bound = f.lipschitz * (f.b - f.a) / size + spec.resolution();
                const double dev = deviation_report(LutTable(s), 4001).max_abs_err;
                ++checked;
                failed += dev > bound;
                worst_ratio = std::max(worst_ratio, dev / bound);
            }
    // Independent staircase oracle: midpoint table of sin over [-4, 4] with 8 bins.
    double stair = 0;
    for (int i = 0; i <= 8000; ++i) {
        const double x = -4.0 + i * 1e-3;
        const int bin = std::min(7, static_cast<int>(std::floor(x + 4.0)));
        stair = std::max(stair, std::abs(std::sin(x) - std::sin(-4.0 + bin + 0.5)));
    }
    const double lib = deviation_report(LutTable(LutSpec{UnaryOp::Sin, -4, 4, 8, FixedSpec(16, 6)}), 8001).max_abs_err;
    const bool ok = failed == 0 && stair >= kC3StaircaseMin && lib >= kC3StaircaseMin;
    return pass_if(ok, fmt::format("{}/{} within L*range/size + 2^-F (worst {:.2f} of bound); size-8 sin max dev {:.3f} "
                                   "(oracle {:.3f}, need >= {})",
                                   checked - failed, checked, worst_ratio, lib, stair, kC3StaircaseMin));
}

Outcome c4_cost_anchors()
{
    const CostTables t = CostTables::builtin();
    const auto add = estimate_latency(parse("x0 + x1", 2), t, k16_6);
    const auto sin_math = estimate_latency(parse("sin(x0 + x1)", 2), t, k16_6);
    const auto sin_lut = estimate_latency(parse("sin(x0 + x1)", 2), t, k16_6, CostMode::lut());
    const auto tan = estimate_latency(parse("tan(x0)", 1), t, k16_6);
    const bool anchors = add.latency_cycles == 1 && add.latency_ns == 5.0 && sin_math.latency_cycles == 9 &&
                         sin_lut.latency_cycles == 2 && tan.latency_cycles == 48;
    std::mt19937_64 rng(4);
    testing::RandomExprOptions opt;
    opt.unary = {UnaryOp::Sin, UnaryOp::Tan, UnaryOp::Sinh, UnaryOp::Cosh, UnaryOp::Exp, UnaryOp::LogAbs, UnaryOp::Square};
    opt.binary = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const Expr e = testing::random_expr(rng, opt);
        bad += estimate_latency(e, t, k16_6, CostMode::lut()).latency_cycles >
               estimate_latency(e, t, k16_6).latency_cycles;
    }
    return pass_if(anchors && bad == 0,
                   fmt::format("x0+x1 {} cycle / {} ns, sin(x0+x1) {} math / {} lut, tan {}; lut > math in {}/10000",
                               add.latency_cycles, add.latency_ns, sin_math.latency_cycles, sin_lut.latency_cycles,
                               tan.latency_cycles, bad));
}

Outcome c5_latency_floor()
{
    // Polynomial search with a budget that only admits depth-1 models, then
    // cost the selected tagger. With sin available the margin loss prefers the
    // bounded sin(x0), which costs 8 cycles.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Matrix X(400, 3);
    std::vector<double> y(400);
    for (std::size_t i = 0; i < 400; ++i) {
        for (std::size_t j = 0; j < 3; ++j) X(i, j) = g(rng);
        y[i] = X(i, 0) + X(i, 1) > 0 ? 1.0 : -1.0;
    }
    SearchConfig cfg;
    cfg.ops = family_operators(Family::Polynomial);
    cfg.c_max = 3;
    cfg.population_size = 100;
    cfg.generations = 20;
    cfg.seed = 1;
    const Candidate best = select_model(evolve_tagger(X, y, cfg), cfg.c_max);
    const auto cost = estimate_latency(best.expr, CostTables::builtin(), k16_6);
    const bool depth1 = best.expr.kind() != NodeKind::Const && best.expr.kind() != NodeKind::Var &&
                        (best.expr.kind() == NodeKind::Unary
                             ? best.expr.lhs().kind() != NodeKind::Unary && best.expr.lhs().kind() != NodeKind::Binary
                             : (best.expr.lhs().kind() == NodeKind::Const || best.expr.lhs().kind() == NodeKind::Var) &&
                                   (best.expr.rhs().kind() == NodeKind::Const || best.expr.rhs().kind() == NodeKind::Var));
    return pass_if(depth1 && cost.latency_cycles == 1 && cost.latency_ns == 5.0,
                   fmt::format("selected '{}' -> {} cycle(s), {} ns", format(best.expr), cost.latency_cycles,
                               cost.latency_ns));
}

Outcome c6_recovery()
{
    const std::size_t n = 256;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    Matrix X(n, 2);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = g(rng);
        X(i, 1) = g(rng);
        y[i] = std::sin(2 * X(i, 0) + X(i, 1)) + kC6Sigma * g(rng);
    }
    const double target = 2 * kC6Sigma * kC6Sigma;
    int hits = 0;
    std::string per_seed;
    for (int seed = 0; seed < kC6Seeds; ++seed) {
        SearchConfig cfg;
        cfg.ops = family_operators(Family::Trigonometric);
        cfg.c_max = 20;
        cfg.population_size = 500;
        cfg.generations = 200;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.loss = LossKind::Squared;
        const Candidate best = select_model(evolve_tagger(X, y, cfg), cfg.c_max);
        hits += best.loss <= target;
        per_seed += fmt::format("{}seed {}: {:.2e}", seed ? ", " : "", seed, best.loss);
    }
    return pass_if(hits >= kC6SeedsNeeded,
                   fmt::format("{}/{} seeds reach mse <= {:.0e} ({})", hits, kC6Seeds, target, per_seed));
}

Outcome c10_pareto_determinism()
{
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g;
    Matrix X(300, 4);
    std::vector<double> y(300);
    for (std::size_t i = 0; i < 300; ++i) {
        for (std::size_t j = 0; j < 4; ++j) X(i, j) = g(rng);
        y[i] = std::sin(X(i, 0)) * X(i, 1) - X(i, 2) > 0 ? 1.0 : -1.0;
    }
    SearchConfig cfg;
    cfg.ops = family_operators(Family::Trigonometric);
    cfg.ops.max_subtree_complexity = 7;
    cfg.c_max = 25;
    cfg.population_size = 200;
    cfg.generations = 40;
    cfg.seed = 77;
    std::map<int, double> last;
    int regressions = 0, broken = 0, checked = 0;
    auto observe = [&](int, const HallOfFame& h) {
        for (const auto& [c, cand] : h.levels()) {
            ++checked;
            if (auto it = last.find(c); it != last.end() && cand.loss > it->second) ++regressions;
            last[c] = cand.loss;
            if (!check_constraints(cand.expr, cfg.ops, cfg.complexity) || cand.complexity > cfg.c_max ||
                cand.complexity != complexity(cand.expr, cfg.complexity))
                ++broken;
        }
        for (const auto& [c, loss] : last)
            if (!h.levels().count(c)) ++regressions;  // a level disappeared
    };
    const std::string a = evolve_tagger(X, y, cfg, observe).to_text();
    const std::string b = evolve_tagger(X, y, cfg).to_text();
    return pass_if(regressions == 0 && broken == 0 && a == b && !a.empty(),
                   fmt::format("{} level checks, {} loss increases, {} constraint breaks, runs {}", checked, regressions,
                               broken, a == b ? "byte-identical" : "differ"));
}

Outcome c11_auc_oracle()
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coarse(0, 20);
    std::normal_distribution<double> g;
    double worst = 0;
    int trials = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<double> s(200);
        std::vector<char> pos(200);
        for (std::size_t i = 0; i < 200; ++i) {
            // Half the trials use coarse scores to force ties.
            s[i] = t % 2 ? g(rng) : coarse(rng) / 4.0;
            pos[i] = static_cast<char>(rng() & 1);
        }
        double num = 0, den = 0;
        for (std::size_t i = 0; i < 200; ++i)
            for (std::size_t j = 0; j < 200; ++j)
                if (pos[i] && !pos[j]) {
                    den += 1;
                    num += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
                }
        if (den == 0) continue;
        worst = std::max(worst, std::abs(auc(s, pos) - num / den));
        ++trials;
    }
    return pass_if(trials == 100 && worst <= kC11Exact, fmt::format("{} trials, max |diff| {:.1e}", trials, worst));
}

// ---- dataset criteria ----

struct JetContext {
    ExperimentConfig cfg;
    std::string path;
};

ExperimentConfig jet_config(const std::string& dataset)
{
    ExperimentConfig cfg = ExperimentConfig::load((fs::path(SRFX_SOURCE_DIR) / "configs" / "jet_trig.cfg").string());
    cfg.data_path = fs::absolute(dataset).string();
    cfg.precisions = {k16_6};
    cfg.modes = {FunctionMode::Math};
    return cfg;
}

Model reference_model()
{
    return Model::load((fs::path(SRFX_SOURCE_DIR) / "configs" / "models" / "jet_trig.model").string());
}

Outcome c7_benchmark(const std::string& dataset)
{
    ExperimentConfig cfg = jet_config(dataset);
    const PreparedData data = prepare_data(cfg);
    if (data.train.n() + data.test.n() < 50000) return {Verdict::Fail, "dataset has fewer than 50k usable rows"};
    double best_t = 0, best_g = 0, best_acc = 0;
    std::string per_seed;
    for (std::uint64_t seed : {0u, 1u, 2u}) {
        const SearchConfig sc = cfg.search_config(20, seed);
        const auto taggers = train_multiclass(data.train.X, data.train.y, data.train.n_classes(), sc,
                                              data.train.class_names);
        std::vector<Expr> exprs;
        for (const auto& t : taggers) exprs.push_back(t.selected.expr);
        const Metrics m = compute_metrics(tagger_scores(exprs, data.test.X), data.test.y);
        const double g = m.auc[0].value_or(0), t = m.auc[2].value_or(0);
        best_g = std::max(best_g, g);
        best_t = std::max(best_t, t);
        best_acc = std::max(best_acc, m.accuracy);
        per_seed += fmt::format("{}seed {}: acc {:.3f} g {:.3f} t {:.3f}", seed ? "; " : "", seed, m.accuracy, g, t);
    }
    return pass_if(best_t >= kC7AucT && best_g >= kC7AucG && best_acc >= kC7Accuracy,
                   fmt::format("best t AUC {:.3f} (>= {}), g AUC {:.3f} (>= {}), accuracy {:.3f} (>= {}) [{}]", best_t,
                               kC7AucT, best_g, kC7AucG, best_acc, kC7Accuracy, per_seed));
}

Outcome c8_table_auc(const std::string& dataset)
{
    const ExperimentConfig cfg = jet_config(dataset);
    const Model model = reference_model();
    const PreparedData data = prepare_data(cfg, model.features);
    const Metrics m = compute_metrics(model_scores(model.expressions(), data.test.X, std::nullopt, FunctionImpl::math()),
                                      data.test.y);
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < testing::kTrigTaggers.size(); ++k) {
        const double got = m.auc[k].value_or(-1);
        ok = ok && std::abs(got - testing::kTrigTaggers[k].auc) <= kC8AucTolerance;
        detail += fmt::format("{}{} {:.3f} vs {:.3f}", k ? ", " : "", testing::kTrigTaggers[k].label, got,
                              testing::kTrigTaggers[k].auc);
    }
    return pass_if(ok, detail + fmt::format(" (tolerance {})", kC8AucTolerance));
}

Outcome c9_quantization(const std::string& dataset)
{
    const ExperimentConfig cfg = jet_config(dataset);
    const Model model = reference_model();
    const PreparedData data = prepare_data(cfg, model.features);
    const auto points = evaluate_model(model, cfg, data.test);
    const double drop = points[0].metrics.accuracy - points[1].metrics.accuracy;
    return pass_if(drop <= kC9AccuracyDrop, fmt::format("float {:.4f}, <16,6> math {:.4f}, drop {:.4f} (<= {})",
                                                        points[0].metrics.accuracy, points[1].metrics.accuracy, drop,
                                                        kC9AccuracyDrop));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    std::string dataset;
    app.add_option("--only", only, "criteria to run")->delimiter(',');
    app.add_option("--dataset", dataset, "jet dataset (defaults to $JET_DATASET)");
    CLI11_PARSE(app, argc, argv);
    if (dataset.empty())
        if (const char* env = std::getenv("JET_DATASET")) dataset = env;

    struct Criterion {
        int id;
        const char* name;
        bool needs_data;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "loss identities", false, c1_loss_identities},
        {2, "fixed-point bound", false, c2_fixed_point_bound},
        {3, "lut error law", false, c3_lut_error_law},
        {4, "cost-model anchors", false, c4_cost_anchors},
        {5, "latency floor", false, c5_latency_floor},
        {6, "search recovery", false, c6_recovery},
        {7, "benchmark reproduction", true, [&] { return c7_benchmark(dataset); }},
        {8, "table expression auc", true, [&] { return c8_table_auc(dataset); }},
        {9, "quantization robustness", true, [&] { return c9_quantization(dataset); }},
        {10, "pareto and determinism", false, c10_pareto_determinism},
        {11, "auc oracle", false, c11_auc_oracle},
    };

    int passed = 0, failed = 0, skipped = 0;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        if (c.needs_data && dataset.empty()) {
            o = {Verdict::Skip, "no dataset (set JET_DATASET or pass --dataset)"};
        } else {
            try {
                o = c.run();
            } catch (const std::exception& e) {
                o = {Verdict::Fail, fmt::format("error: {}", e.what())};
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
        fmt::print("criterion {:2} {} {}: {} [{:.1f} s]\n", c.id, tag, c.name, o.detail, secs);
        std::fflush(stdout);
        (o.verdict == Verdict::Pass ? passed : o.verdict == Verdict::Fail ? failed : skipped)++;
    }
    fmt::print("{} passed, {} failed, {} skipped\n", passed, failed, skipped);
    if (failed) return 1;
    if (passed == 0 && skipped > 0) return 77;
    return 0;
}
