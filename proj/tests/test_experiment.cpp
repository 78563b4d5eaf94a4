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

#include "doctest.h"

#include "srfx/commands.hpp"
#include "srfx/errors.hpp"
#include "srfx/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace srfx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name)
{
    fs::path p = fs::temp_directory_path() / "srfx_test_experiment" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Five classes; f0 carries the label, the rest is noise.
fs::path write_toy_csv(const fs::path& dir, std::size_t n = 500)
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::string text = "f0,f1,f2,f3,label\n";
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 5);
        text += std::to_string(label + 0.2 * noise(rng)) + "," + std::to_string(noise(rng)) + "," +
                std::to_string(noise(rng)) + "," + std::to_string(noise(rng)) + "," + std::to_string(label) + "\n";
    }
    const fs::path p = dir / "toy.csv";
    std::ofstream(p) << text;
    return p;
}

std::string toy_config(const fs::path& data, const std::string& extra_search = "", const std::string& fixed = "")
{
    return "[data]\npath = " + data.string() +
           "\nselect_features = 0\n"
           "[search]\nfamily = trigonometric\npopulation = 40\ngenerations = 4\nislands = 2\ntournament = 4\n" +
           extra_search + "[fixed]\n" + fixed;
}

} // namespace

TEST_CASE("config defaults follow the family")
{
    auto c = ExperimentConfig::parse("[search]\nfamily = trigonometric\n");
    CHECK(c.search.ops.unary == std::vector<UnaryOp>{UnaryOp::Sin});
    CHECK(c.search.ops.binary == std::vector<BinaryOp>{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul});
    CHECK_FALSE(c.search.ops.nesting_allowed);
    REQUIRE(c.precisions.size() == 1);
    CHECK(c.precisions[0].total_bits() == 16);
    CHECK(c.precisions[0].int_bits() == 6);

    auto e = ExperimentConfig::parse("[search]\nfamily = exponential\n[fixed]\nbits = 12, 18, 24\n");
    REQUIRE(e.precisions.size() == 3);
    for (const auto& p : e.precisions) CHECK(p.int_bits() == 12);
    CHECK(e.precisions[1].total_bits() == 18);

    auto p = ExperimentConfig::parse("[search]\nfamily = polynomial\n");
    CHECK(p.search.ops.unary.empty());
}

TEST_CASE("config precisions, luts and custom operators")
{
    auto c = ExperimentConfig::parse("[search]\nfamily = custom\nunary = sin, exp\nbinary = add, mul\nc_max = 10, 20\n"
                                     "[fixed]\nprecisions = <12,6>; <20, 8>\noverflow = saturate\n"
                                     "[lut]\nmode = both\nsize = 64\nexp = [-4, 2; 256]\n");
    CHECK(c.search.ops.unary == std::vector<UnaryOp>{UnaryOp::Sin, UnaryOp::Exp});
    CHECK(c.search.ops.binary == std::vector<BinaryOp>{BinaryOp::Add, BinaryOp::Mul});
    CHECK(c.c_max_list == std::vector<int>{10, 20});
    REQUIRE(c.precisions.size() == 2);
    CHECK(c.precisions[1].int_bits() == 8);
    CHECK(c.modes.size() == 2);
    CHECK(c.lut_spec(UnaryOp::Sin, FixedSpec(16, 6)).size == 64);
    const LutSpec ex = c.lut_spec(UnaryOp::Exp, FixedSpec(12, 6));
    CHECK(ex.size == 256);
    CHECK(ex.range_end == 2.0);
    CHECK(ex.value_spec.total_bits() == 12);
    auto set = c.lut_set({UnaryOp::Sin, UnaryOp::Exp}, FixedSpec(16, 6));
    CHECK(set->find(UnaryOp::Sin) != nullptr);
    CHECK(set->find(UnaryOp::Exp) != nullptr);
}

TEST_CASE("config errors carry line numbers")
{
    auto fails_with = [](const char* text, const char* fragment) {
        try {
            ExperimentConfig::parse(text);
            FAIL("expected ConfigError for: " << text);
        } catch (const ConfigError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
        }
    };
    fails_with("[search]\nfamily = trigonometric\npopulatoin = 10\n", "line 3");
    fails_with("[serch]\n", "line 1");
    fails_with("[search]\ngenerations = 1\ngenerations = 2\n", "duplicate");
    fails_with("[search]\ngenerations = many\n", "line 2");
    fails_with("[search]\nunary = sin\n", "custom");
    fails_with("[search]\nfamily = hyperbolic\n", "hyperbolic");
    fails_with("[search]\nlatency_aware = true\n[lut]\nmode = lut\n", "LUT");
    fails_with("[lut]\nsize = 100\n", "power of two");
    fails_with("[fixed]\nbits = 16\nprecisions = <16,6>\n", "either");
    fails_with("[data]\ntest_fraction = 1.5\n", "test_fraction");
}

TEST_CASE("config hash ignores comments and layout")
{
    const auto a = ExperimentConfig::parse("[search]\ngenerations = 5\n");
    const auto b = ExperimentConfig::parse("# note\n[search]\n   generations=5   # inline\n\n");
    const auto c = ExperimentConfig::parse("[search]\ngenerations = 6\n");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != c.hash());
    CHECK(a.hash().size() == 16);
}

TEST_CASE("latency-aware weights equal cycle counts at the reference precision")
{
    auto c = ExperimentConfig::parse("[search]\nfamily = trigonometric\nlatency_aware = true\n");
    const ComplexityMap m = c.complexity_map();
    const CostTables t = CostTables::builtin();
    CHECK(m == generate_complexity_map(t, FixedSpec(16, 6)));
    CHECK(m.weight(UnaryOp::Sin) == t.find_row("sin", FixedSpec(16, 6))->cycles);
    CHECK(m.weight(BinaryOp::Mul) == t.find_row("mul", FixedSpec(16, 6))->cycles);

    auto plain = ExperimentConfig::parse("[search]\nfamily = trigonometric\n");
    CHECK(plain.complexity_map() == ComplexityMap::unit());
}

TEST_CASE("polynomial family never produces transcendental operators")
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    Matrix X(200, 2);
    std::vector<double> y(200);
    for (std::size_t i = 0; i < 200; ++i) {
        X(i, 0) = nd(rng);
        X(i, 1) = nd(rng);
        y[i] = std::sin(X(i, 0)) > 0 ? 1.0 : -1.0;
    }
    auto c = ExperimentConfig::parse("[search]\nfamily = polynomial\npopulation = 60\ngenerations = 10\nislands = 2\n");
    const HallOfFame hof = evolve_tagger(X, y, c.search_config(20, 1));
    std::function<bool(const Expr&)> pure = [&](const Expr& e) {
        if (e.kind() == NodeKind::Unary) return false;
        if (e.kind() == NodeKind::Binary) return pure(e.lhs()) && pure(e.rhs());
        return true;
    };
    REQUIRE_FALSE(hof.levels().empty());
    for (const auto& [cx, cand] : hof.levels()) CHECK_MESSAGE(pure(cand.expr), format(cand.expr));
}

TEST_CASE("model text round trip")
{
    Model m;
    m.features = {"mass", "x7", "pt"};
    m.standardization = StandardizationParams{{0.5, 1.0, -2.0}, {1.0, 2.0, 0.25}};
    m.config_hash = "00000000deadbeef";
    m.seed = 4;
    m.c_max = 20;
    m.family = "trigonometric";
    m.taggers.push_back({"g", parse("sin(x0 + x2) * 0.5", 3), 6, 0.25});
    m.taggers.push_back({"q", parse("x1 - 1", 3), std::nullopt, std::nullopt});
    const std::string text = m.to_text();
    CHECK(text.find("sin(mass + pt)") != std::string::npos);
    const Model r = Model::parse(text);
    CHECK(r.features == m.features);
    CHECK(r.standardization->mean == m.standardization->mean);
    CHECK(r.standardization->std == m.standardization->std);
    REQUIRE(r.taggers.size() == 2);
    CHECK(r.taggers[0].expr == m.taggers[0].expr);
    CHECK(r.taggers[0].complexity == 6);
    CHECK(r.taggers[1].expr == m.taggers[1].expr);
    CHECK_FALSE(r.taggers[1].loss.has_value());
    CHECK(r.seed == 4u);
    CHECK(r.to_text() == text);
    CHECK(r.functions() == std::vector<UnaryOp>{UnaryOp::Sin});
}

TEST_CASE("model parse errors")
{
    CHECK_THROWS_AS(Model::parse("features = a\n"), DataError);
    CHECK_THROWS_AS(Model::parse("[taggers]\ng\t-\t-\tx0\n"), DataError);
    CHECK_THROWS_AS(Model::parse("features = a\nbogus = 1\n[taggers]\ng\t-\t-\ta\n"), DataError);
    CHECK_THROWS_AS(Model::parse("features = a\n[taggers]\ng\t-\t-\tb\n"), DataError);
    CHECK_THROWS_AS(Model::parse("features = a\n[taggers]\ng x0\n"), DataError);
    CHECK_THROWS_AS(Model::load("/nonexistent/model.txt"), DataError);
}

TEST_CASE("prepare_data standardizes on the training split")
{
    const fs::path dir = scratch("prepare");
    auto cfg = ExperimentConfig::parse(toy_config(write_toy_csv(dir)));
    const PreparedData d = prepare_data(cfg);
    CHECK(d.train.n() == 400);
    CHECK(d.test.n() == 100);
    CHECK(d.train.d() == 4);
    for (std::size_t j = 0; j < d.train.d(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < d.train.n(); ++i) s += d.train.X(i, j);
        CHECK(std::abs(s / d.train.n()) < 1e-9);
    }
    const PreparedData named = prepare_data(cfg, {"f2", "x0"});
    CHECK(named.train.feature_names == std::vector<std::string>{"f2", "f0"});
    CHECK_THROWS_AS(prepare_data(cfg, {"nope"}), DataError);

    auto sel = ExperimentConfig::parse("[data]\npath = " + (dir / "toy.csv").string() +
                                       "\nselect_features = 1\nforest_trees = 8\n");
    const PreparedData one = prepare_data(sel);
    CHECK(one.train.feature_names == std::vector<std::string>{"f0"});
    CHECK(one.importance.size() == 4);
}

TEST_CASE("constant model accuracy is the majority share at every precision")
{
    const fs::path dir = scratch("constant");
    auto cfg = ExperimentConfig::parse(toy_config(write_toy_csv(dir), "", "bits = 8, 12, 16, 24\n"));
    const PreparedData d = prepare_data(cfg);
    Model m;
    m.features = d.train.feature_names;
    m.standardization = d.standardization;
    for (const auto& c : d.train.class_names) m.taggers.push_back({c, Expr::constant(0.5), 1, std::nullopt});
    const auto points = evaluate_model(m, cfg, d.test);
    REQUIRE(points.size() == 5);
    // Every score ties; argmax picks class 0, so accuracy is class 0's share.
    std::size_t zeros = 0;
    for (int v : d.test.y) zeros += v == 0;
    for (const auto& p : points) CHECK(p.metrics.accuracy == doctest::Approx(double(zeros) / d.test.n()).epsilon(1e-12));
}

TEST_CASE("latency is constant across bit widths and luts are never slower")
{
    const fs::path dir = scratch("latency");
    auto cfg = ExperimentConfig::parse(toy_config(write_toy_csv(dir), "", "bits = 10, 16, 20, 28\n[lut]\nmode = both\n"));
    const PreparedData d = prepare_data(cfg);
    Model m;
    m.features = d.train.feature_names;
    m.standardization = d.standardization;
    for (std::size_t k = 0; k < d.train.class_names.size(); ++k)
        m.taggers.push_back({d.train.class_names[k], parse("sin(x0 * 2 + x" + std::to_string(k % 4) + ") - 0.3", 4)});
    const auto points = evaluate_model(m, cfg, d.test);
    REQUIRE(points.size() == 1 + 4 * 2);
    std::optional<int> math_latency, lut_latency;
    for (const auto& p : points) {
        if (!p.spec) continue;
        REQUIRE(p.cost);
        auto& slot = p.mode == FunctionMode::Math ? math_latency : lut_latency;
        if (!slot) slot = p.cost->latency_cycles;
        CHECK(p.cost->latency_cycles == *slot);
        CHECK(p.cost->bucket == "<16,6>");
    }
    CHECK(*lut_latency <= *math_latency);
}

TEST_CASE("search and eval commands are deterministic and self-describing")
{
    const fs::path dir = scratch("commands");
    const fs::path data = write_toy_csv(dir, 300);
    const std::string text = toy_config(data, "c_max = 12\nseeds = 3\n", "bits = 12, 16\n");
    const auto cfg = ExperimentConfig::parse(text);

    RunOptions a;
    a.out_dir = (dir / "a").string();
    RunOptions b = a;
    b.out_dir = (dir / "b").string();
    std::vector<std::string> log;
    a.log = [&](std::string_view s) { log.emplace_back(s); };
    const auto pa = cmd_search(cfg, a);
    const auto pb = cmd_search(cfg, b);
    REQUIRE(pa.size() == pb.size());
    CHECK_FALSE(log.empty());
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(slurp(pa[i]) == slurp(pb[i]));

    const fs::path model = dir / "a" / "search" / "trigonometric" / "cmax12_seed3" / "model.txt";
    REQUIRE(fs::exists(model));
    CHECK(fs::exists(model.parent_path() / "hof_g.tsv"));
    const Model m = Model::load(model.string());
    CHECK(m.config_hash == cfg.hash());
    CHECK(m.seed == 3u);
    for (const auto& t : m.taggers) CHECK(*t.complexity <= 12);

    const auto written = cmd_eval(cfg, model.string(), a);
    REQUIRE(written.size() == 3);
    const auto report = nlohmann::json::parse(slurp(written[0]));
    CHECK(report["config_hash"] == cfg.hash());
    CHECK(report["seed"] == 3);
    CHECK(report["points"].size() == 3);
    CHECK(report["points"][0]["mode"] == "float");
    CHECK(report["points"][0]["accuracy"].get<double>() > 0.3);  // chance is 0.2
    CHECK(slurp(written[1]).find(cfg.hash()) != std::string::npos);
}

TEST_CASE("sweep needs something to sweep; reports reject unknown names")
{
    const fs::path dir = scratch("sweep");
    const auto cfg = ExperimentConfig::parse(toy_config(write_toy_csv(dir)));
    RunOptions opt;
    opt.out_dir = (dir / "out").string();
    CHECK_THROWS_AS(cmd_sweep(cfg, opt), ConfigError);
    CHECK_THROWS_AS(cmd_report("fig4", cfg, opt), ConfigError);
}

TEST_CASE("lut report and complexity map files")
{
    const fs::path dir = scratch("lutreport");
    const auto paths = cmd_lut_report(UnaryOp::Sin, "[-4, 4; 8]", FixedSpec(16, 6), 401, dir.string());
    REQUIRE(paths.size() == 2);
    const auto summary = nlohmann::json::parse(slurp(paths[1]));
    CHECK(summary["distinct_levels"].get<int>() <= 8);
    CHECK(summary["max_abs_err"].get<double>() > 0.1);
    CHECK(slurp(paths[0]).rfind("x,x_in,truth,lookup,deviation\n", 0) == 0);

    const auto map_path = cmd_complexity_map("builtin", FixedSpec(16, 6), (dir / "lat.map").string());
    CHECK(ComplexityMap::load(map_path[0]) == generate_complexity_map(CostTables::builtin(), FixedSpec(16, 6)));
}

TEST_CASE("shipped configs and models parse")
{
    const fs::path configs = fs::path(SRFX_SOURCE_DIR) / "configs";
    int n = 0;
    for (const auto& entry : fs::directory_iterator(configs)) {
        if (entry.path().extension() != ".cfg") continue;
        CHECK_NOTHROW(ExperimentConfig::load(entry.path().string()));
        ++n;
    }
    CHECK(n >= 4);
    const Model m = Model::load((configs / "models" / "jet_trig.model").string());
    CHECK(m.features.size() == 16);
    REQUIRE(m.taggers.size() == 5);
    CHECK(m.functions() == std::vector<UnaryOp>{UnaryOp::Sin});
    CHECK(CostTables::load((configs / "cost_tables" / "builtin.csv").string()).to_text() ==
          CostTables::builtin().to_text());
    CHECK(BaselineTable::load((configs / "baseline_example.csv").string()).find(FixedSpec(16, 6)) == 0.75);
    CHECK(FeatureAliases::load((configs / "jet_features.aliases").string()).index_of("j_multiplicity") == 15u);
}
