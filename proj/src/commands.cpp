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

#include "srfx/commands.hpp"

#include "srfx/errors.hpp"
#include "srfx/fixed_eval.hpp"
#include "text_util.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace srfx {

// ---- model file ----

namespace {

bool identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    if (unary_op_from_name(s) || s == "log" || s == "abs") return false;
    // x<digits> is already the positional form.
    return !(s.size() > 1 && s[0] == 'x' && std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }));
}

std::string number_list(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{}", i ? ", " : "", v[i]);
    return out;
}

std::vector<std::string> name_list(std::string_view s)
{
    std::vector<std::string> out;
    for (auto item : detail::split(s, ',')) {
        item = detail::trim(item);
        if (!item.empty()) out.emplace_back(item);
    }
    return out;
}

void collect_functions(const Expr& e, std::set<UnaryOp>& out)
{
    if (e.kind() == NodeKind::Unary) {
        if (is_function(e.unary_op())) out.insert(e.unary_op());
        collect_functions(e.lhs(), out);
    } else if (e.kind() == NodeKind::Binary) {
        collect_functions(e.lhs(), out);
        collect_functions(e.rhs(), out);
    }
}

} // namespace

FeatureAliases Model::aliases() const
{
    FeatureAliases a;
    for (std::size_t j = 0; j < features.size(); ++j)
        if (identifier(features[j])) a.add(features[j], j);
    return a;
}

std::vector<Expr> Model::expressions() const
{
    std::vector<Expr> out;
    for (const auto& t : taggers) out.push_back(t.expr);
    return out;
}

std::vector<UnaryOp> Model::functions() const
{
    std::set<UnaryOp> ops;
    for (const auto& t : taggers) collect_functions(t.expr, ops);
    return {ops.begin(), ops.end()};
}

std::string Model::to_text() const
{
    const FeatureAliases a = aliases();
    std::string out = "# srfx model\n";
    if (!config_hash.empty()) out += fmt::format("config_hash = {}\n", config_hash);
    if (seed) out += fmt::format("seed = {}\n", *seed);
    if (c_max) out += fmt::format("c_max = {}\n", *c_max);
    if (!family.empty()) out += fmt::format("family = {}\n", family);
    out += fmt::format("latency_aware = {}\n", latency_aware);
    std::string names;
    for (std::size_t j = 0; j < features.size(); ++j) names += (j ? ", " : "") + features[j];
    out += fmt::format("features = {}\n", names);
    if (standardization) {
        out += fmt::format("mean = {}\n", number_list(standardization->mean));
        out += fmt::format("std = {}\n", number_list(standardization->std));
    }
    out += "[taggers]\n";
    for (const auto& t : taggers)
        out += fmt::format("{}\t{}\t{}\t{}\n", t.class_name, t.complexity ? std::to_string(*t.complexity) : "-",
                           t.loss ? fmt::format("{}", *t.loss) : "-", format(t.expr, &a));
    return out;
}

Model Model::parse(std::string_view text)
{
    Model m;
    std::vector<double> mean, sd;
    bool in_taggers = false;
    std::size_t line_no = 0;
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
    for (auto raw : detail::split(text, '\n')) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (in_taggers) {
            if (detail::trim(raw).empty() || detail::trim(raw).front() == '#') continue;
            auto cells = detail::split(raw, '\t');
            if (cells.size() != 4)
                throw DataError(fmt::format("model line {}: expected class, complexity, loss and expression separated by tabs",
                                            line_no));
            rows.emplace_back(line_no, std::move(cells));
            continue;
        }
        auto line = detail::trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line == "[taggers]") {
            in_taggers = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw DataError(fmt::format("model line {}: expected key = value", line_no));
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        try {
            if (key == "config_hash") m.config_hash = value;
            else if (key == "seed") m.seed = static_cast<std::uint64_t>(detail::parse_int(value, "seed"));
            else if (key == "c_max") m.c_max = detail::parse_int(value, "c_max");
            else if (key == "family") m.family = value;
            else if (key == "latency_aware") m.latency_aware = value == "true";
            else if (key == "features") m.features = name_list(value);
            else if (key == "mean")
                for (const auto& s : name_list(value)) mean.push_back(detail::parse_double(s, "mean"));
            else if (key == "std")
                for (const auto& s : name_list(value)) sd.push_back(detail::parse_double(s, "std"));
            else throw DataError(fmt::format("unknown key '{}'", key));
        } catch (const Error& e) {
            throw DataError(fmt::format("model line {}: {}", line_no, e.what()));
        }
    }
    if (m.features.empty()) throw DataError("model lists no features");
    if (mean.size() != sd.size() || (!mean.empty() && mean.size() != m.features.size()))
        throw DataError("model standardization does not match its feature list");
    if (!mean.empty()) m.standardization = StandardizationParams{mean, sd};
    if (rows.empty()) throw DataError("model has no [taggers] rows");
    const FeatureAliases a = m.aliases();
    for (const auto& [ln, cells] : rows) {
        TaggerModel t;
        t.class_name = std::string(detail::trim(cells[0]));
        try {
            const auto c = detail::trim(cells[1]);
            const auto l = detail::trim(cells[2]);
            if (c != "-") t.complexity = detail::parse_int(c, "complexity");
            if (l != "-") t.loss = detail::parse_double(l, "loss");
            t.expr = srfx::parse(detail::trim(cells[3]), m.features.size(), &a);
        } catch (const Error& e) {
            throw DataError(fmt::format("model line {}: {}", ln, e.what()));
        }
        m.taggers.push_back(std::move(t));
    }
    return m;
}

Model Model::load(const std::string& path)
{
    try {
        return parse(detail::read_file(path, ErrorKind::Data));
    } catch (const DataError& e) {
        throw DataError(fmt::format("{}: {}", path, e.what()));
    }
}

// ---- data preparation ----

PreparedData prepare_data(const ExperimentConfig& cfg, const std::vector<std::string>& features,
                          const std::optional<StandardizationParams>& standardization)
{
    if (cfg.data_path.empty()) throw ConfigError("[data] path is not set");
    LoadOptions lo;
    lo.format = cfg.data_format;
    FeatureAliases aliases;
    if (!cfg.aliases_path.empty()) {
        aliases = FeatureAliases::load(cfg.resolve(cfg.aliases_path));
        lo.aliases = &aliases;
    }
    Dataset ds = load_dataset(cfg.resolve(cfg.data_path), lo);
    if (cfg.max_samples > 0 && ds.n() > cfg.max_samples) {
        std::vector<std::size_t> rows(ds.n());
        std::iota(rows.begin(), rows.end(), 0);
        std::mt19937_64 rng(derive_seed(cfg.split_seed, 0x5a));
        std::shuffle(rows.begin(), rows.end(), rng);
        rows.resize(cfg.max_samples);
        std::sort(rows.begin(), rows.end());
        ds = take_rows(ds, rows);
    }
    Split sp = train_test_split(ds, cfg.test_fraction, cfg.split_seed);

    PreparedData out;
    const std::vector<std::string>& names = features.empty() ? cfg.features : features;
    std::vector<std::size_t> cols;
    if (!names.empty()) {
        for (const auto& name : names) {
            auto it = std::find(ds.feature_names.begin(), ds.feature_names.end(), name);
            if (it != ds.feature_names.end()) {
                cols.push_back(static_cast<std::size_t>(it - ds.feature_names.begin()));
            } else if (auto idx = aliases.index_of(name); idx && *idx < ds.d()) {
                cols.push_back(*idx);
            } else if (name.size() > 1 && name[0] == 'x' &&
                       std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
                       std::stoul(name.substr(1)) < ds.d()) {
                cols.push_back(std::stoul(name.substr(1)));
            } else {
                throw DataError(fmt::format("feature '{}' is not in the dataset", name));
            }
        }
    } else if (cfg.select_k > 0 && cfg.select_k < ds.d()) {
        out.importance = feature_importance(sp.train, cfg.split_seed, cfg.forest);
        cols = select_features(out.importance, cfg.select_k);
    } else {
        cols.resize(ds.d());
        std::iota(cols.begin(), cols.end(), 0);
    }
    Dataset train = take_columns(sp.train, cols);
    Dataset test = take_columns(sp.test, cols);
    if (standardization) {
        if (standardization->mean.size() != cols.size()) throw DataError("standardization width differs from feature count");
        out.standardization = *standardization;
    } else {
        out.standardization = standardize(train).first;
    }
    out.train = out.standardization.apply(train);
    out.test = out.standardization.apply(test);
    return out;
}

// ---- evaluation ----

CostSummary estimate_model_cost(const std::vector<Expr>& taggers, const CostTables& tables, const FixedSpec& spec,
                                const FixedSpec& fallback, const CostMode& mode)
{
    CostSummary s;
    CostTables t = tables;
    if (t.has_bucket(spec)) {
        s.bucket = spec.to_string();
    } else {
        // Borrow the reference bucket's cycle counts for this width.
        for (const auto& op : t.operators_in_bucket(fallback))
            t.set(op, spec.total_bits(), spec.int_bits(), *t.find_row(op, fallback));
        s.bucket = fallback.to_string();
    }
    for (const auto& e : taggers) {
        const PipelineEstimate p = estimate_latency(e, t, spec, mode);
        s.latency_cycles = std::max(s.latency_cycles, p.latency_cycles);
        s.dsp += p.dsp;
        s.lut += p.lut;
        s.per_tagger.push_back(p);
    }
    s.latency_ns = s.latency_cycles * kClockPeriodNs;
    return s;
}

Matrix model_scores(const std::vector<Expr>& taggers, const Matrix& X, const std::optional<FixedSpec>& spec,
                    const FunctionImpl& impl)
{
    if (!spec) return tagger_scores(taggers, X);
    Matrix out(X.rows(), taggers.size());
    const auto cols = X.columns();
    for (std::size_t k = 0; k < taggers.size(); ++k) {
        if (taggers[k].min_features() > X.cols()) throw DataError("tagger references a feature the dataset lacks");
        eval_fixed_batch(taggers[k], cols, *spec, impl, out.column(k));
    }
    return out;
}

namespace {

CostMode cost_mode(const ExperimentConfig& cfg, FunctionMode mode)
{
    if (mode == FunctionMode::Math) return CostMode::math();
    CostMode m = CostMode::lut(cfg.lut_size);
    for (const auto& [op, spec] : cfg.lut_overrides) m.lut_sizes[op] = spec.size;
    return m;
}

} // namespace

std::vector<EvalPoint> evaluate_model(const Model& model, const ExperimentConfig& cfg, const Dataset& test)
{
    const auto taggers = model.expressions();
    if (taggers.size() != test.n_classes())
        throw DataError(fmt::format("model has {} taggers for {} classes", taggers.size(), test.n_classes()));
    std::optional<BaselineTable> baseline;
    if (!cfg.baseline_path.empty()) baseline = BaselineTable::load(cfg.resolve(cfg.baseline_path));
    const CostTables tables = cfg.cost_tables();

    std::vector<EvalPoint> out;
    EvalPoint ref;
    ref.metrics = compute_metrics(model_scores(taggers, test.X, std::nullopt, FunctionImpl::math()), test.y);
    out.push_back(std::move(ref));
    for (const auto& spec : cfg.precisions) {
        for (auto mode : cfg.modes) {
            EvalPoint p;
            p.spec = spec;
            p.mode = mode;
            const FunctionImpl impl =
                mode == FunctionMode::Lut ? FunctionImpl::lut(cfg.lut_set(model.functions(), spec)) : FunctionImpl::math();
            p.metrics = compute_metrics(model_scores(taggers, test.X, spec, impl), test.y);
            if (baseline)
                if (auto b = baseline->find(spec)) p.relative_accuracy = relative_accuracy(p.metrics.accuracy, *b);
            p.cost = estimate_model_cost(taggers, tables, spec, cfg.cost_reference, cost_mode(cfg, mode));
            out.push_back(std::move(p));
        }
    }
    return out;
}

// ---- reports ----

namespace {

std::string out_root(const ExperimentConfig& cfg, const RunOptions& opt)
{
    return opt.out_dir.empty() ? cfg.out_dir : opt.out_dir;
}

std::vector<std::uint64_t> seeds_of(const ExperimentConfig& cfg, const RunOptions& opt)
{
    return opt.seed ? std::vector<std::uint64_t>{*opt.seed} : cfg.seeds;
}

void say(const RunOptions& opt, const std::string& msg)
{
    if (opt.log) opt.log(msg);
}

std::string write(const fs::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw RuntimeError(fmt::format("cannot create '{}': {}", path.parent_path().string(), ec.message()));
    detail::write_file(path.string(), content);
    return path.string();
}

std::string csv_num(std::optional<double> v)
{
    if (!v) return "";
    if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
    return fmt::format("{}", *v);
}

json json_num(std::optional<double> v)
{
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

std::string spec_label(const std::optional<FixedSpec>& s)
{
    return s ? s->to_string() : "float";
}

json point_json(const EvalPoint& p, const std::vector<std::string>& classes)
{
    json j;
    j["precision"] = spec_label(p.spec);
    if (p.spec) {
        j["B"] = p.spec->total_bits();
        j["I"] = p.spec->int_bits();
        j["mode"] = std::string(mode_name(p.mode));
    } else {
        j["mode"] = "float";
    }
    j["accuracy"] = p.metrics.accuracy;
    j["relative_accuracy"] = json_num(p.relative_accuracy);
    json auc = json::object();
    for (std::size_t k = 0; k < classes.size(); ++k) auc[classes[k]] = json_num(p.metrics.auc[k]);
    j["auc"] = auc;
    j["confusion"] = p.metrics.confusion;
    if (p.cost) {
        j["latency_cycles"] = p.cost->latency_cycles;
        j["latency_ns"] = p.cost->latency_ns;
        j["dsp"] = p.cost->dsp;
        j["lut"] = p.cost->lut;
        j["cost_bucket"] = p.cost->bucket;
        json per = json::array();
        for (std::size_t k = 0; k < p.cost->per_tagger.size(); ++k)
            per.push_back({{"class", k < classes.size() ? classes[k] : std::to_string(k)},
                           {"latency_cycles", p.cost->per_tagger[k].latency_cycles},
                           {"dsp", p.cost->per_tagger[k].dsp},
                           {"lut", p.cost->per_tagger[k].lut}});
        j["taggers"] = per;
    }
    return j;
}

std::string points_csv_header(const std::vector<std::string>& classes)
{
    std::string h = "precision,B,I,mode,accuracy,relative_accuracy";
    for (const auto& c : classes) h += ",auc_" + c;
    return h + ",latency_cycles,latency_ns,dsp,lut,cost_bucket";
}

std::string point_csv(const EvalPoint& p)
{
    std::string r = fmt::format("{},{},{},{},{},{}", spec_label(p.spec), p.spec ? std::to_string(p.spec->total_bits()) : "",
                                p.spec ? std::to_string(p.spec->int_bits()) : "", p.spec ? mode_name(p.mode) : "float",
                                p.metrics.accuracy, csv_num(p.relative_accuracy));
    for (const auto& a : p.metrics.auc) r += "," + csv_num(a);
    if (p.cost)
        r += fmt::format(",{},{},{},{},{}", p.cost->latency_cycles, p.cost->latency_ns, p.cost->dsp, p.cost->lut,
                         p.cost->bucket);
    else
        r += ",,,,,";
    return r;
}

std::string roc_csv(const EvalPoint& p, const std::vector<std::string>& classes)
{
    std::string out = "class,threshold,fpr,tpr\n";
    for (std::size_t k = 0; k < p.metrics.roc.size(); ++k)
        for (const auto& pt : p.metrics.roc[k])
            out += fmt::format("{},{},{},{}\n", classes[k], csv_num(pt.threshold), pt.fpr, pt.tpr);
    return out;
}

struct SearchRun {
    int c_max;
    std::uint64_t seed;
    bool latency_aware;
    Model model;
    std::vector<TaggerResult> results;
    std::string log;
};

std::string variant_name(const ExperimentConfig& cfg, bool lat)
{
    return fmt::format("{}{}", family_name(cfg.family), lat ? "_lat" : "");
}

SearchRun run_search(const ExperimentConfig& base, const PreparedData& data, int c_max, std::uint64_t seed, bool lat,
                     const RunOptions& opt)
{
    ExperimentConfig cfg = base;
    cfg.latency_aware = lat;
    const SearchConfig sc = cfg.search_config(c_max, seed);
    SearchRun run{c_max, seed, lat, {}, {}, {}};
    run.log = fmt::format("# config_hash {} seed {} c_max {} variant {}\ngeneration\tclass\tbest_loss\tlevels\n",
                          base.hash(), seed, c_max, variant_name(cfg, lat));
    const auto& classes = data.train.class_names;
    auto observer = [&](std::size_t k, int gen, const HallOfFame& h) {
        double best = INFINITY;
        for (const auto& [c, cand] : h.levels()) best = std::min(best, cand.loss);
        run.log += fmt::format("{}\t{}\t{}\t{}\n", gen, classes[k], best, h.levels().size());
    };
    say(opt, fmt::format("search {} c_max={} seed={} on {} samples x {} features", variant_name(cfg, lat), c_max, seed,
                         data.train.n(), data.train.d()));
    run.results = train_multiclass(data.train.X, data.train.y, data.train.n_classes(), sc, classes, observer);

    Model& m = run.model;
    m.features = data.train.feature_names;
    m.standardization = data.standardization;
    m.config_hash = base.hash();
    m.seed = seed;
    m.c_max = c_max;
    m.family = std::string(family_name(cfg.family));
    m.latency_aware = lat;
    for (const auto& r : run.results) {
        m.taggers.push_back({r.class_name, r.selected.expr, r.selected.complexity, r.selected.loss});
        say(opt, fmt::format("  {}: complexity {} loss {:.4f}", r.class_name, r.selected.complexity, r.selected.loss));
    }
    return run;
}

fs::path run_dir(const fs::path& root, const ExperimentConfig& cfg, const SearchRun& r)
{
    return root / variant_name(cfg, r.latency_aware) / fmt::format("cmax{}_seed{}", r.c_max, r.seed);
}

std::vector<std::string> save_run(const fs::path& dir, const SearchRun& r)
{
    std::vector<std::string> paths;
    const FeatureAliases a = r.model.aliases();
    for (const auto& t : r.results) paths.push_back(write(dir / fmt::format("hof_{}.tsv", t.class_name), t.hof.to_text(&a)));
    paths.push_back(write(dir / "model.txt", r.model.to_text()));
    paths.push_back(write(dir / "search.log", r.log));
    return paths;
}

std::vector<bool> variants(const ExperimentConfig& cfg)
{
    if (cfg.compare_latency_aware) return {false, true};
    return {cfg.latency_aware};
}

struct SweepRow {
    std::string variant;
    int c_max;
    std::uint64_t seed;
    int total_complexity;
    EvalPoint point;
    double float_accuracy;
};

std::vector<SweepRow> sweep_rows(const ExperimentConfig& cfg, const RunOptions& opt, const fs::path& model_dir,
                                 std::vector<std::string>& written)
{
    const PreparedData data = prepare_data(cfg);
    std::vector<SweepRow> rows;
    for (bool lat : variants(cfg)) {
        for (int c_max : cfg.c_max_list) {
            for (auto seed : seeds_of(cfg, opt)) {
                SearchRun run = run_search(cfg, data, c_max, seed, lat, opt);
                for (auto& p : save_run(run_dir(model_dir, cfg, run), run)) written.push_back(std::move(p));
                const auto points = evaluate_model(run.model, cfg, data.test);
                int total = 0;
                for (const auto& t : run.model.taggers) total += t.complexity.value_or(0);
                for (const auto& p : points)
                    rows.push_back({variant_name(cfg, lat), c_max, seed, total, p, points.front().metrics.accuracy});
            }
        }
    }
    return rows;
}

std::string sweep_csv(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows, const std::vector<std::string>& classes)
{
    std::string out = fmt::format("# config_hash {}\n", cfg.hash());
    out += "variant,c_max,seed,total_complexity,float_accuracy," + points_csv_header(classes) + "\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{},{},{}\n", r.variant, r.c_max, r.seed, r.total_complexity, r.float_accuracy,
                           point_csv(r.point));
    return out;
}

// Latency-aware vs plain at the cost reference precision, math mode.
std::string fig5_csv(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows)
{
    std::string out = fmt::format("# config_hash {}\n", cfg.hash());
    out += "variant,c_max,seed,float_accuracy,accuracy,latency_cycles,latency_ns,dsp,lut,precision\n";
    const FixedSpec& ref = cfg.precisions.front();
    for (const auto& r : rows) {
        const auto& p = r.point;
        if (!p.spec || !p.spec->same_format(ref) || p.mode != FunctionMode::Math || !p.cost) continue;
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.variant, r.c_max, r.seed, r.float_accuracy,
                           p.metrics.accuracy, p.cost->latency_cycles, p.cost->latency_ns, p.cost->dsp, p.cost->lut,
                           ref.to_string());
    }
    return out;
}

} // namespace

std::vector<std::string> cmd_search(const ExperimentConfig& cfg, const RunOptions& opt)
{
    const fs::path root = fs::path(out_root(cfg, opt)) / "search";
    const PreparedData data = prepare_data(cfg);
    std::vector<std::string> written;
    std::string summary = fmt::format("# config_hash {}\nvariant,c_max,seed,class,complexity,loss,expression\n", cfg.hash());
    for (bool lat : variants(cfg)) {
        for (int c_max : cfg.c_max_list) {
            for (auto seed : seeds_of(cfg, opt)) {
                const SearchRun run = run_search(cfg, data, c_max, seed, lat, opt);
                for (auto& p : save_run(run_dir(root, cfg, run), run)) written.push_back(std::move(p));
                const FeatureAliases a = run.model.aliases();
                for (const auto& t : run.model.taggers)
                    summary += fmt::format("{},{},{},{},{},{},\"{}\"\n", variant_name(cfg, lat), c_max, seed,
                                           t.class_name, t.complexity.value_or(0), t.loss.value_or(NAN),
                                           format(t.expr, &a));
            }
        }
    }
    if (!data.importance.empty()) {
        std::string imp = fmt::format("# config_hash {}\ncolumn,importance\n", cfg.hash());
        for (std::size_t j = 0; j < data.importance.size(); ++j)
            imp += fmt::format("{},{}\n", j, data.importance[j]);
        written.push_back(write(root / "feature_importance.csv", imp));
    }
    written.push_back(write(root / "summary.csv", summary));
    return written;
}

std::vector<std::string> cmd_eval(const ExperimentConfig& cfg, const std::string& model_path, const RunOptions& opt)
{
    const Model model = Model::load(model_path);
    const PreparedData data = prepare_data(cfg, model.features, model.standardization);
    const auto points = evaluate_model(model, cfg, data.test);
    const auto& classes = data.test.class_names;

    json report;
    report["config_hash"] = cfg.hash();
    report["seed"] = opt.seed ? json(*opt.seed) : model.seed ? json(*model.seed) : json(nullptr);
    report["model"] = model_path;
    report["model_config_hash"] = model.config_hash;
    report["features"] = model.features;
    report["n_train"] = data.train.n();
    report["n_test"] = data.test.n();
    json pts = json::array();
    for (const auto& p : points) pts.push_back(point_json(p, classes));
    report["points"] = pts;

    std::string csv = fmt::format("# config_hash {} seed {}\n", cfg.hash(), model.seed ? std::to_string(*model.seed) : "-");
    csv += points_csv_header(classes) + "\n";
    for (const auto& p : points) csv += point_csv(p) + "\n";

    const fs::path root = fs::path(out_root(cfg, opt)) / "eval";
    say(opt, fmt::format("float accuracy {:.4f} on {} test samples", points.front().metrics.accuracy, data.test.n()));
    return {write(root / "eval.json", report.dump(2) + "\n"), write(root / "eval.csv", csv),
            write(root / "roc.csv", roc_csv(points.front(), classes))};
}

std::vector<std::string> cmd_sweep(const ExperimentConfig& cfg, const RunOptions& opt)
{
    if (cfg.precisions.size() < 2 && cfg.c_max_list.size() < 2 && !cfg.compare_latency_aware)
        throw ConfigError("a sweep needs at least two precisions or two c_max values");
    const fs::path root = fs::path(out_root(cfg, opt)) / "sweep";
    std::vector<std::string> written;
    const auto rows = sweep_rows(cfg, opt, root / "models", written);
    std::vector<std::string> classes{kClassNames.begin(), kClassNames.end()};
    written.push_back(write(root / "sweep.csv", sweep_csv(cfg, rows, classes)));
    if (cfg.compare_latency_aware) written.push_back(write(root / "fig5.csv", fig5_csv(cfg, rows)));
    return written;
}

std::vector<std::string> cmd_lut_report(UnaryOp func, std::string_view range, const FixedSpec& spec,
                                        std::size_t grid_points, const std::string& out_dir)
{
    const LutTable table(parse_lut_range(range, func, spec));
    const DeviationReport r = deviation_report(table, grid_points);
    std::string csv = "x,x_in,truth,lookup,deviation\n";
    std::set<std::int64_t> levels;
    for (const auto& p : r.points) {
        csv += fmt::format("{},{},{},{},{}\n", p.x, p.x_in, p.truth, p.approx, p.deviation);
        levels.insert(quantize(p.approx, spec).raw);
    }
    const std::string stem = fmt::format("lut_{}_{}", op_name(func), table.spec().size);
    json summary;
    summary["function"] = std::string(op_name(func));
    summary["range"] = table.spec().range_string();
    summary["precision"] = spec.to_string();
    summary["grid_points"] = grid_points;
    summary["max_abs_err"] = r.max_abs_err;
    summary["mean_abs_err"] = r.mean_abs_err;
    summary["distinct_levels"] = levels.size();
    const fs::path root(out_dir);
    return {write(root / (stem + ".csv"), csv), write(root / (stem + ".json"), summary.dump(2) + "\n")};
}

std::vector<std::string> cmd_complexity_map(const std::string& cost_table, const FixedSpec& spec, const std::string& out_path)
{
    const CostTables tables =
        cost_table.empty() || cost_table == "builtin" ? CostTables::builtin() : CostTables::load(cost_table);
    const ComplexityMap m = generate_complexity_map(tables, spec);
    const std::string text = fmt::format("# operator complexity = clock cycles at {} ({})\n{}", spec.to_string(),
                                         cost_table.empty() ? "builtin" : cost_table, m.to_text());
    return {write(fs::path(out_path), text)};
}

std::vector<std::string> cmd_report(std::string_view name, const ExperimentConfig& cfg, const RunOptions& opt)
{
    const fs::path root = fs::path(out_root(cfg, opt)) / "report" / std::string(name);
    std::vector<std::string> written;
    const std::vector<std::string> classes{kClassNames.begin(), kClassNames.end()};

    if (name == "fig1") {
        // Coarse-to-fine sine tables at the first configured precision.
        const FixedSpec spec = cfg.precisions.front();
        for (std::size_t size : {8u, 64u, 1024u})
            for (auto& p : cmd_lut_report(UnaryOp::Sin, fmt::format("[-4, 4; {}]", size), spec, 2001, root.string()))
                written.push_back(std::move(p));
        return written;
    }
    if (name == "fig2") {
        // Accuracy against bit width, each family at its default integer bits.
        std::vector<SweepRow> all;
        for (auto fam : {Family::Polynomial, Family::Trigonometric, Family::Exponential, Family::Logarithmic}) {
            ExperimentConfig c = cfg;
            c.family = fam;
            c.search.ops = family_operators(fam);
            c.latency_aware = c.compare_latency_aware = false;
            c.modes = {FunctionMode::Math};
            c.precisions.clear();
            for (const auto& p : cfg.precisions)
                c.precisions.emplace_back(p.total_bits(), std::min(family_int_bits(fam), p.total_bits()), cfg.overflow,
                                          cfg.rounding);
            auto rows = sweep_rows(c, opt, root / "models", written);
            all.insert(all.end(), rows.begin(), rows.end());
        }
        written.push_back(write(root / "fig2.csv", sweep_csv(cfg, all, classes)));
        return written;
    }
    if (name == "fig3") {
        // Resources and latency with and without lookup tables.
        ExperimentConfig c = cfg;
        c.latency_aware = c.compare_latency_aware = false;
        c.modes = {FunctionMode::Math, FunctionMode::Lut};
        written.push_back(write(root / "fig3.csv", sweep_csv(c, sweep_rows(c, opt, root / "models", written), classes)));
        return written;
    }
    if (name == "fig5") {
        ExperimentConfig c = cfg;
        c.compare_latency_aware = true;
        c.modes = {FunctionMode::Math};
        const auto rows = sweep_rows(c, opt, root / "models", written);
        written.push_back(write(root / "sweep.csv", sweep_csv(c, rows, classes)));
        written.push_back(write(root / "fig5.csv", fig5_csv(c, rows)));
        return written;
    }
    throw ConfigError(fmt::format("unknown report template '{}' (expected fig1, fig2, fig3 or fig5)", name));
}

} // namespace srfx
