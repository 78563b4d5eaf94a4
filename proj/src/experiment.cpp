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

#include "srfx/experiment.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <filesystem>

namespace srfx {

std::string_view family_name(Family f)
{
    switch (f) {
    case Family::Polynomial: return "polynomial";
    case Family::Trigonometric: return "trigonometric";
    case Family::Exponential: return "exponential";
    case Family::Logarithmic: return "logarithmic";
    case Family::Custom: return "custom";
    }
    return "?";
}

Family parse_family(std::string_view s)
{
    for (auto f : {Family::Polynomial, Family::Trigonometric, Family::Exponential, Family::Logarithmic, Family::Custom})
        if (s == family_name(f)) return f;
    throw ConfigError(fmt::format("unknown operator family '{}'", s));
}

OperatorSet family_operators(Family f)
{
    OperatorSet ops;
    ops.nesting_allowed = false;
    if (f == Family::Custom) return ops;
    ops.binary = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
    if (f == Family::Trigonometric) ops.unary = {UnaryOp::Sin};
    if (f == Family::Exponential) ops.unary = {UnaryOp::Gauss};
    if (f == Family::Logarithmic) ops.unary = {UnaryOp::LogAbs};
    return ops;
}

int family_int_bits(Family f)
{
    return f == Family::Exponential ? 12 : 6;
}

namespace {

struct Entry {
    std::string value;
    std::size_t line;
};

using Section = std::map<std::string, Entry, std::less<>>;

std::map<std::string, Section, std::less<>> read_sections(std::string_view text)
{
    static const std::vector<std::string> known{"data", "search", "fixed", "lut", "cost", "output"};
    std::map<std::string, Section, std::less<>> out;
    std::string current;
    std::size_t line_no = 0;
    for (auto raw : detail::split(text, '\n')) {
        ++line_no;
        auto line = detail::trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string_view::npos) {
            current = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (std::find(known.begin(), known.end(), current) == known.end())
                throw ConfigError(fmt::format("config line {}: unknown section [{}]", line_no, current));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(fmt::format("config line {}: expected key = value", line_no));
        if (current.empty()) throw ConfigError(fmt::format("config line {}: key outside a [section]", line_no));
        std::string key(detail::trim(line.substr(0, eq)));
        auto& sec = out[current];
        if (sec.count(key)) throw ConfigError(fmt::format("config line {}: duplicate key '{}'", line_no, key));
        sec[key] = {std::string(detail::trim(line.substr(eq + 1))), line_no};
    }
    return out;
}

std::vector<std::string> list(std::string_view s, char sep = ',')
{
    std::vector<std::string> out;
    for (auto item : detail::split(s, sep)) {
        item = detail::trim(item);
        if (!item.empty()) out.emplace_back(item);
    }
    return out;
}

bool parse_bool(std::string_view s)
{
    if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
    if (s == "false" || s == "no" || s == "0" || s == "off") return false;
    throw ConfigError(fmt::format("expected true/false, got '{}'", s));
}

std::uint64_t parse_u64(std::string_view s, std::string_view what)
{
    const int v = detail::parse_int(s, what);
    if (v < 0) throw ConfigError(fmt::format("{} must be non-negative", what));
    return static_cast<std::uint64_t>(v);
}

std::string join(const std::vector<std::string>& v, std::string_view sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(sep) : "") + v[i];
    return out;
}

// Consumes keys from one section; anything left over is an unknown key.
class SectionReader {
public:
    SectionReader(std::string name, Section sec) : name_(std::move(name)), sec_(std::move(sec)) {}

    template <class F>
    void take(std::string_view key, F&& apply)
    {
        auto it = sec_.find(key);
        if (it == sec_.end()) return;
        try {
            apply(it->second.value);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("config line {}: [{}] {}: {}", it->second.line, name_, key, e.what()));
        }
        sec_.erase(it);
    }

    bool has(std::string_view key) const { return sec_.count(key) > 0; }

    // Remaining keys, for sections that accept open-ended names.
    const Section& rest() const { return sec_; }

    void finish() const
    {
        if (!sec_.empty()) {
            const auto& [k, e] = *sec_.begin();
            throw ConfigError(fmt::format("config line {}: unknown key '{}' in [{}]", e.line, k, name_));
        }
    }

private:
    std::string name_;
    Section sec_;
};

std::string mode_list_name(const std::vector<FunctionMode>& modes)
{
    if (modes.size() == 2) return "both";
    return std::string(mode_name(modes.front()));
}

} // namespace

ExperimentConfig ExperimentConfig::parse(std::string_view text, const std::string& base_dir)
{
    auto sections = read_sections(text);
    ExperimentConfig c;
    c.base_dir = base_dir;
    auto section = [&](const char* name) { return SectionReader(name, sections[name]); };

    SectionReader data = section("data");
    data.take("path", [&](auto v) { c.data_path = v; });
    data.take("format", [&](auto v) { c.data_format = parse_data_format(v); });
    data.take("aliases", [&](auto v) { c.aliases_path = v; });
    data.take("select_features", [&](auto v) { c.select_k = parse_u64(v, "select_features"); });
    data.take("features", [&](auto v) { c.features = list(v); });
    data.take("test_fraction", [&](auto v) { c.test_fraction = detail::parse_double(v, "test_fraction"); });
    data.take("split_seed", [&](auto v) { c.split_seed = parse_u64(v, "split_seed"); });
    data.take("max_samples", [&](auto v) { c.max_samples = parse_u64(v, "max_samples"); });
    data.take("forest_trees", [&](auto v) { c.forest.n_trees = detail::parse_int(v, "forest_trees"); });
    data.take("forest_depth", [&](auto v) { c.forest.max_depth = detail::parse_int(v, "forest_depth"); });
    data.finish();

    SectionReader search = section("search");
    search.take("family", [&](auto v) { c.family = parse_family(v); });
    c.search.ops = family_operators(c.family);
    if (c.family == Family::Custom) c.search.ops.binary.clear();
    auto explicit_ops = [&](auto apply) {
        return [&, apply](std::string_view v) {
            if (c.family != Family::Custom) throw ConfigError("operator lists require family = custom");
            apply(v);
        };
    };
    search.take("unary", explicit_ops([&](std::string_view v) {
        for (const auto& name : list(v)) {
            auto op = unary_op_from_name(name);
            if (!op) throw ConfigError(fmt::format("unknown unary operator '{}'", name));
            c.search.ops.unary.push_back(*op);
        }
    }));
    search.take("binary", explicit_ops([&](std::string_view v) {
        for (const auto& name : list(v)) {
            auto op = binary_op_from_name(name);
            if (!op) throw ConfigError(fmt::format("unknown binary operator '{}'", name));
            c.search.ops.binary.push_back(*op);
        }
    }));
    search.take("nesting", [&](auto v) { c.search.ops.nesting_allowed = parse_bool(v); });
    search.take("max_subtree_complexity",
                [&](auto v) { c.search.ops.max_subtree_complexity = detail::parse_int(v, "max_subtree_complexity"); });
    search.take("c_max", [&](auto v) {
        c.c_max_list.clear();
        for (const auto& s : list(v)) c.c_max_list.push_back(detail::parse_int(s, "c_max"));
    });
    search.take("population", [&](auto v) { c.search.population_size = detail::parse_int(v, "population"); });
    search.take("generations", [&](auto v) { c.search.generations = detail::parse_int(v, "generations"); });
    search.take("tournament", [&](auto v) { c.search.tournament_size = detail::parse_int(v, "tournament"); });
    search.take("islands", [&](auto v) { c.search.islands = detail::parse_int(v, "islands"); });
    search.take("crossover", [&](auto v) { c.search.crossover_probability = detail::parse_double(v, "crossover"); });
    search.take("mutate_replace", [&](auto v) { c.search.mutation.replace = detail::parse_double(v, "weight"); });
    search.take("mutate_perturb", [&](auto v) { c.search.mutation.perturb = detail::parse_double(v, "weight"); });
    search.take("mutate_insert", [&](auto v) { c.search.mutation.insert = detail::parse_double(v, "weight"); });
    search.take("mutate_delete", [&](auto v) { c.search.mutation.remove = detail::parse_double(v, "weight"); });
    search.take("mutate_append", [&](auto v) { c.search.mutation.append = detail::parse_double(v, "weight"); });
    search.take("parsimony", [&](auto v) { c.search.parsimony_tolerance = detail::parse_double(v, "parsimony"); });
    search.take("constant_iterations",
                [&](auto v) { c.search.constant_iterations = detail::parse_int(v, "constant_iterations"); });
    search.take("constant_restarts", [&](auto v) { c.search.constant_restarts = detail::parse_int(v, "constant_restarts"); });
    search.take("loss", [&](auto v) { c.search.loss = parse_loss_kind(v); });
    search.take("seeds", [&](auto v) {
        c.seeds.clear();
        for (const auto& s : list(v)) c.seeds.push_back(parse_u64(s, "seed"));
    });
    search.take("latency_aware", [&](auto v) { c.latency_aware = parse_bool(v); });
    search.take("compare_latency_aware", [&](auto v) { c.compare_latency_aware = parse_bool(v); });
    search.take("latency_precision", [&](auto v) { c.latency_spec = FixedSpec::parse(v); });
    search.take("complexity_map", [&](auto v) { c.complexity_map_path = v; });
    search.finish();

    SectionReader fixed = section("fixed");
    fixed.take("overflow", [&](std::string_view v) {
        if (v == "wrap") c.overflow = Overflow::Wrap;
        else if (v == "saturate") c.overflow = Overflow::Saturate;
        else throw ConfigError(fmt::format("unknown overflow mode '{}'", v));
    });
    fixed.take("rounding", [&](std::string_view v) {
        if (v == "truncate") c.rounding = Rounding::Truncate;
        else if (v == "round_nearest" || v == "nearest") c.rounding = Rounding::RoundNearest;
        else throw ConfigError(fmt::format("unknown rounding mode '{}'", v));
    });
    int int_bits = family_int_bits(c.family);
    fixed.take("int_bits", [&](auto v) { int_bits = detail::parse_int(v, "int_bits"); });
    if (fixed.has("precisions") && fixed.has("bits")) throw ConfigError("[fixed] takes either precisions or bits, not both");
    fixed.take("precisions", [&](auto v) {
        for (const auto& s : list(v, ';')) c.precisions.push_back(FixedSpec::parse(s, c.overflow, c.rounding));
        if (c.precisions.empty()) throw ConfigError("empty precision list");
    });
    fixed.take("bits", [&](auto v) {
        for (const auto& s : list(v)) c.precisions.emplace_back(detail::parse_int(s, "bits"), int_bits, c.overflow, c.rounding);
        if (c.precisions.empty()) throw ConfigError("empty bit-width list");
    });
    fixed.finish();
    if (c.precisions.empty()) c.precisions.emplace_back(16, int_bits, c.overflow, c.rounding);

    SectionReader lut = section("lut");
    lut.take("mode", [&](std::string_view v) {
        if (v == "both") c.modes = {FunctionMode::Math, FunctionMode::Lut};
        else c.modes = {parse_function_mode(v)};
    });
    lut.take("size", [&](auto v) { c.lut_size = parse_u64(v, "size"); });
    lut.take("range", [&](auto v) {
        const auto parts = list(v);
        if (parts.size() != 2) throw ConfigError("range expects 'start, end'");
        c.lut_range_start = detail::parse_double(parts[0], "range start");
        c.lut_range_end = detail::parse_double(parts[1], "range end");
    });
    std::vector<std::string> funcs;
    for (const auto& [k, e] : lut.rest()) funcs.push_back(k);
    for (const auto& name : funcs) {
        const auto op = unary_op_from_name(name);
        if (!op) continue;  // reported by finish()
        lut.take(name, [&](auto v) { c.lut_overrides[*op] = parse_lut_range(v, *op, FixedSpec(16, 6)); });
    }
    lut.finish();

    SectionReader cost = section("cost");
    cost.take("table", [&](auto v) { c.cost_table_path = v; });
    cost.take("reference", [&](auto v) { c.cost_reference = FixedSpec::parse(v); });
    cost.finish();

    SectionReader output = section("output");
    output.take("dir", [&](auto v) { c.out_dir = v; });
    output.take("baseline", [&](auto v) { c.baseline_path = v; });
    output.finish();

    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path)
{
    const std::string text = detail::read_file(path, ErrorKind::Config);
    std::string dir = std::filesystem::path(path).parent_path().string();
    return parse(text, dir.empty() ? "." : dir);
}

void ExperimentConfig::validate() const
{
    if (precisions.empty()) throw ConfigError("at least one precision is required");
    if (c_max_list.empty()) throw ConfigError("at least one c_max is required");
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ConfigError("test_fraction must lie in (0, 1)");
    if (modes.empty()) throw ConfigError("no function mode");
    const bool uses_lut = std::find(modes.begin(), modes.end(), FunctionMode::Lut) != modes.end();
    if ((latency_aware || compare_latency_aware) && uses_lut)
        throw ConfigError("latency-aware training cannot be combined with LUT function mode");
    if ((latency_aware || compare_latency_aware) && cost_table_path.empty())
        throw ConfigError("latency-aware training needs a cost table");
    if (lut_size < 2 || (lut_size & (lut_size - 1)) != 0) throw ConfigError("lut size must be a power of two >= 2");
    if (!(lut_range_start < lut_range_end)) throw ConfigError("lut range start must be below its end");
    for (int cm : c_max_list) {
        SearchConfig s = search;
        s.c_max = cm;
        s.validate();
    }
}

std::string ExperimentConfig::canonical() const
{
    std::vector<std::string> c_max_s, seeds_s, prec_s, unary_s, binary_s;
    for (int v : c_max_list) c_max_s.push_back(std::to_string(v));
    for (auto v : seeds) seeds_s.push_back(std::to_string(v));
    for (const auto& p : precisions) prec_s.push_back(fmt::format("{},{}", p.total_bits(), p.int_bits()));
    for (auto op : search.ops.unary) unary_s.emplace_back(op_name(op));
    for (auto op : search.ops.binary) binary_s.emplace_back(op_name(op));
    const auto& s = search;
    std::string out;
    out += "[data]\n";
    out += fmt::format("path = {}\nformat = {}\naliases = {}\nselect_features = {}\nfeatures = {}\n", data_path,
                       data_format == DataFormat::Columnar ? "columnar" : data_format == DataFormat::Delimited ? "csv" : "auto",
                       aliases_path, select_k, join(features));
    out += fmt::format("test_fraction = {}\nsplit_seed = {}\nmax_samples = {}\nforest_trees = {}\nforest_depth = {}\n",
                       test_fraction, split_seed, max_samples, forest.n_trees, forest.max_depth);
    out += "[search]\n";
    out += fmt::format("family = {}\nunary = {}\nbinary = {}\nnesting = {}\nmax_subtree_complexity = {}\n", family_name(family),
                       join(unary_s), join(binary_s), s.ops.nesting_allowed,
                       s.ops.max_subtree_complexity ? std::to_string(*s.ops.max_subtree_complexity) : "none");
    out += fmt::format("c_max = {}\npopulation = {}\ngenerations = {}\ntournament = {}\nislands = {}\ncrossover = {}\n",
                       join(c_max_s), s.population_size, s.generations, s.tournament_size, s.islands,
                       s.crossover_probability);
    out += fmt::format("mutate = {}, {}, {}, {}, {}\nparsimony = {}\nconstant_iterations = {}\nconstant_restarts = {}\n",
                       s.mutation.replace, s.mutation.perturb, s.mutation.insert, s.mutation.remove, s.mutation.append,
                       s.parsimony_tolerance, s.constant_iterations, s.constant_restarts);
    out += fmt::format("loss = {}\nseeds = {}\nlatency_aware = {}\ncompare_latency_aware = {}\nlatency_precision = {}\n",
                       loss_name(s.loss), join(seeds_s), latency_aware, compare_latency_aware,
                       latency_spec ? latency_spec->to_string() : "default");
    out += fmt::format("complexity_map = {}\n", complexity_map_path);
    out += "[fixed]\n";
    out += fmt::format("precisions = {}\noverflow = {}\nrounding = {}\n", join(prec_s, "; "),
                       overflow == Overflow::Wrap ? "wrap" : "saturate",
                       rounding == Rounding::Truncate ? "truncate" : "round_nearest");
    out += "[lut]\n";
    out += fmt::format("mode = {}\nsize = {}\nrange = {}, {}\n", mode_list_name(modes), lut_size, lut_range_start,
                       lut_range_end);
    for (const auto& [op, spec] : lut_overrides) out += fmt::format("{} = {}\n", op_name(op), spec.range_string());
    out += "[cost]\n";
    out += fmt::format("table = {}\nreference = {},{}\n", cost_table_path, cost_reference.total_bits(),
                       cost_reference.int_bits());
    out += "[output]\n";
    out += fmt::format("dir = {}\nbaseline = {}\n", out_dir, baseline_path);
    return out;
}

std::string ExperimentConfig::hash() const
{
    return fmt::format("{:016x}", detail::fnv1a(canonical()));
}

std::string ExperimentConfig::resolve(const std::string& path) const
{
    if (path.empty() || path == "builtin") return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

CostTables ExperimentConfig::cost_tables() const
{
    if (cost_table_path.empty() || cost_table_path == "builtin") return CostTables::builtin();
    return CostTables::load(resolve(cost_table_path));
}

ComplexityMap ExperimentConfig::complexity_map() const
{
    if (!complexity_map_path.empty()) return ComplexityMap::load(resolve(complexity_map_path));
    if (latency_aware) return generate_complexity_map(cost_tables(), latency_spec.value_or(cost_reference));
    return ComplexityMap::unit();
}

SearchConfig ExperimentConfig::search_config(int c_max, std::uint64_t seed) const
{
    SearchConfig s = search;
    s.c_max = c_max;
    s.seed = seed;
    s.complexity = complexity_map();
    return s;
}

LutSpec ExperimentConfig::lut_spec(UnaryOp op, const FixedSpec& value_spec) const
{
    LutSpec s;
    if (auto it = lut_overrides.find(op); it != lut_overrides.end()) {
        s = it->second;
    } else {
        s.func = op;
        s.range_start = lut_range_start;
        s.range_end = lut_range_end;
        s.size = lut_size;
    }
    s.value_spec = value_spec;
    return s;
}

std::shared_ptr<LutSet> ExperimentConfig::lut_set(const std::vector<UnaryOp>& funcs, const FixedSpec& value_spec) const
{
    auto set = std::make_shared<LutSet>();
    for (auto op : funcs)
        if (is_function(op) && !set->find(op)) set->add(LutTable(lut_spec(op, value_spec)));
    return set;
}

} // namespace srfx
