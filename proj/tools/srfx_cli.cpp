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

#include "srfx/srfx.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

namespace {

void print_line(const char* msg, void*)
{
    std::printf("%s\n", msg);
    std::fflush(stdout);
}

// Accepts "<16,6>", "16,6" or "ap_fixed<16,6>".
bool parse_precision(const std::string& text, srfx_fixed_spec& out)
{
    std::string s;
    for (char c : text)
        if ((c >= '0' && c <= '9') || c == ',' || c == '-') s += c;
    const auto comma = s.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == s.size()) return false;
    try {
        out.total_bits = std::stoi(s.substr(0, comma));
        out.int_bits = std::stoi(s.substr(comma + 1));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

int report(srfx_status st)
{
    if (st != SRFX_OK) std::fprintf(stderr, "error: %s\n", srfx_last_error());
    return st;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symbolic regression classifiers in simulated fixed-point hardware"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(srfx_version()));

    std::string config, out_dir, model, name;
    std::optional<std::uint64_t> seed;
    std::string func = "sin", range = "[-4, 4; 1024]", precision = "<16,6>", table = "builtin", out_file;
    std::string rounding = "truncate", overflow = "wrap";
    std::size_t grid = 2001;
    bool quiet = false;

    auto common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("-c,--config", config, "experiment config file");
        if (needs_config) c->required()->check(CLI::ExistingFile);
        sub->add_option("-s,--seed", seed, "run a single seed instead of the config's list");
        sub->add_option("-o,--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_flag("-q,--quiet", quiet, "only print errors");
    };

    auto* search = app.add_subcommand("search", "evolve one tagger per class and write hall-of-fame files");
    common(search, true);
    auto* eval = app.add_subcommand("eval", "evaluate a model file at every configured precision and mode");
    common(eval, true);
    eval->add_option("-m,--model", model, "model file written by search")->required();
    auto* sweep = app.add_subcommand("sweep", "search and evaluate across precisions and c_max values");
    common(sweep, true);
    auto* lut = app.add_subcommand("lut-report", "tabulate a function and its deviation from the truth");
    lut->add_option("-f,--func", func, "function name")->capture_default_str();
    lut->add_option("-r,--range", range, "table range \"[a, b; size]\"")->capture_default_str();
    lut->add_option("-p,--precision", precision, "value precision <B,I>")->capture_default_str();
    lut->add_option("--rounding", rounding)->check(CLI::IsMember({"truncate", "nearest"}))->capture_default_str();
    lut->add_option("--overflow", overflow)->check(CLI::IsMember({"wrap", "saturate"}))->capture_default_str();
    lut->add_option("-g,--grid", grid, "number of evaluation points")->capture_default_str();
    lut->add_option("-o,--out", out_dir, "output directory");
    lut->add_flag("-q,--quiet", quiet);
    auto* cmap = app.add_subcommand("complexity-map", "write operator complexities equal to clock cycles");
    cmap->add_option("-t,--table", table, "cost table file or builtin")->capture_default_str();
    cmap->add_option("-p,--precision", precision, "bucket <B,I>")->capture_default_str();
    cmap->add_option("-o,--out", out_file, "output file")->required();
    cmap->add_flag("-q,--quiet", quiet);
    auto* rep = app.add_subcommand("report", "produce figure data: fig1, fig2, fig3 or fig5");
    rep->add_option("name", name, "template")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig5"}));
    common(rep, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : SRFX_ERR_CONFIG;
    }

    srfx_run_options opt{};
    opt.out_dir = out_dir.empty() ? nullptr : out_dir.c_str();
    opt.has_seed = seed.has_value();
    opt.seed = seed.value_or(0);
    opt.log = quiet ? nullptr : print_line;

    srfx_fixed_spec spec{};
    if (lut->parsed() || cmap->parsed()) {
        if (!parse_precision(precision, spec)) {
            std::fprintf(stderr, "error: cannot read precision '%s' (expected <B,I>)\n", precision.c_str());
            return SRFX_ERR_CONFIG;
        }
        spec.rounding = rounding == "nearest" ? SRFX_ROUND_NEAREST : SRFX_ROUND_TRUNCATE;
        spec.overflow = overflow == "saturate" ? SRFX_OVERFLOW_SATURATE : SRFX_OVERFLOW_WRAP;
    }

    if (search->parsed()) return report(srfx_cmd_search(config.c_str(), &opt));
    if (eval->parsed()) return report(srfx_cmd_eval(config.c_str(), model.c_str(), &opt));
    if (sweep->parsed()) return report(srfx_cmd_sweep(config.c_str(), &opt));
    if (lut->parsed()) return report(srfx_cmd_lut_report(func.c_str(), range.c_str(), &spec, grid, &opt));
    if (cmap->parsed()) return report(srfx_cmd_complexity_map(table.c_str(), &spec, out_file.c_str(), &opt));
    if (rep->parsed()) return report(srfx_cmd_report(name.c_str(), config.c_str(), &opt));
    return SRFX_ERR_CONFIG;
}
