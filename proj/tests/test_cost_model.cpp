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

#include "srfx/cost_model.hpp"
#include "srfx/errors.hpp"
#include "support/random_expr.hpp"

#include <algorithm>
#include <random>

using namespace srfx;

namespace {

const FixedSpec k16_6{16, 6};

// Reference critical path computed straight from the tree.
int oracle_latency(const Expr& e, const CostTables& t, const FixedSpec& s, bool lut)
{
    switch (e.kind()) {
    case NodeKind::Const:
    case NodeKind::Var: return 0;
    case NodeKind::Unary: {
        const UnaryOp op = e.unary_op();
        const int own = (lut && is_function(op)) ? 1 : t.find(op, s)->cycles;
        return own + oracle_latency(e.lhs(), t, s, lut);
    }
    case NodeKind::Binary:
        return t.find(e.binary_op(), s)->cycles +
               std::max(oracle_latency(e.lhs(), t, s, lut), oracle_latency(e.rhs(), t, s, lut));
    }
    return 0;
}

CostTables full_tables()
{
    CostTables t = CostTables::builtin();
    t.set("div", 16, 6, {12, 3, 200});
    t.set("gauss", 16, 6, {6, 3, 250});
    return t;
}

} // namespace

TEST_SUITE("cost.latency") {

TEST_CASE("anchors")
{
    const CostTables t = CostTables::builtin();
    const auto add = estimate_latency(parse("x0 + x1", 2), t, k16_6);
    CHECK(add.latency_cycles == 1);
    CHECK(add.latency_ns == 5.0);
    CHECK(add.initiation_interval == 1);
    CHECK(estimate_latency(parse("sin(x0 + x1)", 2), t, k16_6).latency_cycles == 9);
    CHECK(estimate_latency(parse("sin(x0 + x1)", 2), t, k16_6, CostMode::lut()).latency_cycles == 2);
    CHECK(estimate_latency(parse("tan(x0)", 1), t, k16_6).latency_cycles == 48);
    CHECK(estimate_latency(parse("x0", 1), t, k16_6).latency_cycles == 0);
    CHECK(estimate_latency(parse("1.5", 1), t, k16_6).latency_ns == 0.0);
}

TEST_CASE("critical path, not sum")
{
    const CostTables t = CostTables::builtin();
    // sin branch (8) dominates exp branch (3), plus the add on top.
    CHECK(estimate_latency(parse("sin(x0) + exp(x1)", 2), t, k16_6).latency_cycles == 9);
    CHECK(estimate_latency(parse("x0^2", 1), t, k16_6).latency_cycles == 1);
}

TEST_CASE("missing operator is a configuration error")
{
    const CostTables no_div = CostTables::parse("op, B, I, cycles, dsp, lut\nadd, 16, 6, 1, 0, 16\n");
    CHECK_THROWS_AS(estimate_latency(parse("x0 / x1", 2), no_div, k16_6), ConfigError);
    CHECK_THROWS_AS(estimate_latency(parse("x0 + x1", 2), CostTables::builtin(), FixedSpec(18, 8)), ConfigError);
}

TEST_CASE("matches a direct recursion on random trees")
{
    std::mt19937_64 rng(5);
    srfx::testing::RandomExprOptions opt;
    opt.max_depth = 6;
    const CostTables t = full_tables();
    for (int i = 0; i < 2000; ++i) {
        const Expr e = srfx::testing::random_expr(rng, opt);
        const int math = estimate_latency(e, t, k16_6).latency_cycles;
        const int lut = estimate_latency(e, t, k16_6, CostMode::lut()).latency_cycles;
        CHECK(math == oracle_latency(e, t, k16_6, false));
        CHECK(lut == oracle_latency(e, t, k16_6, true));
        CHECK(lut <= math);
    }
}

TEST_CASE("wrapping a tree never reduces latency")
{
    std::mt19937_64 rng(6);
    srfx::testing::RandomExprOptions opt;
    const CostTables t = full_tables();
    for (int i = 0; i < 1000; ++i) {
        const Expr e = srfx::testing::random_expr(rng, opt);
        const int base = estimate_latency(e, t, k16_6).latency_cycles;
        CHECK(estimate_latency(Expr::unary(UnaryOp::Sin, e), t, k16_6).latency_cycles >= base);
        CHECK(estimate_latency(Expr::binary(BinaryOp::Add, e, Expr::variable(0)), t, k16_6).latency_cycles >= base);
    }
}

} // TEST_SUITE

TEST_SUITE("cost.resources") {

TEST_CASE("resources add up over nodes")
{
    const CostTables t = CostTables::builtin();
    const OpCost mul = *t.find(BinaryOp::Mul, k16_6);
    CHECK(estimate_resources(parse("x0 * x1 * x2 * x3", 4), t, k16_6).dsp == 3 * mul.dsp);
    const auto two_sin = estimate_resources(parse("sin(x0) + sin(x1)", 2), t, k16_6);
    const OpCost sin = *t.find(UnaryOp::Sin, k16_6);
    const OpCost add = *t.find(BinaryOp::Add, k16_6);
    CHECK(two_sin.dsp == 2 * sin.dsp + add.dsp);
    CHECK(two_sin.lut == 2 * sin.lut + add.lut);
}

TEST_CASE("table storage in lut mode")
{
    const CostTables t = CostTables::builtin();
    // 1024 entries * 16 bits / 64 bits per cell.
    const auto r = estimate_resources(parse("sin(x0)", 1), t, k16_6, CostMode::lut(1024));
    CHECK(r.lut == 256);
    CHECK(r.dsp == 0);
    CostMode m = CostMode::lut(1024);
    m.lut_sizes[UnaryOp::Sin] = 8;
    CHECK(estimate_resources(parse("sin(x0)", 1), t, k16_6, m).lut == 2);
}

} // TEST_SUITE

TEST_SUITE("cost.tables") {

TEST_CASE("text round trip and wildcards")
{
    const CostTables t = CostTables::parse(
        "op, B, I, cycles, dsp, lut\n"
        "# comment\n"
        "add, 18, 8, 2, 0, 20\n"
        "mul, *, *, 3, 1, 0\n");
    CHECK(t.find(BinaryOp::Add, FixedSpec(18, 8))->cycles == 2);
    CHECK_FALSE(t.find(BinaryOp::Add, k16_6).has_value());
    CHECK(t.find(BinaryOp::Mul, k16_6)->cycles == 3);
    CHECK(t.find(UnaryOp::Square, k16_6)->cycles == 3);
    CHECK(t.has_bucket(FixedSpec(18, 8)));
    CHECK_FALSE(t.has_bucket(k16_6));
    const CostTables back = CostTables::parse(t.to_text());
    CHECK(back.to_text() == t.to_text());
    CHECK_THROWS_AS(CostTables::parse("add, 16, 6, 1, 0\n"), ConfigError);
    CHECK_THROWS_AS(CostTables::parse("frobnicate, 16, 6, 1, 0, 0\n"), ConfigError);
    CHECK_THROWS_AS(CostTables::parse("add, 16, 6, -1, 0, 0\n"), ConfigError);
}

} // TEST_SUITE

TEST_SUITE("cost.complexity_map") {

TEST_CASE("builtin bucket gives cycle weights")
{
    const ComplexityMap m = generate_complexity_map(CostTables::builtin(), k16_6);
    CHECK(m.weight(BinaryOp::Add) == 1);
    CHECK(m.weight(BinaryOp::Sub) == 1);
    CHECK(m.weight(BinaryOp::Mul) == 1);
    CHECK(m.weight(UnaryOp::LogAbs) == 4);
    CHECK(m.weight(UnaryOp::Sin) == 8);
    CHECK(m.weight(UnaryOp::Tan) == 48);
    CHECK(m.weight(UnaryOp::Cosh) == 8);
    CHECK(m.weight(UnaryOp::Sinh) == 9);
    CHECK(m.weight(UnaryOp::Exp) == 3);
    CHECK(m.constant_weight() == 1);
    CHECK(m.variable_weight() == 1);
    // sin(x0 + x1): 8 + 1 + 1 + 1
    CHECK(complexity(parse("sin(x0 + x1)", 2), m) == 11);
}

TEST_CASE("unit tables give the all-ones map")
{
    const ComplexityMap m = generate_complexity_map(CostTables::unit(k16_6), k16_6);
    for (auto op : kAllUnaryOps) CHECK(m.weight(op) == 1);
    for (auto op : kAllBinaryOps) CHECK(m.weight(op) == 1);
}

TEST_CASE("zero-cycle operators still weigh one")
{
    CostTables t = CostTables::builtin();
    t.set("add", 16, 6, {0, 0, 0});
    CHECK(generate_complexity_map(t, k16_6).weight(BinaryOp::Add) == 1);
}

TEST_CASE("missing bucket")
{
    CHECK_THROWS_AS(generate_complexity_map(CostTables::builtin(), FixedSpec(18, 8)), ConfigError);
}

} // TEST_SUITE
