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

#include "srfx/errors.hpp"
#include "srfx/lut.hpp"

#include <cmath>

using namespace srfx;

namespace {

LutSpec make(UnaryOp f, double a, double b, std::size_t n, FixedSpec spec = FixedSpec(12, 6))
{
    LutSpec s;
    s.func = f;
    s.range_start = a;
    s.range_end = b;
    s.size = n;
    s.value_spec = spec;
    return s;
}

} // namespace

TEST_SUITE("lut.build") {

TEST_CASE("entries are quantized midpoint samples")
{
    const LutTable t = build_table(make(UnaryOp::Sin, -4, 4, 8));
    REQUIRE(t.entries().size() == 8);
    CHECK(t.bin_midpoint(4) == 0.5);
    CHECK(t.entries()[4].to_f64() == 0.46875);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(t.entries()[k] == quantize(std::sin(t.bin_midpoint(k)), FixedSpec(12, 6)));
}

TEST_CASE("two bins over the unit interval sample at 1/4 and 3/4")
{
    const LutTable t = build_table(make(UnaryOp::Sinh, 0, 1, 2, FixedSpec(32, 4)));
    CHECK(t.bin_midpoint(0) == 0.25);
    CHECK(t.bin_midpoint(1) == 0.75);
    CHECK(t.entries()[0] == quantize(std::sinh(0.25), FixedSpec(32, 4)));
    CHECK(t.entries()[1] == quantize(std::sinh(0.75), FixedSpec(32, 4)));
}

TEST_CASE("a function constant on its range gives identical entries")
{
    // cosh(x) rounds to exactly 1.0 for |x| <= 1e-9.
    const LutTable t = build_table(make(UnaryOp::Cosh, -1e-9, 1e-9, 16));
    for (const auto& v : t.entries()) CHECK(v == quantize(1.0, FixedSpec(12, 6)));
}

TEST_CASE("invalid specs")
{
    CHECK_THROWS_AS(build_table(make(UnaryOp::Sin, 1, 1, 8)), ConfigError);
    CHECK_THROWS_AS(build_table(make(UnaryOp::Sin, 2, 1, 8)), ConfigError);
    CHECK_THROWS_AS(build_table(make(UnaryOp::Sin, -1, 1, 12)), ConfigError);
    CHECK_THROWS_AS(build_table(make(UnaryOp::Sin, -1, 1, 1)), ConfigError);
    CHECK_THROWS_AS(build_table(make(UnaryOp::Square, -1, 1, 8)), ConfigError);
}

TEST_CASE("range notation")
{
    const LutSpec s = parse_lut_range("[-4, 4; 1024]", UnaryOp::Sin, FixedSpec(16, 6));
    CHECK(s.range_start == -4.0);
    CHECK(s.range_end == 4.0);
    CHECK(s.size == 1024);
    CHECK(s.range_string() == "[-4, 4; 1024]");
    CHECK(parse_lut_range(" [ -1.5 , 2.5 ; 8 ] ", UnaryOp::Exp, FixedSpec(16, 6)).range_end == 2.5);
    CHECK_THROWS_AS(parse_lut_range("-4, 4; 8", UnaryOp::Sin, FixedSpec(16, 6)), ConfigError);
    CHECK_THROWS_AS(parse_lut_range("[-4, 4]", UnaryOp::Sin, FixedSpec(16, 6)), ConfigError);
    CHECK_THROWS_AS(parse_lut_range("[-4, 4; 100]", UnaryOp::Sin, FixedSpec(16, 6)), ConfigError);
}

} // TEST_SUITE

TEST_SUITE("lut.lookup") {

TEST_CASE("clamping at the range ends")
{
    const FixedSpec spec(12, 6);
    const LutTable t = build_table(make(UnaryOp::Sin, -4, 4, 8));
    CHECK(lookup(t, quantize(-10.0, spec)) == t.entries()[0]);
    CHECK(lookup(t, quantize(4.0, spec)) == t.entries()[7]);
    CHECK(lookup(t, quantize(31.0, spec)) == t.entries()[7]);
}

TEST_CASE("fine table is close to the function")
{
    const FixedSpec spec(12, 6);
    const LutTable t = build_table(make(UnaryOp::Sin, -4, 4, 1024));
    const double got = lookup(t, quantize(0.5, spec)).to_f64();
    CHECK(std::fabs(got - std::sin(0.5)) <= 1.0 / 64 + 8.0 / 1024);
}

TEST_CASE("piecewise constant with one piece per bin")
{
    const FixedSpec spec(24, 6);
    const LutTable t = build_table(make(UnaryOp::Sin, -4, 4, 16, spec));
    std::size_t pieces = 0;
    std::size_t last = t.entries().size();
    for (int i = 0; i <= 8000; ++i) {
        const double x = -4.0 + 8.0 * i / 8000.0;
        const std::size_t k = t.index_of(quantize(x, spec).to_f64());
        if (k != last) {
            ++pieces;
            last = k;
            // The first point of a new piece lies at or after the bin edge.
            CHECK(quantize(x, spec).to_f64() >= t.bin_edge(k) - 1e-12);
        }
    }
    CHECK(pieces == 16);
}

} // TEST_SUITE

TEST_SUITE("lut.deviation") {

TEST_CASE("constant function only sees output quantization")
{
    const LutTable t = build_table(make(UnaryOp::Cosh, -1e-9, 1e-9, 8));
    const auto r = deviation_report(t, 101);
    CHECK(r.max_abs_err <= 1.0 / 64);
    CHECK(r.points.size() == 101);
}

TEST_CASE("coarse sine staircase")
{
    const LutTable t = build_table(make(UnaryOp::Sin, -4, 4, 8));
    const auto r = deviation_report(t, 2001);
    CHECK(r.max_abs_err >= 0.3);
    CHECK(r.mean_abs_err < r.max_abs_err);
}

TEST_CASE("fine identity-like table stays within half a bin plus one step")
{
    // sinh has slope within [1, 1.0002] on |x| < 0.02; treat it as identity.
    const FixedSpec spec(40, 4);
    const LutTable t = build_table(make(UnaryOp::Sinh, -0.02, 0.02, 4096, spec));
    const auto r = deviation_report(t, 5001);
    const double half_bin = 0.04 / 4096 / 2;
    CHECK(r.max_abs_err <= 1.0002 * half_bin + spec.resolution());
}

TEST_CASE("error law: Lipschitz constant times bin width plus one output step")
{
    struct Case {
        UnaryOp f;
        double a, b, lipschitz;
    };
    const FixedSpec spec(16, 6);
    for (const Case& c : {Case{UnaryOp::Sin, -4, 4, 1.0}, Case{UnaryOp::Exp, -4, 2, std::exp(2.0)}}) {
        for (std::size_t n = 16; n <= 4096; n *= 4) {
            const auto r = deviation_report(build_table(make(c.f, c.a, c.b, n, spec)), 3001);
            const double bound = c.lipschitz * (c.b - c.a) / static_cast<double>(n) + spec.resolution();
            CHECK(r.max_abs_err <= bound);
        }
    }
}

TEST_CASE("grid must have two points")
{
    const LutTable t = build_table(make(UnaryOp::Sin, -4, 4, 8));
    CHECK_THROWS_AS(deviation_report(t, 1), ConfigError);
}

TEST_CASE("doubling the table size does not make things worse")
{
    for (auto f : {UnaryOp::Sin, UnaryOp::Exp}) {
        const double hi = f == UnaryOp::Exp ? 2.0 : 4.0;
        const FixedSpec spec(16, 6);
        double prev = INFINITY;
        for (std::size_t n = 8; n <= 2048; n *= 2) {
            const auto r = deviation_report(build_table(make(f, -4, hi, n, spec)), 4001);
            CHECK(r.max_abs_err <= prev + spec.resolution());
            prev = r.max_abs_err;
        }
    }
}

} // TEST_SUITE

TEST_SUITE("lut.set") {

TEST_CASE("lookup by function")
{
    LutSet set;
    CHECK(set.empty());
    set.add(build_table(make(UnaryOp::Sin, -4, 4, 8)));
    set.add(build_table(make(UnaryOp::Exp, -4, 2, 16)));
    REQUIRE(set.find(UnaryOp::Sin) != nullptr);
    CHECK(set.find(UnaryOp::Sin)->spec().size == 8);
    CHECK(set.find(UnaryOp::Tan) == nullptr);
    CHECK(set.functions().size() == 2);
    CHECK(parse_function_mode("lut") == FunctionMode::Lut);
    CHECK_THROWS_AS(parse_function_mode("fast"), ConfigError);
}

} // TEST_SUITE
