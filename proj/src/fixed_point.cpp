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

#include "srfx/fixed_point.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <cmath>

namespace srfx {

using i128 = __int128;
using u128 = unsigned __int128;

FixedSpec::FixedSpec(int total_bits, int int_bits, Overflow overflow, Rounding rounding)
    : total_bits_(total_bits), int_bits_(int_bits), overflow_(overflow), rounding_(rounding)
{
    if (total_bits < 1 || total_bits > 64 || int_bits < 1 || int_bits > total_bits)
        throw ConfigError(fmt::format("invalid fixed-point format <{},{}>: need 1 <= I <= B <= 64",
                                      total_bits, int_bits));
}

std::int64_t FixedSpec::max_raw() const
{
    return static_cast<std::int64_t>((u128{1} << (total_bits_ - 1)) - 1);
}

std::int64_t FixedSpec::min_raw() const { return -max_raw() - 1; }

double FixedSpec::max_value() const { return std::ldexp(static_cast<double>(max_raw()), -frac_bits()); }
double FixedSpec::min_value() const { return std::ldexp(static_cast<double>(min_raw()), -frac_bits()); }
double FixedSpec::resolution() const { return std::ldexp(1.0, -frac_bits()); }

std::string FixedSpec::to_string() const { return fmt::format("<{},{}>", total_bits_, int_bits_); }

FixedSpec FixedSpec::parse(std::string_view text, Overflow o, Rounding r)
{
    auto s = detail::trim(text);
    if (s.substr(0, 8) == "ap_fixed") s = detail::trim(s.substr(8));
    if (!s.empty() && (s.front() == '<' || s.front() == '(')) s.remove_prefix(1);
    if (!s.empty() && (s.back() == '>' || s.back() == ')')) s.remove_suffix(1);
    // Mathematical angle brackets (U+27E8 / U+27E9) as used in prose.
    if (s.substr(0, 3) == "\xE2\x9F\xA8") s.remove_prefix(3);
    if (s.size() >= 3 && s.substr(s.size() - 3) == "\xE2\x9F\xA9") s.remove_suffix(3);
    auto parts = detail::split(s, ',');
    if (parts.size() != 2) throw ConfigError(fmt::format("malformed fixed-point spec '{}'", text));
    return FixedSpec(detail::parse_int(parts[0], "fixed-point B"), detail::parse_int(parts[1], "fixed-point I"), o, r);
}

double FixedValue::to_f64() const { return std::ldexp(static_cast<double>(raw), -spec.frac_bits()); }

double to_f64(const FixedValue& v) { return v.to_f64(); }

namespace {

std::int64_t wrap_bits(i128 w, int bits)
{
    const u128 mask = bits == 128 ? ~u128{0} : ((u128{1} << bits) - 1);
    u128 u = static_cast<u128>(w) & mask;
    if (u >> (bits - 1)) u |= ~mask;  // sign-extend
    return static_cast<std::int64_t>(static_cast<i128>(u));
}

int bit_length(i128 w)
{
    u128 u = w < 0 ? static_cast<u128>(-(w + 1)) : static_cast<u128>(w);
    int n = 0;
    while (u) {
        u >>= 1;
        ++n;
    }
    return n;
}

i128 floor_shift(i128 w, int s) { return w >> s; }  // arithmetic shift floors

// w carries `w_frac` fractional bits; reduce to out's format.
FixedValue reduce(i128 w, int w_frac, const FixedSpec& out)
{
    const int shift = out.frac_bits() - w_frac;
    const bool saturate = out.overflow() == Overflow::Saturate;
    if (shift > 0) {
        if (saturate) {
            if (w != 0 && bit_length(w) + shift > 120)
                return {w < 0 ? out.min_raw() : out.max_raw(), out};
            w <<= shift;
        } else {
            w = static_cast<i128>(static_cast<u128>(w) << shift);
        }
    } else if (shift < 0) {
        const int s = -shift;
        if (out.rounding() == Rounding::RoundNearest) {
            // floor(w / 2^s + 1/2) without forming w + half when it could overflow.
            const i128 q = floor_shift(w, s);
            const i128 rem = w - (q << s);
            w = q + ((rem >> (s - 1)) & 1);
        } else {
            w = floor_shift(w, s);
        }
    }
    if (saturate) {
        if (w > out.max_raw()) return {out.max_raw(), out};
        if (w < out.min_raw()) return {out.min_raw(), out};
        return {static_cast<std::int64_t>(w), out};
    }
    return {wrap_bits(w, out.total_bits()), out};
}

void require_same_format(const FixedValue& a, const FixedValue& b)
{
    if (!a.spec.same_format(b.spec))
        throw RuntimeError(fmt::format("fixed-point operands differ in format: {} vs {}",
                                       a.spec.to_string(), b.spec.to_string()));
}

} // namespace

FixedValue quantize(double x, const FixedSpec& spec)
{
    if (std::isnan(x)) return {0, spec};
    if (std::isinf(x)) return {x > 0 ? spec.max_raw() : spec.min_raw(), spec};
    const double scaled = std::ldexp(x, spec.frac_bits());
    const double r = spec.rounding() == Rounding::Truncate ? std::floor(scaled) : std::floor(scaled + 0.5);
    const double half_range = std::ldexp(1.0, spec.total_bits() - 1);
    if (spec.overflow() == Overflow::Saturate) {
        if (r >= half_range) return {spec.max_raw(), spec};
        if (r < -half_range) return {spec.min_raw(), spec};
        return {static_cast<std::int64_t>(r), spec};
    }
    const double range = 2.0 * half_range;
    double m = std::fmod(r, range);  // exact for integral r
    if (m >= half_range) m -= range;
    if (m < -half_range) m += range;
    return {static_cast<std::int64_t>(m), spec};
}

FixedValue fx_add(const FixedValue& a, const FixedValue& b, const FixedSpec& out)
{
    require_same_format(a, b);
    return reduce(static_cast<i128>(a.raw) + b.raw, a.spec.frac_bits(), out);
}

FixedValue fx_sub(const FixedValue& a, const FixedValue& b, const FixedSpec& out)
{
    require_same_format(a, b);
    return reduce(static_cast<i128>(a.raw) - b.raw, a.spec.frac_bits(), out);
}

FixedValue fx_mul(const FixedValue& a, const FixedValue& b, const FixedSpec& out)
{
    require_same_format(a, b);
    return reduce(static_cast<i128>(a.raw) * b.raw, 2 * a.spec.frac_bits(), out);
}

FixedValue fx_div(const FixedValue& a, const FixedValue& b, const FixedSpec& out)
{
    require_same_format(a, b);
    if (b.raw == 0) {
        if (a.raw == 0) return {0, out};
        return {a.raw > 0 ? out.max_raw() : out.min_raw(), out};
    }
    // a/b has no fractional scaling of its own; form a * 2^(F_out + 1) / b
    // (floored) so the reduction sees one guard bit for round-to-nearest.
    const int f = out.frac_bits() + 1;
    if (bit_length(a.raw) + f > 125) {
        // Only reachable for F_out >= 62 with a near-extreme dividend.
        return quantize(static_cast<double>(a.raw) / static_cast<double>(b.raw), out);
    }
    i128 num = static_cast<i128>(a.raw) << f;
    i128 den = b.raw;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 q = num / den;
    if (num % den < 0) --q;
    return reduce(q, f, out);
}

FixedValue fx_convert(const FixedValue& v, const FixedSpec& out)
{
    return reduce(static_cast<i128>(v.raw), v.spec.frac_bits(), out);
}

} // namespace srfx
