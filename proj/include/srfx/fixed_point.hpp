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

#include <cstdint>
#include <string>
#include <string_view>

namespace srfx {

enum class Overflow : std::uint8_t { Wrap, Saturate };
enum class Rounding : std::uint8_t { Truncate, RoundNearest };

// Signed two's-complement fixed-point format <B,I>: B total bits, I integer
// bits including the sign, F = B - I fractional bits. Defaults follow the
// ap_fixed conventions (truncate, wrap).
class FixedSpec {
public:
    FixedSpec(int total_bits, int int_bits, Overflow overflow = Overflow::Wrap,
              Rounding rounding = Rounding::Truncate);

    int total_bits() const { return total_bits_; }
    int int_bits() const { return int_bits_; }
    int frac_bits() const { return total_bits_ - int_bits_; }
    Overflow overflow() const { return overflow_; }
    Rounding rounding() const { return rounding_; }

    std::int64_t max_raw() const;
    std::int64_t min_raw() const;
    double max_value() const;
    double min_value() const;
    double resolution() const;  // 2^-F

    FixedSpec with_modes(Overflow o, Rounding r) const { return {total_bits_, int_bits_, o, r}; }

    // "<16,6>"
    std::string to_string() const;

    // Accepts "16,6", "<16,6>", "ap_fixed<16,6>" (whitespace-tolerant).
    // Modes are taken from the arguments.
    static FixedSpec parse(std::string_view text, Overflow o = Overflow::Wrap,
                           Rounding r = Rounding::Truncate);

    // Same format (B, I); modes are ignored.
    bool same_format(const FixedSpec& other) const
    {
        return total_bits_ == other.total_bits_ && int_bits_ == other.int_bits_;
    }
    friend bool operator==(const FixedSpec&, const FixedSpec&) = default;

private:
    int total_bits_;
    int int_bits_;
    Overflow overflow_;
    Rounding rounding_;
};

struct FixedValue {
    std::int64_t raw = 0;
    FixedSpec spec{16, 6};

    double to_f64() const;
    friend bool operator==(const FixedValue&, const FixedValue&) = default;
};

// NaN maps to 0 and infinities to the format extremes, whatever the overflow
// mode; finite values follow the spec's rounding and overflow modes.
FixedValue quantize(double x, const FixedSpec& spec);
double to_f64(const FixedValue& v);

// Exact arithmetic in widened precision, then one reduction to `out`.
// Operands must share a format. Division by zero yields the extreme of the
// dividend's sign (0/0 gives 0).
FixedValue fx_add(const FixedValue& a, const FixedValue& b, const FixedSpec& out);
FixedValue fx_sub(const FixedValue& a, const FixedValue& b, const FixedSpec& out);
FixedValue fx_mul(const FixedValue& a, const FixedValue& b, const FixedSpec& out);
FixedValue fx_div(const FixedValue& a, const FixedValue& b, const FixedSpec& out);

// Convert between formats with out's rounding/overflow rules.
FixedValue fx_convert(const FixedValue& v, const FixedSpec& out);

} // namespace srfx
