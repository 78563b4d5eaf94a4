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

#include "srfx/expr.hpp"
#include "srfx/fixed_point.hpp"
#include "srfx/lut.hpp"

#include <span>

namespace srfx {

// Evaluates e as a hardware pipeline would at a single working format:
// inputs and constants are quantized, arithmetic goes through fx_*, and each
// unary function is either computed in double and re-quantized (math mode)
// or read from its lookup table (LUT mode). Square is always a multiply.
FixedValue eval_fixed(const Expr& e, std::span<const double> x, const FixedSpec& spec,
                      const FunctionImpl& impl = FunctionImpl::math());

// Column-major batch variant; writes dequantized results.
void eval_fixed_batch(const Expr& e, std::span<const std::span<const double>> columns,
                      const FixedSpec& spec, const FunctionImpl& impl, std::span<double> out);

// Throws ConfigError naming the first function without a table in LUT mode.
void require_tables(const Expr& e, const FunctionImpl& impl);

} // namespace srfx
