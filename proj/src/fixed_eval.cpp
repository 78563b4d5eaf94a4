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

#include "srfx/fixed_eval.hpp"

#include "srfx/errors.hpp"

#include <fmt/format.h>

#include <vector>

namespace srfx {

namespace {

class FixedEvaluator {
public:
    FixedEvaluator(const FixedSpec& spec, const FunctionImpl& impl) : spec_(spec), impl_(impl) {}

    FixedValue run(const ExprNode& n, std::span<const double> x)
    {
        switch (n.kind) {
        case NodeKind::Const: return quantize(n.value, spec_);
        case NodeKind::Var: return quantize(x[n.var], spec_);
        case NodeKind::Unary: {
            const FixedValue arg = run(*n.lhs, x);
            const auto op = static_cast<UnaryOp>(n.op);
            if (op == UnaryOp::Square) return fx_mul(arg, arg, spec_);
            if (impl_.mode == FunctionMode::Lut) {
                const LutTable* t = impl_.luts ? impl_.luts->find(op) : nullptr;
                if (!t) throw ConfigError(fmt::format("no lookup table configured for '{}'", op_name(op)));
                FixedValue v = t->lookup(arg);
                if (!(v.spec == spec_)) v = fx_convert(v, spec_);
                return v;
            }
            return quantize(apply(op, arg.to_f64()), spec_);
        }
        case NodeKind::Binary: {
            const FixedValue a = run(*n.lhs, x);
            const FixedValue b = run(*n.rhs, x);
            switch (static_cast<BinaryOp>(n.op)) {
            case BinaryOp::Add: return fx_add(a, b, spec_);
            case BinaryOp::Sub: return fx_sub(a, b, spec_);
            case BinaryOp::Mul: return fx_mul(a, b, spec_);
            case BinaryOp::Div: return fx_div(a, b, spec_);
            }
        }
        }
        return {0, spec_};
    }

private:
    const FixedSpec& spec_;
    const FunctionImpl& impl_;
};

void check_tables(const ExprNode& n, const FunctionImpl& impl)
{
    if (n.kind == NodeKind::Unary) {
        const auto op = static_cast<UnaryOp>(n.op);
        if (is_function(op) && (!impl.luts || !impl.luts->find(op)))
            throw ConfigError(fmt::format("no lookup table configured for '{}'", op_name(op)));
    }
    if (n.lhs) check_tables(*n.lhs, impl);
    if (n.rhs) check_tables(*n.rhs, impl);
}

} // namespace

void require_tables(const Expr& e, const FunctionImpl& impl)
{
    if (impl.mode == FunctionMode::Lut) check_tables(e.node(), impl);
}

FixedValue eval_fixed(const Expr& e, std::span<const double> x, const FixedSpec& spec, const FunctionImpl& impl)
{
    if (x.size() < e.min_features()) throw RuntimeError("input vector shorter than expression requires");
    require_tables(e, impl);
    return FixedEvaluator(spec, impl).run(e.node(), x);
}

void eval_fixed_batch(const Expr& e, std::span<const std::span<const double>> columns, const FixedSpec& spec,
                      const FunctionImpl& impl, std::span<double> out)
{
    const std::size_t d = e.min_features();
    if (columns.size() < d) throw RuntimeError("fewer feature columns than expression requires");
    require_tables(e, impl);
    FixedEvaluator ev(spec, impl);
    std::vector<double> row(d);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) row[j] = columns[j][i];
        out[i] = ev.run(e.node(), row).to_f64();
    }
}

} // namespace srfx
