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

#include "srfx/expr.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace srfx {

namespace {

constexpr std::array<std::string_view, kUnaryOpCount> kUnaryNames = {
    "sin", "tan", "sinh", "cosh", "exp", "gauss", "log_abs", "square"};
constexpr std::array<std::string_view, kBinaryOpCount> kBinaryNames = {"add", "sub", "mul", "div"};

constexpr double kLogFloor = -708.39641853226408;  // log(DBL_MIN)

} // namespace

std::string_view op_name(UnaryOp op) { return kUnaryNames[static_cast<std::size_t>(op)]; }
std::string_view op_name(BinaryOp op) { return kBinaryNames[static_cast<std::size_t>(op)]; }

std::optional<UnaryOp> unary_op_from_name(std::string_view name)
{
    for (std::size_t i = 0; i < kUnaryOpCount; ++i)
        if (kUnaryNames[i] == name) return kAllUnaryOps[i];
    return std::nullopt;
}

std::optional<BinaryOp> binary_op_from_name(std::string_view name)
{
    for (std::size_t i = 0; i < kBinaryOpCount; ++i)
        if (kBinaryNames[i] == name) return kAllBinaryOps[i];
    if (name == "+") return BinaryOp::Add;
    if (name == "-") return BinaryOp::Sub;
    if (name == "*") return BinaryOp::Mul;
    if (name == "/") return BinaryOp::Div;
    return std::nullopt;
}

double apply(UnaryOp op, double u)
{
    switch (op) {
    case UnaryOp::Sin: return std::sin(u);
    case UnaryOp::Tan: return std::tan(u);
    case UnaryOp::Sinh: return std::sinh(u);
    case UnaryOp::Cosh: return std::cosh(u);
    case UnaryOp::Exp: return std::exp(u);
    case UnaryOp::Gauss: return std::exp(-(u * u));
    case UnaryOp::LogAbs: {
        double a = std::fabs(u);
        if (!(a >= std::numeric_limits<double>::min())) return kLogFloor;
        return std::log(a);
    }
    case UnaryOp::Square: return u * u;
    }
    return 0.0;
}

double apply(BinaryOp op, double a, double b)
{
    switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
        if (b == 0.0) {
            if (a == 0.0 || std::isnan(a)) return 0.0;
            return std::copysign(std::numeric_limits<double>::max(), a);
        }
        return a / b;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::constant(double value)
{
    if (!std::isfinite(value)) throw RuntimeError("non-finite constant in expression");
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Const;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index)
{
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Var;
    n->var = index;
    return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr operand)
{
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Unary;
    n->op = static_cast<std::uint8_t>(op);
    n->size = 1 + operand.node_->size;
    n->depth = 1 + operand.node_->depth;
    n->lhs = std::move(operand.node_);
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs)
{
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Binary;
    n->op = static_cast<std::uint8_t>(op);
    n->size = 1 + lhs.node_->size + rhs.node_->size;
    n->depth = 1 + std::max(lhs.node_->depth, rhs.node_->depth);
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
std::size_t Expr::var() const { return node_->var; }
UnaryOp Expr::unary_op() const { return static_cast<UnaryOp>(node_->op); }
BinaryOp Expr::binary_op() const { return static_cast<BinaryOp>(node_->op); }
Expr Expr::lhs() const { return Expr(node_->lhs); }
Expr Expr::rhs() const { return Expr(node_->rhs); }
std::size_t Expr::size() const { return node_->size; }
std::size_t Expr::depth() const { return node_->depth; }

std::size_t Expr::arity() const
{
    switch (node_->kind) {
    case NodeKind::Unary: return 1;
    case NodeKind::Binary: return 2;
    default: return 0;
    }
}

Expr Expr::subtree(std::size_t index) const
{
    if (index >= size()) throw RuntimeError("subtree index out of range");
    const ExprNode* n = node_.get();
    std::shared_ptr<const ExprNode> owner = node_;
    while (index > 0) {
        --index;
        const std::size_t left = n->lhs->size;
        if (index < left) {
            owner = n->lhs;
        } else {
            index -= left;
            owner = n->rhs;
        }
        n = owner.get();
    }
    return Expr(owner);
}

Expr Expr::replace(std::size_t index, const Expr& replacement) const
{
    if (index >= size()) throw RuntimeError("subtree index out of range");
    if (index == 0) return replacement;
    const std::size_t left = node_->lhs->size;
    if (index - 1 < left) {
        Expr child = lhs().replace(index - 1, replacement);
        if (kind() == NodeKind::Unary) return Expr::unary(unary_op(), std::move(child));
        return Expr::binary(binary_op(), std::move(child), rhs());
    }
    Expr child = rhs().replace(index - 1 - left, replacement);
    return Expr::binary(binary_op(), lhs(), std::move(child));
}

namespace {

std::size_t max_var(const ExprNode& n)
{
    switch (n.kind) {
    case NodeKind::Const: return 0;
    case NodeKind::Var: return n.var + 1;
    case NodeKind::Unary: return max_var(*n.lhs);
    case NodeKind::Binary: return std::max(max_var(*n.lhs), max_var(*n.rhs));
    }
    return 0;
}

void collect_constants(const ExprNode& n, std::vector<double>& out)
{
    if (n.kind == NodeKind::Const) out.push_back(n.value);
    if (n.lhs) collect_constants(*n.lhs, out);
    if (n.rhs) collect_constants(*n.rhs, out);
}

Expr rebuild_constants(const Expr& e, std::span<const double> values, std::size_t& next)
{
    switch (e.kind()) {
    case NodeKind::Const: return Expr::constant(values[next++]);
    case NodeKind::Var: return e;
    case NodeKind::Unary: return Expr::unary(e.unary_op(), rebuild_constants(e.lhs(), values, next));
    case NodeKind::Binary: {
        Expr l = rebuild_constants(e.lhs(), values, next);
        Expr r = rebuild_constants(e.rhs(), values, next);
        return Expr::binary(e.binary_op(), std::move(l), std::move(r));
    }
    }
    return e;
}

bool nodes_equal(const ExprNode& a, const ExprNode& b)
{
    if (&a == &b) return true;
    if (a.kind != b.kind || a.size != b.size) return false;
    switch (a.kind) {
    case NodeKind::Const: return a.value == b.value;
    case NodeKind::Var: return a.var == b.var;
    case NodeKind::Unary: return a.op == b.op && nodes_equal(*a.lhs, *b.lhs);
    case NodeKind::Binary:
        return a.op == b.op && nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
    }
    return false;
}

} // namespace

std::size_t Expr::min_features() const { return max_var(*node_); }

std::size_t Expr::count_constants() const { return constants().size(); }

std::vector<double> Expr::constants() const
{
    std::vector<double> out;
    collect_constants(*node_, out);
    return out;
}

Expr Expr::with_constants(std::span<const double> values) const
{
    if (values.size() != count_constants()) throw RuntimeError("constant count mismatch");
    std::size_t next = 0;
    return rebuild_constants(*this, values, next);
}

bool operator==(const Expr& a, const Expr& b) { return nodes_equal(*a.node_, *b.node_); }

// ---------------------------------------------------------------------------
// Feature aliases

void FeatureAliases::add(std::string name, std::size_t index)
{
    by_index_[index] = name;
    by_name_[std::move(name)] = index;
}

std::optional<std::size_t> FeatureAliases::index_of(std::string_view name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> FeatureAliases::name_of(std::size_t index) const
{
    auto it = by_index_.find(index);
    if (it == by_index_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::optional<std::size_t> parse_x_index(std::string_view s)
{
    if (s.size() < 2 || s[0] != 'x') return std::nullopt;
    std::size_t idx = 0;
    auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), idx);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return idx;
}

} // namespace

FeatureAliases FeatureAliases::parse(std::string_view text)
{
    FeatureAliases out;
    std::size_t line_no = 0;
    for (const auto& [key, value] : detail::key_value_lines(text, line_no)) {
        if (auto idx = parse_x_index(value)) {
            out.add(key, *idx);
        } else if (auto idx2 = parse_x_index(key)) {
            out.add(value, *idx2);
        } else {
            throw ConfigError(fmt::format("alias line '{} = {}' names no x<i> feature", key, value));
        }
    }
    return out;
}

FeatureAliases FeatureAliases::load(const std::string& path)
{
    return parse(detail::read_file(path, ErrorKind::Config));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t n_features, const FeatureAliases* aliases)
        : text_(text), n_features_(n_features), aliases_(aliases) {}

    Expr run()
    {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail(fmt::format("unexpected '{}'", text_[pos_]));
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(fmt::format("expected '{}' but reached end of input", c));
            fail(fmt::format("expected '{}'", c));
        }
    }

    Expr parse_sum()
    {
        Expr lhs = parse_product();
        for (;;) {
            if (accept('+')) lhs = Expr::binary(BinaryOp::Add, std::move(lhs), parse_product());
            else if (accept('-')) lhs = Expr::binary(BinaryOp::Sub, std::move(lhs), parse_product());
            else return lhs;
        }
    }

    Expr parse_product()
    {
        Expr lhs = parse_signed();
        for (;;) {
            if (accept('*')) lhs = Expr::binary(BinaryOp::Mul, std::move(lhs), parse_signed());
            else if (accept('/')) lhs = Expr::binary(BinaryOp::Div, std::move(lhs), parse_signed());
            else return lhs;
        }
    }

    // Unary minus folds into constants; otherwise it becomes -1 * operand.
    Expr parse_signed()
    {
        if (accept('-')) {
            Expr operand = parse_signed();
            if (operand.kind() == NodeKind::Const) return Expr::constant(-operand.value());
            return Expr::binary(BinaryOp::Mul, Expr::constant(-1.0), std::move(operand));
        }
        if (accept('+')) return parse_signed();
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        while (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            double exponent = parse_number_literal();
            if (exponent != 2.0) {
                pos_ = at;
                fail("only the exponent 2 is supported");
            }
            base = Expr::unary(UnaryOp::Square, std::move(base));
        }
        return base;
    }

    double parse_number_literal()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        if (start == pos_) fail("expected a number");
        double value = 0.0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || p != text_.data() + pos_ || !std::isfinite(value)) {
            pos_ = start;
            fail("malformed number");
        }
        return value;
    }

    std::string_view parse_identifier()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    Expr parse_primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::constant(parse_number_literal());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            std::string_view name = parse_identifier();
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '(') return parse_call(name, start);
            return resolve_variable(name, start);
        }
        fail(fmt::format("unexpected '{}'", c));
    }

    Expr parse_call(std::string_view name, std::size_t start)
    {
        if (name == "log") {
            expect('(');
            const std::size_t inner_at = pos_;
            std::string_view inner = parse_identifier();
            if (inner != "abs") {
                pos_ = inner_at;
                fail("log is only supported as log(abs(...))");
            }
            expect('(');
            Expr arg = parse_sum();
            expect(')');
            expect(')');
            return Expr::unary(UnaryOp::LogAbs, std::move(arg));
        }
        std::optional<UnaryOp> op;
        if (name == "Gauss") op = UnaryOp::Gauss;
        else op = unary_op_from_name(name);
        if (!op) {
            pos_ = start;
            fail(fmt::format("unknown function '{}'", name));
        }
        expect('(');
        Expr arg = parse_sum();
        expect(')');
        return Expr::unary(*op, std::move(arg));
    }

    Expr resolve_variable(std::string_view name, std::size_t start)
    {
        std::optional<std::size_t> idx;
        if (aliases_) idx = aliases_->index_of(name);
        if (!idx) idx = parse_x_index(name);
        if (!idx) {
            pos_ = start;
            fail(fmt::format("unknown identifier '{}'", name));
        }
        if (*idx >= n_features_) {
            pos_ = start;
            fail(fmt::format("variable '{}' index {} >= feature count {}", name, *idx, n_features_));
        }
        return Expr::variable(*idx);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t n_features_;
    const FeatureAliases* aliases_;
};

} // namespace

Expr parse(std::string_view text, std::size_t n_features, const FeatureAliases* aliases)
{
    return Parser(text, n_features, aliases).run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool is_additive(const ExprNode& n)
{
    return n.kind == NodeKind::Binary &&
           (static_cast<BinaryOp>(n.op) == BinaryOp::Add || static_cast<BinaryOp>(n.op) == BinaryOp::Sub);
}

void print(const ExprNode& n, const FeatureAliases* aliases, std::string& out);

void print_wrapped(const ExprNode& n, bool wrap, const FeatureAliases* aliases, std::string& out)
{
    if (wrap) out += '(';
    print(n, aliases, out);
    if (wrap) out += ')';
}

void print(const ExprNode& n, const FeatureAliases* aliases, std::string& out)
{
    switch (n.kind) {
    case NodeKind::Const:
        out += fmt::format("{}", n.value);
        return;
    case NodeKind::Var: {
        std::optional<std::string> name;
        if (aliases) name = aliases->name_of(n.var);
        out += name ? *name : fmt::format("x{}", n.var);
        return;
    }
    case NodeKind::Unary: {
        const auto op = static_cast<UnaryOp>(n.op);
        if (op == UnaryOp::Square) {
            const ExprNode& b = *n.lhs;
            const bool simple = b.kind == NodeKind::Var ||
                                (b.kind == NodeKind::Const && !std::signbit(b.value)) ||
                                (b.kind == NodeKind::Unary && static_cast<UnaryOp>(b.op) != UnaryOp::Square);
            print_wrapped(b, !simple, aliases, out);
            out += "^2";
            return;
        }
        if (op == UnaryOp::LogAbs) {
            out += "log(abs(";
            print(*n.lhs, aliases, out);
            out += "))";
            return;
        }
        out += op_name(op);
        out += '(';
        print(*n.lhs, aliases, out);
        out += ')';
        return;
    }
    case NodeKind::Binary: {
        const auto op = static_cast<BinaryOp>(n.op);
        const bool additive = op == BinaryOp::Add || op == BinaryOp::Sub;
        const bool wrap_left = !additive && is_additive(*n.lhs);
        const bool wrap_right = additive ? is_additive(*n.rhs) : n.rhs->kind == NodeKind::Binary;
        print_wrapped(*n.lhs, wrap_left, aliases, out);
        switch (op) {
        case BinaryOp::Add: out += " + "; break;
        case BinaryOp::Sub: out += " - "; break;
        case BinaryOp::Mul: out += " * "; break;
        case BinaryOp::Div: out += " / "; break;
        }
        print_wrapped(*n.rhs, wrap_right, aliases, out);
        return;
    }
    }
}

} // namespace

std::string format(const Expr& e, const FeatureAliases* aliases)
{
    std::string out;
    print(e.node(), aliases, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_node(const ExprNode& n, std::span<const double> x)
{
    switch (n.kind) {
    case NodeKind::Const: return n.value;
    case NodeKind::Var: return x[n.var];
    case NodeKind::Unary: return apply(static_cast<UnaryOp>(n.op), eval_node(*n.lhs, x));
    case NodeKind::Binary:
        return apply(static_cast<BinaryOp>(n.op), eval_node(*n.lhs, x), eval_node(*n.rhs, x));
    }
    return 0.0;
}

class BatchEvaluator {
public:
    BatchEvaluator(std::span<const std::span<const double>> columns, std::size_t n)
        : columns_(columns), n_(n) {}

    void run(const ExprNode& node, std::span<double> out, std::size_t level)
    {
        switch (node.kind) {
        case NodeKind::Const:
            std::fill(out.begin(), out.end(), node.value);
            return;
        case NodeKind::Var: {
            auto col = columns_[node.var];
            std::copy(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(n_), out.begin());
            return;
        }
        case NodeKind::Unary: {
            run(*node.lhs, out, level);
            const auto op = static_cast<UnaryOp>(node.op);
            for (double& v : out) v = apply(op, v);
            return;
        }
        case NodeKind::Binary: {
            run(*node.lhs, out, level);
            std::span<double> tmp = scratch(level);
            run(*node.rhs, tmp, level + 1);
            const auto op = static_cast<BinaryOp>(node.op);
            switch (op) {
            case BinaryOp::Add: for (std::size_t i = 0; i < n_; ++i) out[i] += tmp[i]; break;
            case BinaryOp::Sub: for (std::size_t i = 0; i < n_; ++i) out[i] -= tmp[i]; break;
            case BinaryOp::Mul: for (std::size_t i = 0; i < n_; ++i) out[i] *= tmp[i]; break;
            case BinaryOp::Div: for (std::size_t i = 0; i < n_; ++i) out[i] = apply(op, out[i], tmp[i]); break;
            }
            return;
        }
        }
    }

private:
    std::span<double> scratch(std::size_t level)
    {
        while (buffers_.size() <= level) buffers_.emplace_back(n_);
        return buffers_[level];
    }

    std::span<const std::span<const double>> columns_;
    std::size_t n_;
    std::vector<std::vector<double>> buffers_;
};

} // namespace

double eval_f64(const Expr& e, std::span<const double> x)
{
    if (x.size() < e.min_features()) throw RuntimeError("input vector shorter than expression requires");
    return eval_node(e.node(), x);
}

void eval_batch(const Expr& e, std::span<const std::span<const double>> columns, std::span<double> out)
{
    if (columns.size() < e.min_features()) throw RuntimeError("fewer feature columns than expression requires");
    const std::size_t n = out.size();
    for (auto c : columns)
        if (c.size() < n) throw RuntimeError("feature column shorter than output");
    BatchEvaluator(columns, n).run(e.node(), out, 0);
}

// ---------------------------------------------------------------------------
// Complexity

ComplexityMap::ComplexityMap()
{
    unary_.fill(1);
    binary_.fill(1);
}

ComplexityMap ComplexityMap::without_operators()
{
    ComplexityMap m;
    m.unary_.fill(std::nullopt);
    m.binary_.fill(std::nullopt);
    return m;
}

namespace {
void check_weight(int w)
{
    if (w < 1) throw ConfigError(fmt::format("complexity weight must be >= 1, got {}", w));
}
} // namespace

void ComplexityMap::set(UnaryOp op, int weight)
{
    check_weight(weight);
    unary_[static_cast<std::size_t>(op)] = weight;
}

void ComplexityMap::set(BinaryOp op, int weight)
{
    check_weight(weight);
    binary_[static_cast<std::size_t>(op)] = weight;
}

void ComplexityMap::set_constant(int weight)
{
    check_weight(weight);
    constant_ = weight;
}

void ComplexityMap::set_variable(int weight)
{
    check_weight(weight);
    variable_ = weight;
}

std::optional<int> ComplexityMap::find(UnaryOp op) const
{
    auto w = unary_[static_cast<std::size_t>(op)];
    if (!w && op == UnaryOp::Square) return find(BinaryOp::Mul);
    return w;
}

std::optional<int> ComplexityMap::find(BinaryOp op) const { return binary_[static_cast<std::size_t>(op)]; }

int ComplexityMap::weight(UnaryOp op) const
{
    if (auto w = find(op)) return *w;
    throw ConfigError(fmt::format("no complexity weight for operator '{}'", op_name(op)));
}

int ComplexityMap::weight(BinaryOp op) const
{
    if (auto w = find(op)) return *w;
    throw ConfigError(fmt::format("no complexity weight for operator '{}'", op_name(op)));
}

std::string ComplexityMap::to_text() const
{
    std::string out;
    for (auto op : kAllBinaryOps)
        if (auto w = binary_[static_cast<std::size_t>(op)]) out += fmt::format("{} = {}\n", op_name(op), *w);
    for (auto op : kAllUnaryOps)
        if (auto w = unary_[static_cast<std::size_t>(op)]) out += fmt::format("{} = {}\n", op_name(op), *w);
    out += fmt::format("const = {}\nvar = {}\n", constant_, variable_);
    return out;
}

ComplexityMap ComplexityMap::parse(std::string_view text)
{
    ComplexityMap m = without_operators();
    std::size_t line_no = 0;
    for (const auto& [key, value] : detail::key_value_lines(text, line_no)) {
        const int w = detail::parse_int(value, key);
        if (key == "const") m.set_constant(w);
        else if (key == "var") m.set_variable(w);
        else if (auto u = unary_op_from_name(key)) m.set(*u, w);
        else if (auto b = binary_op_from_name(key)) m.set(*b, w);
        else throw ConfigError(fmt::format("unknown operator '{}' in complexity map", key));
    }
    return m;
}

ComplexityMap ComplexityMap::load(const std::string& path)
{
    return parse(detail::read_file(path, ErrorKind::Config));
}

namespace {

int complexity_of(const ExprNode& n, const ComplexityMap& m)
{
    switch (n.kind) {
    case NodeKind::Const: return m.constant_weight();
    case NodeKind::Var: return m.variable_weight();
    case NodeKind::Unary: return m.weight(static_cast<UnaryOp>(n.op)) + complexity_of(*n.lhs, m);
    case NodeKind::Binary:
        return m.weight(static_cast<BinaryOp>(n.op)) + complexity_of(*n.lhs, m) + complexity_of(*n.rhs, m);
    }
    return 0;
}

} // namespace

int complexity(const Expr& e, const ComplexityMap& m) { return complexity_of(e.node(), m); }

// ---------------------------------------------------------------------------
// Constraints

bool OperatorSet::allows(UnaryOp op) const
{
    if (std::find(unary.begin(), unary.end(), op) != unary.end()) return true;
    return op == UnaryOp::Square && allows(BinaryOp::Mul);
}

bool OperatorSet::allows(BinaryOp op) const
{
    return std::find(binary.begin(), binary.end(), op) != binary.end();
}

void OperatorSet::validate() const
{
    if (binary.empty()) throw ConfigError("operator set needs at least one binary operator");
    if (max_subtree_complexity && *max_subtree_complexity < 1)
        throw ConfigError("max_subtree_complexity must be positive");
}

namespace {

// Returns complexity of the subtree (or -1 once a violation is found).
int check_node(const ExprNode& n, const OperatorSet& ops, const ComplexityMap& m, bool inside_function)
{
    switch (n.kind) {
    case NodeKind::Const: return m.constant_weight();
    case NodeKind::Var: return m.variable_weight();
    case NodeKind::Unary: {
        const auto op = static_cast<UnaryOp>(n.op);
        if (!ops.allows(op)) return -1;
        const bool fn = is_function(op);
        if (fn && inside_function && !ops.nesting_allowed) return -1;
        const int arg = check_node(*n.lhs, ops, m, inside_function || fn);
        if (arg < 0) return -1;
        if (ops.max_subtree_complexity && arg > *ops.max_subtree_complexity) return -1;
        return m.weight(op) + arg;
    }
    case NodeKind::Binary: {
        const auto op = static_cast<BinaryOp>(n.op);
        if (!ops.allows(op)) return -1;
        const int l = check_node(*n.lhs, ops, m, inside_function);
        if (l < 0) return -1;
        const int r = check_node(*n.rhs, ops, m, inside_function);
        if (r < 0) return -1;
        return m.weight(op) + l + r;
    }
    }
    return -1;
}

} // namespace

bool check_constraints(const Expr& e, const OperatorSet& ops, const ComplexityMap& m)
{
    return check_node(e.node(), ops, m, false) >= 0;
}

} // namespace srfx
