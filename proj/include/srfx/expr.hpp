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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srfx {

enum class UnaryOp : std::uint8_t { Sin, Tan, Sinh, Cosh, Exp, Gauss, LogAbs, Square };
enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div };

inline constexpr std::size_t kUnaryOpCount = 8;
inline constexpr std::size_t kBinaryOpCount = 4;

inline constexpr std::array<UnaryOp, kUnaryOpCount> kAllUnaryOps = {
    UnaryOp::Sin, UnaryOp::Tan, UnaryOp::Sinh, UnaryOp::Cosh,
    UnaryOp::Exp, UnaryOp::Gauss, UnaryOp::LogAbs, UnaryOp::Square};
inline constexpr std::array<BinaryOp, kBinaryOpCount> kAllBinaryOps = {
    BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div};

// Canonical short names: "sin", "log_abs", "add", ...
std::string_view op_name(UnaryOp op);
std::string_view op_name(BinaryOp op);
std::optional<UnaryOp> unary_op_from_name(std::string_view name);
std::optional<BinaryOp> binary_op_from_name(std::string_view name);

// Square is plain arithmetic (u*u); every other unary op is a "function"
// for the purposes of nesting rules and LUT substitution.
constexpr bool is_function(UnaryOp op) { return op != UnaryOp::Square; }

// Apply a unary/binary operator in double precision under the domain policy:
//   log_abs(0)  -> log(DBL_MIN)     (|u| below the smallest normal clamps there)
//   x / 0       -> sign(x) * DBL_MAX
//   0 / 0       -> 0
double apply(UnaryOp op, double u);
double apply(BinaryOp op, double a, double b);

enum class NodeKind : std::uint8_t { Const, Var, Unary, Binary };

struct ExprNode;

// Immutable expression tree. Copies share structure.
class Expr {
public:
    static Expr constant(double value);
    static Expr variable(std::size_t index);
    static Expr unary(UnaryOp op, Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    const ExprNode& node() const { return *node_; }
    NodeKind kind() const;
    double value() const;
    std::size_t var() const;
    UnaryOp unary_op() const;
    BinaryOp binary_op() const;
    Expr lhs() const;     // Unary operand or Binary left child
    Expr rhs() const;     // Binary right child
    std::size_t arity() const;

    std::size_t size() const;   // number of nodes
    std::size_t depth() const;  // leaves have depth 1

    // Preorder addressing: index 0 is the root.
    Expr subtree(std::size_t index) const;
    Expr replace(std::size_t index, const Expr& replacement) const;

    // Largest Var index + 1 (0 if no variables).
    std::size_t min_features() const;
    std::size_t count_constants() const;
    std::vector<double> constants() const;                    // preorder
    Expr with_constants(std::span<const double> values) const; // preorder

    friend bool operator==(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    NodeKind kind;
    std::uint8_t op = 0;
    double value = 0.0;
    std::size_t var = 0;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
    std::size_t size = 1;
    std::size_t depth = 1;
};

// Optional human-readable names for feature columns.
class FeatureAliases {
public:
    FeatureAliases() = default;
    void add(std::string name, std::size_t index);
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::optional<std::string> name_of(std::size_t index) const;
    std::size_t size() const { return by_name_.size(); }

    // key=value lines; either side may be the x<i> form, e.g. "x3 = mass" or
    // "mass = x3". Blank lines and '#' comments are ignored.
    static FeatureAliases parse(std::string_view text);
    static FeatureAliases load(const std::string& path);

private:
    std::map<std::string, std::size_t, std::less<>> by_name_;
    std::map<std::size_t, std::string> by_index_;
};

Expr parse(std::string_view text, std::size_t n_features, const FeatureAliases* aliases = nullptr);
std::string format(const Expr& e, const FeatureAliases* aliases = nullptr);

double eval_f64(const Expr& e, std::span<const double> x);

// Column-major batch evaluation: columns[j][i] is feature j of sample i.
void eval_batch(const Expr& e, std::span<const std::span<const double>> columns,
                std::span<double> out);

class ComplexityMap {
public:
    ComplexityMap();  // every weight 1
    static ComplexityMap unit() { return {}; }
    static ComplexityMap without_operators();  // Const/Var weights only

    void set(UnaryOp op, int weight);
    void set(BinaryOp op, int weight);
    void set_constant(int weight);
    void set_variable(int weight);

    // Square falls back to the Mul weight when it has none of its own.
    std::optional<int> find(UnaryOp op) const;
    std::optional<int> find(BinaryOp op) const;
    int weight(UnaryOp op) const;  // throws ConfigError when missing
    int weight(BinaryOp op) const;
    int constant_weight() const { return constant_; }
    int variable_weight() const { return variable_; }

    std::string to_text() const;
    static ComplexityMap parse(std::string_view text);
    static ComplexityMap load(const std::string& path);

    friend bool operator==(const ComplexityMap&, const ComplexityMap&) = default;

private:
    std::array<std::optional<int>, kUnaryOpCount> unary_{};
    std::array<std::optional<int>, kBinaryOpCount> binary_{};
    int constant_ = 1;
    int variable_ = 1;
};

int complexity(const Expr& e, const ComplexityMap& m);

struct OperatorSet {
    std::vector<UnaryOp> unary;
    std::vector<BinaryOp> binary;
    bool nesting_allowed = true;
    std::optional<int> max_subtree_complexity;

    bool allows(UnaryOp op) const;  // square is allowed wherever mul is
    bool allows(BinaryOp op) const;
    void validate() const;          // throws ConfigError
};

bool check_constraints(const Expr& e, const OperatorSet& ops, const ComplexityMap& m);

} // namespace srfx
