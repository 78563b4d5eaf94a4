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

#include "srfx/search.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

namespace srfx {

std::string_view loss_name(LossKind k)
{
    return k == LossKind::Margin ? "margin" : "squared";
}

LossKind parse_loss_kind(std::string_view s)
{
    if (s == "margin" || s == "l2_margin") return LossKind::Margin;
    if (s == "squared" || s == "mse") return LossKind::Squared;
    throw ConfigError(fmt::format("unknown loss '{}'", s));
}

void SearchConfig::validate() const
{
    ops.validate();
    if (c_max < 3) throw ConfigError(fmt::format("c_max must be at least 3, got {}", c_max));
    if (tournament_size < 2) throw ConfigError("tournament_size must be at least 2");
    if (islands < 1) throw ConfigError("islands must be at least 1");
    if (island_size() < tournament_size)
        throw ConfigError(fmt::format("population per island ({}) is smaller than the tournament ({})", island_size(),
                                      tournament_size));
    if (generations < 0) throw ConfigError("generations must be non-negative");
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0))
        throw ConfigError("crossover_probability must lie in [0, 1]");
    const MutationWeights& w = mutation;
    for (double v : {w.replace, w.perturb, w.insert, w.remove, w.append})
        if (!(v >= 0.0)) throw ConfigError("mutation weights must be non-negative");
    if (w.replace + w.perturb + w.insert + w.remove + w.append <= 0.0) throw ConfigError("all mutation weights are zero");
    if (parsimony_tolerance < 0.0) throw ConfigError("parsimony_tolerance must be non-negative");
    if (constant_iterations < 0 || constant_restarts < 0 || max_retries < 1)
        throw ConfigError("optimizer and retry budgets must be non-negative");
}

int SearchConfig::island_size() const
{
    return islands > 0 ? population_size / islands : 0;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// ---- hall of fame ----

bool HallOfFame::offer(const Candidate& c)
{
    if (!std::isfinite(c.loss) || c.complexity < 1 || c.complexity > c_max_) return false;
    auto it = levels_.find(c.complexity);
    if (it != levels_.end() && !(c.loss < it->second.loss)) return false;
    levels_.insert_or_assign(c.complexity, c);
    return true;
}

double HallOfFame::bar(int level) const
{
    auto it = levels_.find(level);
    return it == levels_.end() ? std::numeric_limits<double>::infinity() : it->second.loss;
}

std::vector<Candidate> HallOfFame::pareto_front() const
{
    std::vector<Candidate> out;
    for (const auto& [c, cand] : levels_)
        if (out.empty() || cand.loss < out.back().loss) out.push_back(cand);
    return out;
}

std::string HallOfFame::to_text(const FeatureAliases* aliases) const
{
    std::string out;
    for (const auto& [c, cand] : levels_) out += fmt::format("{}\t{}\t{}\n", c, cand.loss, format(cand.expr, aliases));
    return out;
}

HallOfFame HallOfFame::parse(std::string_view text, std::size_t n_features, const FeatureAliases* aliases)
{
    std::vector<Candidate> rows;
    std::size_t line_no = 0;
    int top = 0;
    for (auto line : detail::split(text, '\n')) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split(line, '\t');
        if (cells.size() != 3) throw DataError(fmt::format("hall of fame line {}: expected 3 tab-separated fields", line_no));
        Candidate c;
        try {
            c.complexity = detail::parse_int(cells[0], "complexity");
            c.loss = detail::parse_double(cells[1], "loss");
        } catch (const ConfigError& e) {
            throw DataError(fmt::format("hall of fame line {}: {}", line_no, e.what()));
        }
        c.expr = srfx::parse(detail::trim(cells[2]), n_features, aliases);
        top = std::max(top, c.complexity);
        rows.push_back(std::move(c));
    }
    HallOfFame hof(top);
    for (const auto& c : rows) hof.offer(c);
    return hof;
}

// ---- objective ----

double l2_margin_loss(double y_hat, double y)
{
    const double m = 1.0 - y_hat * y;
    return m * m;
}

double squared_loss(double y_hat, double y)
{
    const double d = y_hat - y;
    return d * d;
}

namespace {

// Batch objective with reusable scratch; one per thread.
class Objective {
public:
    Objective(const Matrix& X, std::span<const double> y, LossKind kind)
        : cols_(X.columns()), y_(y), kind_(kind), out_(X.rows())
    {
        if (y.size() != X.rows()) throw DataError("label count differs from sample count");
    }

    double operator()(const Expr& e)
    {
        if (y_.empty()) return 0.0;
        if (e.min_features() > cols_.size()) throw RuntimeError("expression references a missing feature");
        eval_batch(e, cols_, out_);
        double sum = 0.0;
        for (std::size_t i = 0; i < y_.size(); ++i) {
            if (!std::isfinite(out_[i])) return std::numeric_limits<double>::infinity();
            sum += kind_ == LossKind::Margin ? l2_margin_loss(out_[i], y_[i]) : squared_loss(out_[i], y_[i]);
        }
        const double mean = sum / static_cast<double>(y_.size());
        return std::isfinite(mean) ? mean : std::numeric_limits<double>::infinity();
    }

private:
    std::vector<std::span<const double>> cols_;
    std::span<const double> y_;
    LossKind kind_;
    std::vector<double> out_;
};

} // namespace

double tagger_objective(const Expr& e, const Matrix& X, std::span<const double> y, LossKind kind)
{
    Objective f(X, y, kind);
    return f(e);
}

// ---- variation operators ----

namespace {

bool admissible(const Expr& e, const SearchConfig& cfg)
{
    return complexity(e, cfg.complexity) <= cfg.c_max && check_constraints(e, cfg.ops, cfg.complexity);
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng)
{
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool coin(Rng& rng, double p)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Expr random_leaf(std::size_t n_features, Rng& rng)
{
    if (n_features == 0 || coin(rng, 0.5)) return Expr::constant(std::normal_distribution<double>(0.0, 1.0)(rng));
    return Expr::variable(std::uniform_int_distribution<std::size_t>(0, n_features - 1)(rng));
}

Expr grow(const SearchConfig& cfg, std::size_t n_features, int depth, Rng& rng)
{
    if (depth <= 1 || coin(rng, 0.3)) return random_leaf(n_features, rng);
    if (!cfg.ops.unary.empty() && coin(rng, 0.3))
        return Expr::unary(pick(cfg.ops.unary, rng), grow(cfg, n_features, depth - 1, rng));
    Expr l = grow(cfg, n_features, depth - 1, rng);
    Expr r = grow(cfg, n_features, depth - 1, rng);
    return Expr::binary(pick(cfg.ops.binary, rng), std::move(l), std::move(r));
}

// Preorder indices grouped by node kind.
struct NodeIndex {
    std::vector<std::size_t> constants, leaves, unary, binary;
};

void index_nodes(const ExprNode& n, std::size_t& next, NodeIndex& out)
{
    const std::size_t self = next++;
    switch (n.kind) {
    case NodeKind::Const:
        out.constants.push_back(self);
        out.leaves.push_back(self);
        break;
    case NodeKind::Var: out.leaves.push_back(self); break;
    case NodeKind::Unary:
        out.unary.push_back(self);
        index_nodes(*n.lhs, next, out);
        break;
    case NodeKind::Binary:
        out.binary.push_back(self);
        index_nodes(*n.lhs, next, out);
        index_nodes(*n.rhs, next, out);
        break;
    }
}

NodeIndex index_nodes(const Expr& e)
{
    NodeIndex idx;
    std::size_t next = 0;
    index_nodes(e.node(), next, idx);
    return idx;
}

enum class MutationKind { Replace, Perturb, Insert, Remove, Append };

std::optional<Expr> try_mutation(const Expr& e, MutationKind kind, const SearchConfig& cfg, std::size_t n_features,
                                 Rng& rng)
{
    const NodeIndex idx = index_nodes(e);
    switch (kind) {
    case MutationKind::Replace: {
        std::vector<std::size_t> ops = idx.unary;
        ops.insert(ops.end(), idx.binary.begin(), idx.binary.end());
        if (ops.empty()) return std::nullopt;
        const std::size_t at = pick(ops, rng);
        const Expr node = e.subtree(at);
        if (node.kind() == NodeKind::Unary) {
            std::vector<UnaryOp> alt;
            for (auto op : cfg.ops.unary)
                if (op != node.unary_op()) alt.push_back(op);
            if (alt.empty()) return std::nullopt;
            return e.replace(at, Expr::unary(pick(alt, rng), node.lhs()));
        }
        std::vector<BinaryOp> alt;
        for (auto op : cfg.ops.binary)
            if (op != node.binary_op()) alt.push_back(op);
        if (alt.empty()) return std::nullopt;
        return e.replace(at, Expr::binary(pick(alt, rng), node.lhs(), node.rhs()));
    }
    case MutationKind::Perturb: {
        if (idx.constants.empty()) return std::nullopt;
        const std::size_t at = pick(idx.constants, rng);
        const double c = e.subtree(at).value();
        std::normal_distribution<double> g(0.0, 1.0);
        double v = c == 0.0 ? g(rng) : c * std::exp(0.5 * g(rng));
        if (coin(rng, 0.1)) v = -v;
        if (!std::isfinite(v) || v == c) v = c + 1e-3 * (c == 0.0 ? 1.0 : std::fabs(c));
        if (!std::isfinite(v)) return std::nullopt;
        return e.replace(at, Expr::constant(v));
    }
    case MutationKind::Insert: {
        const std::size_t at = std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng);
        const Expr sub = e.subtree(at);
        if (!cfg.ops.unary.empty() && coin(rng, 0.5)) return e.replace(at, Expr::unary(pick(cfg.ops.unary, rng), sub));
        Expr leaf = random_leaf(n_features, rng);
        const BinaryOp op = pick(cfg.ops.binary, rng);
        return e.replace(at, coin(rng, 0.5) ? Expr::binary(op, sub, leaf) : Expr::binary(op, leaf, sub));
    }
    case MutationKind::Remove: {
        std::vector<std::size_t> ops = idx.unary;
        ops.insert(ops.end(), idx.binary.begin(), idx.binary.end());
        if (ops.empty()) return std::nullopt;
        const std::size_t at = pick(ops, rng);
        const Expr node = e.subtree(at);
        const Expr child = node.arity() == 1 || coin(rng, 0.5) ? node.lhs() : node.rhs();
        return e.replace(at, child);
    }
    case MutationKind::Append: {
        const std::size_t at = pick(idx.leaves, rng);
        return e.replace(at, grow(cfg, n_features, 3, rng));
    }
    }
    return std::nullopt;
}

MutationKind pick_mutation(const MutationWeights& w, Rng& rng)
{
    std::discrete_distribution<int> d({w.replace, w.perturb, w.insert, w.remove, w.append});
    return static_cast<MutationKind>(d(rng));
}

} // namespace

Expr random_tree(const SearchConfig& cfg, std::size_t n_features, int limit, Rng& rng)
{
    for (int attempt = 0; attempt < 200; ++attempt) {
        const int depth = std::uniform_int_distribution<int>(1, 4)(rng);
        Expr e = grow(cfg, n_features, depth, rng);
        if (complexity(e, cfg.complexity) <= limit && check_constraints(e, cfg.ops, cfg.complexity)) return e;
    }
    return random_leaf(n_features, rng);
}

Expr mutate(const Expr& e, const SearchConfig& cfg, std::size_t n_features, Rng& rng)
{
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        auto out = try_mutation(e, pick_mutation(cfg.mutation, rng), cfg, n_features, rng);
        if (out && admissible(*out, cfg)) return *out;
    }
    return e;
}

std::pair<Expr, Expr> crossover(const Expr& a, const Expr& b, const SearchConfig& cfg, Rng& rng)
{
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        const std::size_t ia = std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng);
        const std::size_t ib = std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng);
        Expr ca = a.replace(ia, b.subtree(ib));
        Expr cb = b.replace(ib, a.subtree(ia));
        if (admissible(ca, cfg) && admissible(cb, cfg)) return {std::move(ca), std::move(cb)};
    }
    return {a, b};
}

// ---- constant optimization ----

namespace {

struct ConstantFit {
    Objective& f;
    const Expr& shape;

    double loss(const std::vector<double>& c) { return f(shape.with_constants(c)); }

    // Golden-section line search on coordinate k within c[k] +- width.
    void line_search(std::vector<double>& c, double& fc, std::size_t k, double width)
    {
        constexpr double kInvPhi = 0.6180339887498949;
        const double c0 = c[k];
        double lo = c0 - width, hi = c0 + width;
        auto at = [&](double v) {
            c[k] = v;
            return loss(c);
        };
        double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
        double f1 = at(x1), f2 = at(x2);
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kInvPhi * (hi - lo);
                f1 = at(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kInvPhi * (hi - lo);
                f2 = at(x2);
            }
        }
        const double xb = f1 < f2 ? x1 : x2;
        const double fb = std::min(f1, f2);
        if (fb < fc) {
            c[k] = xb;
            fc = fb;
        } else {
            c[k] = c0;
        }
    }

    void descend(std::vector<double>& c, double& fc, int sweeps)
    {
        for (int s = 0; s < sweeps; ++s) {
            const double before = fc;
            for (std::size_t k = 0; k < c.size(); ++k) line_search(c, fc, k, std::max(1.0, std::fabs(c[k])));
            if (!(fc < before)) break;
        }
    }

    // Whole numbers are kept whenever they cost nothing.
    void snap(std::vector<double>& c, double& fc)
    {
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double old = c[k];
            const double r = std::round(old);
            if (r == old) continue;
            c[k] = r;
            const double fr = loss(c);
            if (fr <= fc) fc = fr;
            else c[k] = old;
        }
    }
};

} // namespace

Expr optimize_constants(const Expr& e, const Matrix& X, std::span<const double> y, int iterations, LossKind kind,
                        int restarts, std::uint64_t seed)
{
    if (e.count_constants() == 0) return e;
    Objective f(X, y, kind);
    ConstantFit fit{f, e};
    std::vector<double> best = e.constants();
    double f_best = fit.loss(best);
    fit.descend(best, f_best, iterations);

    Rng rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> c = best;
        for (auto& v : c) v = v * (1.0 + 0.5 * g(rng)) + 0.1 * g(rng);
        double fc = fit.loss(c);
        fit.descend(c, fc, iterations);
        if (fc < f_best) {
            best = std::move(c);
            f_best = fc;
        }
    }
    fit.snap(best, f_best);
    return e.with_constants(best);
}

// ---- evolution ----

namespace {

struct Member {
    Expr expr;
    double loss;
    int complexity;
};

bool better(const Member& a, const Member& b)
{
    return a.loss < b.loss || (std::isfinite(a.loss) && !std::isfinite(b.loss));
}

class Island {
public:
    Island(const Matrix& X, std::span<const double> y, const SearchConfig& cfg, std::uint64_t id)
        : X_(X), y_(y), cfg_(cfg), objective_(X, y, cfg.loss), rng_(derive_seed(cfg.seed, id)), id_(id)
    {
    }

    void seed_population(HallOfFame& hof)
    {
        const int limit = std::min(8, cfg_.c_max);
        pop_.clear();
        for (int i = 0; i < cfg_.island_size(); ++i) {
            Member m = evaluate(random_tree(cfg_, X_.cols(), limit, rng_));
            hof.offer({m.expr, m.loss, m.complexity});
            pop_.push_back(std::move(m));
        }
    }

    void step(HallOfFame& hof)
    {
        const std::size_t P = static_cast<std::size_t>(cfg_.island_size());
        std::vector<Member> next;
        next.reserve(P);
        next.push_back(*std::min_element(pop_.begin(), pop_.end(), better));
        while (next.size() < P) {
            if (coin(rng_, cfg_.crossover_probability)) {
                const Member& a = tournament();
                const Member& b = tournament();
                auto [ca, cb] = crossover(a.expr, b.expr, cfg_, rng_);
                next.push_back(consider(std::move(ca), hof));
                if (next.size() < P) next.push_back(consider(std::move(cb), hof));
            } else {
                next.push_back(consider(mutate(tournament().expr, cfg_, X_.cols(), rng_), hof));
            }
        }
        pop_ = std::move(next);
    }

    // Best n members, best first.
    std::vector<Member> emigrants(std::size_t n) const
    {
        std::vector<Member> sorted = pop_;
        std::stable_sort(sorted.begin(), sorted.end(), better);
        sorted.erase(sorted.begin() + static_cast<std::ptrdiff_t>(std::min(n, sorted.size())), sorted.end());
        return sorted;
    }

    void immigrate(const std::vector<Member>& incoming)
    {
        std::vector<std::size_t> order(pop_.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return better(pop_[b], pop_[a]); });
        for (std::size_t k = 0; k < incoming.size() && k < order.size(); ++k) pop_[order[k]] = incoming[k];
    }

private:
    Member evaluate(Expr e)
    {
        const double loss = objective_(e);
        const int c = complexity(e, cfg_.complexity);
        return {std::move(e), loss, c};
    }

    // Evaluates a child; improvements to its level get their constants tuned
    // before entering the hall of fame.
    Member consider(Expr e, HallOfFame& hof)
    {
        Member m = evaluate(std::move(e));
        if (m.loss < hof.bar(m.complexity)) {
            if (m.expr.count_constants() > 0 && cfg_.constant_iterations > 0) {
                const std::uint64_t s = derive_seed(rng_(), id_);
                Expr tuned = optimize_constants(m.expr, X_, y_, cfg_.constant_iterations, cfg_.loss,
                                                cfg_.constant_restarts, s);
                m = evaluate(std::move(tuned));
            }
            hof.offer({m.expr, m.loss, m.complexity});
        }
        return m;
    }

    const Member& tournament()
    {
        std::uniform_int_distribution<std::size_t> d(0, pop_.size() - 1);
        const Member* best = &pop_[d(rng_)];
        for (int k = 1; k < cfg_.tournament_size; ++k) {
            const Member* m = &pop_[d(rng_)];
            if (better(*m, *best)) best = m;
        }
        return *best;
    }

    const Matrix& X_;
    std::span<const double> y_;
    const SearchConfig& cfg_;
    Objective objective_;
    Rng rng_;
    std::uint64_t id_;
    std::vector<Member> pop_;
};

template <class F>
void for_each_island(std::size_t n, F&& fn)
{
    const unsigned hw = std::thread::hardware_concurrency();
    if (n <= 1 || hw <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(n, hw);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Island results are merged in island order so the outcome does not depend
// on scheduling.
void merge(HallOfFame& into, const std::vector<HallOfFame>& parts)
{
    for (const auto& part : parts)
        for (const auto& [c, cand] : part.levels()) into.offer(cand);
}

} // namespace

HallOfFame evolve_tagger(const Matrix& X, std::span<const double> y, const SearchConfig& cfg,
                         const SearchObserver& observer)
{
    cfg.validate();
    if (y.size() != X.rows()) throw DataError("label count differs from sample count");
    const std::size_t n_islands = static_cast<std::size_t>(cfg.islands);

    std::vector<Island> islands;
    islands.reserve(n_islands);
    for (std::size_t i = 0; i < n_islands; ++i) islands.emplace_back(X, y, cfg, i);

    HallOfFame hof(cfg.c_max);
    std::vector<HallOfFame> local(n_islands, HallOfFame(cfg.c_max));
    for_each_island(n_islands, [&](std::size_t i) { islands[i].seed_population(local[i]); });
    merge(hof, local);
    if (observer) observer(0, hof);

    const int interval = std::max(1, cfg.generations / 10);
    const std::size_t n_migrants = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.island_size()) / 20);
    for (int gen = 1; gen <= cfg.generations; ++gen) {
        std::fill(local.begin(), local.end(), hof);
        for_each_island(n_islands, [&](std::size_t i) { islands[i].step(local[i]); });
        merge(hof, local);
        if (n_islands > 1 && gen % interval == 0) {
            std::vector<std::vector<Member>> out;
            for (const auto& isl : islands) out.push_back(isl.emigrants(n_migrants));
            for (std::size_t i = 0; i < n_islands; ++i) islands[i].immigrate(out[(i + n_islands - 1) % n_islands]);
        }
        if (observer) observer(gen, hof);
    }
    return hof;
}

Candidate select_model(const HallOfFame& hof, int c_max, double tolerance)
{
    const Candidate* best = nullptr;
    for (const auto& [c, cand] : hof.levels()) {
        if (c > c_max) break;
        if (!best || cand.loss < best->loss) best = &cand;
    }
    if (!best) throw RuntimeError(fmt::format("hall of fame has no candidate with complexity <= {}", c_max));
    for (const auto& [c, cand] : hof.levels())
        if (c <= c_max && cand.loss <= best->loss + tolerance) return cand;
    return *best;
}

std::vector<double> one_vs_rest(std::span<const int> y, int positive)
{
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] == positive ? 1.0 : -1.0;
    return out;
}

std::vector<TaggerResult> train_multiclass(const Matrix& X, std::span<const int> y, std::size_t n_classes,
                                           const SearchConfig& cfg, const std::vector<std::string>& class_names,
                                           const std::function<void(std::size_t, int, const HallOfFame&)>& observer)
{
    std::vector<TaggerResult> out;
    for (std::size_t k = 0; k < n_classes; ++k) {
        const auto yk = one_vs_rest(y, static_cast<int>(k));
        SearchConfig ck = cfg;
        ck.seed = derive_seed(cfg.seed, 1000 + k);
        SearchObserver obs;
        if (observer) obs = [&](int gen, const HallOfFame& h) { observer(k, gen, h); };
        TaggerResult r;
        r.class_name = k < class_names.size() ? class_names[k] : std::to_string(k);
        r.hof = evolve_tagger(X, yk, ck, obs);
        r.selected = select_model(r.hof, cfg.c_max, cfg.parsimony_tolerance);
        out.push_back(std::move(r));
    }
    return out;
}

Matrix tagger_scores(std::span<const Expr> taggers, const Matrix& X)
{
    Matrix out(X.rows(), taggers.size());
    const auto cols = X.columns();
    for (std::size_t k = 0; k < taggers.size(); ++k) {
        if (taggers[k].min_features() > X.cols()) throw DataError("tagger references a feature the dataset lacks");
        eval_batch(taggers[k], cols, out.column(k));
    }
    return out;
}

} // namespace srfx
