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

#include "srfx/dataset.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

namespace srfx {

std::vector<std::span<const double>> Matrix::columns() const
{
    std::vector<std::span<const double>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

std::vector<double> Matrix::row(std::size_t i) const
{
    std::vector<double> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
}

DataFormat parse_data_format(std::string_view s)
{
    if (s == "auto") return DataFormat::Auto;
    if (s == "csv" || s == "tsv" || s == "delimited") return DataFormat::Delimited;
    if (s == "columnar" || s == "binary") return DataFormat::Columnar;
    throw ConfigError(fmt::format("unknown data format '{}'", s));
}

namespace {

constexpr char kMagic[8] = {'S', 'R', 'F', 'X', 'C', 'O', 'L', '1'};

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view unquote(std::string_view s)
{
    s = detail::trim(s);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
    return s;
}

std::optional<double> number(std::string_view s)
{
    s = unquote(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

int class_index(std::string_view cell, std::size_t line_no)
{
    const std::string_view s = unquote(cell);
    for (std::size_t k = 0; k < kClassNames.size(); ++k)
        if (lower(s) == lower(kClassNames[k])) return static_cast<int>(k);
    if (auto v = number(s); v && *v == std::floor(*v) && *v >= 0 && *v < static_cast<double>(kClassNames.size()))
        return static_cast<int>(*v);
    throw DataError(fmt::format("line {}: unknown class label '{}'", line_no, s));
}

struct Layout {
    std::size_t n_cols = 0;
    std::optional<std::size_t> label_col;
    std::array<std::size_t, 5> onehot{};
    bool has_onehot = false;
    std::vector<std::pair<std::size_t, std::size_t>> features;  // (column, feature index)
    std::vector<std::string> names;
};

Layout plan_columns(const std::vector<std::string>& header, const FeatureAliases* aliases)
{
    Layout L;
    L.n_cols = header.size();
    std::array<std::optional<std::size_t>, 5> hot;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string h = lower(header[c]);
        if (h == "label" || h == "class" || h == "y" || h == "target") {
            L.label_col = c;
            continue;
        }
        bool is_hot = false;
        for (std::size_t k = 0; k < kClassNames.size(); ++k)
            if (h == "j_" + lower(kClassNames[k])) {
                hot[k] = c;
                is_hot = true;
            }
        if (is_hot) continue;
        if (aliases) {
            if (auto idx = aliases->index_of(header[c])) L.features.emplace_back(c, *idx);
        } else if (!header[c].empty() && header[c] != "index" && header[c].rfind("Unnamed", 0) != 0) {
            L.features.emplace_back(c, L.features.size());
        }
    }
    if (!L.label_col) {
        if (std::all_of(hot.begin(), hot.end(), [](const auto& h) { return h.has_value(); })) {
            L.has_onehot = true;
            for (std::size_t k = 0; k < 5; ++k) L.onehot[k] = *hot[k];
        } else {
            throw DataError("no label column: expected label/class/y or one-hot columns j_g, j_q, j_t, j_w, j_z");
        }
    }
    std::size_t d = 0;
    for (const auto& f : L.features) d = std::max(d, f.second + 1);
    if (aliases) d = std::max(d, aliases->size());
    L.names.assign(d, "");
    for (const auto& [c, j] : L.features) {
        if (!L.names[j].empty()) throw DataError(fmt::format("feature x{} mapped by two columns", j));
        L.names[j] = header[c];
    }
    for (std::size_t j = 0; j < d; ++j)
        if (L.names[j].empty()) throw DataError(fmt::format("no column provides feature x{}", j));
    if (d == 0) throw DataError("dataset has no feature columns");
    return L;
}

} // namespace

Dataset parse_delimited(std::string_view text, const LoadOptions& opts)
{
    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto next_line = [&](std::string_view& out) {
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            out = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
            if (!detail::trim(out).empty()) return true;
        }
        return false;
    };

    std::string_view line;
    if (!next_line(line)) throw DataError("empty dataset file");
    const char sep = line.find('\t') != std::string_view::npos ? '\t' : ',';
    std::vector<std::string> header;
    for (auto cell : detail::split(line, sep)) header.emplace_back(unquote(cell));
    const Layout L = plan_columns(header, opts.aliases);
    const std::size_t d = L.names.size();

    std::vector<std::vector<double>> cols(d);
    std::vector<int> y;
    std::size_t dropped = 0;
    std::vector<double> row(d);
    while (next_line(line)) {
        const auto cells = detail::split(line, sep);
        if (cells.size() != L.n_cols)
            throw DataError(fmt::format("line {}: expected {} columns, got {}", line_no, L.n_cols, cells.size()));
        bool finite = true;
        for (const auto& [c, j] : L.features) {
            auto v = number(cells[c]);
            if (!v) throw DataError(fmt::format("line {}: bad number '{}' in column '{}'", line_no, cells[c], header[c]));
            finite = finite && std::isfinite(*v);
            row[j] = *v;
        }
        int label = 0;
        if (L.has_onehot) {
            double best = -INFINITY;
            for (std::size_t k = 0; k < 5; ++k) {
                auto v = number(cells[L.onehot[k]]);
                if (!v) throw DataError(fmt::format("line {}: bad one-hot value '{}'", line_no, cells[L.onehot[k]]));
                finite = finite && std::isfinite(*v);
                if (*v > best) {
                    best = *v;
                    label = static_cast<int>(k);
                }
            }
        } else {
            label = class_index(cells[*L.label_col], line_no);
        }
        if (!finite) {
            ++dropped;
            continue;
        }
        for (std::size_t j = 0; j < d; ++j) cols[j].push_back(row[j]);
        y.push_back(label);
    }

    Dataset ds;
    ds.X = Matrix(y.size(), d);
    for (std::size_t j = 0; j < d; ++j) std::copy(cols[j].begin(), cols[j].end(), ds.X.column(j).begin());
    ds.y = std::move(y);
    ds.feature_names = L.names;
    ds.dropped_rows = dropped;
    return ds;
}

namespace {

static_assert(std::endian::native == std::endian::little, "columnar format assumes a little-endian host");

template <class T>
void put(std::string& out, T v)
{
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

void put_string(std::string& out, std::string_view s)
{
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.append(s);
}

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    template <class T>
    T get()
    {
        need(sizeof(T));
        T v;
        std::memcpy(&v, data_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }

    std::string get_string()
    {
        const auto len = get<std::uint32_t>();
        need(len);
        std::string s(data_.substr(pos_, len));
        pos_ += len;
        return s;
    }

    void read(void* dst, std::size_t bytes)
    {
        need(bytes);
        std::memcpy(dst, data_.data() + pos_, bytes);
        pos_ += bytes;
    }

    bool done() const { return pos_ == data_.size(); }

private:
    void need(std::size_t bytes) const
    {
        if (data_.size() - pos_ < bytes) throw DataError("columnar file truncated");
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

Dataset parse_columnar(std::string_view data, const LoadOptions& opts)
{
    Reader r(data);
    char magic[8];
    r.read(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) throw DataError("not a columnar dataset (bad magic)");
    const auto n = r.get<std::uint64_t>();
    const auto d = r.get<std::uint64_t>();
    const auto k = r.get<std::uint64_t>();
    if (d == 0 || d > 4096 || k == 0 || k > 4096 || n > data.size()) throw DataError("columnar header out of range");
    std::vector<std::string> names(d), classes(k);
    for (auto& s : names) s = r.get_string();
    for (auto& s : classes) s = r.get_string();
    std::vector<std::int32_t> labels(n);
    r.read(labels.data(), n * sizeof(std::int32_t));
    Matrix X(n, d);
    for (std::size_t j = 0; j < d; ++j) r.read(X.column(j).data(), n * sizeof(double));
    if (!r.done()) throw DataError("columnar file has trailing bytes");
    for (auto lab : labels)
        if (lab < 0 || static_cast<std::uint64_t>(lab) >= k) throw DataError(fmt::format("label {} out of range", lab));

    // Map columns through aliases when given.
    std::vector<std::size_t> src;
    std::vector<std::string> out_names;
    if (opts.aliases) {
        out_names.assign(opts.aliases->size(), "");
        src.assign(opts.aliases->size(), 0);
        for (std::size_t c = 0; c < d; ++c)
            if (auto idx = opts.aliases->index_of(names[c]); idx && *idx < src.size()) {
                src[*idx] = c;
                out_names[*idx] = names[c];
            }
        for (std::size_t j = 0; j < out_names.size(); ++j)
            if (out_names[j].empty()) throw DataError(fmt::format("no column provides feature x{}", j));
    } else {
        src.resize(d);
        std::iota(src.begin(), src.end(), 0);
        out_names = names;
    }

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (auto c : src) ok = ok && std::isfinite(X(i, c));
        if (ok) keep.push_back(i);
    }
    Dataset ds;
    ds.X = Matrix(keep.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (std::size_t r2 = 0; r2 < keep.size(); ++r2) ds.X(r2, j) = X(keep[r2], src[j]);
    ds.y.reserve(keep.size());
    for (auto i : keep) ds.y.push_back(labels[i]);
    ds.feature_names = std::move(out_names);
    ds.class_names = std::move(classes);
    ds.dropped_rows = n - keep.size();
    return ds;
}

} // namespace

Dataset load_dataset(const std::string& path, const LoadOptions& opts)
{
    const std::string data = detail::read_file(path, ErrorKind::Data);
    DataFormat f = opts.format;
    if (f == DataFormat::Auto)
        f = data.size() >= 8 && std::memcmp(data.data(), kMagic, 8) == 0 ? DataFormat::Columnar : DataFormat::Delimited;
    try {
        return f == DataFormat::Columnar ? parse_columnar(data, opts) : parse_delimited(data, opts);
    } catch (const DataError& e) {
        throw DataError(fmt::format("{}: {}", path, e.what()));
    }
}

void write_columnar(const Dataset& ds, const std::string& path)
{
    std::string out(kMagic, 8);
    put<std::uint64_t>(out, ds.n());
    put<std::uint64_t>(out, ds.d());
    put<std::uint64_t>(out, ds.n_classes());
    for (const auto& s : ds.feature_names) put_string(out, s);
    for (const auto& s : ds.class_names) put_string(out, s);
    for (int lab : ds.y) put<std::int32_t>(out, lab);
    for (std::size_t j = 0; j < ds.d(); ++j) {
        const auto col = ds.X.column(j);
        out.append(reinterpret_cast<const char*>(col.data()), col.size() * sizeof(double));
    }
    detail::write_file(path, out);
}

Matrix StandardizationParams::apply(const Matrix& X) const
{
    if (X.cols() != mean.size()) throw DataError("standardization width mismatch");
    Matrix out(X.rows(), X.cols());
    for (std::size_t j = 0; j < X.cols(); ++j) {
        const auto in = X.column(j);
        auto dst = out.column(j);
        for (std::size_t i = 0; i < in.size(); ++i) dst[i] = (in[i] - mean[j]) / std[j];
    }
    return out;
}

Dataset StandardizationParams::apply(const Dataset& ds) const
{
    Dataset out = ds;
    out.X = apply(ds.X);
    return out;
}

std::pair<StandardizationParams, Dataset> standardize(const Dataset& train)
{
    if (train.n() < 2) throw DataError("standardization needs at least 2 samples");
    StandardizationParams p;
    const double n = static_cast<double>(train.n());
    for (std::size_t j = 0; j < train.d(); ++j) {
        const auto col = train.X.column(j);
        const double m = std::accumulate(col.begin(), col.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : col) ss += (v - m) * (v - m);
        const double s = std::sqrt(ss / n);
        if (!(s > 0.0)) throw DataError(fmt::format("feature '{}' has zero variance", train.feature_names[j]));
        p.mean.push_back(m);
        p.std.push_back(s);
    }
    Dataset out = p.apply(train);
    return {std::move(p), std::move(out)};
}

Dataset take_rows(const Dataset& ds, std::span<const std::size_t> rows)
{
    Dataset out;
    out.feature_names = ds.feature_names;
    out.class_names = ds.class_names;
    out.X = Matrix(rows.size(), ds.d());
    for (std::size_t j = 0; j < ds.d(); ++j) {
        const auto src = ds.X.column(j);
        auto dst = out.X.column(j);
        for (std::size_t r = 0; r < rows.size(); ++r) dst[r] = src[rows[r]];
    }
    out.y.reserve(rows.size());
    for (auto r : rows) out.y.push_back(ds.y[r]);
    return out;
}

Dataset take_columns(const Dataset& ds, std::span<const std::size_t> cols)
{
    Dataset out;
    out.class_names = ds.class_names;
    out.y = ds.y;
    out.X = Matrix(ds.n(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= ds.d()) throw ConfigError(fmt::format("feature index {} out of range", cols[j]));
        const auto src = ds.X.column(cols[j]);
        std::copy(src.begin(), src.end(), out.X.column(j).begin());
        out.feature_names.push_back(ds.feature_names[cols[j]]);
    }
    return out;
}

Split train_test_split(const Dataset& ds, double test_fraction, std::uint64_t seed)
{
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ConfigError("test fraction must lie in (0, 1)");
    std::vector<std::size_t> idx(ds.n());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(ds.n())));
    std::vector<std::size_t> test(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<std::size_t> train(idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
    return {take_rows(ds, train), take_rows(ds, test)};
}

// ---- random forest importance ----

namespace {

struct Binned {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::uint8_t> code;  // column-major
    std::vector<int> n_bins;
};

Binned bin_features(const Matrix& X, std::span<const std::size_t> rows, int bins)
{
    Binned b;
    b.n = rows.size();
    b.d = X.cols();
    b.code.resize(b.n * b.d);
    b.n_bins.resize(b.d);
    std::vector<double> vals(b.n);
    for (std::size_t j = 0; j < b.d; ++j) {
        const auto col = X.column(j);
        for (std::size_t r = 0; r < b.n; ++r) vals[r] = col[rows[r]];
        std::vector<double> sorted = vals;
        std::sort(sorted.begin(), sorted.end());
        std::vector<double> cuts;
        for (int q = 1; q < bins; ++q) {
            const double c = sorted[static_cast<std::size_t>(q) * (b.n - 1) / static_cast<std::size_t>(bins)];
            if (cuts.empty() || c > cuts.back()) cuts.push_back(c);
        }
        b.n_bins[j] = static_cast<int>(cuts.size()) + 1;
        for (std::size_t r = 0; r < b.n; ++r)
            b.code[j * b.n + r] =
                static_cast<std::uint8_t>(std::lower_bound(cuts.begin(), cuts.end(), vals[r]) - cuts.begin());
    }
    return b;
}

struct TreeGrower {
    const Binned& b;
    std::span<const double> target;
    const ForestOptions& opt;
    std::vector<double>& importance;

    void grow(std::vector<std::size_t>& idx, int depth)
    {
        const std::size_t n = idx.size();
        if (depth >= opt.max_depth || n < 2 * static_cast<std::size_t>(opt.min_leaf)) return;
        double total = 0.0;
        for (auto i : idx) total += target[i];
        const double base = total * total / static_cast<double>(n);

        double best_gain = 1e-12;
        std::size_t best_f = 0;
        int best_cut = -1;
        std::vector<double> sum;
        std::vector<std::size_t> cnt;
        for (std::size_t f = 0; f < b.d; ++f) {
            const int nb = b.n_bins[f];
            if (nb < 2) continue;
            sum.assign(static_cast<std::size_t>(nb), 0.0);
            cnt.assign(static_cast<std::size_t>(nb), 0);
            const std::uint8_t* code = b.code.data() + f * b.n;
            for (auto i : idx) {
                sum[code[i]] += target[i];
                ++cnt[code[i]];
            }
            double sl = 0.0;
            std::size_t nl = 0;
            for (int c = 0; c + 1 < nb; ++c) {
                sl += sum[static_cast<std::size_t>(c)];
                nl += cnt[static_cast<std::size_t>(c)];
                const std::size_t nr = n - nl;
                if (nl < static_cast<std::size_t>(opt.min_leaf)) continue;
                if (nr < static_cast<std::size_t>(opt.min_leaf)) break;
                const double sr = total - sl;
                const double gain = sl * sl / static_cast<double>(nl) + sr * sr / static_cast<double>(nr) - base;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_f = f;
                    best_cut = c;
                }
            }
        }
        if (best_cut < 0) return;
        importance[best_f] += best_gain;
        const std::uint8_t* code = b.code.data() + best_f * b.n;
        auto mid = std::stable_partition(idx.begin(), idx.end(), [&](std::size_t i) { return code[i] <= best_cut; });
        std::vector<std::size_t> right(mid, idx.end());
        idx.erase(mid, idx.end());
        grow(idx, depth + 1);
        grow(right, depth + 1);
    }
};

std::uint64_t mix(std::uint64_t a, std::uint64_t b)
{
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// Importance contributions from one forest, one vector per tree so the sum
// does not depend on thread scheduling.
std::vector<double> forest_importance(const Binned& b, std::span<const double> target, std::uint64_t seed,
                                      const ForestOptions& opt)
{
    const std::size_t trees = static_cast<std::size_t>(std::max(opt.n_trees, 1));
    std::vector<std::vector<double>> per_tree(trees, std::vector<double>(b.d, 0.0));
    const std::size_t draw = std::max<std::size_t>(1, static_cast<std::size_t>(opt.bootstrap_fraction * static_cast<double>(b.n)));
    auto work = [&](std::size_t t) {
        std::mt19937_64 rng(mix(seed, t));
        std::uniform_int_distribution<std::size_t> pick(0, b.n - 1);
        std::vector<std::size_t> idx(draw);
        for (auto& i : idx) i = pick(rng);
        TreeGrower g{b, target, opt, per_tree[t]};
        g.grow(idx, 0);
    };
    const std::size_t n_threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, trees);
    if (n_threads == 1) {
        for (std::size_t t = 0; t < trees; ++t) work(t);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < n_threads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < trees; t += n_threads) work(t);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<double> out(b.d, 0.0);
    for (const auto& v : per_tree)
        for (std::size_t j = 0; j < b.d; ++j) out[j] += v[j];
    return out;
}

std::vector<std::size_t> fit_rows(std::size_t n, std::uint64_t seed, std::size_t cap)
{
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    if (n > cap) {
        std::mt19937_64 rng(mix(seed, 0xf0f0));
        std::shuffle(rows.begin(), rows.end(), rng);
        rows.resize(cap);
        std::sort(rows.begin(), rows.end());
    }
    return rows;
}

std::vector<double> normalized(std::vector<double> v)
{
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x = s > 0.0 ? x / s : 1.0 / static_cast<double>(v.size());
    return v;
}

} // namespace

std::vector<double> regression_importance(const Matrix& X, std::span<const double> target, std::uint64_t seed,
                                          const ForestOptions& opt)
{
    if (target.size() != X.rows()) throw DataError("target length differs from sample count");
    if (X.rows() == 0 || X.cols() == 0) throw DataError("empty dataset");
    const auto rows = fit_rows(X.rows(), seed, opt.max_samples);
    const Binned b = bin_features(X, rows, std::clamp(opt.bins, 2, 256));
    std::vector<double> t(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) t[r] = target[rows[r]];
    return normalized(forest_importance(b, t, seed, opt));
}

std::vector<double> feature_importance(const Dataset& ds, std::uint64_t seed, const ForestOptions& opt)
{
    if (ds.n() == 0 || ds.d() == 0) throw DataError("empty dataset");
    const auto rows = fit_rows(ds.n(), seed, opt.max_samples);
    const Binned b = bin_features(ds.X, rows, std::clamp(opt.bins, 2, 256));
    std::vector<double> total(ds.d(), 0.0);
    std::vector<double> t(rows.size());
    for (std::size_t k = 0; k < ds.n_classes(); ++k) {
        for (std::size_t r = 0; r < rows.size(); ++r) t[r] = ds.y[rows[r]] == static_cast<int>(k) ? 1.0 : 0.0;
        const auto part = forest_importance(b, t, mix(seed, k + 1), opt);
        for (std::size_t j = 0; j < ds.d(); ++j) total[j] += part[j];
    }
    return normalized(std::move(total));
}

std::vector<std::size_t> select_features(std::span<const double> scores, std::size_t k)
{
    if (k > scores.size()) throw ConfigError(fmt::format("cannot select {} of {} features", k, scores.size()));
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace srfx
