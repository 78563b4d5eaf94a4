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

#include "srfx/metrics.hpp"

#include "srfx/errors.hpp"
#include "text_util.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace srfx {

namespace {

void check_lengths(std::span<const double> scores, std::span<const char> positive)
{
    if (scores.size() != positive.size()) throw DataError("score and label lengths differ");
}

} // namespace

double auc(std::span<const double> scores, std::span<const char> positive)
{
    check_lengths(scores, positive);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks i+1 .. j
        for (std::size_t k = i; k < j; ++k)
            if (positive[order[k]]) {
                rank_sum += midrank;
                ++n_pos;
            }
        i = j;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw DataError("AUC undefined: only one class present");
    const double p = static_cast<double>(n_pos);
    return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(n_neg));
}

std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const char> positive)
{
    check_lengths(scores, positive);
    const std::size_t n = scores.size();
    const auto n_pos = static_cast<std::size_t>(std::count_if(positive.begin(), positive.end(), [](char c) { return c != 0; }));
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw DataError("ROC undefined: only one class present");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> out;
    out.push_back({INFINITY, 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < n;) {
        const double thr = scores[order[i]];
        while (i < n && scores[order[i]] == thr) {
            if (positive[order[i]]) ++tp;
            else ++fp;
            ++i;
        }
        out.push_back({thr, static_cast<double>(fp) / static_cast<double>(n_neg),
                       static_cast<double>(tp) / static_cast<double>(n_pos)});
    }
    return out;
}

std::vector<int> predict(const Matrix& scores)
{
    std::vector<int> out(scores.rows(), 0);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        double best = scores(i, 0);
        for (std::size_t k = 1; k < scores.cols(); ++k)
            if (scores(i, k) > best) {
                best = scores(i, k);
                out[i] = static_cast<int>(k);
            }
    }
    return out;
}

double accuracy(const Matrix& scores, std::span<const int> y)
{
    if (scores.rows() != y.size()) throw DataError("score rows and labels differ in length");
    if (y.empty()) throw DataError("accuracy of an empty sample");
    const auto pred = predict(scores);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < y.size(); ++i) hit += pred[i] == y[i];
    return static_cast<double>(hit) / static_cast<double>(y.size());
}

Metrics compute_metrics(const Matrix& scores, std::span<const int> y)
{
    Metrics m;
    m.accuracy = accuracy(scores, y);
    const std::size_t k = scores.cols();
    m.confusion.assign(k, std::vector<std::size_t>(k, 0));
    const auto pred = predict(scores);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0 || static_cast<std::size_t>(y[i]) >= k) throw DataError(fmt::format("label {} out of range", y[i]));
        ++m.confusion[static_cast<std::size_t>(y[i])][static_cast<std::size_t>(pred[i])];
    }
    std::vector<char> pos(y.size());
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < y.size(); ++i) pos[i] = y[i] == static_cast<int>(c);
        const auto col = scores.column(c);
        try {
            m.auc.emplace_back(auc(col, pos));
            m.roc.push_back(roc_curve(col, pos));
            m.auc_errors.emplace_back();
        } catch (const DataError& e) {
            m.auc.emplace_back(std::nullopt);
            m.roc.emplace_back();
            m.auc_errors.emplace_back(e.what());
        }
    }
    return m;
}

double relative_accuracy(double model_acc, double baseline_acc)
{
    if (!(baseline_acc > 0.0)) throw ConfigError("baseline accuracy must be positive");
    return model_acc / baseline_acc;
}

BaselineTable BaselineTable::parse(std::string_view text)
{
    BaselineTable t;
    std::size_t line_no = 0;
    for (auto line : detail::split(text, '\n')) {
        ++line_no;
        line = detail::trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != 3)
            throw ConfigError(fmt::format("baseline line {}: expected B,I,accuracy", line_no));
        if (detail::trim(cells[0]) == "B") continue;  // header
        try {
            t.set(FixedSpec(detail::parse_int(cells[0], "B"), detail::parse_int(cells[1], "I")),
                  detail::parse_double(cells[2], "accuracy"));
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("baseline line {}: {}", line_no, e.what()));
        }
    }
    return t;
}

BaselineTable BaselineTable::load(const std::string& path)
{
    return parse(detail::read_file(path, ErrorKind::Config));
}

void BaselineTable::set(const FixedSpec& spec, double acc)
{
    if (!(acc > 0.0 && acc <= 1.0)) throw ConfigError(fmt::format("baseline accuracy {} outside (0, 1]", acc));
    acc_[{spec.total_bits(), spec.int_bits()}] = acc;
}

std::optional<double> BaselineTable::find(const FixedSpec& spec) const
{
    auto it = acc_.find({spec.total_bits(), spec.int_bits()});
    if (it == acc_.end()) return std::nullopt;
    return it->second;
}

} // namespace srfx
