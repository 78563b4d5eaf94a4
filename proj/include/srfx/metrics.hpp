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

#include "srfx/dataset.hpp"
#include "srfx/fixed_point.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace srfx {

struct RocPoint {
    double threshold;
    double fpr;
    double tpr;
};

// Mann-Whitney AUC with midranks for ties. Throws DataError when either
// class is empty.
double auc(std::span<const double> scores, std::span<const char> positive);

// (FPR, TPR) at every distinct threshold, from (0, 0) to (1, 1).
std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const char> positive);

struct Metrics {
    double accuracy = 0.0;
    std::vector<std::optional<double>> auc;  // nullopt when undefined for the class
    std::vector<std::string> auc_errors;     // reason per class, empty when defined
    std::vector<std::vector<RocPoint>> roc;
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

// Row i of `scores` holds the per-class scores of sample i; the prediction is
// the first column holding the row maximum.
std::vector<int> predict(const Matrix& scores);
double accuracy(const Matrix& scores, std::span<const int> y);
Metrics compute_metrics(const Matrix& scores, std::span<const int> y);

// Throws ConfigError for a non-positive baseline.
double relative_accuracy(double model_acc, double baseline_acc);

// Reference accuracies per precision, lines "B,I,accuracy".
class BaselineTable {
public:
    static BaselineTable parse(std::string_view text);
    static BaselineTable load(const std::string& path);
    void set(const FixedSpec& spec, double acc);
    std::optional<double> find(const FixedSpec& spec) const;

private:
    std::map<std::pair<int, int>, double> acc_;
};

} // namespace srfx
