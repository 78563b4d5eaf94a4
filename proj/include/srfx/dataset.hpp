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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace srfx {

inline constexpr std::array<std::string_view, 5> kClassNames = {"g", "q", "t", "W", "Z"};

// Dense column-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const double> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }
    std::vector<std::span<const double>> columns() const;
    std::vector<double> row(std::size_t i) const;

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Dataset {
    Matrix X;
    std::vector<int> y;  // class index into class_names
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names{kClassNames.begin(), kClassNames.end()};
    std::size_t dropped_rows = 0;  // rows removed for non-finite values at load

    std::size_t n() const { return X.rows(); }
    std::size_t d() const { return X.cols(); }
    std::size_t n_classes() const { return class_names.size(); }
};

enum class DataFormat { Auto, Delimited, Columnar };

DataFormat parse_data_format(std::string_view s);

struct LoadOptions {
    DataFormat format = DataFormat::Auto;
    // When set, feature columns are those named in the alias file, placed at
    // their alias index; other non-label columns are ignored.
    const FeatureAliases* aliases = nullptr;
};

// Delimited text: header row, comma or tab separated. The label is either a
// column named label/class/y (class index or class name) or one-hot columns
// j_g, j_q, j_t, j_w, j_z. Rows with non-finite features are dropped.
// Columnar: see write_columnar.
Dataset load_dataset(const std::string& path, const LoadOptions& opts = {});
Dataset parse_delimited(std::string_view text, const LoadOptions& opts = {});

// Little-endian layout:
//   "SRFXCOL1"  u64 n  u64 d  u64 k
//   d x (u32 len, name bytes)   k x (u32 len, class name bytes)
//   n x i32 labels              d x n f64 values, one column after another
void write_columnar(const Dataset& ds, const std::string& path);

struct StandardizationParams {
    std::vector<double> mean;
    std::vector<double> std;  // population (1/n) convention

    Matrix apply(const Matrix& X) const;
    Dataset apply(const Dataset& ds) const;
};

// Fits per-column mean/std on `train`; zero-variance columns are a DataError.
std::pair<StandardizationParams, Dataset> standardize(const Dataset& train);

struct Split {
    Dataset train;
    Dataset test;
};

Split train_test_split(const Dataset& ds, double test_fraction = 0.2, std::uint64_t seed = 0);

Dataset take_rows(const Dataset& ds, std::span<const std::size_t> rows);
Dataset take_columns(const Dataset& ds, std::span<const std::size_t> cols);

struct ForestOptions {
    int n_trees = 64;
    int max_depth = 6;
    double bootstrap_fraction = 0.8;
    int min_leaf = 5;
    int bins = 32;
    std::size_t max_samples = 20000;  // rows used for fitting, drawn without replacement
};

// Mean-decrease-in-variance importance of a regression forest fit on each
// one-vs-rest target, summed over classes and normalized to sum 1.
std::vector<double> feature_importance(const Dataset& ds, std::uint64_t seed, const ForestOptions& opt = {});

// Same, against an arbitrary real target.
std::vector<double> regression_importance(const Matrix& X, std::span<const double> target, std::uint64_t seed,
                                          const ForestOptions& opt = {});

// Indices of the k largest scores, ascending; ties go to the lower index.
std::vector<std::size_t> select_features(std::span<const double> scores, std::size_t k = 6);

} // namespace srfx
