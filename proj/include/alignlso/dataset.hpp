#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>

#include "alignlso/expr.hpp"
#include "alignlso/rng.hpp"

namespace alignlso {

enum class DataSource { File, Synthetic };

// Numeric observations of one expression. X is N x d, y is length N.
struct DatasetXY {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    bool standardized = false;
    DataSource source = DataSource::Synthetic;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index dim() const { return X.cols(); }
};

// CSV case file: first line "# expr: <infix>", then header x0,..,x{d-1},y,
// then one row per observation. UTF-8, LF, '.' decimal separator.
std::pair<Expr, DatasetXY> load_benchmark_case(const std::string& path);
void save_case_file(const std::string& path, const Expr& e, const DatasetXY& ds);

// Entries i.i.d. uniform on [lo, hi], filled row-major; deterministic per seed.
Eigen::MatrixXd sample_inputs(int d, int n, double lo, double hi, std::uint64_t seed);

// Per-column z-score of X with population std; y untouched.
DatasetXY standardize(const DatasetXY& ds);

// Row k holds eval(e, X.row(k)); invalid rows are NaN.
Eigen::VectorXd eval_rows(const Expr& e, const Eigen::MatrixXd& X);

// True iff every row evaluates finite and the outputs are not effectively
// constant (population std >= 1e-9).
bool validity_filter(const Expr& e, const Eigen::MatrixXd& X);

// Random distinct rows, original order preserved; keeps max(1, round(f*N)).
DatasetXY subsample_rows(const DatasetXY& ds, double fraction, Rng& rng);

}  // namespace alignlso
