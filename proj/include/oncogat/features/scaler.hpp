//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_FEATURES_SCALER_HPP
#define ONCOGAT_FEATURES_SCALER_HPP

#include <cmath>
#include <string>
#include <vector>

#include "oncogat/core/error.hpp"
#include "oncogat/core/matrix.hpp"

namespace onco::features {

// Variance filter plus standardisation. Kept columns have non-zero
// population variance on the fitting matrix; std[j] > 0 for every kept j.
struct FeatureScaler {
  int n_input = 0;
  std::vector<int> kept_columns;
  std::vector<double> mean;
  std::vector<double> std;

  int n_output() const { return static_cast<int>(kept_columns.size()); }

  bool operator==(const FeatureScaler &) const = default;
};

inline FeatureScaler fit_scaler(const Matrix &x) {
  if (x.rows() < 2)
    throw Error("TooFewRows", "scaler needs at least 2 rows, got " + std::to_string(x.rows()));
  FeatureScaler s;
  s.n_input = static_cast<int>(x.cols());
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const auto col = x.col(j);
    // A constant column has zero variance; testing min == max avoids
    // rounding noise in the summed mean.
    if (col.minCoeff() == col.maxCoeff())
      continue;
    const double mu = col.sum() / n;
    const double var = (col.array() - mu).square().sum() / n;
    if (!(var > 0.0))
      continue;
    s.kept_columns.push_back(static_cast<int>(j));
    s.mean.push_back(mu);
    s.std.push_back(std::sqrt(var));
  }
  return s;
}

inline Matrix apply_scaler(const FeatureScaler &s, const Matrix &x) {
  if (x.cols() != s.n_input)
    throw Error("SchemaMismatch", "expected " + std::to_string(s.n_input) + " columns, got " +
                                      std::to_string(x.cols()));
  Matrix z(x.rows(), s.n_output());
  for (int k = 0; k < s.n_output(); ++k)
    z.col(k) = (x.col(s.kept_columns[k]).array() - s.mean[k]) / s.std[k];
  return z;
}

inline std::vector<double> apply_scaler(const FeatureScaler &s, const std::vector<double> &row) {
  Matrix x(1, static_cast<Eigen::Index>(row.size()));
  for (std::size_t j = 0; j < row.size(); ++j)
    x(0, static_cast<Eigen::Index>(j)) = row[j];
  const Matrix z = apply_scaler(s, x);
  return {z.data(), z.data() + z.size()};
}

// Recovers the kept columns: x = z * std + mean.
inline Matrix invert_scaler(const FeatureScaler &s, const Matrix &z) {
  if (z.cols() != s.n_output())
    throw Error("SchemaMismatch", "expected " + std::to_string(s.n_output()) + " columns, got " +
                                      std::to_string(z.cols()));
  Matrix x(z.rows(), z.cols());
  for (int k = 0; k < s.n_output(); ++k)
    x.col(k) = z.col(k).array() * s.std[k] + s.mean[k];
  return x;
}

} // namespace onco::features

#endif // ONCOGAT_FEATURES_SCALER_HPP
