//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CORE_MATRIX_HPP
#define ONCOGAT_CORE_MATRIX_HPP

#include <Eigen/Dense>

namespace onco {

// Row-major so that a row is one node, edge or sample.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

} // namespace onco

#endif // ONCOGAT_CORE_MATRIX_HPP
