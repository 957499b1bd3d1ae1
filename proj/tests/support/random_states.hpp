// Copyright 2026 The qeraser Authors
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

// Seeded generators for property tests.

#include "qeraser/state.hpp"

#include <Eigen/QR>

#include <random>

namespace qeraser::testing {

inline CMatrixXd gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> g;
  CMatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
  }
  return m;
}

inline StateVector<double> random_state(std::mt19937_64& rng, const CompositeSpace& space) {
  return StateVector<double>::normalized(space, gaussian_matrix(rng, space.dim(), 1).col(0));
}

/// Mixed state of the given rank (Wishart construction).
inline DensityOperator<double> random_density(std::mt19937_64& rng, const CompositeSpace& space,
                                              Index rank) {
  const CMatrixXd g = gaussian_matrix(rng, space.dim(), rank);
  CMatrixXd m = g * g.adjoint();
  m /= m.trace();
  m = (m + m.adjoint()).eval() / 2.0;
  return DensityOperator<double>(space, m);
}

/// Haar-distributed unitary via QR with phase correction.
inline CMatrixXd random_unitary(std::mt19937_64& rng, Index dim) {
  const CMatrixXd g = gaussian_matrix(rng, dim, dim);
  Eigen::HouseholderQR<CMatrixXd> qr(g);
  CMatrixXd q = qr.householderQ();
  const CMatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const auto d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline CompositeSpace qubit_space(std::initializer_list<const char*> names) {
  std::vector<SubsystemLabel> subs;
  for (const char* n : names) subs.push_back({n, 2});
  return CompositeSpace(std::move(subs));
}

}  // namespace qeraser::testing
