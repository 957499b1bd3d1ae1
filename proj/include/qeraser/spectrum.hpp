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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace qeraser {

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CVectorXd = CVector<double>;
using CMatrixXd = CMatrix<double>;

/// Numerical tolerances for state validation. The double-precision values are
/// the contract; lower precision scalars get a machine-epsilon based floor.
template <typename Real>
struct Tolerance {
  static constexpr Real floor(Real nominal, Real eps_multiple) {
    const Real scaled = eps_multiple * std::numeric_limits<Real>::epsilon();
    return nominal > scaled ? nominal : scaled;
  }
  static constexpr Real norm = floor(Real(1e-12), Real(64));
  static constexpr Real hermitian = floor(Real(1e-12), Real(64));
  static constexpr Real trace = floor(Real(1e-12), Real(64));
  static constexpr Real unitary = floor(Real(1e-12), Real(64));
  // Eigenvalues in [-positivity, 0) are roundoff; anything below is invalid.
  static constexpr Real positivity = floor(Real(1e-10), Real(1024));
};

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("matrix is not square");
  using Plain = typename Derived::PlainObject;
  return (u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

/// Real eigenvalues of a Hermitian matrix in descending order.
template <typename Derived>
RVector<typename Derived::RealScalar> eigenvalues_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  const Real defect = hermiticity_defect(m);
  if (!(defect <= Tolerance<Real>::hermitian)) {
    throw std::invalid_argument("matrix is not Hermitian (max |M - M^H| = " +
                                std::to_string(static_cast<double>(defect)) + ")");
  }
  using Plain = typename Derived::PlainObject;
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Plain h = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Plain> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  return solver.eigenvalues().reverse();
}

/// Shannon entropy in bits of a spectrum, with 0 log 0 = 0. Values in
/// [-positivity tolerance, 0) are clipped to 0; more negative values throw.
template <typename Derived>
typename Derived::Scalar spectrum_entropy_bits(const Eigen::MatrixBase<Derived>& eigenvalues) {
  using Real = typename Derived::Scalar;
  Real s = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const Real raw = eigenvalues(i);
    if (raw < -Tolerance<Real>::positivity) {
      throw std::domain_error("negative eigenvalue " + std::to_string(static_cast<double>(raw)) +
                              " in entropy evaluation");
    }
    const Real p = std::clamp(raw, Real(0), Real(1));
    if (p > 0) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace qeraser
