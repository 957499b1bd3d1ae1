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

#include "qeraser/space.hpp"
#include "qeraser/spectrum.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qeraser {

/// Normalized ket on a labeled composite space. Global phase is kept as given.
template <typename Real = double>
class StateVector {
 public:
  using Scalar = std::complex<Real>;

  StateVector(CompositeSpace space, CVector<Real> amplitudes)
      : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.dim()) {
      throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                  " does not match space dimension " +
                                  std::to_string(space_.dim()));
    }
    const Real err = std::abs(amplitudes_.norm() - Real(1));
    if (!(err <= Tolerance<Real>::norm)) {
      throw std::invalid_argument("state vector is not normalized (|norm - 1| = " +
                                  std::to_string(static_cast<double>(err)) + ")");
    }
  }

  /// Rescales `amplitudes` to unit norm before validation.
  static StateVector normalized(CompositeSpace space, CVector<Real> amplitudes) {
    const Real n = amplitudes.norm();
    if (!(n > 0)) throw std::invalid_argument("cannot normalize a zero vector");
    amplitudes /= n;
    return StateVector(std::move(space), std::move(amplitudes));
  }

  static StateVector basis(CompositeSpace space, Index index) {
    const Index d = space.dim();
    if (index < 0 || index >= d) throw std::out_of_range("basis index out of range");
    CVector<Real> a = CVector<Real>::Zero(d);
    a(index) = Scalar(1);
    return StateVector(std::move(space), std::move(a));
  }

  const CompositeSpace& space() const { return space_; }
  const CVector<Real>& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }

 private:
  CompositeSpace space_;
  CVector<Real> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on a labeled space.
template <typename Real = double>
class DensityOperator {
 public:
  using Scalar = std::complex<Real>;

  DensityOperator(CompositeSpace space, CMatrix<Real> matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    const Index d = space_.dim();
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw std::invalid_argument("density matrix shape does not match space dimension " +
                                  std::to_string(d));
    }
    const Real trace_err = std::abs(matrix_.trace() - Scalar(1));
    if (!(trace_err <= Tolerance<Real>::trace)) {
      throw std::invalid_argument("density matrix trace differs from 1 by " +
                                  std::to_string(static_cast<double>(trace_err)));
    }
    // Also rejects non-Hermitian input.
    const auto ev = eigenvalues_hermitian(matrix_);
    if (ev(ev.size() - 1) < -Tolerance<Real>::positivity) {
      throw std::invalid_argument("density matrix has negative eigenvalue " +
                                  std::to_string(static_cast<double>(ev(ev.size() - 1))));
    }
  }

  static DensityOperator maximally_mixed(CompositeSpace space) {
    const Index d = space.dim();
    CMatrix<Real> m = CMatrix<Real>::Identity(d, d) / Real(d);
    return DensityOperator(std::move(space), std::move(m));
  }

  const CompositeSpace& space() const { return space_; }
  const CMatrix<Real>& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

 private:
  CompositeSpace space_;
  CMatrix<Real> matrix_;
};

template <typename Real>
StateVector<Real> tensor(const StateVector<Real>& a, const StateVector<Real>& b) {
  CompositeSpace space = a.space().concat(b.space());
  CVector<Real> amps = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return StateVector<Real>(std::move(space), std::move(amps));
}

template <typename Real>
DensityOperator<Real> tensor(const DensityOperator<Real>& a, const DensityOperator<Real>& b) {
  CompositeSpace space = a.space().concat(b.space());
  CMatrix<Real> m = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return DensityOperator<Real>(std::move(space), std::move(m));
}

/// Rank-1 projector |v><v|.
template <typename Real>
DensityOperator<Real> outer(const StateVector<Real>& v) {
  CMatrix<Real> m = v.amplitudes() * v.amplitudes().adjoint();
  return DensityOperator<Real>(v.space(), std::move(m));
}

/// Marginal on `keep`; kept subsystems retain their original relative order.
template <typename Real>
DensityOperator<Real> partial_trace(const DensityOperator<Real>& rho, const LabelSet& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  const auto& space = rho.space();
  const auto positions = space.positions_of(keep);
  const IndexSplit split = split_indices(space, positions);
  const auto& kept = split.target_offsets;
  const auto& traced = split.rest_offsets;
  const Index dk = static_cast<Index>(kept.size());

  const auto& m = rho.matrix();
  CMatrix<Real> out = CMatrix<Real>::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a) {
    for (Index b = 0; b < dk; ++b) {
      std::complex<Real> acc(0);
      for (Index r : traced) acc += m(r + kept[a], r + kept[b]);
      out(a, b) = acc;
    }
  }
  return DensityOperator<Real>(space.subspace(keep), std::move(out));
}

/// Marginal of a pure state, computed as M M^H with M the (kept x traced) reshape.
template <typename Real>
DensityOperator<Real> partial_trace(const StateVector<Real>& psi, const LabelSet& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  const auto& space = psi.space();
  const auto positions = space.positions_of(keep);
  const IndexSplit split = split_indices(space, positions);
  const Index dk = static_cast<Index>(split.target_offsets.size());
  const Index dr = static_cast<Index>(split.rest_offsets.size());
  CMatrix<Real> reshaped(dk, dr);
  for (Index a = 0; a < dk; ++a) {
    for (Index r = 0; r < dr; ++r) {
      reshaped(a, r) = psi.amplitudes()(split.rest_offsets[r] + split.target_offsets[a]);
    }
  }
  CMatrix<Real> m = reshaped * reshaped.adjoint();
  return DensityOperator<Real>(space.subspace(keep), std::move(m));
}

/// Applies `u` to the listed factors (taken in the listed order, first most
/// significant) and the identity elsewhere.
template <typename Real, typename Derived>
StateVector<Real> apply_unitary(const StateVector<Real>& v, const Eigen::MatrixBase<Derived>& u,
                                const LabelSet& targets) {
  const auto& space = v.space();
  if (targets.empty()) throw std::invalid_argument("apply_unitary: no target subsystem");
  std::vector<std::size_t> positions;
  Index d = 1;
  for (const auto& t : targets) {
    const std::size_t p = space.position(t);
    if (std::find(positions.begin(), positions.end(), p) != positions.end()) {
      throw std::invalid_argument("apply_unitary: target '" + t + "' listed twice");
    }
    positions.push_back(p);
    d *= space.subsystems()[p].dim;
  }
  if (u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("apply_unitary: operator dimension " + std::to_string(u.rows()) +
                                " does not match target dimension " + std::to_string(d));
  }
  const CMatrix<Real> op = u;
  const Real defect = unitarity_defect(op);
  if (!(defect <= Tolerance<Real>::unitary)) {
    throw std::invalid_argument("apply_unitary: operator is not unitary (defect " +
                                std::to_string(static_cast<double>(defect)) + ")");
  }

  const IndexSplit split = split_indices(space, positions);
  const auto& amps = v.amplitudes();
  CVector<Real> out(amps.size());
  CVector<Real> local(d);
  for (Index r : split.rest_offsets) {
    for (Index t = 0; t < d; ++t) local(t) = amps(r + split.target_offsets[t]);
    const CVector<Real> mapped = op * local;
    for (Index t = 0; t < d; ++t) out(r + split.target_offsets[t]) = mapped(t);
  }
  return StateVector<Real>(space, std::move(out));
}

template <typename Real, typename Derived>
StateVector<Real> apply_unitary(const StateVector<Real>& v, const Eigen::MatrixBase<Derived>& u,
                                const std::string& target) {
  return apply_unitary(v, u, LabelSet{target});
}

/// Reorders the tensor factors; `order` must name every subsystem exactly once.
template <typename Real>
StateVector<Real> permute(const StateVector<Real>& v, const LabelSet& order) {
  const auto& space = v.space();
  if (order.size() != space.size()) {
    throw std::invalid_argument("permute: order must list every subsystem");
  }
  std::vector<std::size_t> positions;
  std::vector<SubsystemLabel> reordered;
  for (const auto& name : order) {
    const std::size_t p = space.position(name);
    if (std::find(positions.begin(), positions.end(), p) != positions.end()) {
      throw std::invalid_argument("permute: label '" + name + "' listed twice");
    }
    positions.push_back(p);
    reordered.push_back(space.subsystems()[p]);
  }
  const IndexSplit split = split_indices(space, positions);
  CVector<Real> out(v.dim());
  for (Index t = 0; t < v.dim(); ++t) out(t) = v.amplitudes()(split.target_offsets[t]);
  return StateVector<Real>(CompositeSpace(std::move(reordered)), std::move(out));
}

/// Probability of finding basis outcome `outcome` on subsystem `label`.
template <typename Real>
Real outcome_probability(const DensityOperator<Real>& rho, const std::string& label,
                         Index outcome) {
  const auto& space = rho.space();
  const std::size_t p = space.position(label);
  if (outcome < 0 || outcome >= space.subsystems()[p].dim) {
    throw std::out_of_range("outcome out of range for subsystem '" + label + "'");
  }
  const std::size_t pos[] = {p};
  const IndexSplit split = split_indices(space, pos);
  Real prob = 0;
  for (Index r : split.rest_offsets) {
    const Index i = r + split.target_offsets[static_cast<std::size_t>(outcome)];
    prob += rho.matrix()(i, i).real();
  }
  return prob;
}

/// State of the remaining subsystems given basis outcome `outcome` on
/// `label`: <k| rho |k> / p(k). The conditioned subsystem is removed.
template <typename Real>
DensityOperator<Real> condition_on(const DensityOperator<Real>& rho, const std::string& label,
                                   Index outcome) {
  const auto& space = rho.space();
  if (space.size() < 2) throw std::invalid_argument("condition_on: nothing left after conditioning");
  const Real prob = outcome_probability(rho, label, outcome);
  if (!(prob > 0)) throw std::domain_error("condition_on: outcome has zero probability");
  const std::size_t p = space.position(label);
  const std::size_t pos[] = {p};
  const IndexSplit split = split_indices(space, pos);
  const Index off = split.target_offsets[static_cast<std::size_t>(outcome)];
  const Index dr = static_cast<Index>(split.rest_offsets.size());
  CMatrix<Real> out(dr, dr);
  for (Index a = 0; a < dr; ++a) {
    for (Index b = 0; b < dr; ++b) {
      out(a, b) = rho.matrix()(split.rest_offsets[a] + off, split.rest_offsets[b] + off) / prob;
    }
  }
  LabelSet rest;
  for (const auto& s : space.subsystems()) {
    if (s.name != label) rest.push_back(s.name);
  }
  return DensityOperator<Real>(space.subspace(rest), std::move(out));
}

template <typename Real>
RVector<Real> eigenvalues(const DensityOperator<Real>& rho) {
  return eigenvalues_hermitian(rho.matrix());
}

/// -Tr rho log2 rho, in bits.
template <typename Real>
Real von_neumann_entropy(const DensityOperator<Real>& rho) {
  return spectrum_entropy_bits(eigenvalues_hermitian(rho.matrix()));
}

/// Max-norm distance between the projectors of two kets; zero iff they are
/// equal up to a global phase.
template <typename Real>
Real projector_distance(const StateVector<Real>& a, const StateVector<Real>& b) {
  if (a.space() != b.space()) throw std::invalid_argument("projector_distance: spaces differ");
  const CMatrix<Real> pa = a.amplitudes() * a.amplitudes().adjoint();
  const CMatrix<Real> pb = b.amplitudes() * b.amplitudes().adjoint();
  return (pa - pb).cwiseAbs().maxCoeff();
}

template <typename Real>
Real max_abs_difference(const DensityOperator<Real>& a, const DensityOperator<Real>& b) {
  if (a.space() != b.space()) throw std::invalid_argument("max_abs_difference: spaces differ");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace qeraser
