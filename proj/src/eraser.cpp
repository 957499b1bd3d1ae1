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

#include "qeraser/eraser.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qeraser::eraser {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CompositeSpace qubits(std::initializer_list<std::string> names) {
  std::vector<SubsystemLabel> subs;
  for (const auto& n : names) subs.push_back({n, 2});
  return CompositeSpace(std::move(subs));
}

State ket(const std::string& label, const Vector2c& v) {
  return State(qubits({label}), CVectorXd(v));
}

void require_stage(const EraserState& s, Stage expected, const char* op) {
  if (s.stage() != expected) {
    throw std::invalid_argument(std::string(op) + ": expected stage " + to_string(expected) +
                                ", got " + to_string(s.stage()));
  }
}

void require_outcome(int k, const char* what) {
  if (k != 0 && k != 1) throw std::invalid_argument(std::string(what) + " must be 0 or 1");
}

cd i_pow(int m) { return m == 0 ? cd(1.0) : kI; }

}  // namespace

ErasureAngle::ErasureAngle(double theta) : theta_(theta) {
  if (!(theta >= kMin && theta <= kMax)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "erasure angle %.17g outside [0, pi/4]", theta);
    throw std::invalid_argument(buf);
  }
}

double ErasureAngle::coherence_amplitude() const { return std::sin(2.0 * theta_); }

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::PreTag:
      return "PreTag";
    case Stage::Tagged:
      return "Tagged";
    case Stage::BMeasured:
      return "BMeasured";
    case Stage::AMeasured:
      return "AMeasured";
  }
  return "?";
}

CompositeSpace stage_space(Stage stage) {
  switch (stage) {
    case Stage::PreTag:
    case Stage::Tagged:
      return qubits({kQuanton, kSignalPolarization, kIdlerPolarization});
    case Stage::BMeasured:
      return qubits({kQuanton, kSignalPolarization, kIdlerPolarization, kDetectorB});
    case Stage::AMeasured:
      return qubits(
          {kQuanton, kSignalPolarization, kDetectorA, kIdlerPolarization, kDetectorB});
  }
  throw std::logic_error("unknown stage");
}

EraserState::EraserState(Stage stage, State state) : stage_(stage), state_(std::move(state)) {
  if (state_.space() != stage_space(stage_)) {
    throw std::invalid_argument("state space does not match stage " + to_string(stage_));
  }
}

Vector2c horizontal() { return Vector2c(1.0, 0.0); }
Vector2c vertical() { return Vector2c(0.0, 1.0); }
Vector2c left_circular() { return Vector2c(kInvSqrt2, kI * kInvSqrt2); }
Vector2c right_circular() { return Vector2c(kInvSqrt2, -kI * kInvSqrt2); }

Matrix2c wave_plate(double retardance, double fast_axis) {
  const double c = std::cos(retardance / 2);
  const double s = std::sin(retardance / 2);
  const double c2b = std::cos(2 * fast_axis);
  const double s2b = std::sin(2 * fast_axis);
  Matrix2c u;
  u << cd(c, s * c2b), cd(0, s * s2b),
       cd(0, s * s2b), cd(c, -s * c2b);
  return u;
}

Matrix2c quarter_wave_plate(int slit) {
  if (slit != 1 && slit != 2) throw std::invalid_argument("slit must be 1 or 2");
  const double axis = slit == 1 ? std::numbers::pi / 4 : -std::numbers::pi / 4;
  return wave_plate(std::numbers::pi / 2, axis);
}

Matrix2c rotation(ErasureAngle theta) {
  const double c = std::cos(theta.radians());
  const double s = std::sin(theta.radians());
  Matrix2c u;
  u << c, -s,
       s, c;
  return u;
}

Matrix2c detector_basis_change(ErasureAngle theta) {
  const Matrix2c u = rotation(theta);
  // Column h (index 0) is row 1 of U; column v (index 1) is row 0.
  Matrix2c w;
  w.col(0) = u.row(1).transpose();
  w.col(1) = u.row(0).transpose();
  return w;
}

Eigen::Matrix4cd path_controlled(const Matrix2c& slit1, const Matrix2c& slit2) {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c.block<2, 2>(0, 0) = slit1;
  c.block<2, 2>(2, 2) = slit2;
  return c;
}

Eigen::Matrix4cd copy_gate() {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(3, 2) = 1.0;
  c(2, 3) = 1.0;
  return c;
}

Eigen::Matrix4cd circular_copy_gate() {
  const Vector2c l = left_circular();
  const Vector2c r = right_circular();
  const Matrix2c proj_l = l * l.adjoint();
  const Matrix2c proj_r = r * r.adjoint();
  Matrix2c flip;
  flip << 0, 1,
          1, 0;
  return Eigen::kroneckerProduct(proj_l, Matrix2c::Identity()).eval() +
         Eigen::kroneckerProduct(proj_r, flip).eval();
}

State bell_pair() {
  CVectorXd a = CVectorXd::Zero(4);
  a(1) = kInvSqrt2;  // |h>|v>
  a(2) = kInvSqrt2;  // |v>|h>
  return State(qubits({kSignalPolarization, kIdlerPolarization}), std::move(a));
}

EraserState build_pretag() {
  const State path = ket(kQuanton, Vector2c(kInvSqrt2, kInvSqrt2));
  return EraserState(Stage::PreTag, tensor(path, bell_pair()));
}

EraserState tag_paths(const EraserState& pretag) {
  require_stage(pretag, Stage::PreTag, "tag_paths");
  const auto tag = path_controlled(quarter_wave_plate(1), quarter_wave_plate(2));
  return EraserState(Stage::Tagged,
                     apply_unitary(pretag.state(), tag, LabelSet{kQuanton, kSignalPolarization}));
}

EraserState measure_B(const EraserState& tagged, ErasureAngle theta) {
  require_stage(tagged, Stage::Tagged, "measure_B");
  State s = apply_unitary(tagged.state(), detector_basis_change(theta), kIdlerPolarization);
  s = tensor(s, ket(kDetectorB, Vector2c(1.0, 0.0)));
  s = apply_unitary(s, copy_gate(), LabelSet{kIdlerPolarization, kDetectorB});
  return EraserState(Stage::BMeasured, std::move(s));
}

EraserState measure_A(const EraserState& b_measured) {
  require_stage(b_measured, Stage::BMeasured, "measure_A");
  State s = tensor(b_measured.state(), ket(kDetectorA, Vector2c(1.0, 0.0)));
  s = permute(s, stage_space(Stage::AMeasured).labels());
  s = apply_unitary(s, circular_copy_gate(), LabelSet{kSignalPolarization, kDetectorA});
  return EraserState(Stage::AMeasured, std::move(s));
}

EraserState prepare(Stage stage, ErasureAngle theta) {
  EraserState s = build_pretag();
  if (stage == Stage::PreTag) return s;
  s = tag_paths(s);
  if (stage == Stage::Tagged) return s;
  s = measure_B(s, theta);
  if (stage == Stage::BMeasured) return s;
  return measure_A(s);
}

Vector2c spatial_state(ErasureAngle theta, int k, int m) {
  require_outcome(k, "detector outcome k");
  require_outcome(m, "circular polarization index m");
  const Matrix2c u = rotation(theta);
  if (m == 0) return Vector2c(u(0, k), -kI * u(1, k));
  return Vector2c(u(1, k), -kI * u(0, k));
}

cd spatial_overlap_lr(ErasureAngle theta, int k_prime, int k) {
  require_outcome(k, "detector outcome k");
  require_outcome(k_prime, "detector outcome k'");
  const Matrix2c u = rotation(theta);
  return std::conj(u(0, k_prime)) * u(1, k) + u(0, k) * std::conj(u(1, k_prime));
}

State assemble_b_measured(ErasureAngle theta) {
  const std::array<Vector2c, 2> circular = {left_circular(), right_circular()};
  CVectorXd total = CVectorXd::Zero(16);
  for (int m = 0; m < 2; ++m) {
    for (int k = 0; k < 2; ++k) {
      const Vector2c kk = k == 0 ? Vector2c(1.0, 0.0) : Vector2c(0.0, 1.0);
      const CVectorXd term = Eigen::kroneckerProduct(
          spatial_state(theta, k, m),
          Eigen::kroneckerProduct(circular[m], Eigen::kroneckerProduct(kk, kk).eval()).eval());
      total += 0.5 * i_pow(m) * term;
    }
  }
  return State(stage_space(Stage::BMeasured), std::move(total));
}

Density conditional_quanton(ErasureAngle theta, int k) {
  require_outcome(k, "detector outcome k");
  Matrix2c sigma_y;
  sigma_y << 0.0, -kI,
             kI, 0.0;
  const double sign = k == 0 ? 1.0 : -1.0;
  const Matrix2c rho = 0.5 * (Matrix2c::Identity() - sign * theta.coherence_amplitude() * sigma_y);
  return Density(qubits({kQuanton}), CMatrixXd(rho));
}

Density conditional_quanton_numeric(ErasureAngle theta, int k) {
  require_outcome(k, "detector outcome k");
  const EraserState s = prepare(Stage::BMeasured, theta);
  const Density rho_q_db = partial_trace(s.state(), LabelSet{kQuanton, kDetectorB});
  return condition_on(rho_q_db, kDetectorB, k);
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

ScalarPanel scalar_panel(ErasureAngle theta) {
  const double s2 = theta.coherence_amplitude();
  ScalarPanel p;
  p.theta = theta.radians();
  p.lambda_plus = 0.5 * (1.0 + s2);
  p.lambda_minus = 0.5 * (1.0 - s2);
  p.S = binary_entropy(p.lambda_plus);
  p.coherence = 1.0 - p.S;
  p.path_info = p.S;
  p.D = std::abs(std::cos(2.0 * theta.radians()));
  p.V = std::abs(s2);
  return p;
}

ScalarPanel numeric_panel(ErasureAngle theta) {
  const Density joint = prepare(Stage::AMeasured, theta).density();
  const Density rho = partial_trace(joint, LabelSet{kQuanton, kDetectorA, kDetectorB});
  const LabelSet q{kQuanton}, da{kDetectorA}, db{kDetectorB};

  ScalarPanel p;
  p.theta = theta.radians();
  p.coherence = mutual_entropy(rho, q, db);
  p.path_info = conditional_mutual(rho, q, da, db);

  const Density rho_q_db = partial_trace(rho, LabelSet{kQuanton, kDetectorB});
  const Density conditional = condition_on(rho_q_db, kDetectorB, 0);
  const auto ev = eigenvalues(conditional);
  p.lambda_plus = ev(0);
  p.lambda_minus = ev(1);
  p.S = von_neumann_entropy(conditional);
  p.V = 2.0 * std::abs(conditional.matrix()(0, 1));

  // D_A states attached to each path, given D_B = 0; unnormalized, weights included.
  const Density rho_q_da = condition_on(rho, kDetectorB, 0);
  const CMatrixXd& m = rho_q_da.matrix();
  const Matrix2c detector_given_slit1 = m.block<2, 2>(0, 0);
  const Matrix2c detector_given_slit2 = m.block<2, 2>(2, 2);
  const auto gap = eigenvalues_hermitian(detector_given_slit1 - detector_given_slit2);
  p.D = gap.cwiseAbs().sum();
  return p;
}

std::string scalar_panel_csv_header() { return "theta,S,lambda_plus,lambda_minus,coherence,path_info,D,V"; }

std::string to_csv_row(const ScalarPanel& p) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", p.theta, p.S,
                p.lambda_plus, p.lambda_minus, p.coherence, p.path_info, p.D, p.V);
  return buf;
}

BaganPair bagan_identity(ErasureAngle theta) {
  const double s = scalar_panel(theta).S;
  return {1.0 - s, s};
}

VennDiagram3<double> expected_venn_preparation(double S) {
  // S(Q) = S(P) = S(D_B) = S(QP) = S(QPD_B) = 1, S(QD_B) = S(PD_B) = 1 + S.
  return venn_from_entropies<double>({1.0, 1.0, 1.0, 1.0, 1.0 + S, 1.0 + S, 1.0},
                                     {kQuanton, kSignalPolarization, kDetectorB});
}

VennDiagram3<double> expected_venn_determination(double S) {
  // S(Q) = S(D_A) = S(D_B) = 1, S(QD_A) = S(D_AD_B) = S(QD_AD_B) = 2, S(QD_B) = 1 + S.
  return venn_from_entropies<double>({1.0, 1.0, 1.0, 2.0, 1.0 + S, 2.0, 2.0},
                                     {kQuanton, kDetectorA, kDetectorB});
}

}  // namespace qeraser::eraser
