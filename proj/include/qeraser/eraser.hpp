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

// Stage-by-stage construction of the Bell-state quantum eraser.
//
// Basis conventions used throughout:
//   Q    path of the signal photon: 0 = slit 1, 1 = slit 2
//   P    signal polarization, linear basis: 0 = h, 1 = v
//   B    idler polarization, linear basis 0 = h, 1 = v; after the erasure
//        measurement, the rotated basis 0 = |0>, 1 = |1>
//   D_A  signal polarization detector: 0 = L, 1 = R
//   D_B  idler polarization detector: outcome k
// Measurements are unitary couplings to a detector that starts in |0>.

#include "qeraser/entropy.hpp"
#include "qeraser/state.hpp"

#include <Eigen/Dense>

#include <array>
#include <numbers>
#include <string>

namespace qeraser::eraser {

using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using State = StateVector<double>;
using Density = DensityOperator<double>;

inline const std::string kQuanton = "Q";
inline const std::string kSignalPolarization = "P";
inline const std::string kIdlerPolarization = "B";
inline const std::string kDetectorA = "D_A";
inline const std::string kDetectorB = "D_B";

/// Polarizer angle for the idler measurement, restricted to [0, pi/4].
class ErasureAngle {
 public:
  static constexpr double kMin = 0.0;
  static constexpr double kMax = std::numbers::pi / 4;

  explicit ErasureAngle(double theta);

  double radians() const { return theta_; }
  /// sin(2 theta): the fringe-controlling coefficient.
  double coherence_amplitude() const;

 private:
  double theta_;
};

enum class Stage { PreTag, Tagged, BMeasured, AMeasured };

std::string to_string(Stage stage);
/// Subsystem order of the joint state at `stage`.
CompositeSpace stage_space(Stage stage);

class EraserState {
 public:
  EraserState(Stage stage, State state);

  Stage stage() const { return stage_; }
  const State& state() const { return state_; }
  Density density() const { return outer(state_); }

 private:
  Stage stage_;
  State state_;
};

// Polarization kets in the (h, v) basis.
Vector2c horizontal();
Vector2c vertical();
Vector2c left_circular();   // (h + i v) / sqrt 2
Vector2c right_circular();  // (h - i v) / sqrt 2

/// Jones matrix of a wave plate with retardance `retardance` and fast axis
/// at `fast_axis` to the h axis.
Matrix2c wave_plate(double retardance, double fast_axis);

/// Quarter-wave plate in front of `slit` (1: fast axis +45 deg, 2: -45 deg).
Matrix2c quarter_wave_plate(int slit);

/// Real rotation that defines the erasure basis (column index = new basis).
Matrix2c rotation(ErasureAngle theta);

/// Unitary on B taking |v> to sum_k U_0k |k> and |h> to sum_k U_1k |k>,
/// where U = rotation(theta).
Matrix2c detector_basis_change(ErasureAngle theta);

/// Controlled unitary on Q (x) P applying `slit1` on path 1, `slit2` on path 2.
Eigen::Matrix4cd path_controlled(const Matrix2c& slit1, const Matrix2c& slit2);

/// CNOT-style copy |j>|0> -> |j>|j> in the computational basis.
Eigen::Matrix4cd copy_gate();

/// Copy of the signal polarization in the circular basis onto D_A:
/// |L>|0> -> |L>|0>, |R>|0> -> |R>|1>, acting on P (x) D_A.
Eigen::Matrix4cd circular_copy_gate();

/// (|h>|v> + |v>|h>) / sqrt 2 on (P, B).
State bell_pair();

EraserState build_pretag();
EraserState tag_paths(const EraserState& pretag);
EraserState measure_B(const EraserState& tagged, ErasureAngle theta);
EraserState measure_A(const EraserState& b_measured);

/// Runs the pipeline from build_pretag() up to `stage`.
EraserState prepare(Stage stage, ErasureAngle theta);

/// |psi^k_m> in the path basis (m = 0 for L, 1 for R).
Vector2c spatial_state(ErasureAngle theta, int k, int m);

/// Closed-form <psi^{k'}_L | psi^k_R> = U*_{0k'} U_{1k} + U_{0k} U*_{1k'}.
std::complex<double> spatial_overlap_lr(ErasureAngle theta, int k_prime, int k);

/// The B-measured state assembled term by term as
/// (1/2) sum_{mk} i^m |psi^k_m>_Q |m>_P |k>_B |k>_{D_B}.
State assemble_b_measured(ErasureAngle theta);

/// rho^k_Q = (1 - (-1)^k sin(2 theta) sigma_y) / 2 on Q.
Density conditional_quanton(ErasureAngle theta, int k);

/// rho^k_Q obtained by tracing the B-measured state down to (Q, D_B) and
/// conditioning on D_B = k.
Density conditional_quanton_numeric(ErasureAngle theta, int k);

/// H(p) in bits.
double binary_entropy(double p);

struct ScalarPanel {
  double theta = 0;
  double S = 0;
  double lambda_plus = 0;
  double lambda_minus = 0;
  double coherence = 0;  // S(Q:D_B)
  double path_info = 0;  // S(Q:D_A|D_B)
  double D = 0;          // distinguishability
  double V = 0;          // visibility
};

/// Closed-form panel from lambda = (1 +- sin 2theta)/2.
ScalarPanel scalar_panel(ErasureAngle theta);

/// The same quantities recomputed from the A-measured joint state:
/// entropies by partial trace and eigendecomposition, lambda and V from
/// rho^0_Q, D as the trace distance of the D_A states attached to each path
/// given D_B = 0.
ScalarPanel numeric_panel(ErasureAngle theta);

std::string scalar_panel_csv_header();
std::string to_csv_row(const ScalarPanel& panel);

struct BaganPair {
  double coherence;         // C = 1 - S
  double path_information;  // H = S
};

BaganPair bagan_identity(ErasureAngle theta);

/// Diagram of (Q, P, D_B) after the idler measurement, as a function of the
/// conditional-quanton entropy S.
VennDiagram3<double> expected_venn_preparation(double S);
/// Diagram of (Q, D_A, D_B) after both measurements.
VennDiagram3<double> expected_venn_determination(double S);

}  // namespace qeraser::eraser
