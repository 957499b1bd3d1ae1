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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qeraser/entropy.hpp"
#include "qeraser/eraser.hpp"
#include "support/oracle_values.hpp"

#include <cmath>
#include <cstdio>

using namespace qeraser;
using namespace qeraser::eraser;
namespace qt = qeraser::testing;

namespace {

const std::complex<double> kI(0, 1);
const double kRt2 = std::sqrt(0.5);

State ket(const std::string& label, const Vector2c& v) {
  return State(CompositeSpace{{label, 2}}, v);
}

std::vector<double> grid(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = qt::kPi / 4 * i / (n - 1);
  return t;
}

double h2(double theta) {
  const double p = 0.5 * (1 + std::sin(2 * theta));
  const auto term = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1 - p);
}

CMatrixXd half_identity(Index d) { return CMatrixXd::Identity(d, d) / static_cast<double>(d); }

}  // namespace

TEST_CASE("erasure angle range") {
  CHECK_NOTHROW(ErasureAngle(0));
  CHECK_NOTHROW(ErasureAngle(qt::kPi / 4));
  CHECK_THROWS_AS(ErasureAngle(-1e-3), std::invalid_argument);
  CHECK_THROWS_AS(ErasureAngle(0.8), std::invalid_argument);
  CHECK_THROWS_AS(ErasureAngle(std::nan("")), std::invalid_argument);
  CHECK(ErasureAngle(qt::kPi / 8).coherence_amplitude() == doctest::Approx(qt::kHalfSqrt2));
}

TEST_CASE("wave plate matrices") {
  Matrix2c plus, minus;
  plus << 1, kI, kI, 1;
  minus << 1, -kI, -kI, 1;
  CHECK((wave_plate(qt::kPi / 2, qt::kPi / 4) - plus * kRt2).norm() < 1e-15);
  CHECK((wave_plate(qt::kPi / 2, -qt::kPi / 4) - minus * kRt2).norm() < 1e-15);
  for (double beta : {0.0, 0.3, -1.2, 2.0}) {
    CHECK((wave_plate(0, beta) - Matrix2c::Identity()).norm() < 1e-15);
  }
  for (double alpha : {0.1, 1.0, qt::kPi, 4.0}) {
    for (double beta : {0.0, 0.7, -0.4}) {
      CHECK(unitarity_defect(wave_plate(alpha, beta)) < 1e-12);
    }
  }
  CHECK((quarter_wave_plate(1) - plus * kRt2).norm() < 1e-15);
  CHECK((quarter_wave_plate(2) - minus * kRt2).norm() < 1e-15);
  CHECK_THROWS(quarter_wave_plate(3));
}

TEST_CASE("quarter-wave plates map linear to circular polarization") {
  const auto l = ket("P", left_circular());
  const auto r = ket("P", right_circular());
  const auto h = ket("P", horizontal());
  const auto v = ket("P", vertical());
  CHECK(projector_distance(apply_unitary(h, quarter_wave_plate(1), "P"), l) < 1e-15);
  CHECK(projector_distance(apply_unitary(v, quarter_wave_plate(1), "P"), r) < 1e-15);
  CHECK(projector_distance(apply_unitary(h, quarter_wave_plate(2), "P"), r) < 1e-15);
  CHECK(projector_distance(apply_unitary(v, quarter_wave_plate(2), "P"), l) < 1e-15);
}

TEST_CASE("rotation matrices") {
  CHECK((rotation(ErasureAngle(0)) - Matrix2c::Identity()).norm() < 1e-15);
  const Matrix2c r4 = rotation(ErasureAngle(qt::kPi / 4));
  Matrix2c expected;
  expected << kRt2, -kRt2, kRt2, kRt2;
  CHECK((r4 - expected).norm() < 1e-15);
  const Matrix2c r8 = rotation(ErasureAngle(qt::kPi / 8));
  CHECK(std::abs(r8(0, 0) - qt::kCosPi8) < 1e-15);
  CHECK(std::abs(r8(0, 1) + qt::kSinPi8) < 1e-15);
  CHECK(std::abs(r8(1, 0) - qt::kSinPi8) < 1e-15);
  CHECK(std::abs(r8(1, 1) - qt::kCosPi8) < 1e-15);
}

TEST_CASE("pre-tag stage") {
  const EraserState s = build_pretag();
  CHECK(s.stage() == Stage::PreTag);
  CHECK(s.state().space().labels() == LabelSet{"Q", "P", "B"});
  CHECK(std::abs(s.state().amplitudes().norm() - 1) < 1e-12);
  const auto rho_q = partial_trace(s.state(), {"Q"});
  CHECK(std::abs(rho_q.matrix()(0, 1) - 0.5) < 1e-15);
  CHECK(std::abs(rho_q.matrix()(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(von_neumann_entropy(rho_q)) < 1e-12);
  const auto v = venn3(s.density(), {"Q"}, {"P"}, {"B"});
  for (double e : {v.c_a, v.m_ab, v.m_ac, v.center}) CHECK(std::abs(e) < 1e-12);
}

TEST_CASE("tagging mixes the quanton") {
  const EraserState t = tag_paths(build_pretag());
  CHECK(t.stage() == Stage::Tagged);
  CHECK((partial_trace(t.state(), {"Q"}).matrix() - half_identity(2)).norm() < 1e-12);
  const auto rho = t.density();
  for (const char* x : {"Q", "P", "B"}) CHECK(std::abs(joint_entropy(rho, {x}) - 1) < 1e-12);
  CHECK(std::abs(ternary_mutual(rho, {"Q"}, {"P"}, {"B"})) < 1e-12);

  const auto undo = path_controlled(quarter_wave_plate(1).adjoint(), quarter_wave_plate(2).adjoint());
  const auto restored = apply_unitary(t.state(), undo, LabelSet{"Q", "P"});
  CHECK(projector_distance(restored, build_pretag().state()) < 1e-12);

  CHECK_THROWS_WITH(tag_paths(t), doctest::Contains("stage"));
}

TEST_CASE("stage checks and stage spaces") {
  const auto tagged = prepare(Stage::Tagged, ErasureAngle(0));
  CHECK_THROWS(measure_B(build_pretag(), ErasureAngle(0)));
  CHECK_THROWS(measure_A(tagged));
  CHECK_THROWS(EraserState(Stage::BMeasured, tagged.state()));
  CHECK(stage_space(Stage::BMeasured).labels() == LabelSet{"Q", "P", "B", "D_B"});
  CHECK(stage_space(Stage::AMeasured).labels() == LabelSet{"Q", "P", "D_A", "B", "D_B"});
  CHECK(to_string(Stage::AMeasured) == "AMeasured");
}

TEST_CASE("idler measurement matches direct assembly on 16 angles") {
  for (double t : grid(16)) {
    const ErasureAngle theta(t);
    const auto pipeline = prepare(Stage::BMeasured, theta);
    CHECK(projector_distance(pipeline.state(), assemble_b_measured(theta)) < 1e-12);
    CHECK(std::abs(pipeline.state().amplitudes().norm() - 1) < 1e-12);
  }
}

TEST_CASE("spatial state overlaps") {
  for (double t : {0.0, 0.2, qt::kPi / 8, 0.6, qt::kPi / 4}) {
    const ErasureAngle theta(t);
    const double c = std::cos(t), s = std::sin(t);
    const double u[2][2] = {{c, -s}, {s, c}};
    for (int m = 0; m < 2; ++m) {
      for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
          const auto ov = spatial_state(theta, kp, m).dot(spatial_state(theta, k, m));
          CHECK(std::abs(ov - (k == kp ? 1.0 : 0.0)) < 1e-15);
        }
      }
    }
    for (int k = 0; k < 2; ++k) {
      for (int kp = 0; kp < 2; ++kp) {
        const auto direct = spatial_state(theta, kp, 0).dot(spatial_state(theta, k, 1));
        const double formula = u[0][kp] * u[1][k] + u[0][k] * u[1][kp];
        CHECK(std::abs(direct - formula) < 1e-15);
        CHECK(std::abs(spatial_overlap_lr(theta, kp, k) - formula) < 1e-15);
      }
    }
  }
  CHECK_THROWS(spatial_state(ErasureAngle(0), 2, 0));
}

TEST_CASE("quanton stays maximally mixed from tagging onward") {
  for (double t : grid(9)) {
    for (Stage st : {Stage::Tagged, Stage::BMeasured, Stage::AMeasured}) {
      const auto s = prepare(st, ErasureAngle(t));
      CHECK(std::abs(s.state().amplitudes().norm() - 1) < 1e-12);
      CHECK((partial_trace(s.state(), {"Q"}).matrix() - half_identity(2)).norm() < 1e-12);
    }
  }
}

TEST_CASE("conditional quanton states") {
  CHECK((conditional_quanton(ErasureAngle(0), 0).matrix() - half_identity(2)).norm() < 1e-15);

  const auto f = conditional_quanton(ErasureAngle(qt::kPi / 4), 0);
  Vector2c fv(kRt2, -kI * kRt2);
  CHECK((f.matrix() - fv * fv.adjoint()).norm() < 1e-15);

  const auto ev = eigenvalues(conditional_quanton(ErasureAngle(qt::kPi / 8), 1));
  CHECK(std::abs(ev(0) - qt::kLambdaPlusPi8) < 1e-12);
  CHECK(std::abs(ev(1) - qt::kLambdaMinusPi8) < 1e-12);

  for (double t : grid(16)) {
    for (int k = 0; k < 2; ++k) {
      const ErasureAngle theta(t);
      CHECK(max_abs_difference(conditional_quanton(theta, k), conditional_quanton_numeric(theta, k)) <
            1e-12);
    }
  }
  CHECK_THROWS(conditional_quanton(ErasureAngle(0), -1));
}

TEST_CASE("signal measurement") {
  const ErasureAngle theta(0.31);
  const auto a = prepare(Stage::AMeasured, theta);
  const auto rho = partial_trace(a.state(), {"Q", "D_A", "D_B"});
  CHECK((partial_trace(rho, {"D_A", "D_B"}).matrix() - half_identity(4)).norm() < 1e-12);
  CHECK((partial_trace(rho, {"Q", "D_A"}).matrix() - half_identity(4)).norm() < 1e-12);
  CHECK(std::abs(von_neumann_entropy(rho) - 2) < 1e-12);
  CHECK(std::abs(mutual_entropy(rho, {"D_A"}, {"D_B"})) < 1e-12);

  // Tracing D_A leaves the (Q, D_B) state of the idler stage untouched.
  const auto before = partial_trace(prepare(Stage::BMeasured, theta).state(), {"Q", "D_B"});
  CHECK(max_abs_difference(partial_trace(rho, {"Q", "D_B"}), before) < 1e-12);
}

TEST_CASE("structural entropies hold for every angle") {
  for (double t : grid(16)) {
    const auto rho = prepare(Stage::AMeasured, ErasureAngle(t)).density();
    CHECK(std::abs(mutual_entropy(rho, {"Q"}, {"D_A"})) < 1e-9);
    CHECK(std::abs(mutual_entropy(rho, {"D_A"}, {"D_B"})) < 1e-9);
    CHECK(std::abs(mutual_entropy(rho, {"Q"}, {"D_A", "D_B"}) - 1) < 1e-9);
    CHECK(std::abs(conditional_mutual(rho, {"D_A"}, {"D_B"}, {"Q"}) - h2(t)) < 1e-9);
  }
}

TEST_CASE("no erasure: conditional (Q, D_A) state is a classical mixture") {
  const auto rho = prepare(Stage::AMeasured, ErasureAngle(0)).density();
  const auto cond = condition_on(partial_trace(rho, {"Q", "D_A", "D_B"}), "D_B", 0);
  CMatrixXd expected = CMatrixXd::Zero(4, 4);
  expected(0, 0) = 0.5;  // slit 1 with D_A = L
  expected(3, 3) = 0.5;  // slit 2 with D_A = R
  CHECK((cond.matrix() - expected).norm() < 1e-12);
}

TEST_CASE("scalar panel endpoints and midpoint") {
  const auto p0 = scalar_panel(ErasureAngle(0));
  CHECK(p0.S == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(p0.coherence) < 1e-15);
  CHECK(std::abs(p0.path_info - 1) < 1e-15);
  CHECK(std::abs(p0.D - 1) < 1e-15);
  CHECK(std::abs(p0.V) < 1e-15);

  const auto p4 = scalar_panel(ErasureAngle(qt::kPi / 4));
  CHECK(std::abs(p4.S) < 1e-12);
  CHECK(std::abs(p4.coherence - 1) < 1e-12);
  CHECK(std::abs(p4.path_info) < 1e-12);
  CHECK(std::abs(p4.D) < 1e-15);
  CHECK(std::abs(p4.V - 1) < 1e-15);

  const auto p8 = scalar_panel(ErasureAngle(qt::kPi / 8));
  CHECK(std::abs(p8.S - qt::kEntropyPi8) < 1e-12);
  CHECK(std::abs(p8.coherence - qt::kCoherencePi8) < 1e-12);
  CHECK(std::abs(p8.lambda_plus - qt::kLambdaPlusPi8) < 1e-15);
  CHECK(std::abs(p8.D - qt::kHalfSqrt2) < 1e-15);
  CHECK(std::abs(p8.V - qt::kHalfSqrt2) < 1e-15);

  CHECK(std::abs(scalar_panel(ErasureAngle(qt::kPi / 16)).S - qt::kEntropyPi16) < 1e-12);
}

TEST_CASE("scalar panel invariants and numeric agreement") {
  for (double t : grid(32)) {
    const ErasureAngle theta(t);
    const auto a = scalar_panel(theta);
    const auto n = numeric_panel(theta);
    CHECK(std::abs(a.lambda_plus + a.lambda_minus - 1) < 1e-15);
    CHECK(std::abs(a.coherence + a.path_info - 1) < 1e-9);
    CHECK(std::abs(a.D * a.D + a.V * a.V - 1) < 1e-12);
    CHECK(std::abs(a.S - n.S) < 1e-9);
    CHECK(std::abs(a.lambda_plus - n.lambda_plus) < 1e-9);
    CHECK(std::abs(a.coherence - n.coherence) < 1e-9);
    CHECK(std::abs(a.path_info - n.path_info) < 1e-9);
    CHECK(std::abs(a.D - n.D) < 1e-9);
    CHECK(std::abs(a.V - n.V) < 1e-9);
  }
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0) == 0);
  CHECK(binary_entropy(1) == 0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(std::abs(binary_entropy(qt::kLambdaPlusPi8) - qt::kEntropyPi8) < 1e-15);
  CHECK_THROWS(binary_entropy(1.5));
}

TEST_CASE("coherence / path-information identity") {
  const auto b0 = bagan_identity(ErasureAngle(0));
  CHECK(std::abs(b0.coherence) < 1e-15);
  CHECK(std::abs(b0.path_information - 1) < 1e-15);
  const auto b4 = bagan_identity(ErasureAngle(qt::kPi / 4));
  CHECK(std::abs(b4.coherence - 1) < 1e-12);
  CHECK(std::abs(b4.path_information) < 1e-12);
  const auto b8 = bagan_identity(ErasureAngle(qt::kPi / 8));
  CHECK(std::abs(b8.coherence - qt::kCoherencePi8) < 1e-12);
  CHECK(std::abs(b8.path_information - qt::kEntropyPi8) < 1e-12);
  for (double t : grid(11)) {
    const auto b = bagan_identity(ErasureAngle(t));
    CHECK(std::abs(b.coherence + b.path_information - 1) < 1e-12);
  }
}

TEST_CASE("expected Venn diagrams match brute force") {
  for (double t : grid(12)) {
    const ErasureAngle theta(t);
    const double S = h2(t);
    const auto b = prepare(Stage::BMeasured, theta).density();
    const auto got_p = venn3(b, {"Q"}, {"P"}, {"D_B"}).entries();
    const auto want_p = expected_venn_preparation(S).entries();
    const auto a = prepare(Stage::AMeasured, theta).density();
    const auto got_d = venn3(a, {"Q"}, {"D_A"}, {"D_B"}).entries();
    const auto want_d = expected_venn_determination(S).entries();
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(std::abs(got_p[i] - want_p[i]) < 1e-9);
      CHECK(std::abs(got_d[i] - want_d[i]) < 1e-9);
    }
  }
  const auto v = expected_venn_preparation(qt::kEntropyPi8);
  CHECK(std::abs(v.center - qt::kTernaryPi8) < 1e-15);
}

TEST_CASE("panel CSV") {
  CHECK(scalar_panel_csv_header() == "theta,S,lambda_plus,lambda_minus,coherence,path_info,D,V");
  const auto row = to_csv_row(scalar_panel(ErasureAngle(qt::kPi / 8)));
  CHECK(std::count(row.begin(), row.end(), ',') == 7);
  double vals[8];
  REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &vals[0], &vals[1], &vals[2],
                      &vals[3], &vals[4], &vals[5], &vals[6], &vals[7]) == 8);
  const auto p = scalar_panel(ErasureAngle(qt::kPi / 8));
  CHECK(vals[0] == p.theta);
  CHECK(vals[1] == p.S);
  CHECK(vals[7] == p.V);
}
