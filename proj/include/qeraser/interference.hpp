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

// Fraunhofer double-slit screen model for the conditional fringe patterns.
// Densities returned by the *_density functions are the raw per-point
// probabilities built from the slit amplitudes; Pattern values are those
// densities rescaled to unit Riemann sum over the screen window.

#include "qeraser/eraser.hpp"
#include "qeraser/state.hpp"

#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace qeraser::interference {

using eraser::ErasureAngle;

struct SlitGeometry {
  double slit_width = 10e-6;    // a
  double separation = 20e-6;    // d = x_2 - x_1
  double distance = 1.0;        // L
  double wavelength = 702e-9;   // lambda
  bool far_field = true;

  static constexpr double kMinFarFieldRatio = 1000.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// x_1 = -d/2, x_2 = +d/2.
  double slit_center(int slit) const;
  /// lambda L / d.
  double nominal_fringe_spacing() const;
  /// Screen position of the first zero of the single-slit envelope.
  double first_envelope_zero() const;
  /// Half-width of the window used for fringe analysis: the inner part of
  /// the central lobe, so the envelope zeros are not mistaken for fringes.
  double fringe_window() const;

  static constexpr double kFringeWindowFraction = 0.9;
};

struct ScreenGrid {
  double x_min = -0.15;
  double x_max = 0.15;
  Index n = 2001;

  void validate() const;
  double spacing() const { return (x_max - x_min) / static_cast<double>(n - 1); }
  double x(Index i) const;
  std::vector<double> points() const;
};

enum class PatternKind { Conditional, Total };

struct Pattern {
  ScreenGrid grid;
  std::vector<double> values;
  PatternKind kind = PatternKind::Total;
  int outcome = -1;  // detector outcome k for conditional patterns

  double riemann_sum() const;
};

/// sin(x)/x with the removable singularity filled in.
double sinc(double x);

/// psi_j(x) for slit j in {1, 2}.
std::complex<double> slit_amplitude(double x, const SlitGeometry& geom, int slit);

/// p_k(x) from the expanded cross-term expression in psi_1, psi_2.
double conditional_density(ErasureAngle theta, int k, const SlitGeometry& geom, double x);

/// p_k(x) as (1/2) sum_m |psi^k_m(x)|^2 from the conditional spatial states.
double conditional_density_from_modes(ErasureAngle theta, int k, const SlitGeometry& geom,
                                      double x);

/// (|psi_1(x)|^2 + |psi_2(x)|^2) / 2.
double incoherent_density(const SlitGeometry& geom, double x);

/// a/(2 pi) |sin(alpha)/alpha|^2 at x for the envelope of one slit.
double single_slit_envelope(const SlitGeometry& geom, double x);

/// Raw (unnormalized) densities on the grid.
struct RawPatterns {
  std::vector<double> p0;
  std::vector<double> p1;
  std::vector<double> total_average;  // (p0 + p1) / 2
  std::vector<double> total_direct;   // incoherent sum
};

RawPatterns evaluate_raw(ErasureAngle theta, const SlitGeometry& geom, const ScreenGrid& grid);

Pattern conditional_pattern(ErasureAngle theta, int k, const SlitGeometry& geom,
                            const ScreenGrid& grid);
Pattern total_pattern(ErasureAngle theta, const SlitGeometry& geom, const ScreenGrid& grid);

struct Extremum {
  double x;
  double value;
  bool is_max;
};

/// Interior local extrema with |x| < half_width, refined by a parabola
/// through the neighboring grid points.
std::vector<Extremum> find_extrema(const Pattern& p,
                                   double half_width = std::numeric_limits<double>::infinity());

/// (p_max - p_min)/(p_max + p_min) for the adjacent max/min pair nearest
/// x = 0 among extrema with |x| < half_width; 0 when no such pair exists.
double estimate_visibility(const Pattern& p,
                           double half_width = std::numeric_limits<double>::infinity());

/// Visibility restricted to geom.fringe_window().
double estimate_visibility(const Pattern& p, const SlitGeometry& geom);

/// Mean distance between consecutive minima with |x| < half_width; NaN if
/// fewer than two minima are found.
double measure_fringe_spacing(const Pattern& p,
                              double half_width = std::numeric_limits<double>::infinity());
double measure_fringe_spacing(const Pattern& p, const SlitGeometry& geom);

/// Classical record of screen and idler detector: discrete probabilities
/// P(x_i, k), jointly normalized over the grid and both outcomes.
struct ScreenRecord {
  ScreenGrid grid;
  std::vector<double> joint0;  // P(x_i, k = 0)
  std::vector<double> joint1;  // P(x_i, k = 1)

  std::vector<double> screen_marginal() const;
};

ScreenRecord screen_record(ErasureAngle theta, const SlitGeometry& geom, const ScreenGrid& grid);

/// Largest grid for which the dense (D_X, D_B) operator is materialized.
inline constexpr Index kMaxDenseScreenPoints = 1024;

/// Block-diagonal rho_{D_X D_B} = sum_k diag(P(., k)) (x) |k><k| on (D_X, D_B).
DensityOperator<double> screen_measurement_state(ErasureAngle theta, const SlitGeometry& geom,
                                                 const ScreenGrid& grid);

/// CSV with header x_meters,p0,p1,p_total.
std::string pattern_csv(const Pattern& p0, const Pattern& p1, const Pattern& total);

}  // namespace qeraser::interference
