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

#include "qeraser/interference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qeraser::interference {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("slit geometry: '") + name + "' must be positive");
  }
}

void require_outcome(int k) {
  if (k != 0 && k != 1) throw std::invalid_argument("detector outcome k must be 0 or 1");
}

Pattern normalized(const ScreenGrid& grid, std::vector<double> values, PatternKind kind,
                   int outcome) {
  Pattern p{grid, std::move(values), kind, outcome};
  const double sum = p.riemann_sum();
  if (!(sum > 0.0)) throw std::domain_error("pattern has zero weight on the screen window");
  for (double& v : p.values) v /= sum;
  return p;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void SlitGeometry::validate() const {
  require_positive(slit_width, "a");
  require_positive(separation, "d");
  require_positive(distance, "L");
  require_positive(wavelength, "lambda");
  if (far_field && distance / separation < kMinFarFieldRatio) {
    throw std::invalid_argument("slit geometry: far-field approximation needs L/d >= 1000");
  }
}

double SlitGeometry::slit_center(int slit) const {
  if (slit != 1 && slit != 2) throw std::invalid_argument("slit must be 1 or 2");
  return slit == 1 ? -0.5 * separation : 0.5 * separation;
}

double SlitGeometry::nominal_fringe_spacing() const { return wavelength * distance / separation; }

double SlitGeometry::first_envelope_zero() const {
  const double s = wavelength / slit_width;
  if (s >= 1.0) return std::numeric_limits<double>::infinity();
  return distance * std::tan(std::asin(s));
}

double SlitGeometry::fringe_window() const { return kFringeWindowFraction * first_envelope_zero(); }

void ScreenGrid::validate() const {
  if (n < 2) throw std::invalid_argument("screen grid: 'n_points' must be at least 2");
  if (!(x_min < x_max)) throw std::invalid_argument("screen grid: 'x_min' must be below 'x_max'");
}

double ScreenGrid::x(Index i) const {
  if (i == n - 1) return x_max;
  return x_min + static_cast<double>(i) * spacing();
}

std::vector<double> ScreenGrid::points() const {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = x(i);
  return xs;
}

double Pattern::riemann_sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.spacing();
}

double sinc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

cd slit_amplitude(double x, const SlitGeometry& geom, int slit) {
  const double xj = geom.slit_center(slit);
  const double phi = geom.far_field ? std::atan(x / geom.distance)
                                    : std::atan((x - xj) / geom.distance);
  const double alpha = std::numbers::pi * geom.slit_width * std::sin(phi) / geom.wavelength;
  const double norm = std::sqrt(geom.slit_width / (2.0 * std::numbers::pi));
  return norm * sinc(alpha) * std::exp(-2.0 * kI * alpha * xj / geom.slit_width);
}

double single_slit_envelope(const SlitGeometry& geom, double x) {
  const double phi = std::atan(x / geom.distance);
  const double alpha = std::numbers::pi * geom.slit_width * std::sin(phi) / geom.wavelength;
  const double s = sinc(alpha);
  return geom.slit_width / (2.0 * std::numbers::pi) * s * s;
}

double conditional_density(ErasureAngle theta, int k, const SlitGeometry& geom, double x) {
  require_outcome(k);
  const cd psi1 = slit_amplitude(x, geom, 1);
  const cd psi2 = slit_amplitude(x, geom, 2);
  const double sign = k == 0 ? 1.0 : -1.0;
  const cd cross = kI * sign * theta.coherence_amplitude() *
                   (psi1 * std::conj(psi2) - std::conj(psi1) * psi2);
  return 0.5 * (std::norm(psi1) + std::norm(psi2) + cross.real());
}

double conditional_density_from_modes(ErasureAngle theta, int k, const SlitGeometry& geom,
                                      double x) {
  require_outcome(k);
  const Eigen::Vector2cd amps(slit_amplitude(x, geom, 1), slit_amplitude(x, geom, 2));
  double sum = 0.0;
  for (int m = 0; m < 2; ++m) {
    // psi^k_m(x) = c_1 psi_1(x) + c_2 psi_2(x)
    const Eigen::Vector2cd mode = eraser::spatial_state(theta, k, m);
    sum += std::norm(mode(0) * amps(0) + mode(1) * amps(1));
  }
  return 0.5 * sum;
}

double incoherent_density(const SlitGeometry& geom, double x) {
  return 0.5 * (std::norm(slit_amplitude(x, geom, 1)) + std::norm(slit_amplitude(x, geom, 2)));
}

RawPatterns evaluate_raw(ErasureAngle theta, const SlitGeometry& geom, const ScreenGrid& grid) {
  geom.validate();
  grid.validate();
  const auto n = static_cast<std::size_t>(grid.n);
  RawPatterns raw{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                  std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(static_cast<Index>(i));
    raw.p0[i] = conditional_density(theta, 0, geom, x);
    raw.p1[i] = conditional_density(theta, 1, geom, x);
    raw.total_average[i] = 0.5 * (raw.p0[i] + raw.p1[i]);
    raw.total_direct[i] = incoherent_density(geom, x);
  }
  return raw;
}

Pattern conditional_pattern(ErasureAngle theta, int k, const SlitGeometry& geom,
                            const ScreenGrid& grid) {
  require_outcome(k);
  geom.validate();
  grid.validate();
  std::vector<double> v(static_cast<std::size_t>(grid.n));
  for (Index i = 0; i < grid.n; ++i) {
    v[static_cast<std::size_t>(i)] = conditional_density(theta, k, geom, grid.x(i));
  }
  return normalized(grid, std::move(v), PatternKind::Conditional, k);
}

Pattern total_pattern(ErasureAngle theta, const SlitGeometry& geom, const ScreenGrid& grid) {
  RawPatterns raw = evaluate_raw(theta, geom, grid);
  return normalized(grid, std::move(raw.total_average), PatternKind::Total, -1);
}

std::vector<Extremum> find_extrema(const Pattern& p, double half_width) {
  std::vector<Extremum> out;
  const auto& v = p.values;
  const double h = p.grid.spacing();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double x = p.grid.x(static_cast<Index>(i));
    if (!(std::abs(x) < half_width)) continue;
    const bool is_max = v[i] > v[i - 1] && v[i] >= v[i + 1];
    const bool is_min = v[i] < v[i - 1] && v[i] <= v[i + 1];
    if (!is_max && !is_min) continue;
    const double curvature = v[i - 1] - 2.0 * v[i] + v[i + 1];
    Extremum e{x, v[i], is_max};
    if (curvature != 0.0) {
      e.x = x + 0.5 * h * (v[i - 1] - v[i + 1]) / curvature;
      e.value = v[i] - (v[i - 1] - v[i + 1]) * (v[i - 1] - v[i + 1]) / (8.0 * curvature);
      if (!is_max) e.value = std::max(e.value, 0.0);
    }
    out.push_back(e);
  }
  return out;
}

double estimate_visibility(const Pattern& p, double half_width) {
  const auto ext = find_extrema(p, half_width);
  double best_distance = std::numeric_limits<double>::infinity();
  double visibility = 0.0;
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
    if (ext[i].is_max == ext[i + 1].is_max) continue;
    const double mid = std::abs(0.5 * (ext[i].x + ext[i + 1].x));
    if (mid < best_distance) {
      best_distance = mid;
      const double hi = ext[i].is_max ? ext[i].value : ext[i + 1].value;
      const double lo = ext[i].is_max ? ext[i + 1].value : ext[i].value;
      visibility = hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
    }
  }
  return std::clamp(visibility, 0.0, 1.0);
}

double estimate_visibility(const Pattern& p, const SlitGeometry& geom) {
  return estimate_visibility(p, geom.fringe_window());
}

double measure_fringe_spacing(const Pattern& p, double half_width) {
  std::vector<double> minima;
  for (const auto& e : find_extrema(p, half_width)) {
    if (!e.is_max) minima.push_back(e.x);
  }
  if (minima.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return (minima.back() - minima.front()) / static_cast<double>(minima.size() - 1);
}

double measure_fringe_spacing(const Pattern& p, const SlitGeometry& geom) {
  return measure_fringe_spacing(p, geom.fringe_window());
}

std::vector<double> ScreenRecord::screen_marginal() const {
  std::vector<double> m(joint0.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = joint0[i] + joint1[i];
  return m;
}

ScreenRecord screen_record(ErasureAngle theta, const SlitGeometry& geom, const ScreenGrid& grid) {
  RawPatterns raw = evaluate_raw(theta, geom, grid);
  double z = 0.0;
  for (std::size_t i = 0; i < raw.p0.size(); ++i) z += 0.5 * (raw.p0[i] + raw.p1[i]);
  if (!(z > 0.0)) throw std::domain_error("screen record has zero weight");
  ScreenRecord rec{grid, std::move(raw.p0), std::move(raw.p1)};
  for (double& v : rec.joint0) v *= 0.5 / z;
  for (double& v : rec.joint1) v *= 0.5 / z;
  return rec;
}

DensityOperator<double> screen_measurement_state(ErasureAngle theta, const SlitGeometry& geom,
                                                 const ScreenGrid& grid) {
  if (grid.n > kMaxDenseScreenPoints) {
    throw std::invalid_argument("screen_measurement_state: grid of " + std::to_string(grid.n) +
                                " points exceeds the dense limit of " +
                                std::to_string(kMaxDenseScreenPoints));
  }
  const ScreenRecord rec = screen_record(theta, geom, grid);
  const Index n = grid.n;
  CMatrixXd m = CMatrixXd::Zero(2 * n, 2 * n);
  for (Index i = 0; i < n; ++i) {
    m(2 * i, 2 * i) = rec.joint0[static_cast<std::size_t>(i)];
    m(2 * i + 1, 2 * i + 1) = rec.joint1[static_cast<std::size_t>(i)];
  }
  CompositeSpace space{{"D_X", n}, {eraser::kDetectorB, 2}};
  return DensityOperator<double>(std::move(space), std::move(m));
}

std::string pattern_csv(const Pattern& p0, const Pattern& p1, const Pattern& total) {
  if (p0.values.size() != p1.values.size() || p0.values.size() != total.values.size()) {
    throw std::invalid_argument("pattern_csv: patterns have different lengths");
  }
  std::ostringstream os;
  os << "x_meters,p0,p1,p_total\n";
  for (std::size_t i = 0; i < p0.values.size(); ++i) {
    os << num(p0.grid.x(static_cast<Index>(i))) << ',' << num(p0.values[i]) << ','
       << num(p1.values[i]) << ',' << num(total.values[i]) << '\n';
  }
  return os.str();
}

}  // namespace qeraser::interference
