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

#include "qeraser/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace qeraser {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool parse_bool(std::string_view s, bool& out) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    out = false;
    return true;
  }
  return false;
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : "'" + key + "': ") + message),
      key_(std::move(key)),
      line_(line) {}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "theta",    "theta_start", "theta_stop", "theta_count", "a",
      "d",        "L",           "lambda",     "far_field",   "x_min",
      "x_max",    "n_points",    "out_dir",    "checks.venn", "checks.chain_rule",
      "checks.patterns", "checks.oracle"};
  return keys;
}

std::vector<double> ExperimentConfig::thetas() const {
  if (theta) return {*theta};
  return linspace(sweep.start, sweep.stop, sweep.count);
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw std::invalid_argument("linspace: count must be positive");
  if (count == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i * step;
  out.back() = stop;
  return out;
}

double parse_angle(std::string_view text) {
  const std::string s = trim(text);
  if (auto v = parse_number(s)) return *v;

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) throw std::invalid_argument("not an angle: '" + s + "'");
  double factor = 1.0;
  std::string head = trim(std::string_view(s).substr(0, pi_pos));
  if (!head.empty() && head.back() == '*') head = trim(std::string_view(head).substr(0, head.size() - 1));
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty()) {
    const auto f = parse_number(head);
    if (!f) throw std::invalid_argument("not an angle: '" + s + "'");
    factor = *f;
  }
  const std::string tail = trim(std::string_view(s).substr(pi_pos + 2));
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw std::invalid_argument("not an angle: '" + s + "'");
    const auto d = parse_number(trim(std::string_view(tail).substr(1)));
    if (!d || *d == 0.0) throw std::invalid_argument("not an angle: '" + s + "'");
    divisor = *d;
  }
  return factor * std::numbers::pi / divisor;
}

ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int theta_line = 0;
  int sweep_line = 0;
  std::string sweep_key;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", line_no, "missing key");
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key, line_no, "unknown key");
    }
    if (value.empty()) throw ConfigError(key, line_no, "missing value");

    const auto angle = [&]() {
      double v = 0.0;
      try {
        v = parse_angle(value);
      } catch (const std::invalid_argument&) {
        throw ConfigError(key, line_no, "expected an angle in radians, got '" + value + "'");
      }
      if (!(v >= 0.0 && v <= std::numbers::pi / 4)) {
        throw ConfigError(key, line_no, "angle " + describe(v) + " outside [0, pi/4]");
      }
      return v;
    };
    const auto positive = [&]() {
      const auto v = parse_number(value);
      if (!v) throw ConfigError(key, line_no, "expected a number, got '" + value + "'");
      if (!(*v > 0.0)) throw ConfigError(key, line_no, "must be positive, got " + value);
      return *v;
    };
    const auto number = [&]() {
      const auto v = parse_number(value);
      if (!v) throw ConfigError(key, line_no, "expected a number, got '" + value + "'");
      return *v;
    };
    const auto integer = [&](int min) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(key, line_no, "expected an integer, got '" + value + "'");
      }
      if (v < min) throw ConfigError(key, line_no, "must be at least " + std::to_string(min));
      return v;
    };
    const auto boolean = [&]() {
      bool b = false;
      if (!parse_bool(value, b)) throw ConfigError(key, line_no, "expected true/false, got '" + value + "'");
      return b;
    };

    if (key == "theta") {
      cfg.theta = angle();
      theta_line = line_no;
    } else if (key == "theta_start" || key == "theta_stop" || key == "theta_count") {
      if (key == "theta_start") cfg.sweep.start = angle();
      if (key == "theta_stop") cfg.sweep.stop = angle();
      if (key == "theta_count") cfg.sweep.count = integer(1);
      cfg.theta.reset();
      sweep_line = line_no;
      sweep_key = key;
    } else if (key == "a") {
      cfg.geometry.slit_width = positive();
    } else if (key == "d") {
      cfg.geometry.separation = positive();
    } else if (key == "L") {
      cfg.geometry.distance = positive();
    } else if (key == "lambda") {
      cfg.geometry.wavelength = positive();
    } else if (key == "far_field") {
      cfg.geometry.far_field = boolean();
    } else if (key == "x_min") {
      cfg.grid.x_min = number();
    } else if (key == "x_max") {
      cfg.grid.x_max = number();
    } else if (key == "n_points") {
      cfg.grid.n = integer(2);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "checks.venn") {
      cfg.checks.venn = boolean();
    } else if (key == "checks.chain_rule") {
      cfg.checks.chain_rule = boolean();
    } else if (key == "checks.patterns") {
      cfg.checks.patterns = boolean();
    } else if (key == "checks.oracle") {
      cfg.checks.oracle = boolean();
    }
  }

  if (theta_line > 0 && sweep_line > 0) {
    throw ConfigError(sweep_key, sweep_line,
                      "conflicts with 'theta' on line " + std::to_string(theta_line));
  }
  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (!cfg.theta && cfg.sweep.start > cfg.sweep.stop) {
    throw ConfigError("theta_start", 0, "must not exceed theta_stop");
  }
  try {
    cfg.geometry.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", 0, e.what());
  }
  if (!(cfg.grid.x_min < cfg.grid.x_max)) throw ConfigError("x_min", 0, "must be below x_max");
  if (cfg.out_dir.empty()) throw ConfigError("out_dir", 0, "must not be empty");
}

}  // namespace qeraser
