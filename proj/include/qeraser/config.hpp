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

#include "qeraser/interference.hpp"

#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qeraser {

struct ThetaSweep {
  double start = 0.0;
  double stop = std::numbers::pi / 4;
  int count = 64;
};

struct CheckToggles {
  bool venn = true;
  bool chain_rule = true;
  bool patterns = false;
  bool oracle = true;
};

struct ExperimentConfig {
  std::optional<double> theta;  // single angle; overrides the sweep when set
  ThetaSweep sweep;
  interference::SlitGeometry geometry;
  interference::ScreenGrid grid;
  std::filesystem::path out_dir = ".";
  CheckToggles checks;

  std::vector<double> thetas() const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message);

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// Keys accepted by parse_config, in documentation order.
const std::vector<std::string>& config_keys();

/// `count` evenly spaced values with both endpoints exact.
std::vector<double> linspace(double start, double stop, int count);

/// A number, or a multiple/fraction of pi: "0.3", "pi/8", "3*pi/16", "3pi/16".
double parse_angle(std::string_view text);

/// Parses flat `key = value` lines ('#' starts a comment) on top of `base`.
/// Keys set in the document replace those in `base`; a document may set
/// either `theta` or the theta_start/theta_stop/theta_count sweep, not both.
ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base = {});

/// Checks ranges and relationships not tied to a single line.
void validate(const ExperimentConfig& cfg);

}  // namespace qeraser
