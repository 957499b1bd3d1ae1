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

#include "qeraser/config.hpp"
#include "qeraser/eraser.hpp"
#include "qeraser/entropy.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qeraser {

/// Deviations above kFailThreshold fail a check; those above kWarnThreshold
/// are reported as warnings.
inline constexpr double kWarnThreshold = 1e-9;
inline constexpr double kFailThreshold = 1e-6;

/// Entropic quantities at one angle, computed from the joint density matrices.
struct ThetaAnalysis {
  eraser::ScalarPanel analytic;
  eraser::ScalarPanel numeric;
  VennDiagram3<double> venn_preparation;    // (Q, P, D_B) after the idler measurement
  VennDiagram3<double> venn_determination;  // (Q, D_A, D_B) after both measurements
  double s_q_da = 0;        // S(Q:D_A)
  double s_q_dadb = 0;      // S(Q:D_A D_B)
  double s_da_db = 0;       // S(D_A:D_B)
  double s_da_db_given_q = 0;  // S(D_A:D_B|Q)
  double s_joint_qdadb = 0;    // S(Q D_A D_B)
  double s_q_given_da = 0;     // S(Q|D_A)
  double s_q_given_db = 0;     // S(Q|D_B)
  double s_q_given_dadb = 0;   // S(Q|D_A D_B)
  double s_q = 0;              // S(Q)
};

ThetaAnalysis analyze_theta(eraser::ErasureAngle theta);

struct CheckResult {
  std::string name;
  double max_deviation = 0;
  double tolerance = 0;
  bool passed = true;
  bool warning = false;
  std::string detail;
};

struct OracleDeviation {
  std::string quantity;
  double theta = 0;
  double numeric = 0;
  double analytic = 0;
  double deviation() const;
};

struct OracleSummary {
  std::vector<OracleDeviation> comparisons;
  OracleDeviation worst;
  double max_deviation = 0;
  int warnings = 0;
  bool passed = true;
  std::vector<OracleDeviation> failures;
};

/// Every analytic scalar compared against its joint-density-matrix value.
OracleSummary run_oracle(const ExperimentConfig& cfg);
CheckResult to_check(const OracleSummary& summary);

struct RunReport {
  std::vector<double> thetas;
  std::vector<eraser::ScalarPanel> panels;
  std::vector<VennDiagram3<double>> venn_preparation;
  std::vector<VennDiagram3<double>> venn_determination;
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> written;

  bool all_passed() const;
};

/// Computes panels, diagrams and enabled checks without touching the disk.
RunReport analyze(const ExperimentConfig& cfg);

/// analyze() followed by writing tradeoff.csv, Venn files, pattern files
/// (when checks.patterns is on) and verify.txt into cfg.out_dir.
RunReport run_sweep(const ExperimentConfig& cfg);

std::string tradeoff_csv(const RunReport& report);
std::string format_checks(const std::vector<CheckResult>& checks);
std::string format_oracle(const OracleSummary& summary);

/// "%.6f" rendering used in output file names.
std::string theta_tag(double theta);
std::string venn_file_name(const VennDiagram3<double>& venn, double theta);
std::string pattern_file_name(double theta);

/// Writes `content` to `path`, creating parent directories; throws
/// std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace qeraser
