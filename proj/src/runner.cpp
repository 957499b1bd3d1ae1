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

#include "qeraser/runner.hpp"

#include "qeraser/interference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

namespace qeraser {

namespace {

using eraser::ErasureAngle;
using eraser::kDetectorA;
using eraser::kDetectorB;
using eraser::kQuanton;
using eraser::kSignalPolarization;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// Evaluates `fn` for every angle concurrently; results keep input order.
template <typename Fn>
auto map_thetas(const std::vector<double>& thetas, Fn fn) {
  using Result = decltype(fn(thetas.front()));
  std::vector<std::future<Result>> futures;
  futures.reserve(thetas.size());
  for (double t : thetas) futures.push_back(std::async(std::launch::async, fn, t));
  std::vector<Result> out;
  out.reserve(thetas.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

struct Tracker {
  CheckResult result;

  Tracker(std::string name, double tolerance) {
    result.name = std::move(name);
    result.tolerance = tolerance;
  }

  void observe(double deviation, double theta, const std::string& what) {
    const double d = std::isnan(deviation) ? std::numeric_limits<double>::infinity() : deviation;
    if (d > result.max_deviation || (d == result.max_deviation && result.detail.empty())) {
      result.max_deviation = d;
      result.detail = what + " at theta=" + num(theta);
    }
  }

  CheckResult finish() {
    result.passed = result.max_deviation <= result.tolerance;
    // The warn band only applies to the entropy identities; geometric checks
    // (visibility) have their own scale.
    result.warning = result.passed && result.tolerance == kFailThreshold &&
                     result.max_deviation > kWarnThreshold;
    return result;
  }
};

void add_comparison(OracleSummary& s, std::string quantity, double theta, double numeric,
                    double analytic) {
  s.comparisons.push_back({std::move(quantity), theta, numeric, analytic});
}

}  // namespace

ThetaAnalysis analyze_theta(ErasureAngle theta) {
  ThetaAnalysis a;
  a.analytic = eraser::scalar_panel(theta);
  a.numeric = eraser::numeric_panel(theta);

  const eraser::EraserState b_measured = eraser::prepare(eraser::Stage::BMeasured, theta);
  const auto rho_qpdb = partial_trace(b_measured.state(), {kQuanton, kSignalPolarization, kDetectorB});
  a.venn_preparation = venn3(rho_qpdb, {kQuanton}, {kSignalPolarization}, {kDetectorB});

  const eraser::EraserState a_measured = eraser::measure_A(b_measured);
  const auto rho = partial_trace(a_measured.state(), {kQuanton, kDetectorA, kDetectorB});
  const LabelSet q{kQuanton}, da{kDetectorA}, db{kDetectorB}, dadb{kDetectorA, kDetectorB};
  a.venn_determination = venn3(rho, q, da, db);
  a.s_q_da = mutual_entropy(rho, q, da);
  a.s_q_dadb = mutual_entropy(rho, q, dadb);
  a.s_da_db = mutual_entropy(rho, da, db);
  a.s_da_db_given_q = conditional_mutual(rho, da, db, q);
  a.s_joint_qdadb = von_neumann_entropy(rho);
  a.s_q_given_da = conditional_entropy(rho, q, da);
  a.s_q_given_db = conditional_entropy(rho, q, db);
  a.s_q_given_dadb = conditional_entropy(rho, q, dadb);
  a.s_q = joint_entropy(rho, q);
  return a;
}

double OracleDeviation::deviation() const {
  const double d = std::abs(numeric - analytic);
  return std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
}

namespace {

OracleSummary compare_with_analytic(const std::vector<double>& thetas,
                                    const std::vector<ThetaAnalysis>& analyses) {
  OracleSummary s;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double t = thetas[i];
    const auto& a = analyses[i];
    const double S = a.analytic.S;
    add_comparison(s, "S(Q:D_B)", t, a.numeric.coherence, 1.0 - S);
    add_comparison(s, "S(Q:D_A|D_B)", t, a.numeric.path_info, S);
    add_comparison(s, "S(Q:D_A,D_B)", t, a.s_q_dadb, 1.0);
    add_comparison(s, "S(Q:D_B)+S(Q:D_A|D_B)", t, a.numeric.coherence + a.numeric.path_info, 1.0);
    add_comparison(s, "S(D_A:D_B)", t, a.s_da_db, 0.0);
    add_comparison(s, "S(D_A:D_B|Q)", t, a.s_da_db_given_q, S);
    add_comparison(s, "S(Q:D_A)", t, a.s_q_da, 0.0);
    add_comparison(s, "S(Q,D_A,D_B)", t, a.s_joint_qdadb, 2.0);
    add_comparison(s, "S(Q|D_B)", t, a.s_q_given_db, S);
    add_comparison(s, "S(rho^0_Q)", t, a.numeric.S, S);
    add_comparison(s, "lambda_plus", t, a.numeric.lambda_plus, a.analytic.lambda_plus);
    add_comparison(s, "lambda_minus", t, a.numeric.lambda_minus, a.analytic.lambda_minus);
    add_comparison(s, "D", t, a.numeric.D, a.analytic.D);
    add_comparison(s, "V", t, a.numeric.V, a.analytic.V);

    const char* region_names[] = {"c_a", "c_b", "c_c", "m_ab", "m_ac", "m_bc", "center"};
    const auto prep_num = a.venn_preparation.entries();
    const auto prep_ref = eraser::expected_venn_preparation(S).entries();
    const auto det_num = a.venn_determination.entries();
    const auto det_ref = eraser::expected_venn_determination(S).entries();
    for (std::size_t r = 0; r < 7; ++r) {
      add_comparison(s, std::string("venn(Q,P,D_B).") + region_names[r], t, prep_num[r], prep_ref[r]);
      add_comparison(s, std::string("venn(Q,D_A,D_B).") + region_names[r], t, det_num[r], det_ref[r]);
    }
  }

  for (const auto& c : s.comparisons) {
    const double d = c.deviation();
    if (s.worst.quantity.empty() || d > s.max_deviation) {
      s.max_deviation = d;
      s.worst = c;
    }
    if (d > kFailThreshold) {
      s.failures.push_back(c);
    } else if (d > kWarnThreshold) {
      ++s.warnings;
    }
  }
  s.passed = s.failures.empty();
  return s;
}

}  // namespace

OracleSummary run_oracle(const ExperimentConfig& cfg) {
  const auto thetas = cfg.thetas();
  return compare_with_analytic(
      thetas, map_thetas(thetas, [](double t) { return analyze_theta(ErasureAngle(t)); }));
}

CheckResult to_check(const OracleSummary& summary) {
  CheckResult c;
  c.name = "oracle";
  c.tolerance = kFailThreshold;
  c.max_deviation = summary.max_deviation;
  c.passed = summary.passed;
  c.warning = summary.passed && summary.warnings > 0;
  c.detail = summary.worst.quantity + " at theta=" + num(summary.worst.theta);
  if (!summary.failures.empty()) {
    c.detail = std::to_string(summary.failures.size()) + " failing, first " +
               summary.failures.front().quantity + " at theta=" +
               num(summary.failures.front().theta);
  }
  return c;
}

bool RunReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RunReport analyze(const ExperimentConfig& cfg) {
  validate(cfg);
  RunReport report;
  report.thetas = cfg.thetas();
  const auto analyses =
      map_thetas(report.thetas, [](double t) { return analyze_theta(ErasureAngle(t)); });

  for (const auto& a : analyses) {
    report.panels.push_back(a.analytic);
    report.venn_preparation.push_back(a.venn_preparation);
    report.venn_determination.push_back(a.venn_determination);
  }

  Tracker duality("duality D^2+V^2=1", 1e-12);
  Tracker bounds("bounds (mutual sum in [0,1], conditional sum in [1,2])", 0.0);
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    const auto& p = analyses[i].analytic;
    duality.observe(std::abs(p.D * p.D + p.V * p.V - 1.0), p.theta, "analytic D,V");
    const double mutual_sum = analyses[i].s_q_da + analyses[i].numeric.coherence;
    const double cond_sum = analyses[i].s_q_given_da + analyses[i].s_q_given_db;
    // Violation amounts; negative slack means the bound holds.
    bounds.observe(std::max({0.0, -mutual_sum - kWarnThreshold, mutual_sum - 1.0 - kWarnThreshold}),
                   p.theta, "S(Q:D_A)+S(Q:D_B)");
    bounds.observe(std::max({0.0, 1.0 - cond_sum - kWarnThreshold, cond_sum - 2.0 - kWarnThreshold}),
                   p.theta, "S(Q|D_A)+S(Q|D_B)");
  }
  report.checks.push_back(duality.finish());
  CheckResult bounds_result = bounds.finish();
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& a : analyses) {
    const double mutual_sum = a.s_q_da + a.numeric.coherence;
    const double cond_sum = a.s_q_given_da + a.s_q_given_db;
    min_slack = std::min({min_slack, mutual_sum, 1.0 - mutual_sum, cond_sum - 1.0, 2.0 - cond_sum});
  }
  bounds_result.detail = "min slack " + sci(min_slack) +
                         (bounds_result.passed ? std::string() : "; worst " + bounds_result.detail);
  report.checks.push_back(bounds_result);

  if (cfg.checks.chain_rule) {
    Tracker chain("chain rule S(Q:D_B)+S(Q:D_A|D_B)=S(Q:D_A,D_B)=1", kFailThreshold);
    for (const auto& a : analyses) {
      const double t = a.analytic.theta;
      chain.observe(std::abs(a.numeric.coherence + a.numeric.path_info - 1.0), t, "sum - 1");
      chain.observe(std::abs(a.numeric.coherence + a.numeric.path_info - a.s_q_dadb), t,
                    "sum - S(Q:D_A,D_B)");
      chain.observe(std::abs(a.numeric.path_info - (a.s_q_given_db - a.s_q_given_dadb)), t,
                    "S(Q:D_A|D_B) - [S(Q|D_B) - S(Q|D_A,D_B)]");
      chain.observe(std::abs(a.numeric.coherence + a.s_q_given_db - 1.0), t,
                    "S(Q:D_B) + S(Q|D_B) - 1");
    }
    report.checks.push_back(chain.finish());
  }

  if (cfg.checks.venn) {
    Tracker venn("venn diagrams recompose marginals", kFailThreshold);
    for (const auto& a : analyses) {
      const double t = a.analytic.theta;
      const double S = a.analytic.S;
      const auto& vp = a.venn_preparation;
      const auto& vd = a.venn_determination;
      for (double circle : {vp.circle_a(), vp.circle_b(), vp.circle_c(), vd.circle_a(),
                            vd.circle_b(), vd.circle_c()}) {
        venn.observe(std::abs(circle - 1.0), t, "circle sum - 1");
      }
      venn.observe(std::abs(vp.total() - 1.0), t, "total(Q,P,D_B) - S(Q,P,D_B)");
      venn.observe(std::abs(vd.total() - a.s_joint_qdadb), t, "total(Q,D_A,D_B) - S(Q,D_A,D_B)");
      venn.observe(std::abs(vp.center - (1.0 - 2.0 * S)), t, "S(Q:P:D_B) - (1 - 2S)");
      venn.observe(std::abs(vd.center + S), t, "S(Q:D_A:D_B) + S");
    }
    report.checks.push_back(venn.finish());
  }

  if (cfg.checks.patterns) {
    using namespace interference;
    Tracker visibility("fringe visibility tracks sin(2 theta)", 0.02);
    Tracker sum_rule("p0 + p1 = 2 p (peak-normalized)", 1e-12);
    Tracker invariance("total pattern independent of theta (peak-normalized)", 1e-12);
    const RawPatterns reference = evaluate_raw(ErasureAngle(0.0), cfg.geometry, cfg.grid);
    const double peak = *std::max_element(reference.total_direct.begin(), reference.total_direct.end());
    for (double t : report.thetas) {
      const ErasureAngle theta(t);
      const RawPatterns raw = evaluate_raw(theta, cfg.geometry, cfg.grid);
      for (std::size_t i = 0; i < raw.p0.size(); ++i) {
        sum_rule.observe(std::abs(raw.p0[i] + raw.p1[i] - 2.0 * raw.total_direct[i]) / peak, t,
                         "pointwise");
        invariance.observe(std::abs(raw.total_average[i] - reference.total_direct[i]) / peak, t,
                           "pointwise");
      }
      for (int k = 0; k < 2; ++k) {
        const double v = estimate_visibility(conditional_pattern(theta, k, cfg.geometry, cfg.grid),
                                             cfg.geometry);
        visibility.observe(std::abs(v - theta.coherence_amplitude()), t,
                           "visibility of p" + std::to_string(k));
      }
    }
    report.checks.push_back(visibility.finish());
    report.checks.push_back(sum_rule.finish());
    report.checks.push_back(invariance.finish());
  }

  if (cfg.checks.oracle) report.checks.push_back(to_check(compare_with_analytic(report.thetas, analyses)));
  return report;
}

std::string theta_tag(double theta) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", theta);
  return buf;
}

std::string venn_file_name(const VennDiagram3<double>& venn, double theta) {
  std::string triple = venn.labels[0] + "-" + venn.labels[1] + "-" + venn.labels[2];
  std::replace(triple.begin(), triple.end(), ',', '+');
  return "venn_" + triple + "_" + theta_tag(theta) + ".txt";
}

std::string pattern_file_name(double theta) { return "pattern_theta=" + theta_tag(theta) + ".csv"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string tradeoff_csv(const RunReport& report) {
  std::string out = eraser::scalar_panel_csv_header() + "\n";
  for (const auto& p : report.panels) out += eraser::to_csv_row(p) + "\n";
  return out;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? (c.warning ? "WARN" : "PASS") : "FAIL") << "  " << c.name
       << "  max_dev=" << sci(c.max_deviation) << "  tol=" << sci(c.tolerance);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  os << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

std::string format_oracle(const OracleSummary& s) {
  std::ostringstream os;
  os << "oracle comparisons: " << s.comparisons.size() << "\n"
     << "max deviation: " << sci(s.max_deviation) << " (" << s.worst.quantity
     << " at theta=" << num(s.worst.theta) << ")\n"
     << "warnings (> " << sci(kWarnThreshold) << "): " << s.warnings << "\n";
  for (const auto& f : s.failures) {
    os << "FAIL " << f.quantity << " at theta=" << num(f.theta) << ": numeric=" << num(f.numeric)
       << " analytic=" << num(f.analytic) << "\n";
  }
  os << (s.passed ? "oracle PASSED" : "oracle FAILED") << "\n";
  return os.str();
}

RunReport run_sweep(const ExperimentConfig& cfg) {
  RunReport report = analyze(cfg);
  const auto& dir = cfg.out_dir;

  const auto emit = [&](const std::filesystem::path& p, const std::string& content) {
    write_file(p, content);
    report.written.push_back(p);
  };

  emit(dir / "tradeoff.csv", tradeoff_csv(report));
  if (cfg.checks.venn) {
    for (std::size_t i = 0; i < report.thetas.size(); ++i) {
      const double t = report.thetas[i];
      emit(dir / venn_file_name(report.venn_preparation[i], t), to_text(report.venn_preparation[i]));
      emit(dir / venn_file_name(report.venn_determination[i], t),
           to_text(report.venn_determination[i]));
    }
  }
  if (cfg.checks.patterns) {
    using namespace interference;
    for (double t : report.thetas) {
      const ErasureAngle theta(t);
      emit(dir / pattern_file_name(t),
           pattern_csv(conditional_pattern(theta, 0, cfg.geometry, cfg.grid),
                       conditional_pattern(theta, 1, cfg.geometry, cfg.grid),
                       total_pattern(theta, cfg.geometry, cfg.grid)));
    }
  }
  emit(dir / "verify.txt", format_checks(report.checks));
  return report;
}

}  // namespace qeraser
