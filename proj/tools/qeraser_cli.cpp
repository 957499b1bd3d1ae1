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

// qeraser: command-line front end.
//
//   qeraser panel   --theta pi/8
//   qeraser sweep   --theta_count 64 --out_dir out
//   qeraser pattern --theta pi/16 --out_dir out
//   qeraser venn    --theta 0.3
//   qeraser verify  --config eraser.cfg
//
// Every config key is also a flag of the same name; flags override the file.

#include "qeraser/config.hpp"
#include "qeraser/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace qeraser;

struct Options {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config_path, "flat key = value configuration file")
      ->check(CLI::ExistingFile);
  for (const auto& key : config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
        "config key '" + key + "'");
  }
}

ExperimentConfig load(const Options& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::runtime_error("cannot read config '" + opts.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = parse_config(buf.str(), cfg);
  }
  if (!opts.overrides.empty()) {
    // A single flag document may not mix theta with the sweep keys, same as a file.
    std::string doc;
    for (const auto& [k, v] : opts.overrides) doc += k + " = " + v + "\n";
    cfg = parse_config(doc, cfg);
  }
  return cfg;
}

int cmd_panel(const ExperimentConfig& cfg) {
  std::cout << eraser::scalar_panel_csv_header() << "\n";
  for (double t : cfg.thetas()) {
    std::cout << eraser::to_csv_row(eraser::scalar_panel(eraser::ErasureAngle(t))) << "\n";
  }
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const RunReport report = run_sweep(cfg);
  std::cout << format_checks(report.checks);
  std::cout << "wrote " << report.written.size() << " files to " << cfg.out_dir.string() << "\n";
  return report.all_passed() ? 0 : 1;
}

int cmd_pattern(const ExperimentConfig& cfg) {
  using namespace interference;
  for (double t : cfg.thetas()) {
    const eraser::ErasureAngle theta(t);
    const Pattern p0 = conditional_pattern(theta, 0, cfg.geometry, cfg.grid);
    const Pattern p1 = conditional_pattern(theta, 1, cfg.geometry, cfg.grid);
    const auto path = cfg.out_dir / pattern_file_name(t);
    write_file(path, pattern_csv(p0, p1, total_pattern(theta, cfg.geometry, cfg.grid)));
    std::printf("%s  V(p0)=%.4f  V(p1)=%.4f  sin(2theta)=%.4f\n", path.string().c_str(),
                estimate_visibility(p0, cfg.geometry), estimate_visibility(p1, cfg.geometry),
                theta.coherence_amplitude());
  }
  return 0;
}

int cmd_venn(const ExperimentConfig& cfg) {
  for (double t : cfg.thetas()) {
    const ThetaAnalysis a = analyze_theta(eraser::ErasureAngle(t));
    for (const auto* v : {&a.venn_preparation, &a.venn_determination}) {
      const std::string text = to_text(*v);
      write_file(cfg.out_dir / venn_file_name(*v, t), text);
      std::cout << "# theta = " << theta_tag(t) << "\n" << text << "\n";
    }
  }
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg) {
  ExperimentConfig checked = cfg;
  checked.checks.oracle = false;  // reported in full below
  RunReport report = analyze(checked);
  const OracleSummary oracle = run_oracle(cfg);
  report.checks.push_back(to_check(oracle));
  const std::string text = format_checks(report.checks) + "\n" + format_oracle(oracle);
  write_file(cfg.out_dir / "verify.txt", text);
  std::cout << text;
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-state quantum eraser: entropies, complementarity and fringe patterns"};
  app.require_subcommand(1);

  Options opts;
  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const ExperimentConfig&);
  };
  const Sub subs[] = {
      {"panel", "print the scalar panel (CSV) for each angle", cmd_panel},
      {"sweep", "run a theta sweep and write CSV / Venn / pattern files", cmd_sweep},
      {"pattern", "write conditional and total screen patterns", cmd_pattern},
      {"venn", "print and write the entropy Venn diagrams", cmd_venn},
      {"verify", "recompute every analytic value numerically and report", cmd_verify},
  };
  std::map<std::string, CLI::App*> commands;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, opts);
    commands[s.name] = cmd;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = load(opts);
    for (const auto& s : subs) {
      if (commands[s.name]->parsed()) return s.run(cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
