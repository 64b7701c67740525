// Copyright 2026 The OxPure Authors
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

// Argument parsing for the oxpure tool.  All command logic lives in
// oxpure/cli.hpp; this file only maps flags onto a CliConfig and exit
// codes onto the process.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oxpure/cli.hpp"

namespace {

void add_state_flags(CLI::App* sub, oxpure::cli::CliConfig& cfg) {
  sub->add_option_function<double>(
      "--werner", [&cfg](double v) { cfg.werner_fidelity = v; },
      "Initial Werner state with the given fidelity");
  sub->add_option_function<std::string>(
      "--weights", [&cfg](const std::string& v) { cfg.weights_csv = v; },
      "Initial Bell weights A,B,C,D (phi+, psi-, psi+, phi-)");
  sub->add_option_function<std::string>(
      "--correlations", [&cfg](const std::string& v) { cfg.correlations_csv = v; },
      "Initial correlations cx,cy,cz");
}

void add_output_flags(CLI::App* sub, oxpure::cli::CliConfig& cfg,
                      const std::string& formats) {
  sub->add_option("--out", cfg.out, "Write the payload to this file");
  sub->add_option("--format", cfg.format, "Output format: " + formats);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator and verifier for recurrence-based Bell-pair purification "
      "protocols"};
  app.set_version_flag("--version", "oxpure 0.1.0");
  app.require_subcommand(1);

  oxpure::cli::CliConfig cfg;
  std::string accounting = "paper";
  std::string variant = "controls";
  int fig1_rounds = 20;

  CLI::App* verify = app.add_subcommand(
      "verify",
      "Check the closed-form maps against the density-matrix oracle and "
      "produce the discrepancy report");
  verify->add_option("--samples", cfg.samples, "Random states per protocol");
  verify->add_option("--hetero-samples", cfg.hetero_samples,
                     "Random heterogeneous input triples");
  verify->add_option("--seed", cfg.seed, "Random generator seed");
  verify->add_option("--tol", cfg.tolerance, "Agreement tolerance");
  verify->add_option("--out", cfg.out, "Write the report to this file");

  CLI::App* run = app.add_subcommand("run", "Run one protocol to a fidelity target");
  run->add_option_function<std::string>(
         "--protocol", [&cfg](const std::string& v) { cfg.protocol = v; },
         "Protocol: ox1, ox2, or ox3")
      ->required();
  add_state_flags(run, cfg);
  run->add_option("--target", cfg.target, "Fidelity target");
  run->add_option("--max-rounds", cfg.max_rounds, "Round limit");
  run->add_option("--accounting", accounting,
                  "Pair accounting for the summary: paper, tree, or expected");
  run->add_option("--ox3-variant", variant,
                  "Measured pairs of the three-pair round: controls or targets");
  run->add_flag("--strict", cfg.strict, "Exit 3 when the run does not converge");
  add_output_flags(run, cfg, "csv or json");

  CLI::App* cmp = app.add_subcommand("compare", "Run all three protocols side by side");
  add_state_flags(cmp, cfg);
  cmp->add_option("--target", cfg.target, "Fidelity target");
  cmp->add_option("--max-rounds", cfg.max_rounds, "Round limit");
  cmp->add_option("--accounting", accounting,
                  "Pair accounting for the summary: paper, tree, or expected");
  cmp->add_flag("--strict", cfg.strict, "Exit 3 unless every protocol converges");
  add_output_flags(cmp, cfg, "csv or json");

  CLI::App* sweep = app.add_subcommand("sweep", "Run all protocols over a state grid");
  sweep->add_option_function<std::string>(
      "--werner-range", [&cfg](const std::string& v) { cfg.werner_range = v; },
      "Werner fidelity range a:b:step");
  sweep->add_option_function<std::string>(
      "--cx-range", [&cfg](const std::string& v) { cfg.cx_range = v; },
      "cx range a:b:step (needs the cy and cz ranges too)");
  sweep->add_option_function<std::string>(
      "--cy-range", [&cfg](const std::string& v) { cfg.cy_range = v; },
      "cy range a:b:step");
  sweep->add_option_function<std::string>(
      "--cz-range", [&cfg](const std::string& v) { cfg.cz_range = v; },
      "cz range a:b:step");
  sweep->add_option("--target", cfg.target, "Fidelity target");
  sweep->add_option("--max-rounds", cfg.max_rounds, "Round limit");
  add_output_flags(sweep, cfg, "csv or json");

  CLI::App* table2 = app.add_subcommand(
      "table2", "Computed benchmark results next to the published summary");
  add_state_flags(table2, cfg);
  table2->add_option("--target", cfg.target, "Fidelity target");
  table2->add_option("--max-rounds", cfg.max_rounds, "Round limit");
  add_output_flags(table2, cfg, "text, csv, or json");

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "Per-round fidelity of all three protocols, round 0 included");
  add_state_flags(fig1, cfg);
  fig1->add_option("--max-rounds", fig1_rounds, "Number of rounds");
  add_output_flags(fig1, cfg, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.accounting = oxpure::accounting_from_name(accounting);
    if (variant == "controls") {
      cfg.ox3_variant = oxpure::Ox3Variant::kMeasureControls;
    } else if (variant == "targets") {
      cfg.ox3_variant = oxpure::Ox3Variant::kMeasureTargetSide;
    } else {
      throw std::invalid_argument("unknown --ox3-variant value: " + variant);
    }
    if (verify->parsed()) return oxpure::cli::cmd_verify(cfg, std::cout);
    if (run->parsed()) return oxpure::cli::cmd_run(cfg, std::cout);
    if (cmp->parsed()) return oxpure::cli::cmd_compare(cfg, std::cout);
    if (sweep->parsed()) return oxpure::cli::cmd_sweep(cfg, std::cout);
    if (table2->parsed()) return oxpure::cli::cmd_table2(cfg, std::cout);
    if (fig1->parsed()) {
      cfg.max_rounds = fig1_rounds;
      return oxpure::cli::cmd_fig1(cfg, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
