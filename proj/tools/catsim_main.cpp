// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "catsim/experiments.hpp"

namespace {

struct CliOptions {
  catsim::ExperimentConfig cfg;
  std::string phases = "zero";
  std::string format = "json";
  std::string out;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--nq", opt.cfg.nq, "Bits per coordinate register (N = 2^nq)");
  cmd->add_option("--steps", opt.cfg.steps, "Map iterations");
  cmd->add_option("--shots", opt.cfg.shots, "Samples per protocol");
  cmd->add_option("--seed", opt.cfg.master_seed, "Master seed");
  cmd->add_option("--px", opt.cfg.p_x, "Per-gate per-touched-bit bit-flip probability");
  cmd->add_option("--pz", opt.cfg.p_z, "Per-gate per-touched-bit phase-flip probability");
  cmd->add_option("--initial", opt.cfg.initial,
                  "Initial density: uniform | delta:i,j | block:i0,j0,w,h");
  cmd->add_option("--coarse", opt.cfg.coarse_factor, "Coarse-graining factor");
  cmd->add_option("--phases", opt.phases, "Amplitude phases: zero | random")
      ->check(CLI::IsMember({"zero", "random"}));
  cmd->add_option("--threads", opt.cfg.threads, "Worker threads (0 = auto)");
  cmd->add_option("--nq-cap", opt.cfg.coherent_nq_cap, "Memory cap for coherent runs");
  cmd->add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.out, "Write the report here instead of stdout");
}

int emit(const catsim::ExperimentReport& report, const CliOptions& opt) {
  const std::string payload =
      opt.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream file(opt.out);
    if (!file) {
      std::cerr << "catsim: cannot write " << opt.out << "\n";
      return 2;
    }
    file << payload;
  }
  for (const auto& [name, flag] : report.verdicts.items()) {
    std::cerr << (flag.is_boolean() && flag.get<bool>() ? "[ ok ] " : "[FAIL] ")
              << report.experiment << "." << name << "\n";
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent vs. incoherent simulation of the discretized Arnold cat map"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* equivalence = app.add_subcommand(
      "equivalence", "Run both protocols and compare their measurement statistics");
  CLI::App* reversal = app.add_subcommand(
      "reversal", "Forward half, inverted half; check the round trip and cross statistics");
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Equal-density states: identical harmonics, distinct amplitude spectra");
  CLI::App* resources = app.add_subcommand(
      "resources", "Tabulate memory, gate counts and per-step times against nq");
  CLI::App* dump = app.add_subcommand("dump-circuit", "Print the step circuit gate list");

  for (CLI::App* cmd : {equivalence, reversal, spectrum, resources}) {
    add_common_flags(cmd, opt);
  }
  resources->add_option("--nq-max", opt.cfg.nq_max, "Largest nq in the sweep");
  resources->add_option("--epsilon", opt.cfg.epsilon, "Target TV accuracy for sample counts");

  int dump_nq = 3;
  bool dump_inverse = false;
  std::string dump_out;
  dump->add_option("--nq", dump_nq, "Bits per coordinate register");
  dump->add_flag("--inverse", dump_inverse, "Dump the inverted circuit");
  dump->add_option("--out", dump_out, "Write the listing here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dump->parsed()) {
      catsim::Circuit c = catsim::build_step_circuit(catsim::LatticeSize::from_bits(dump_nq));
      if (dump_inverse) c = catsim::invert(c);
      const std::string text = catsim::format_circuit(c);
      if (dump_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream file(dump_out);
        if (!file) {
          std::cerr << "catsim: cannot write " << dump_out << "\n";
          return 2;
        }
        file << text;
      }
      return 0;
    }

    opt.cfg.phases =
        opt.phases == "random" ? catsim::PhasePolicy::kRandom : catsim::PhasePolicy::kZero;
    if (equivalence->parsed()) return emit(catsim::run_equivalence(opt.cfg), opt);
    if (reversal->parsed()) return emit(catsim::run_reversal(opt.cfg), opt);
    if (spectrum->parsed()) return emit(catsim::run_spectrum(opt.cfg), opt);
    if (resources->parsed()) return emit(catsim::run_resources(opt.cfg), opt);
  } catch (const std::exception& e) {
    std::cerr << "catsim: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
