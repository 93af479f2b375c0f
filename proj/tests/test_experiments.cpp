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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catsim/experiments.hpp"
#include "catsim/observables.hpp"

using namespace catsim;

namespace {

std::string reproducible_dump(const ExperimentReport& report) {
  return report.to_json(/*include_timings=*/false).dump();
}

}  // namespace

TEST_CASE("initial density specs parse and validate") {
  const LatticeSize size = LatticeSize::from_bits(3);
  CHECK(parse_initial_density("uniform", size).support_size() == 64);

  const PhaseSpaceDensity d = parse_initial_density("delta:1,2", size);
  CHECK(d.at({1, 2}) == 1.0);

  const PhaseSpaceDensity b = parse_initial_density("block:2,3,4,2", size);
  CHECK(b.support_size() == 8);
  CHECK(b.at({2, 3}) == doctest::Approx(0.125).epsilon(1e-15));

  CHECK_THROWS_AS(parse_initial_density("pointy", size), std::invalid_argument);
  CHECK_THROWS_AS(parse_initial_density("delta:1", size), std::invalid_argument);
  CHECK_THROWS_AS(parse_initial_density("delta:1,x", size), std::invalid_argument);
  CHECK_THROWS_AS(parse_initial_density("delta:9,0", size), std::invalid_argument);
  CHECK_THROWS_AS(parse_initial_density("block:7,7,4,4", size), std::invalid_argument);
}

TEST_CASE("equivalence experiment passes on a small perfect-gate run") {
  ExperimentConfig cfg;
  cfg.nq = 3;
  cfg.steps = 5;
  cfg.shots = 4000;
  cfg.master_seed = 11;
  cfg.coarse_factor = 2;
  const ExperimentReport report = run_equivalence(cfg);
  CHECK(report.passed());
  CHECK(report.metrics["exact_tv"].get<double>() <= 1e-12);
  CHECK(report.metrics["chi2_applicable"].get<bool>());
  CHECK(report.metrics["gate_count_per_step"].get<int>() == 36);
  CHECK(report.experiment == "equivalence");
}

TEST_CASE("equivalence handles the degenerate delta run") {
  ExperimentConfig cfg;
  cfg.nq = 3;
  cfg.steps = 0;
  cfg.shots = 500;
  cfg.initial = "delta:1,2";
  cfg.coarse_factor = 2;
  const ExperimentReport report = run_equivalence(cfg);
  CHECK(report.passed());
  CHECK_FALSE(report.metrics["chi2_applicable"].get<bool>());
  CHECK(report.metrics["tv_empirical"].get<double>() == 0.0);
}

TEST_CASE("equivalence with random phases and noise still passes") {
  ExperimentConfig cfg;
  cfg.nq = 3;
  cfg.steps = 4;
  cfg.shots = 6000;
  cfg.master_seed = 23;
  cfg.p_x = 0.02;
  cfg.p_z = 0.1;
  cfg.phases = PhasePolicy::kRandom;
  cfg.coarse_factor = 2;
  cfg.initial = "block:1,1,4,4";
  const ExperimentReport report = run_equivalence(cfg);
  CHECK(report.passed());
  CHECK(report.metrics["chi2_applicable"].get<bool>());
  CHECK(report.metrics["support_cells"].get<int>() == 64);  // noise widens the bound
}

TEST_CASE("equivalence rejects bad configs") {
  ExperimentConfig cfg;
  cfg.nq = 0;
  CHECK_THROWS_AS(run_equivalence(cfg), std::invalid_argument);
  cfg.nq = 11;
  CHECK_THROWS_AS(run_equivalence(cfg), std::invalid_argument);  // above the default cap
  cfg.nq = 4;
  cfg.shots = 0;
  CHECK_THROWS_AS(run_equivalence(cfg), std::invalid_argument);
  cfg.shots = 10;
  cfg.p_x = 1.5;
  CHECK_THROWS_AS(run_equivalence(cfg), std::invalid_argument);
  cfg.p_x = 0.0;
  cfg.coarse_factor = 3;
  CHECK_THROWS_AS(run_equivalence(cfg), std::invalid_argument);
}

TEST_CASE("reversal returns exactly under perfect gates") {
  ExperimentConfig cfg;
  cfg.nq = 4;
  cfg.steps = 10;
  cfg.shots = 3000;
  cfg.master_seed = 31;
  cfg.initial = "block:2,2,6,5";
  cfg.coarse_factor = 2;
  const ExperimentReport report = run_reversal(cfg);
  CHECK(report.passed());
  CHECK(report.metrics["exact_classical_return_tv"].get<double>() == 0.0);
  CHECK(report.metrics["exact_coherent_return_tv"].get<double>() <= 1e-12);

  cfg.steps = 7;
  CHECK_THROWS_AS(run_reversal(cfg), std::invalid_argument);
}

TEST_CASE("noisy reversal still matches across protocols") {
  ExperimentConfig cfg;
  cfg.nq = 3;
  cfg.steps = 6;
  cfg.shots = 5000;
  cfg.master_seed = 37;
  cfg.p_x = 0.01;
  cfg.coarse_factor = 2;
  const ExperimentReport report = run_reversal(cfg);
  CHECK(report.metrics["chi2_applicable"].get<bool>());
  CHECK(report.verdicts["cross_chi2_p_ok"].get<bool>());
  // The round trip itself degrades under bit flips; that is reported, not judged.
  CHECK(report.metrics["tv_quantum_return"].is_number());
}

TEST_CASE("spectrum demo reproduces the equal-density contrast") {
  ExperimentConfig cfg;
  cfg.nq = 2;
  const ExperimentReport report = run_spectrum(cfg);
  CHECK(report.passed());
  CHECK(report.metrics["pair_spectrum_linf_gap"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.metrics["pair_harmonics_linf_gap"].get<double>() <= 1e-12);
}

TEST_CASE("resources table scales as constructed") {
  ExperimentConfig cfg;
  cfg.nq_max = 5;
  cfg.epsilon = 0.1;
  const ExperimentReport report = run_resources(cfg);
  CHECK(report.passed());
  const auto& rows = report.metrics["table"];
  REQUIRE(rows.size() == 5);
  for (int nq = 1; nq <= 5; ++nq) {
    const auto& row = rows[nq - 1];
    CHECK(row["nq"].get<int>() == nq);
    CHECK(row["coherent_amplitude_slots"].get<std::int64_t>() == (std::int64_t{1} << (2 * nq)));
    CHECK(row["gate_count_per_step"].get<int>() == 12 * nq);
    CHECK(row["classical_bytes_per_trajectory"].get<int>() == 8);
  }
  // Sample counts follow K / eps^2.
  CHECK(rows[4]["samples_for_target_tv"].get<double>() ==
        doctest::Approx(1024.0 / 0.01).epsilon(1e-12));

  const std::string csv = report.to_csv();
  CHECK(csv.starts_with("nq,"));
  CHECK(csv.find("coherent_amplitude_slots") != std::string::npos);
  CHECK(csv.find("classical_trajectory_step_seconds") != std::string::npos);
}

TEST_CASE("reports are byte-identical for identical configs") {
  ExperimentConfig cfg;
  cfg.nq = 3;
  cfg.steps = 4;
  cfg.shots = 2000;
  cfg.master_seed = 77;
  cfg.p_x = 0.01;
  cfg.coarse_factor = 2;
  const std::string first = reproducible_dump(run_equivalence(cfg));
  const std::string second = reproducible_dump(run_equivalence(cfg));
  CHECK(first == second);

  SUBCASE("and across parallelism levels") {
    cfg.threads = 1;
    const std::string serial = reproducible_dump(run_equivalence(cfg));
    cfg.threads = 8;
    const std::string wide = reproducible_dump(run_equivalence(cfg));
    CHECK(serial == wide);
    CHECK(serial == first);
  }

  SUBCASE("different seeds give different samples") {
    cfg.master_seed = 78;
    CHECK(reproducible_dump(run_equivalence(cfg)) != first);
  }
}

TEST_CASE("batch runners are deterministic and consistent") {
  const LatticeSize size = LatticeSize::from_bits(3);
  const Circuit step = build_step_circuit(size);
  const PhaseSpaceDensity d = PhaseSpaceDensity::block(size, 0, 0, 4, 4);
  const std::vector<ScheduleLeg> legs{{step, 3}};
  const NoiseModel noise{0.05, 0.0, 0};

  const EmpiricalDensity one = classical_batch(d, legs, noise, 5, 5000, 1);
  const EmpiricalDensity four = classical_batch(d, legs, noise, 5, 5000, 4);
  CHECK((one.counts() == four.counts()).all());

  const QuantumState psi0 = from_density(d, PhasePolicy::kZero);
  const EmpiricalDensity q_one = quantum_batch(psi0, legs, noise, 9, 2000, 1);
  const EmpiricalDensity q_four = quantum_batch(psi0, legs, noise, 9, 2000, 4);
  CHECK((q_one.counts() == q_four.counts()).all());
  CHECK(q_one.total() == 2000);
}

TEST_CASE("verdict aggregation drives the pass flag") {
  ExperimentReport report;
  report.verdicts = nlohmann::json{{"a", true}, {"b", true}};
  CHECK(report.passed());
  report.verdicts["b"] = false;
  CHECK_FALSE(report.passed());

  report.metrics = nlohmann::json{{"x", 1.5}};
  const std::string csv = report.to_csv();
  CHECK(csv.starts_with("metric,value\n"));
  CHECK(csv.find("x,1.5") != std::string::npos);
  CHECK(csv.find("verdict.b,false") != std::string::npos);
}
