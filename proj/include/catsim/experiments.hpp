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

#ifndef CATSIM_EXPERIMENTS_HPP
#define CATSIM_EXPERIMENTS_HPP

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "catsim/circuit.hpp"
#include "catsim/coherent.hpp"
#include "catsim/density.hpp"
#include "catsim/noise.hpp"
#include "catsim/state.hpp"
#include "catsim/stochastic.hpp"

namespace catsim {

/// Shared experiment knobs. `threads` is an execution detail (0 = automatic)
/// and never appears in the reproducible part of a report.
struct ExperimentConfig {
  int nq = 5;
  int steps = 10;
  std::int64_t shots = 100000;
  std::uint64_t master_seed = 1;
  double p_x = 0.0;
  double p_z = 0.0;
  std::string initial = "uniform";  // uniform | delta:i,j | block:i0,j0,w,h
  int coarse_factor = 4;
  PhasePolicy phases = PhasePolicy::kZero;
  int threads = 0;
  int coherent_nq_cap = 10;
  // resources sweep only
  int nq_max = 10;
  double epsilon = 0.1;
};

/// Machine-readable experiment output. Everything under `timings` is
/// measured wall-clock detail and excluded from the reproducibility
/// contract; config, metrics and verdicts are pure functions of
/// (config, master_seed).
struct ExperimentReport {
  std::string experiment;
  nlohmann::json config;
  nlohmann::json metrics;
  nlohmann::json verdicts;
  nlohmann::json timings;

  bool passed() const;
  nlohmann::json to_json(bool include_timings = true) const;
  std::string to_csv() const;
};

/// Parses an initial-density spec: "uniform", "delta:i,j", "block:i0,j0,w,h".
PhaseSpaceDensity parse_initial_density(const std::string& spec, const LatticeSize& size);

/// One stretch of a trajectory: run this circuit `steps` times.
struct ScheduleLeg {
  Circuit circuit;
  int steps = 1;
};

/// M incoherent trajectories: per-trajectory seed split from seed_base, cell
/// drawn from the initial density, gates run leg by leg with a continuous
/// gate counter, final cells histogrammed. Deterministic for any thread
/// count.
EmpiricalDensity classical_batch(const PhaseSpaceDensity& initial,
                                 const std::vector<ScheduleLeg>& legs,
                                 const NoiseModel& noise, std::uint64_t seed_base,
                                 std::int64_t count, int threads);

/// M coherent prepare-evolve-measure shots from the same split seeds: each
/// shot evolves its own noisy state-vector trajectory and draws one diagonal
/// measurement. When p_x = 0 every trajectory's Born distribution is
/// bit-identical to the noiseless one (gates and X events permute amplitudes,
/// Z events only flip signs), so a single evolution is measured M times with
/// the same per-shot draws.
EmpiricalDensity quantum_batch(const QuantumState& initial,
                               const std::vector<ScheduleLeg>& legs,
                               const NoiseModel& noise, std::uint64_t seed_base,
                               std::int64_t count, int threads);

/// Both protocols end to end on the same circuit and noise; exact-level,
/// finite-sample, coarse-grained and harmonic comparisons.
ExperimentReport run_equivalence(const ExperimentConfig& cfg);

/// steps/2 forward passes then steps/2 inverted passes; perfect gates must
/// return the initial density (exactly for the incoherent permutation
/// transport), and under noise the two protocols must stay statistically
/// indistinguishable from each other.
ExperimentReport run_reversal(const ExperimentConfig& cfg);

/// The phase-sensitivity contrast: states with identical Born densities have
/// identical density harmonics but different amplitude power spectra.
ExperimentReport run_spectrum(const ExperimentConfig& cfg);

/// Per-nq resource table: gate counts, state-vector size versus per-trajectory
/// memory, and measured per-step times, with the sample count needed for a
/// target TV accuracy.
ExperimentReport run_resources(const ExperimentConfig& cfg);

int resolve_threads(int requested);

}  // namespace catsim

#endif  // CATSIM_EXPERIMENTS_HPP
