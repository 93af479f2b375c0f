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

#ifndef CATSIM_COHERENT_HPP
#define CATSIM_COHERENT_HPP

#include <cstdint>
#include <vector>

#include "catsim/circuit.hpp"
#include "catsim/noise.hpp"
#include "catsim/state.hpp"

namespace catsim {

/// Outcomes of repeated diagonal-projector measurements, one cell per shot.
struct MeasurementRecord {
  std::int64_t shots = 0;
  std::vector<LatticePoint> outcomes;
};

/// One coherent pass of the circuit: every gate acts as a basis permutation
/// on the state vector, and after each gate the touched bits suffer seeded X
/// (permutation) and Z (diagonal sign) errors per the NoiseModel contract.
/// gate_offset continues the per-trajectory gate counter across passes, so a
/// t-step evolution numbers its gates 0 .. t*|gates|-1 exactly like the
/// incoherent run does.
void apply_circuit_coherent_inplace(QuantumState& s, const Circuit& c, const NoiseModel& noise,
                                    std::uint64_t traj_seed, std::uint64_t gate_offset = 0);

QuantumState apply_circuit_coherent(QuantumState s, const Circuit& c, const NoiseModel& noise,
                                    std::uint64_t traj_seed, std::uint64_t gate_offset = 0);

/// `steps` consecutive passes with a shared gate counter.
QuantumState evolve_coherent(QuantumState s, const Circuit& c, int steps,
                             const NoiseModel& noise, std::uint64_t traj_seed);

/// Samples `shots` cells from the Born distribution of s. Each draw is keyed
/// by its shot index, so the record is reproducible and order-independent.
MeasurementRecord measure_diagonal(const QuantumState& s, std::int64_t shots,
                                   std::uint64_t seed);

/// Single measurement draw against a precomputed inclusive-prefix-sum of the
/// cell probabilities (the hot path of shot loops).
LatticePoint sample_cell_from_cumulative(const Eigen::VectorXd& cumulative,
                                         const LatticeSize& size, double u);

}  // namespace catsim

#endif  // CATSIM_COHERENT_HPP
