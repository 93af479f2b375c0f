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

#ifndef CATSIM_STOCHASTIC_HPP
#define CATSIM_STOCHASTIC_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>

#include "catsim/circuit.hpp"
#include "catsim/density.hpp"
#include "catsim/noise.hpp"

namespace catsim {

/// Inverse-CDF cell sampler with a cached prefix-sum table; the batch path
/// behind sample_initial.
class DensitySampler {
 public:
  explicit DensitySampler(const PhaseSpaceDensity& d);

  /// Draws the cell for this seed (one draw per seed, keyed on the
  /// kInitialCell stream).
  LatticePoint sample(std::uint64_t seed) const;

 private:
  LatticeSize size_;
  Eigen::VectorXd cumulative_;
};

/// Draws one initial cell with probability d(i, j).
LatticePoint sample_initial(const PhaseSpaceDensity& d, std::uint64_t seed);

/// The incoherent protocol's inner loop: encode the cell, run the circuit
/// `steps` times gate by gate with the shared per-gate bit-flip rule
/// (noise.hpp), decode the data registers. Ancilla bits are not reset between
/// steps; under p_x = 0 they must end at 0 or the run aborts. Z events are
/// classically invisible and never drawn.
LatticePoint run_trajectory(const LatticePoint& p, const Circuit& c, int steps,
                            const NoiseModel& noise, std::uint64_t traj_seed,
                            std::uint64_t gate_offset = 0);

/// Histogram of final cells.
EmpiricalDensity estimate_density(std::span<const LatticePoint> points,
                                  const LatticeSize& size);

}  // namespace catsim

#endif  // CATSIM_STOCHASTIC_HPP
