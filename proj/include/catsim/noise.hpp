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

#ifndef CATSIM_NOISE_HPP
#define CATSIM_NOISE_HPP

#include <cstdint>
#include <stdexcept>

#include "catsim/rng.hpp"

namespace catsim {

// Stochastic gate noise, identical in both protocols. After each gate, every
// touched bit (the gate's controls and target) independently suffers an X
// flip with probability p_x and a Z flip with probability p_z. Whether an
// event fires is a pure function of (trajectory_seed, gate_index, bit, kind),
// so the coherent and incoherent runs of the same trajectory seed see the
// same events regardless of execution order. Within a gate, X flips are
// applied for all touched bits in ascending order, then Z flips likewise.
// Classically an X event flips the bit; a Z event on a definite bit-string
// changes nothing and is never evaluated.
struct NoiseModel {
  double p_x = 0.0;
  double p_z = 0.0;
  std::uint64_t master_seed = 0;

  void validate() const {
    if (p_x < 0.0 || p_x > 1.0 || p_z < 0.0 || p_z > 1.0) {
      throw std::invalid_argument("NoiseModel: probabilities must lie in [0, 1]");
    }
  }

  bool noiseless() const { return p_x == 0.0 && p_z == 0.0; }
};

inline std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  return rng::derive(master_seed, rng::Stream::kTrajectory, index);
}

inline bool x_error_at(const NoiseModel& noise, std::uint64_t traj_seed,
                       std::uint64_t gate_index, int bit) {
  return noise.p_x > 0.0 &&
         rng::uniform(traj_seed, rng::Stream::kNoise, gate_index,
                      static_cast<std::uint64_t>(2 * bit)) < noise.p_x;
}

inline bool z_error_at(const NoiseModel& noise, std::uint64_t traj_seed,
                       std::uint64_t gate_index, int bit) {
  return noise.p_z > 0.0 &&
         rng::uniform(traj_seed, rng::Stream::kNoise, gate_index,
                      static_cast<std::uint64_t>(2 * bit + 1)) < noise.p_z;
}

}  // namespace catsim

#endif  // CATSIM_NOISE_HPP
