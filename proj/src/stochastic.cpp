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

#include "catsim/stochastic.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace catsim {

DensitySampler::DensitySampler(const PhaseSpaceDensity& d)
    : size_(d.size()), cumulative_(d.size().cells()) {
  const Eigen::Index cells = cumulative_.size();
  for (Eigen::Index idx = 0; idx < cells; ++idx) {
    const LatticePoint p = cell_from_index(idx, size_);
    cumulative_[idx] = d.grid()(p.i, p.j);
  }
  std::partial_sum(cumulative_.data(), cumulative_.data() + cells, cumulative_.data());
}

LatticePoint DensitySampler::sample(std::uint64_t seed) const {
  const Eigen::Index n = cumulative_.size();
  const double u = rng::uniform(seed, rng::Stream::kInitialCell);
  const double needle = u * cumulative_[n - 1];
  const double* begin = cumulative_.data();
  Eigen::Index idx = std::upper_bound(begin, begin + n, needle) - begin;
  if (idx >= n) idx = n - 1;
  return cell_from_index(idx, size_);
}

LatticePoint sample_initial(const PhaseSpaceDensity& d, std::uint64_t seed) {
  return DensitySampler(d).sample(seed);
}

LatticePoint run_trajectory(const LatticePoint& p, const Circuit& c, int steps,
                            const NoiseModel& noise, std::uint64_t traj_seed,
                            std::uint64_t gate_offset) {
  require_well_formed(c);
  const LatticeSize size = LatticeSize::from_bits(c.nq);
  require_valid(size, p);
  noise.validate();
  if (steps < 0) {
    throw std::invalid_argument("run_trajectory: steps must be >= 0");
  }

  BitString b = BitString::encode_cell(p, size, c.width);
  std::array<int, 3> touched{};
  std::uint64_t gate_index = gate_offset;
  for (int t = 0; t < steps; ++t) {
    for (const Gate& gate : c.gates) {
      apply_gate_word(gate, b.word);
      if (noise.p_x > 0.0) {
        const int arity = gate.arity();
        for (int i = 0; i < arity; ++i) touched[i] = gate.bits[i];
        std::sort(touched.begin(), touched.begin() + arity);
        for (int i = 0; i < arity; ++i) {
          if (x_error_at(noise, traj_seed, gate_index, touched[i])) {
            b.word ^= std::uint64_t{1} << touched[i];
          }
        }
      }
      ++gate_index;
    }
  }

  if (noise.p_x == 0.0 && b.ancilla_bits(c.nq) != 0) {
    throw std::runtime_error("run_trajectory: ancilla bits dirty after a noiseless run");
  }
  return b.decode_cell(size);
}

EmpiricalDensity estimate_density(std::span<const LatticePoint> points,
                                  const LatticeSize& size) {
  EmpiricalDensity histogram(size);
  for (const LatticePoint& p : points) {
    histogram.add(p);
  }
  return histogram;
}

}  // namespace catsim
