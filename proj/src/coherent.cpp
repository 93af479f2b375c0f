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

#include "catsim/coherent.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <numeric>

namespace catsim {

namespace {

using complexd = std::complex<double>;

// Enumerates the basis indexes with a fixed value on the gate's bits by
// inserting zero bits at the (ascending) gate positions, the usual
// state-vector indexing trick. K is the gate arity.
template <int K>
struct BitInsert {
  std::array<std::uint64_t, K> low;  // (1 << position) - 1, ascending

  explicit BitInsert(const Gate& g) {
    std::array<int, K> pos;
    for (int i = 0; i < K; ++i) pos[i] = g.bits[i];
    std::sort(pos.begin(), pos.end());
    for (int i = 0; i < K; ++i) low[i] = (std::uint64_t{1} << pos[i]) - 1;
  }

  std::uint64_t operator()(std::uint64_t z) const {
    for (int i = 0; i < K; ++i) {
      z = ((z & ~low[i]) << 1) | (z & low[i]);
    }
    return z;
  }
};

// Swaps the target pair on every basis index whose control bits are set.
template <int K>
void swap_pairs(const Gate& g, complexd* a, std::uint64_t dim) {
  const BitInsert<K> insert(g);
  std::uint64_t control_mask = 0;
  for (int i = 0; i + 1 < K; ++i) control_mask |= std::uint64_t{1} << g.bits[i];
  const std::uint64_t target_mask = std::uint64_t{1} << g.target();
  const std::uint64_t count = dim >> K;
  for (std::uint64_t z = 0; z < count; ++z) {
    const std::uint64_t x = insert(z) | control_mask;
    std::swap(a[x], a[x | target_mask]);
  }
}

void apply_gate_state(const Gate& g, complexd* a, std::uint64_t dim) {
  switch (g.kind) {
    case GateKind::kNot: swap_pairs<1>(g, a, dim); break;
    case GateKind::kCnot: swap_pairs<2>(g, a, dim); break;
    case GateKind::kToffoli: swap_pairs<3>(g, a, dim); break;
  }
}

void apply_x_state(int bit, complexd* a, std::uint64_t dim) {
  apply_gate_state(Gate::not_gate(bit), a, dim);
}

void apply_z_state(int bit, complexd* a, std::uint64_t dim) {
  const std::uint64_t low = (std::uint64_t{1} << bit) - 1;
  const std::uint64_t mask = std::uint64_t{1} << bit;
  const std::uint64_t count = dim >> 1;
  for (std::uint64_t z = 0; z < count; ++z) {
    const std::uint64_t x = (((z & ~low) << 1) | (z & low)) | mask;
    a[x] = -a[x];
  }
}

}  // namespace

void apply_circuit_coherent_inplace(QuantumState& s, const Circuit& c, const NoiseModel& noise,
                                    std::uint64_t traj_seed, std::uint64_t gate_offset) {
  require_well_formed(c);
  if (s.size().nq != c.nq) {
    throw std::invalid_argument("apply_circuit_coherent: register size mismatch");
  }
  noise.validate();
  s.extend_to_width(c.width);
  complexd* a = s.amplitudes().data();
  const auto dim = static_cast<std::uint64_t>(s.dim());

  std::array<int, 3> touched{};
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    apply_gate_state(gate, a, dim);
    if (noise.noiseless()) continue;

    const std::uint64_t gate_index = gate_offset + g;
    const int arity = gate.arity();
    for (int i = 0; i < arity; ++i) touched[i] = gate.bits[i];
    std::sort(touched.begin(), touched.begin() + arity);
    for (int i = 0; i < arity; ++i) {
      if (x_error_at(noise, traj_seed, gate_index, touched[i])) {
        apply_x_state(touched[i], a, dim);
      }
    }
    for (int i = 0; i < arity; ++i) {
      if (z_error_at(noise, traj_seed, gate_index, touched[i])) {
        apply_z_state(touched[i], a, dim);
      }
    }
  }
}

QuantumState apply_circuit_coherent(QuantumState s, const Circuit& c, const NoiseModel& noise,
                                    std::uint64_t traj_seed, std::uint64_t gate_offset) {
  apply_circuit_coherent_inplace(s, c, noise, traj_seed, gate_offset);
  return s;
}

QuantumState evolve_coherent(QuantumState s, const Circuit& c, int steps,
                             const NoiseModel& noise, std::uint64_t traj_seed) {
  for (int t = 0; t < steps; ++t) {
    apply_circuit_coherent_inplace(s, c, noise, traj_seed,
                                   static_cast<std::uint64_t>(t) * c.gates.size());
  }
  return s;
}

LatticePoint sample_cell_from_cumulative(const Eigen::VectorXd& cumulative,
                                         const LatticeSize& size, double u) {
  const Eigen::Index n = cumulative.size();
  const double needle = u * cumulative[n - 1];
  const double* begin = cumulative.data();
  Eigen::Index idx = std::upper_bound(begin, begin + n, needle) - begin;
  if (idx >= n) idx = n - 1;
  return cell_from_index(idx, size);
}

MeasurementRecord measure_diagonal(const QuantumState& s, std::int64_t shots,
                                   std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("measure_diagonal: shots must be >= 1");
  }
  Eigen::VectorXd cumulative = born_cell_probabilities(s);
  std::partial_sum(cumulative.data(), cumulative.data() + cumulative.size(),
                   cumulative.data());
  MeasurementRecord record;
  record.shots = shots;
  record.outcomes.reserve(static_cast<std::size_t>(shots));
  for (std::int64_t m = 0; m < shots; ++m) {
    const double u = rng::uniform(seed, rng::Stream::kMeasurement,
                                  static_cast<std::uint64_t>(m));
    record.outcomes.push_back(sample_cell_from_cumulative(cumulative, s.size(), u));
  }
  return record;
}

}  // namespace catsim
