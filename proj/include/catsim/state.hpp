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

#ifndef CATSIM_STATE_HPP
#define CATSIM_STATE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "catsim/density.hpp"
#include "catsim/lattice.hpp"

namespace catsim {

/// Phase choice when lifting a density to amplitudes.
enum class PhasePolicy { kZero, kRandom };

/// Complex amplitudes over the register bit-strings, unit norm. A fresh state
/// spans the data bits only (width = 2*nq, one amplitude per cell, index
/// i + j*N). Running a circuit extends the state with the circuit's ancilla
/// bits as the high-order index bits; noise can leave amplitude on dirty
/// ancilla values, which the state keeps, exactly like the incoherent
/// protocol carries corrupted ancilla bits forward.
class QuantumState {
 public:
  QuantumState(const LatticeSize& size, int width, Eigen::VectorXcd amplitudes);

  static QuantumState basis(const LatticeSize& size, const LatticePoint& p);

  const LatticeSize& size() const { return size_; }
  int width() const { return width_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  /// Mutable access for the evolution kernels; they preserve unit norm.
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }

  /// Grows the state to `width` bits, new high bits in |0>. No-op if already
  /// that wide.
  void extend_to_width(int width);

  /// |norm^2 - 1|.
  double norm_error() const;

  static constexpr double kNormTolerance = 1e-9;

 private:
  LatticeSize size_;
  int width_;
  Eigen::VectorXcd amplitudes_;
};

/// Lifts a density to amplitudes with |a_ij|^2 = d(i, j): a = sqrt(d) times a
/// unit phase per cell (all-zero, or seeded-random uniform on the circle).
QuantumState from_density(const PhaseSpaceDensity& d, PhasePolicy phases,
                          std::uint64_t phase_seed = 0);

/// The squared moduli |a_ij|^2 as a density, marginalized over ancilla bits.
PhaseSpaceDensity born_distribution(const QuantumState& s);

/// Per-cell Born probabilities as a flat vector (index i + j*N).
Eigen::VectorXd born_cell_probabilities(const QuantumState& s);

/// 2D discrete Fourier transform of the amplitude grid, unitary normalization
/// (1/sqrt(N) per axis). Demands an ancilla-free state: this is the
/// non-diagonal demo transform, never part of the measurement protocol.
QuantumState apply_fourier(const QuantumState& s);

/// Unitary 1D DFT matrix F(k, n) = exp(-2*pi*i*k*n/N) / sqrt(N).
Eigen::MatrixXcd dft_matrix(std::int64_t n);

}  // namespace catsim

#endif  // CATSIM_STATE_HPP
