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

#include "catsim/state.hpp"

#include <cmath>
#include <numbers>

#include "catsim/rng.hpp"

namespace catsim {

QuantumState::QuantumState(const LatticeSize& size, int width, Eigen::VectorXcd amplitudes)
    : size_(size), width_(width), amplitudes_(std::move(amplitudes)) {
  if (width_ < 2 * size_.nq || width_ > 40) {
    throw std::invalid_argument("QuantumState: width must cover both data registers");
  }
  if (amplitudes_.size() != (Eigen::Index{1} << width_)) {
    throw std::invalid_argument("QuantumState: amplitude count must be 2^width");
  }
  if (norm_error() > kNormTolerance) {
    throw std::invalid_argument("QuantumState: amplitudes are not normalized");
  }
}

QuantumState QuantumState::basis(const LatticeSize& size, const LatticePoint& p) {
  require_valid(size, p);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(size.cells());
  amps[cell_index(p, size)] = 1.0;
  return QuantumState(size, 2 * size.nq, std::move(amps));
}

void QuantumState::extend_to_width(int width) {
  if (width < width_) {
    throw std::invalid_argument("QuantumState: cannot shrink width");
  }
  if (width == width_) return;
  Eigen::VectorXcd wider = Eigen::VectorXcd::Zero(Eigen::Index{1} << width);
  wider.head(amplitudes_.size()) = amplitudes_;
  amplitudes_ = std::move(wider);
  width_ = width;
}

double QuantumState::norm_error() const {
  return std::abs(amplitudes_.squaredNorm() - 1.0);
}

QuantumState from_density(const PhaseSpaceDensity& d, PhasePolicy phases,
                          std::uint64_t phase_seed) {
  const LatticeSize& size = d.size();
  const std::int64_t cells = size.cells();
  Eigen::VectorXcd amps(cells);
  for (std::int64_t idx = 0; idx < cells; ++idx) {
    const LatticePoint p = cell_from_index(idx, size);
    const double mag = std::sqrt(d.grid()(p.i, p.j));
    if (phases == PhasePolicy::kRandom) {
      const double theta = 2.0 * std::numbers::pi *
                           rng::uniform(phase_seed, rng::Stream::kPhase,
                                        static_cast<std::uint64_t>(idx));
      amps[idx] = std::polar(mag, theta);
    } else {
      amps[idx] = mag;
    }
  }
  amps /= amps.norm();  // squeeze out residual rounding from the density sum
  return QuantumState(size, 2 * size.nq, std::move(amps));
}

PhaseSpaceDensity born_distribution(const QuantumState& s) {
  const LatticeSize& size = s.size();
  const std::int64_t cells = size.cells();
  Eigen::ArrayXd probs = Eigen::ArrayXd::Zero(cells);
  const Eigen::Index blocks = s.dim() / cells;
  for (Eigen::Index a = 0; a < blocks; ++a) {
    probs += s.amplitudes().segment(a * cells, cells).array().abs2();
  }
  Eigen::ArrayXXd grid = probs.reshaped(size.n, size.n).array();
  return PhaseSpaceDensity(size, std::move(grid));
}

Eigen::VectorXd born_cell_probabilities(const QuantumState& s) {
  const std::int64_t cells = s.size().cells();
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(cells);
  const Eigen::Index blocks = s.dim() / cells;
  for (Eigen::Index a = 0; a < blocks; ++a) {
    probs.array() += s.amplitudes().segment(a * cells, cells).array().abs2();
  }
  return probs;
}

Eigen::MatrixXcd dft_matrix(std::int64_t n) {
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t m = 0; m < n; ++m) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>((k * m) % n) / static_cast<double>(n);
      f(k, m) = std::polar(scale, angle);
    }
  }
  return f;
}

QuantumState apply_fourier(const QuantumState& s) {
  const LatticeSize& size = s.size();
  const std::int64_t cells = size.cells();
  if (s.dim() != cells) {
    // Tolerate clean trailing ancillas; reject states with mass outside them.
    const double tail = s.amplitudes().tail(s.dim() - cells).squaredNorm();
    if (tail > 1e-12) {
      throw std::invalid_argument("apply_fourier: state has amplitude on ancilla bits");
    }
  }
  const Eigen::MatrixXcd f = dft_matrix(size.n);
  const Eigen::MatrixXcd grid =
      s.amplitudes().head(cells).reshaped(size.n, size.n);
  Eigen::MatrixXcd transformed = f * grid * f.transpose();
  return QuantumState(size, 2 * size.nq, transformed.reshaped(cells, 1));
}

}  // namespace catsim
