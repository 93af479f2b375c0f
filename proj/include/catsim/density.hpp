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

#ifndef CATSIM_DENSITY_HPP
#define CATSIM_DENSITY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "catsim/lattice.hpp"

namespace catsim {

// Grid observables allocate N x N arrays; cap nq so a misconfigured run cannot
// request a multi-gigabyte grid. Trajectories themselves carry no such cap.
inline constexpr int kMaxGridBits = 12;

inline void require_grid_size(const LatticeSize& size) {
  if (size.nq < 0 || size.nq > kMaxGridBits || size.n != (std::int64_t{1} << size.nq)) {
    throw std::invalid_argument("grid observables require a consistent size with nq <= 12");
  }
}

/// Liouville density over the N x N cells: nonnegative, sums to 1.
class PhaseSpaceDensity {
 public:
  PhaseSpaceDensity(const LatticeSize& size, Eigen::ArrayXXd grid)
      : size_(size), grid_(std::move(grid)) {
    require_grid_size(size_);
    if (grid_.rows() != size_.n || grid_.cols() != size_.n) {
      throw std::invalid_argument("PhaseSpaceDensity: grid shape must be N x N");
    }
    if ((grid_ < 0.0).any()) {
      throw std::invalid_argument("PhaseSpaceDensity: negative cell mass");
    }
    if (std::abs(grid_.sum() - 1.0) > kNormTolerance) {
      throw std::invalid_argument("PhaseSpaceDensity: mass does not sum to 1");
    }
  }

  static PhaseSpaceDensity uniform(const LatticeSize& size) {
    require_grid_size(size);
    const double m = 1.0 / static_cast<double>(size.cells());
    return PhaseSpaceDensity(size, Eigen::ArrayXXd::Constant(size.n, size.n, m));
  }

  static PhaseSpaceDensity delta(const LatticeSize& size, const LatticePoint& p) {
    require_valid(size, p);
    require_grid_size(size);
    Eigen::ArrayXXd grid = Eigen::ArrayXXd::Zero(size.n, size.n);
    grid(p.i, p.j) = 1.0;
    return PhaseSpaceDensity(size, std::move(grid));
  }

  /// Uniform over the w x h block of cells with lower corner (i0, j0).
  static PhaseSpaceDensity block(const LatticeSize& size, std::int64_t i0, std::int64_t j0,
                                 std::int64_t w, std::int64_t h) {
    require_grid_size(size);
    if (w < 1 || h < 1 || i0 < 0 || j0 < 0 || i0 + w > size.n || j0 + h > size.n) {
      throw std::invalid_argument("PhaseSpaceDensity: block outside the lattice");
    }
    Eigen::ArrayXXd grid = Eigen::ArrayXXd::Zero(size.n, size.n);
    grid.block(i0, j0, w, h).setConstant(1.0 / static_cast<double>(w * h));
    return PhaseSpaceDensity(size, std::move(grid));
  }

  const LatticeSize& size() const { return size_; }
  const Eigen::ArrayXXd& grid() const { return grid_; }
  double at(const LatticePoint& p) const {
    require_valid(size_, p);
    return grid_(p.i, p.j);
  }

  /// Number of cells carrying nonzero mass.
  std::int64_t support_size() const { return (grid_ > 0.0).count(); }

  static constexpr double kNormTolerance = 1e-9;

 private:
  LatticeSize size_;
  Eigen::ArrayXXd grid_;
};

/// Exact transport of cell masses through t map iterations: a permutation of
/// the grid entries, so the multiset of masses is invariant.
inline PhaseSpaceDensity pushforward(const PhaseSpaceDensity& d, std::int64_t t) {
  const LatticeSize& size = d.size();
  Eigen::ArrayXXd out(size.n, size.n);
  for (std::int64_t j = 0; j < size.n; ++j) {
    for (std::int64_t i = 0; i < size.n; ++i) {
      const LatticePoint q = iterate(LatticePoint{i, j}, t, size);
      out(q.i, q.j) = d.grid()(i, j);
    }
  }
  return PhaseSpaceDensity(size, std::move(out));
}

/// Integer histogram of sampled cells; the incoherent protocol's output.
class EmpiricalDensity {
 public:
  using Counts = Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

  explicit EmpiricalDensity(const LatticeSize& size)
      : size_(size), counts_(Counts::Zero(size.n, size.n)) {
    require_grid_size(size);
  }

  void add(const LatticePoint& p, std::int64_t count = 1) {
    require_valid(size_, p);
    counts_(p.i, p.j) += count;
    total_ += count;
  }

  void merge(const EmpiricalDensity& other) {
    if (!(other.size_ == size_)) {
      throw std::invalid_argument("EmpiricalDensity: grid size mismatch");
    }
    counts_ += other.counts_;
    total_ += other.total_;
  }

  const LatticeSize& size() const { return size_; }
  const Counts& counts() const { return counts_; }
  std::int64_t total() const { return total_; }

  PhaseSpaceDensity normalize() const {
    if (total_ <= 0) {
      throw std::invalid_argument("EmpiricalDensity: cannot normalize an empty histogram");
    }
    return PhaseSpaceDensity(size_, counts_.cast<double>() / static_cast<double>(total_));
  }

 private:
  LatticeSize size_;
  Counts counts_;
  std::int64_t total_ = 0;
};

}  // namespace catsim

#endif  // CATSIM_DENSITY_HPP
