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

#ifndef CATSIM_LATTICE_HPP
#define CATSIM_LATTICE_HPP

#include <cstdint>
#include <stdexcept>

namespace catsim {

/// N x N torus with N = 2^nq, so each coordinate fits an nq-bit register.
struct LatticeSize {
  int nq = 1;
  std::int64_t n = 2;

  static LatticeSize from_bits(int nq) {
    if (nq < 1 || nq > 31) {
      throw std::invalid_argument("LatticeSize: nq must be in [1, 31]");
    }
    return LatticeSize{nq, std::int64_t{1} << nq};
  }

  std::int64_t cells() const { return n * n; }

  friend bool operator==(const LatticeSize&, const LatticeSize&) = default;
};

/// A cell (i, j) of the torus, 0 <= i, j < N.
struct LatticePoint {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

inline bool contains(const LatticeSize& size, const LatticePoint& p) {
  return p.i >= 0 && p.i < size.n && p.j >= 0 && p.j < size.n;
}

inline void require_valid(const LatticeSize& size, const LatticePoint& p) {
  if (!contains(size, p)) {
    throw std::invalid_argument("LatticePoint: coordinates outside the lattice");
  }
}

// The discretized Arnold cat map. Update rule, all arithmetic mod N:
//
//   j' = i + j
//   i' = i + j'
//
// i.e. the unimodular matrix [[2, 1], [1, 1]] acting on (i, j). Determinant 1,
// so the map is a bijection of the N^2 cells and exactly invertible. Changing
// the convention means editing forward() and inverse() together.

inline LatticePoint forward(const LatticePoint& p, const LatticeSize& size) {
  require_valid(size, p);
  const std::int64_t mask = size.n - 1;
  const std::int64_t jn = (p.i + p.j) & mask;
  const std::int64_t in = (p.i + jn) & mask;
  return LatticePoint{in, jn};
}

inline LatticePoint inverse(const LatticePoint& p, const LatticeSize& size) {
  require_valid(size, p);
  const std::int64_t mask = size.n - 1;
  const std::int64_t i0 = (p.i - p.j) & mask;
  const std::int64_t j0 = (p.j - i0) & mask;
  return LatticePoint{i0, j0};
}

/// t-fold composition of forward (inverse for t < 0); iterate(p, 0) == p.
inline LatticePoint iterate(const LatticePoint& p, std::int64_t t, const LatticeSize& size) {
  require_valid(size, p);
  LatticePoint q = p;
  for (std::int64_t k = 0; k < t; ++k) q = forward(q, size);
  for (std::int64_t k = 0; k > t; --k) q = inverse(q, size);
  return q;
}

// Flat cell index i + j*N. Matches both the register encoding (i in the low
// bits, j above it) and Eigen's column-major grid layout, so grid(i, j) and
// amplitude[i + j*N] refer to the same cell.
inline std::int64_t cell_index(const LatticePoint& p, const LatticeSize& size) {
  return p.i + p.j * size.n;
}

inline LatticePoint cell_from_index(std::int64_t idx, const LatticeSize& size) {
  return LatticePoint{idx % size.n, idx / size.n};
}

}  // namespace catsim

#endif  // CATSIM_LATTICE_HPP
