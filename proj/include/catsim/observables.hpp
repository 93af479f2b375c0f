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

#ifndef CATSIM_OBSERVABLES_HPP
#define CATSIM_OBSERVABLES_HPP

#include <Eigen/Dense>

#include "catsim/density.hpp"
#include "catsim/state.hpp"

namespace catsim {

// Classically meaningful derived observables. Everything here is a function
// of the Liouville density alone, except amplitude_power_spectrum, which is
// deliberately phase-sensitive: it is the contrast demo showing what the
// Fourier transform of the *amplitudes* exposes that no density observable
// can.

/// Block sums over factor x factor blocks; factor must divide N.
PhaseSpaceDensity coarse_grain(const PhaseSpaceDensity& d, int factor);

/// 2D DFT of the density grid, unitary normalization (1/sqrt(N) per axis).
/// Hermitian-symmetric since the density is real: H(-k, -l) = conj(H(k, l)).
Eigen::ArrayXXcd density_harmonics(const PhaseSpaceDensity& d);

/// |DFT(amplitudes)|^2 as a density over frequency cells.
PhaseSpaceDensity amplitude_power_spectrum(const QuantumState& s);

/// Total variation distance (1/2) sum |d1 - d2|, in [0, 1].
double tv_distance(const PhaseSpaceDensity& d1, const PhaseSpaceDensity& d2);

/// Largest entry-wise modulus difference between two harmonic grids.
double linf_distance(const Eigen::ArrayXXcd& a, const Eigen::ArrayXXcd& b);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int pooled_cells = 0;
  int dof = 0;
};

/// Two-sample chi-square over pooled cells. Empty cells are dropped; the
/// remaining cells are sorted by combined count (ascending, cell index as
/// tie-break) and greedily merged until every pool holds a combined count of
/// at least 5; an under-filled final pool merges into its predecessor. The
/// p-value is the chi-square upper tail with pooled_cells - 1 degrees of
/// freedom. Throws if fewer than 2 pools remain.
ChiSquareResult chi_square_two_sample(const EmpiricalDensity& e1, const EmpiricalDensity& e2);

}  // namespace catsim

#endif  // CATSIM_OBSERVABLES_HPP
