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

#include "catsim/observables.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <numeric>
#include <vector>

namespace catsim {

PhaseSpaceDensity coarse_grain(const PhaseSpaceDensity& d, int factor) {
  const LatticeSize& size = d.size();
  if (factor < 1 || size.n % factor != 0) {
    throw std::invalid_argument("coarse_grain: factor must divide N");
  }
  const std::int64_t m = size.n / factor;
  Eigen::ArrayXXd out(m, m);
  for (std::int64_t bj = 0; bj < m; ++bj) {
    for (std::int64_t bi = 0; bi < m; ++bi) {
      out(bi, bj) = d.grid().block(bi * factor, bj * factor, factor, factor).sum();
    }
  }
  // Divisors of 2^nq are powers of two, so the coarse edge m is one as well
  // (possibly the degenerate 1 x 1 grid when factor == N).
  int coarse_nq = 0;
  while ((std::int64_t{1} << coarse_nq) < m) ++coarse_nq;
  return PhaseSpaceDensity(LatticeSize{coarse_nq, m}, std::move(out));
}

Eigen::ArrayXXcd density_harmonics(const PhaseSpaceDensity& d) {
  const Eigen::MatrixXcd f = dft_matrix(d.size().n);
  const Eigen::MatrixXcd grid = d.grid().matrix().cast<std::complex<double>>();
  return (f * grid * f.transpose()).array();
}

PhaseSpaceDensity amplitude_power_spectrum(const QuantumState& s) {
  const QuantumState transformed = apply_fourier(s);
  return born_distribution(transformed);
}

double tv_distance(const PhaseSpaceDensity& d1, const PhaseSpaceDensity& d2) {
  if (!(d1.size() == d2.size())) {
    throw std::invalid_argument("tv_distance: grid size mismatch");
  }
  return 0.5 * (d1.grid() - d2.grid()).abs().sum();
}

double linf_distance(const Eigen::ArrayXXcd& a, const Eigen::ArrayXXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("linf_distance: grid size mismatch");
  }
  return (a - b).abs().maxCoeff();
}

ChiSquareResult chi_square_two_sample(const EmpiricalDensity& e1, const EmpiricalDensity& e2) {
  if (!(e1.size() == e2.size())) {
    throw std::invalid_argument("chi_square_two_sample: grid size mismatch");
  }
  if (e1.total() <= 0 || e2.total() <= 0) {
    throw std::invalid_argument("chi_square_two_sample: empty histogram");
  }

  struct CellCounts {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t combined() const { return a + b; }
  };

  const std::int64_t cells = e1.size().cells();
  std::vector<std::int64_t> order;
  order.reserve(static_cast<std::size_t>(cells));
  const auto count_at = [&](const EmpiricalDensity& e, std::int64_t idx) {
    const LatticePoint p = cell_from_index(idx, e.size());
    return e.counts()(p.i, p.j);
  };
  for (std::int64_t idx = 0; idx < cells; ++idx) {
    if (count_at(e1, idx) + count_at(e2, idx) > 0) order.push_back(idx);
  }
  std::sort(order.begin(), order.end(), [&](std::int64_t lhs, std::int64_t rhs) {
    const std::int64_t cl = count_at(e1, lhs) + count_at(e2, lhs);
    const std::int64_t cr = count_at(e1, rhs) + count_at(e2, rhs);
    return cl != cr ? cl < cr : lhs < rhs;
  });

  constexpr std::int64_t kMinPoolCount = 5;
  std::vector<CellCounts> pools;
  CellCounts open;
  for (const std::int64_t idx : order) {
    open.a += count_at(e1, idx);
    open.b += count_at(e2, idx);
    if (open.combined() >= kMinPoolCount) {
      pools.push_back(open);
      open = CellCounts{};
    }
  }
  if (open.combined() > 0) {
    if (pools.empty()) {
      pools.push_back(open);
    } else {
      pools.back().a += open.a;
      pools.back().b += open.b;
    }
  }
  if (pools.size() < 2) {
    throw std::invalid_argument("chi_square_two_sample: fewer than 2 pooled cells");
  }

  const double total_a = static_cast<double>(e1.total());
  const double total_b = static_cast<double>(e2.total());
  const double ra = std::sqrt(total_b / total_a);
  const double rb = std::sqrt(total_a / total_b);
  double statistic = 0.0;
  for (const CellCounts& pool : pools) {
    const double diff = ra * static_cast<double>(pool.a) - rb * static_cast<double>(pool.b);
    statistic += diff * diff / static_cast<double>(pool.combined());
  }

  ChiSquareResult result;
  result.statistic = statistic;
  result.pooled_cells = static_cast<int>(pools.size());
  result.dof = result.pooled_cells - 1;
  const boost::math::chi_squared dist(result.dof);
  result.p_value = boost::math::cdf(boost::math::complement(dist, statistic));
  return result;
}

}  // namespace catsim
