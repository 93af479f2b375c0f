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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "catsim/density.hpp"
#include "catsim/lattice.hpp"

using namespace catsim;

TEST_CASE("forward map on hand-checked cells") {
  const LatticeSize n8 = LatticeSize::from_bits(3);
  CHECK(forward({0, 0}, n8) == LatticePoint{0, 0});
  CHECK(forward({1, 2}, n8) == LatticePoint{4, 3});
  CHECK(forward({7, 7}, n8) == LatticePoint{5, 6});
}

TEST_CASE("inverse undoes forward") {
  const LatticeSize n8 = LatticeSize::from_bits(3);
  CHECK(inverse({0, 0}, n8) == LatticePoint{0, 0});
  CHECK(inverse({4, 3}, n8) == LatticePoint{1, 2});
  for (std::int64_t i = 0; i < n8.n; ++i) {
    for (std::int64_t j = 0; j < n8.n; ++j) {
      const LatticePoint p{i, j};
      CHECK(forward(inverse(p, n8), n8) == p);
      CHECK(inverse(forward(p, n8), n8) == p);
    }
  }
}

TEST_CASE("iterate composes forward and inverse") {
  const LatticeSize n2 = LatticeSize::from_bits(1);
  // The 3-cycle (1,0) -> (0,1) -> (1,1) -> (1,0) on the 2x2 lattice.
  CHECK(iterate({1, 0}, 3, n2) == LatticePoint{1, 0});
  CHECK(iterate({1, 0}, 1, n2) == LatticePoint{0, 1});
  CHECK(iterate({1, 0}, 2, n2) == LatticePoint{1, 1});

  const LatticeSize n8 = LatticeSize::from_bits(3);
  CHECK(iterate({5, 6}, 0, n8) == LatticePoint{5, 6});
  CHECK(iterate({1, 2}, 2, n8) == forward(forward({1, 2}, n8), n8));
}

TEST_CASE("forward is a bijection for every tested lattice") {
  for (int nq = 1; nq <= 6; ++nq) {
    const LatticeSize size = LatticeSize::from_bits(nq);
    std::set<std::int64_t> image;
    for (std::int64_t i = 0; i < size.n; ++i) {
      for (std::int64_t j = 0; j < size.n; ++j) {
        image.insert(cell_index(forward({i, j}, size), size));
      }
    }
    CHECK(static_cast<std::int64_t>(image.size()) == size.cells());
  }
}

TEST_CASE("iterate additivity on random offsets") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::int64_t> offset(-20, 20);
  for (int nq = 1; nq <= 6; ++nq) {
    const LatticeSize size = LatticeSize::from_bits(nq);
    std::uniform_int_distribution<std::int64_t> coord(0, size.n - 1);
    for (int rep = 0; rep < 50; ++rep) {
      const LatticePoint p{coord(gen), coord(gen)};
      const std::int64_t a = offset(gen);
      const std::int64_t b = offset(gen);
      CHECK(iterate(p, a + b, size) == iterate(iterate(p, a, size), b, size));
    }
  }
}

TEST_CASE("point validation") {
  const LatticeSize n4 = LatticeSize::from_bits(2);
  CHECK_THROWS_AS(forward({4, 0}, n4), std::invalid_argument);
  CHECK_THROWS_AS(forward({0, -1}, n4), std::invalid_argument);
  CHECK_THROWS_AS(LatticeSize::from_bits(0), std::invalid_argument);
  CHECK_THROWS_AS(LatticeSize::from_bits(32), std::invalid_argument);
}

TEST_CASE("pushforward permutes masses exactly") {
  const LatticeSize n8 = LatticeSize::from_bits(3);

  SUBCASE("uniform stays uniform") {
    const PhaseSpaceDensity u = PhaseSpaceDensity::uniform(n8);
    for (const std::int64_t t : {-5, 0, 3, 17}) {
      CHECK((pushforward(u, t).grid() == u.grid()).all());
    }
  }

  SUBCASE("delta moves with the map") {
    const PhaseSpaceDensity d = PhaseSpaceDensity::delta(n8, {1, 2});
    const PhaseSpaceDensity moved = pushforward(d, 1);
    CHECK(moved.at({4, 3}) == 1.0);
    CHECK(moved.support_size() == 1);
  }

  SUBCASE("round trip restores every mass bit for bit") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> mass(0.0, 1.0);
    Eigen::ArrayXXd grid(n8.n, n8.n);
    for (std::int64_t j = 0; j < n8.n; ++j) {
      for (std::int64_t i = 0; i < n8.n; ++i) grid(i, j) = mass(gen);
    }
    grid /= grid.sum();
    const PhaseSpaceDensity d(n8, grid);
    for (const std::int64_t t : {1, 4, 9}) {
      const PhaseSpaceDensity back = pushforward(pushforward(d, t), -t);
      CHECK((back.grid() == d.grid()).all());
    }
  }

  SUBCASE("masses are conserved as a multiset") {
    const PhaseSpaceDensity d = PhaseSpaceDensity::block(n8, 1, 2, 3, 2);
    const PhaseSpaceDensity moved = pushforward(d, 7);
    CHECK(moved.grid().sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(moved.support_size() == d.support_size());
    CHECK(moved.grid().maxCoeff() == d.grid().maxCoeff());
  }
}
