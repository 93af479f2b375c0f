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
#include <sstream>

#include "catsim/circuit.hpp"
#include "catsim/lattice.hpp"

using namespace catsim;

TEST_CASE("step circuit realizes the map on every cell, exhaustively") {
  for (int nq = 1; nq <= 6; ++nq) {
    const LatticeSize size = LatticeSize::from_bits(nq);
    const Circuit c = build_step_circuit(size);
    const std::vector<std::uint32_t> table = as_permutation(c, size);
    for (std::int64_t idx = 0; idx < size.cells(); ++idx) {
      const LatticePoint p = cell_from_index(idx, size);
      CHECK(table[idx] == cell_index(forward(p, size), size));
    }
  }
}

TEST_CASE("inverted step circuit realizes the inverse map") {
  for (int nq = 1; nq <= 5; ++nq) {
    const LatticeSize size = LatticeSize::from_bits(nq);
    const std::vector<std::uint32_t> table = as_permutation(invert(build_step_circuit(size)), size);
    for (std::int64_t idx = 0; idx < size.cells(); ++idx) {
      const LatticePoint p = cell_from_index(idx, size);
      CHECK(table[idx] == cell_index(inverse(p, size), size));
    }
  }
}

TEST_CASE("gate count and width are linear in register size") {
  for (int nq = 1; nq <= 12; ++nq) {
    const Circuit c = build_step_circuit(LatticeSize::from_bits(nq));
    CHECK(c.gates.size() ==
          static_cast<std::size_t>(kGatesPerStepPerBit) * static_cast<std::size_t>(nq));
    CHECK(c.width == 2 * nq + 1);
    CHECK(c.ancilla_count() == 1);
    for (const Gate& g : c.gates) {
      for (int b = 0; b < g.arity(); ++b) CHECK(g.bits[b] < c.width);
    }
  }
}

TEST_CASE("ancillas come back clean") {
  SUBCASE("exhaustive for small registers") {
    for (int nq = 1; nq <= 4; ++nq) {
      const LatticeSize size = LatticeSize::from_bits(nq);
      const Circuit c = build_step_circuit(size);
      for (std::int64_t idx = 0; idx < size.cells(); ++idx) {
        const BitString in = BitString::encode_cell(cell_from_index(idx, size), size, c.width);
        CHECK(apply_classical(c, in).ancilla_bits(nq) == 0);
      }
    }
  }
  SUBCASE("randomized for larger registers") {
    std::mt19937_64 gen(3);
    for (int nq = 5; nq <= 10; ++nq) {
      const LatticeSize size = LatticeSize::from_bits(nq);
      const Circuit c = build_step_circuit(size);
      std::uniform_int_distribution<std::int64_t> coord(0, size.n - 1);
      for (int rep = 0; rep < 200; ++rep) {
        const BitString in =
            BitString::encode_cell({coord(gen), coord(gen)}, size, c.width);
        CHECK(apply_classical(c, in).ancilla_bits(nq) == 0);
      }
    }
  }
}

TEST_CASE("inversion is gate-order reversal") {
  const Circuit empty{3, 7, {}};
  CHECK(invert(empty).gates.empty());

  Circuit single{3, 7, {Gate::cnot(0, 4)}};
  const Circuit same = invert(single);
  REQUIRE(same.gates.size() == 1);
  CHECK(same.gates[0].kind == GateKind::kCnot);
  CHECK(same.gates[0].bits == single.gates[0].bits);

  const LatticeSize size = LatticeSize::from_bits(3);
  const Circuit step = build_step_circuit(size);
  const Circuit back = invert(step);
  SUBCASE("round trip over all encoded cells") {
    for (std::int64_t idx = 0; idx < size.cells(); ++idx) {
      const BitString in = BitString::encode_cell(cell_from_index(idx, size), size, step.width);
      CHECK(apply_classical(back, apply_classical(step, in)) == in);
    }
  }
  SUBCASE("round trip over random full-width bit-strings") {
    const Circuit wide = build_step_circuit(LatticeSize::from_bits(5));
    const Circuit wide_back = invert(wide);
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<std::uint64_t> word(0, (std::uint64_t{1} << wide.width) - 1);
    for (int rep = 0; rep < 1000; ++rep) {
      const BitString b{word(gen), wide.width};
      CHECK(apply_classical(wide_back, apply_classical(wide, b)) == b);
    }
  }
}

TEST_CASE("apply_classical basics") {
  const LatticeSize size = LatticeSize::from_bits(3);
  const Circuit step = build_step_circuit(size);

  const Circuit empty{3, step.width, {}};
  const BitString b = BitString::encode_cell({5, 1}, size, step.width);
  CHECK(apply_classical(empty, b) == b);

  const BitString out = apply_classical(step, BitString::encode_cell({1, 2}, size, step.width));
  CHECK(out.decode_cell(size) == LatticePoint{4, 3});
  CHECK(out.ancilla_bits(3) == 0);

  Circuit flip{3, step.width, {Gate::not_gate(0)}};
  CHECK(apply_classical(flip, BitString::zeros(step.width)).word == 1);

  CHECK_THROWS_AS(apply_classical(step, BitString::zeros(step.width + 1)),
                  std::invalid_argument);
}

TEST_CASE("as_permutation flags dirty ancillas and identity circuits") {
  const LatticeSize size = LatticeSize::from_bits(2);
  const Circuit empty{2, 5, {}};
  const std::vector<std::uint32_t> table = as_permutation(empty, size);
  for (std::uint32_t idx = 0; idx < table.size(); ++idx) CHECK(table[idx] == idx);

  const Circuit dirty{2, 5, {Gate::not_gate(4)}};  // flips the ancilla
  CHECK_THROWS_AS(as_permutation(dirty, size), std::runtime_error);

  const Circuit mismatched{3, 7, {}};
  CHECK_THROWS_AS(as_permutation(mismatched, size), std::invalid_argument);
}

TEST_CASE("circuit listing is one gate per line") {
  Circuit c{2, 5, {Gate::not_gate(3), Gate::cnot(0, 2), Gate::toffoli(4, 1, 0)}};
  CHECK(format_circuit(c) == "NOT 3\nCNOT 0 2\nTOFFOLI 4 1 0\n");

  const Circuit step = build_step_circuit(LatticeSize::from_bits(2));
  std::istringstream lines(format_circuit(step));
  std::size_t count = 0;
  std::string line;
  while (std::getline(lines, line)) {
    CHECK((line.starts_with("NOT ") || line.starts_with("CNOT ") ||
           line.starts_with("TOFFOLI ")));
    ++count;
  }
  CHECK(count == step.gates.size());
}
