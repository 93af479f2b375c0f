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

#include "catsim/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace catsim {

namespace {

// Ripple-carry majority / un-majority blocks (Cuccaro-style). With carry-in
// bit c, the MAJ chain leaves the running carry in the a-register bit; the UMA
// chain undoes the scratch state while depositing sum bits into b. Dropping
// the final carry-out makes the adder the permutation (a, b) -> (a, a+b mod
// 2^n), and the single carry ancilla returns to 0.
void emit_maj(std::vector<Gate>& gates, int c, int b, int a) {
  gates.push_back(Gate::cnot(a, b));
  gates.push_back(Gate::cnot(a, c));
  gates.push_back(Gate::toffoli(c, b, a));
}

void emit_uma(std::vector<Gate>& gates, int c, int b, int a) {
  gates.push_back(Gate::toffoli(c, b, a));
  gates.push_back(Gate::cnot(a, c));
  gates.push_back(Gate::cnot(c, b));
}

// b += a mod 2^n, in place. a_bit/b_bit map register-internal positions to
// circuit bit indices; carry is the ancilla bit index.
void emit_modular_adder(std::vector<Gate>& gates, int n, int a_base, int b_base, int carry) {
  for (int k = 0; k < n; ++k) {
    const int c = (k == 0) ? carry : a_base + k - 1;
    emit_maj(gates, c, b_base + k, a_base + k);
  }
  for (int k = n - 1; k >= 0; --k) {
    const int c = (k == 0) ? carry : a_base + k - 1;
    emit_uma(gates, c, b_base + k, a_base + k);
  }
}

}  // namespace

Circuit build_step_circuit(const LatticeSize& size) {
  const int nq = size.nq;
  Circuit c;
  c.nq = nq;
  c.width = 2 * nq + 1;
  if (c.width > 64) {
    throw std::invalid_argument("build_step_circuit: circuit width exceeds 64 bits");
  }
  c.gates.reserve(static_cast<std::size_t>(kGatesPerStepPerBit) * nq);
  const int i_base = 0;
  const int j_base = nq;
  const int carry = 2 * nq;
  emit_modular_adder(c.gates, nq, i_base, j_base, carry);  // j += i
  emit_modular_adder(c.gates, nq, j_base, i_base, carry);  // i += j
  return c;
}

void require_well_formed(const Circuit& c) {
  if (c.nq < 1 || c.width < 2 * c.nq || c.width > 64) {
    throw std::invalid_argument("Circuit: width must cover both registers and fit a word");
  }
  for (const Gate& g : c.gates) {
    const int arity = g.arity();
    for (int a = 0; a < arity; ++a) {
      if (g.bits[a] >= c.width) {
        throw std::invalid_argument("Circuit: gate bit index outside circuit width");
      }
      for (int b = a + 1; b < arity; ++b) {
        if (g.bits[a] == g.bits[b]) {
          throw std::invalid_argument("Circuit: gate bits must be distinct");
        }
      }
    }
  }
}

Circuit invert(const Circuit& c) {
  Circuit out = c;
  std::reverse(out.gates.begin(), out.gates.end());
  return out;
}

BitString apply_classical(const Circuit& c, BitString b) {
  require_well_formed(c);
  if (b.width != c.width) {
    throw std::invalid_argument("apply_classical: bit-string width does not match circuit");
  }
  for (const Gate& g : c.gates) {
    apply_gate_word(g, b.word);
  }
  return b;
}

std::vector<std::uint32_t> as_permutation(const Circuit& c, const LatticeSize& size) {
  if (c.nq != size.nq) {
    throw std::invalid_argument("as_permutation: circuit register size does not match lattice");
  }
  if (size.nq > 8) {
    throw std::invalid_argument("as_permutation: table restricted to nq <= 8");
  }
  const std::int64_t cells = size.cells();
  std::vector<std::uint32_t> table(cells);
  std::vector<bool> seen(cells, false);
  for (std::int64_t idx = 0; idx < cells; ++idx) {
    const BitString in = BitString::encode_cell(cell_from_index(idx, size), size, c.width);
    const BitString out = apply_classical(c, in);
    if (out.ancilla_bits(c.nq) != 0) {
      throw std::runtime_error("as_permutation: ancilla bits not restored to 0");
    }
    const std::int64_t out_idx = cell_index(out.decode_cell(size), size);
    if (seen[out_idx]) {
      throw std::runtime_error("as_permutation: circuit action is not a bijection");
    }
    seen[out_idx] = true;
    table[idx] = static_cast<std::uint32_t>(out_idx);
  }
  return table;
}

std::string format_circuit(const Circuit& c) {
  std::ostringstream out;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::kNot:
        out << "NOT " << int(g.bits[0]);
        break;
      case GateKind::kCnot:
        out << "CNOT " << int(g.bits[0]) << ' ' << int(g.bits[1]);
        break;
      case GateKind::kToffoli:
        out << "TOFFOLI " << int(g.bits[0]) << ' ' << int(g.bits[1]) << ' ' << int(g.bits[2]);
        break;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace catsim
