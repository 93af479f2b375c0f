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

#ifndef CATSIM_CIRCUIT_HPP
#define CATSIM_CIRCUIT_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "catsim/lattice.hpp"

namespace catsim {

enum class GateKind : std::uint8_t { kNot, kCnot, kToffoli };

/// One reversible bit gate. Controls come first, target last; all three kinds
/// are involutions, so a circuit is inverted by reversing its gate order.
struct Gate {
  GateKind kind = GateKind::kNot;
  std::array<std::uint8_t, 3> bits{};  // controls..., target

  static Gate not_gate(int target) {
    return Gate{GateKind::kNot, {static_cast<std::uint8_t>(target), 0, 0}};
  }
  static Gate cnot(int control, int target) {
    return Gate{GateKind::kCnot,
                {static_cast<std::uint8_t>(control), static_cast<std::uint8_t>(target), 0}};
  }
  static Gate toffoli(int control_a, int control_b, int target) {
    return Gate{GateKind::kToffoli,
                {static_cast<std::uint8_t>(control_a), static_cast<std::uint8_t>(control_b),
                 static_cast<std::uint8_t>(target)}};
  }

  int arity() const {
    switch (kind) {
      case GateKind::kNot: return 1;
      case GateKind::kCnot: return 2;
      case GateKind::kToffoli: return 3;
    }
    return 0;
  }
  int target() const { return bits[arity() - 1]; }
};

/// Bit register layout (little-endian within each register):
///   bits [0, nq)        coordinate i
///   bits [nq, 2*nq)     coordinate j
///   bits [2*nq, width)  ancillas, 0 on entry and (noiselessly) 0 on exit
struct Circuit {
  int nq = 0;
  int width = 0;
  std::vector<Gate> gates;

  int ancilla_count() const { return width - 2 * nq; }
};

/// Every gate must address distinct bits inside the circuit width.
void require_well_formed(const Circuit& c);

/// Fixed-width bit vector packed into one machine word (width <= 64).
struct BitString {
  std::uint64_t word = 0;
  int width = 0;

  static BitString zeros(int width) {
    if (width < 1 || width > 64) {
      throw std::invalid_argument("BitString: width must be in [1, 64]");
    }
    return BitString{0, width};
  }

  /// Packs a cell into the data registers; ancillas start at 0.
  static BitString encode_cell(const LatticePoint& p, const LatticeSize& size, int width) {
    require_valid(size, p);
    BitString b = zeros(width);
    b.word = static_cast<std::uint64_t>(p.i) |
             (static_cast<std::uint64_t>(p.j) << size.nq);
    return b;
  }

  LatticePoint decode_cell(const LatticeSize& size) const {
    const std::uint64_t mask = (std::uint64_t{1} << size.nq) - 1;
    return LatticePoint{static_cast<std::int64_t>(word & mask),
                        static_cast<std::int64_t>((word >> size.nq) & mask)};
  }

  bool bit(int b) const { return (word >> b) & 1u; }
  void set(int b, bool v) {
    word = (word & ~(std::uint64_t{1} << b)) | (std::uint64_t{v} << b);
  }
  std::uint64_t ancilla_bits(int nq) const { return word >> (2 * nq); }

  friend bool operator==(const BitString&, const BitString&) = default;
};

// Gates emitted per map step: two ripple-carry adders of 6*nq gates each.
inline constexpr int kGatesPerStepPerBit = 12;

/// Compiles one cat-map step (see lattice.hpp) into NOT/CNOT/Toffoli gates:
/// an in-place adder computing j += i mod 2^nq followed by one computing
/// i += j mod 2^nq. One ancilla carry bit, returned to 0 by the adder's
/// uncomputation, so width = 2*nq + 1. Exactly kGatesPerStepPerBit * nq gates.
Circuit build_step_circuit(const LatticeSize& size);

/// Reversed gate order; invert(c) then c is the identity on every bit-string.
Circuit invert(const Circuit& c);

/// Runs the gate sequence on a bit-string.
BitString apply_classical(const Circuit& c, BitString b);

/// In-place single-gate action on a packed word.
inline void apply_gate_word(const Gate& g, std::uint64_t& w) {
  switch (g.kind) {
    case GateKind::kNot:
      w ^= std::uint64_t{1} << g.bits[0];
      break;
    case GateKind::kCnot:
      w ^= ((w >> g.bits[0]) & 1u) << g.bits[1];
      break;
    case GateKind::kToffoli:
      w ^= ((w >> g.bits[0]) & (w >> g.bits[1]) & 1u) << g.bits[2];
      break;
  }
}

/// Tabulates the circuit's action on all N^2 cells (ancillas 0 in, 0 out).
/// Throws if any input dirties the ancillas or the table is not a bijection.
std::vector<std::uint32_t> as_permutation(const Circuit& c, const LatticeSize& size);

/// Plain-text listing, one gate per line: kind followed by bit indices.
std::string format_circuit(const Circuit& c);

}  // namespace catsim

#endif  // CATSIM_CIRCUIT_HPP
