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

#ifndef CATSIM_RNG_HPP
#define CATSIM_RNG_HPP

#include <cstdint>

// Counter-based random streams. Every random decision in the simulators is a
// pure function of (seed, stream, counters), so results are independent of
// evaluation order and of how work is split across threads, and the coherent
// and incoherent protocols can consume the identical event stream from the
// same trajectory seed.

namespace catsim::rng {

/// SplitMix64 finalizer; the mixing primitive behind every derived stream.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Disjoint stream tags; draws from different streams never collide.
enum class Stream : std::uint64_t {
  kTrajectory = 1,   // per-trajectory seeds split from a master seed
  kNoise = 2,        // per-gate, per-bit error events
  kInitialCell = 3,  // classical-protocol initial cell draws
  kMeasurement = 4,  // diagonal-measurement shot draws
  kPhase = 5,        // random amplitude phases
  kSubExperiment = 6,  // protocol / section sub-seeds inside an experiment
};

inline constexpr std::uint64_t derive(std::uint64_t seed, Stream stream,
                                      std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc908ull);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return h;
}

/// Maps a hash to [0, 1) with 53 significant bits.
inline constexpr double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline constexpr double uniform(std::uint64_t seed, Stream stream,
                                std::uint64_t a = 0, std::uint64_t b = 0) {
  return to_unit(derive(seed, stream, a, b));
}

}  // namespace catsim::rng

#endif  // CATSIM_RNG_HPP
