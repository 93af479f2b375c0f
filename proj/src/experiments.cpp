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

#include "catsim/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "catsim/observables.hpp"

namespace catsim {

namespace {

// Pass/fail thresholds. Exact claims are checked at 1e-12; sampled claims use
// a total-variation bound of 1.2 * sqrt(K / M) for K support cells and M
// samples per side (the mean TV between two same-distribution histograms is
// ~0.8 * sqrt(K / M), and TV concentrates within O(1 / sqrt(M))), a
// chi-square p-value floor of 1e-3, and a harmonics bound of 2 * tv / N
// (a unitary DFT coefficient moves by at most 1/N times the summed cell
// difference, which is 2 * TV).
constexpr double kExactTolerance = 1e-12;
constexpr double kPValueFloor = 1e-3;

// Sub-seed tags so the phase draw and the two protocols consume unrelated
// streams of the master seed.
constexpr std::uint64_t kSeedPhases = 1;
constexpr std::uint64_t kSeedQuantum = 2;
constexpr std::uint64_t kSeedClassical = 3;

double tv_sampling_threshold(std::int64_t support_cells, std::int64_t samples) {
  return std::min(1.0, 1.2 * std::sqrt(static_cast<double>(support_cells) /
                                       static_cast<double>(samples)));
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void validate_common(const ExperimentConfig& cfg, bool runs_coherent) {
  if (cfg.nq < 1) {
    throw std::invalid_argument("config: nq must be >= 1");
  }
  if (cfg.steps < 0) {
    throw std::invalid_argument("config: steps must be >= 0");
  }
  if (cfg.shots < 1) {
    throw std::invalid_argument("config: shots must be >= 1");
  }
  NoiseModel{cfg.p_x, cfg.p_z, cfg.master_seed}.validate();
  if (runs_coherent && cfg.nq > cfg.coherent_nq_cap) {
    throw std::invalid_argument("config: nq exceeds the coherent memory cap");
  }
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
  return nlohmann::json{
      {"nq", cfg.nq},
      {"steps", cfg.steps},
      {"shots", cfg.shots},
      {"master_seed", cfg.master_seed},
      {"p_x", cfg.p_x},
      {"p_z", cfg.p_z},
      {"initial", cfg.initial},
      {"coarse_factor", cfg.coarse_factor},
      {"phases", cfg.phases == PhasePolicy::kZero ? "zero" : "random"},
      {"coherent_nq_cap", cfg.coherent_nq_cap},
  };
}

std::uint64_t leg_gate_count(const std::vector<ScheduleLeg>& legs) {
  std::uint64_t total = 0;
  for (const ScheduleLeg& leg : legs) {
    total += static_cast<std::uint64_t>(leg.steps) * leg.circuit.gates.size();
  }
  return total;
}

void evolve_schedule_inplace(QuantumState& s, const std::vector<ScheduleLeg>& legs,
                             const NoiseModel& noise, std::uint64_t traj_seed) {
  std::uint64_t offset = 0;
  for (const ScheduleLeg& leg : legs) {
    for (int t = 0; t < leg.steps; ++t) {
      apply_circuit_coherent_inplace(s, leg.circuit, noise, traj_seed, offset);
      offset += leg.circuit.gates.size();
    }
  }
}

LatticePoint trajectory_schedule(const LatticePoint& p, const std::vector<ScheduleLeg>& legs,
                                 const NoiseModel& noise, std::uint64_t traj_seed) {
  LatticePoint q = p;
  std::uint64_t offset = 0;
  for (const ScheduleLeg& leg : legs) {
    q = run_trajectory(q, leg.circuit, leg.steps, noise, traj_seed, offset);
    offset += static_cast<std::uint64_t>(leg.steps) * leg.circuit.gates.size();
  }
  return q;
}

// Runs body(begin, end, worker) over a contiguous partition of [0, count).
template <typename Body>
void parallel_chunks(std::int64_t count, int threads, Body&& body) {
  const int workers =
      static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), std::max<std::int64_t>(count, 1)));
  if (workers == 1) {
    body(std::int64_t{0}, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (std::thread& t : pool) t.join();
}

std::optional<ChiSquareResult> try_chi_square(const EmpiricalDensity& e1,
                                              const EmpiricalDensity& e2) {
  try {
    return chi_square_two_sample(e1, e2);
  } catch (const std::invalid_argument&) {
    // Degenerate histograms (fewer than 2 pools) carry no distinguishing
    // information; the comparison is vacuous rather than failed.
    return std::nullopt;
  }
}

// Moves grid masses through a circuit permutation table, flat col-major
// indexing (cell_index order). Pure data movement: no arithmetic, so a
// round trip restores the grid bit for bit.
Eigen::ArrayXXd transport_grid(const Eigen::ArrayXXd& grid,
                               const std::vector<std::uint32_t>& table) {
  Eigen::ArrayXXd out(grid.rows(), grid.cols());
  const auto flat_in = grid.reshaped();
  auto flat_out = out.reshaped();
  for (Eigen::Index idx = 0; idx < flat_in.size(); ++idx) {
    flat_out[table[static_cast<std::size_t>(idx)]] = flat_in[idx];
  }
  return out;
}

std::vector<std::int64_t> parse_int_fields(std::string_view text, std::size_t expected,
                                           const std::string& what) {
  std::vector<std::int64_t> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw std::invalid_argument(what + ": bad integer field '" + std::string(field) + "'");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (values.size() != expected) {
    throw std::invalid_argument(what + ": expected " + std::to_string(expected) + " fields");
  }
  return values;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return std::min(requested, 64);
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

PhaseSpaceDensity parse_initial_density(const std::string& spec, const LatticeSize& size) {
  if (spec == "uniform") {
    return PhaseSpaceDensity::uniform(size);
  }
  if (spec.starts_with("delta:")) {
    const auto v = parse_int_fields(std::string_view(spec).substr(6), 2, "delta");
    return PhaseSpaceDensity::delta(size, LatticePoint{v[0], v[1]});
  }
  if (spec.starts_with("block:")) {
    const auto v = parse_int_fields(std::string_view(spec).substr(6), 4, "block");
    return PhaseSpaceDensity::block(size, v[0], v[1], v[2], v[3]);
  }
  throw std::invalid_argument(
      "initial density must be 'uniform', 'delta:i,j' or 'block:i0,j0,w,h'");
}

EmpiricalDensity classical_batch(const PhaseSpaceDensity& initial,
                                 const std::vector<ScheduleLeg>& legs,
                                 const NoiseModel& noise, std::uint64_t seed_base,
                                 std::int64_t count, int threads) {
  const LatticeSize size = initial.size();
  const DensitySampler sampler(initial);
  std::vector<EmpiricalDensity> partials(static_cast<std::size_t>(std::max(threads, 1)),
                                         EmpiricalDensity(size));
  parallel_chunks(count, threads, [&](std::int64_t begin, std::int64_t end, int worker) {
    EmpiricalDensity& local = partials[static_cast<std::size_t>(worker)];
    for (std::int64_t m = begin; m < end; ++m) {
      const std::uint64_t seed = trajectory_seed(seed_base, static_cast<std::uint64_t>(m));
      const LatticePoint start = sampler.sample(seed);
      local.add(trajectory_schedule(start, legs, noise, seed));
    }
  });
  EmpiricalDensity merged(size);
  for (const EmpiricalDensity& part : partials) merged.merge(part);
  return merged;
}

EmpiricalDensity quantum_batch(const QuantumState& initial,
                               const std::vector<ScheduleLeg>& legs,
                               const NoiseModel& noise, std::uint64_t seed_base,
                               std::int64_t count, int threads) {
  const LatticeSize size = initial.size();
  std::vector<EmpiricalDensity> partials(static_cast<std::size_t>(std::max(threads, 1)),
                                         EmpiricalDensity(size));

  if (noise.p_x == 0.0) {
    // Z events only flip amplitude signs and gates only permute amplitudes,
    // so every trajectory's Born distribution is bit-identical to the
    // noiseless one; evolve once and keep the per-shot measurement draws.
    QuantumState final_state = initial;
    evolve_schedule_inplace(final_state, legs, NoiseModel{0.0, 0.0, noise.master_seed}, 0);
    Eigen::VectorXd cumulative = born_cell_probabilities(final_state);
    std::partial_sum(cumulative.data(), cumulative.data() + cumulative.size(),
                     cumulative.data());
    parallel_chunks(count, threads, [&](std::int64_t begin, std::int64_t end, int worker) {
      EmpiricalDensity& local = partials[static_cast<std::size_t>(worker)];
      for (std::int64_t m = begin; m < end; ++m) {
        const std::uint64_t seed = trajectory_seed(seed_base, static_cast<std::uint64_t>(m));
        const double u = rng::uniform(seed, rng::Stream::kMeasurement);
        local.add(sample_cell_from_cumulative(cumulative, size, u));
      }
    });
  } else {
    parallel_chunks(count, threads, [&](std::int64_t begin, std::int64_t end, int worker) {
      EmpiricalDensity& local = partials[static_cast<std::size_t>(worker)];
      for (std::int64_t m = begin; m < end; ++m) {
        const std::uint64_t seed = trajectory_seed(seed_base, static_cast<std::uint64_t>(m));
        QuantumState s = initial;
        evolve_schedule_inplace(s, legs, noise, seed);
        Eigen::VectorXd cumulative = born_cell_probabilities(s);
        std::partial_sum(cumulative.data(), cumulative.data() + cumulative.size(),
                         cumulative.data());
        const double u = rng::uniform(seed, rng::Stream::kMeasurement);
        local.add(sample_cell_from_cumulative(cumulative, size, u));
      }
    });
  }

  EmpiricalDensity merged(size);
  for (const EmpiricalDensity& part : partials) merged.merge(part);
  return merged;
}

bool ExperimentReport::passed() const {
  for (const auto& [name, flag] : verdicts.items()) {
    (void)name;
    if (!flag.is_boolean() || !flag.get<bool>()) return false;
  }
  return true;
}

nlohmann::json ExperimentReport::to_json(bool include_timings) const {
  nlohmann::json out{
      {"experiment", experiment},
      {"config", config},
      {"metrics", metrics},
      {"verdicts", verdicts},
  };
  if (include_timings) out["timings"] = timings;
  return out;
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  const auto dump_value = [](const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  if (metrics.contains("table")) {
    // Row key: nq leads, remaining columns in object (alphabetical) order,
    // measured timing columns last.
    const nlohmann::json& rows = metrics["table"];
    const nlohmann::json* timing_rows =
        timings.contains("table") ? &timings["table"] : nullptr;
    if (rows.empty()) return "";
    out << "nq";
    for (const auto& [key, value] : rows.front().items()) {
      (void)value;
      if (key != "nq") out << ',' << key;
    }
    if (timing_rows != nullptr) {
      for (const auto& [key, value] : timing_rows->front().items()) {
        (void)value;
        if (key != "nq") out << ',' << key;
      }
    }
    out << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out << dump_value(rows[r]["nq"]);
      for (const auto& [key, value] : rows[r].items()) {
        if (key != "nq") out << ',' << dump_value(value);
      }
      if (timing_rows != nullptr) {
        for (const auto& [key, value] : (*timing_rows)[r].items()) {
          if (key != "nq") out << ',' << dump_value(value);
        }
      }
      out << '\n';
    }
    return out.str();
  }
  out << "metric,value\n";
  for (const auto& [key, value] : metrics.items()) {
    out << key << ',' << dump_value(value) << '\n';
  }
  for (const auto& [key, value] : verdicts.items()) {
    out << "verdict." << key << ',' << dump_value(value) << '\n';
  }
  return out.str();
}

ExperimentReport run_equivalence(const ExperimentConfig& cfg) {
  validate_common(cfg, /*runs_coherent=*/true);
  const LatticeSize size = LatticeSize::from_bits(cfg.nq);
  require_grid_size(size);
  if (cfg.coarse_factor < 1 || size.n % cfg.coarse_factor != 0) {
    throw std::invalid_argument("config: coarse factor must divide N");
  }
  const Stopwatch total;
  const int threads = resolve_threads(cfg.threads);

  const Circuit step = build_step_circuit(size);
  const PhaseSpaceDensity d0 = parse_initial_density(cfg.initial, size);
  const NoiseModel noise{cfg.p_x, cfg.p_z, cfg.master_seed};
  const std::vector<ScheduleLeg> legs{{step, cfg.steps}};

  // Exact level, perfect gates: Born density of the coherent circuit run
  // against the oracle pushforward of the initial density.
  const Stopwatch exact_watch;
  const std::uint64_t phase_seed =
      rng::derive(cfg.master_seed, rng::Stream::kSubExperiment, kSeedPhases);
  const QuantumState psi0 = from_density(d0, cfg.phases, phase_seed);
  const QuantumState psi_t =
      evolve_coherent(psi0, step, cfg.steps, NoiseModel{}, 0);
  const PhaseSpaceDensity born = born_distribution(psi_t);
  const PhaseSpaceDensity exact = pushforward(d0, cfg.steps);
  const double tv_exact = tv_distance(born, exact);
  const double exact_seconds = exact_watch.seconds();

  // Finite samples, configured noise: M coherent shots vs M incoherent
  // trajectories, compared raw, coarse-grained, and through harmonics.
  const Stopwatch sampling_watch;
  const std::uint64_t q_base =
      rng::derive(cfg.master_seed, rng::Stream::kSubExperiment, kSeedQuantum);
  const std::uint64_t c_base =
      rng::derive(cfg.master_seed, rng::Stream::kSubExperiment, kSeedClassical);
  const EmpiricalDensity e_q = quantum_batch(psi0, legs, noise, q_base, cfg.shots, threads);
  const EmpiricalDensity e_c = classical_batch(d0, legs, noise, c_base, cfg.shots, threads);
  const double sampling_seconds = sampling_watch.seconds();

  const PhaseSpaceDensity d_q = e_q.normalize();
  const PhaseSpaceDensity d_c = e_c.normalize();
  const double tv_emp = tv_distance(d_q, d_c);
  const std::optional<ChiSquareResult> chi = try_chi_square(e_q, e_c);
  const double tv_coarse =
      tv_distance(coarse_grain(d_q, cfg.coarse_factor), coarse_grain(d_c, cfg.coarse_factor));
  const double harmonics_gap = linf_distance(density_harmonics(d_q), density_harmonics(d_c));

  // Bit-flip noise spreads mass off the noiseless support, so size the
  // sampling bound for the full grid in that case.
  const std::int64_t support = noise.p_x > 0.0 ? size.cells() : exact.support_size();
  const double tv_threshold = tv_sampling_threshold(support, cfg.shots);
  const double harmonics_threshold = 2.0 * tv_threshold / static_cast<double>(size.n);

  ExperimentReport report;
  report.experiment = "equivalence";
  report.config = config_json(cfg);
  report.metrics = nlohmann::json{
      {"gate_count_per_step", step.gates.size()},
      {"total_gates", leg_gate_count(legs)},
      {"coherent_amplitude_slots", size.cells()},
      {"coherent_state_bytes", sizeof(std::complex<double>) * (std::int64_t{1} << step.width)},
      {"exact_tv", tv_exact},
      {"support_cells", support},
      {"tv_empirical", tv_emp},
      {"tv_empirical_threshold", tv_threshold},
      {"tv_empirical_coarse", tv_coarse},
      {"chi2_applicable", chi.has_value()},
      {"chi2_statistic", chi ? nlohmann::json(chi->statistic) : nlohmann::json()},
      {"chi2_p_value", chi ? nlohmann::json(chi->p_value) : nlohmann::json()},
      {"chi2_pooled_cells", chi ? nlohmann::json(chi->pooled_cells) : nlohmann::json()},
      {"chi2_p_floor", kPValueFloor},
      {"harmonics_linf_gap", harmonics_gap},
      {"harmonics_threshold", harmonics_threshold},
      {"exact_tolerance", kExactTolerance},
  };
  report.verdicts = nlohmann::json{
      {"exact_tv_ok", tv_exact <= kExactTolerance},
      {"tv_empirical_ok", tv_emp <= tv_threshold},
      {"chi2_p_ok", !chi || chi->p_value > kPValueFloor},
      {"coarse_tv_ok", tv_coarse <= tv_threshold},
      {"harmonics_ok", harmonics_gap <= harmonics_threshold},
  };
  report.timings = nlohmann::json{
      {"threads", threads},
      {"exact_seconds", exact_seconds},
      {"sampling_seconds", sampling_seconds},
      {"total_seconds", total.seconds()},
  };
  return report;
}

ExperimentReport run_reversal(const ExperimentConfig& cfg) {
  validate_common(cfg, /*runs_coherent=*/true);
  if (cfg.steps < 2 || cfg.steps % 2 != 0) {
    throw std::invalid_argument("reversal: steps must be even and >= 2");
  }
  if (cfg.nq > 8) {
    throw std::invalid_argument("reversal: exact permutation transport needs nq <= 8");
  }
  const LatticeSize size = LatticeSize::from_bits(cfg.nq);
  require_grid_size(size);
  const Stopwatch total;
  const int threads = resolve_threads(cfg.threads);
  const int half = cfg.steps / 2;

  const Circuit fwd = build_step_circuit(size);
  const Circuit bwd = invert(fwd);
  const PhaseSpaceDensity d0 = parse_initial_density(cfg.initial, size);
  const NoiseModel noise{cfg.p_x, cfg.p_z, cfg.master_seed};
  const std::vector<ScheduleLeg> legs{{fwd, half}, {bwd, half}};

  // Perfect gates: the coherent round trip returns the Born density to the
  // initial one, and the incoherent permutation transport returns the exact
  // grid bit for bit.
  const Stopwatch exact_watch;
  const std::uint64_t phase_seed =
      rng::derive(cfg.master_seed, rng::Stream::kSubExperiment, kSeedPhases);
  const QuantumState psi0 = from_density(d0, cfg.phases, phase_seed);
  QuantumState psi_rt = psi0;
  evolve_schedule_inplace(psi_rt, legs, NoiseModel{}, 0);
  const double tv_coherent_return = tv_distance(born_distribution(psi_rt), d0);

  const std::vector<std::uint32_t> perm_fwd = as_permutation(fwd, size);
  const std::vector<std::uint32_t> perm_bwd = as_permutation(bwd, size);
  Eigen::ArrayXXd grid = d0.grid();
  for (int t = 0; t < half; ++t) grid = transport_grid(grid, perm_fwd);
  for (int t = 0; t < half; ++t) grid = transport_grid(grid, perm_bwd);
  const double tv_classical_return = tv_distance(PhaseSpaceDensity(size, grid), d0);
  const double exact_seconds = exact_watch.seconds();

  // Finite samples under the configured noise.
  const Stopwatch sampling_watch;
  const std::uint64_t q_base =
      rng::derive(cfg.master_seed, rng::Stream::kSubExperiment, kSeedQuantum);
  const std::uint64_t c_base =
      rng::derive(cfg.master_seed, rng::Stream::kSubExperiment, kSeedClassical);
  const EmpiricalDensity e_q = quantum_batch(psi0, legs, noise, q_base, cfg.shots, threads);
  const EmpiricalDensity e_c = classical_batch(d0, legs, noise, c_base, cfg.shots, threads);
  const double sampling_seconds = sampling_watch.seconds();

  const PhaseSpaceDensity d_q = e_q.normalize();
  const PhaseSpaceDensity d_c = e_c.normalize();
  const double tv_q_return = tv_distance(d_q, d0);
  const double tv_c_return = tv_distance(d_c, d0);
  const double tv_cross = tv_distance(d_q, d_c);
  const std::optional<ChiSquareResult> chi = try_chi_square(e_q, e_c);

  const std::int64_t support = noise.p_x > 0.0 ? size.cells() : d0.support_size();
  const double tv_threshold = tv_sampling_threshold(support, cfg.shots);

  ExperimentReport report;
  report.experiment = "reversal";
  report.config = config_json(cfg);
  report.metrics = nlohmann::json{
      {"gate_count_per_step", fwd.gates.size()},
      {"total_gates", leg_gate_count(legs)},
      {"exact_coherent_return_tv", tv_coherent_return},
      {"exact_classical_return_tv", tv_classical_return},
      {"tv_quantum_return", tv_q_return},
      {"tv_classical_return", tv_c_return},
      {"tv_cross_protocol", tv_cross},
      {"tv_cross_threshold", tv_threshold},
      {"chi2_applicable", chi.has_value()},
      {"chi2_statistic", chi ? nlohmann::json(chi->statistic) : nlohmann::json()},
      {"chi2_p_value", chi ? nlohmann::json(chi->p_value) : nlohmann::json()},
      {"chi2_pooled_cells", chi ? nlohmann::json(chi->pooled_cells) : nlohmann::json()},
      {"chi2_p_floor", kPValueFloor},
      {"exact_tolerance", kExactTolerance},
  };
  report.verdicts = nlohmann::json{
      {"coherent_exact_return_ok", tv_coherent_return <= kExactTolerance},
      {"classical_exact_return_ok", tv_classical_return == 0.0},
      {"cross_chi2_p_ok", !chi || chi->p_value > kPValueFloor},
      {"cross_tv_ok", tv_cross <= tv_threshold},
  };
  report.timings = nlohmann::json{
      {"threads", threads},
      {"exact_seconds", exact_seconds},
      {"sampling_seconds", sampling_seconds},
      {"total_seconds", total.seconds()},
  };
  return report;
}

ExperimentReport run_spectrum(const ExperimentConfig& cfg) {
  validate_common(cfg, /*runs_coherent=*/true);
  const Stopwatch total;

  // Canonical equal-density pair on the 2 x 2 lattice: (|00> + |10>)/sqrt(2)
  // and (|00> - |10>)/sqrt(2). Same Born density, same density harmonics,
  // but the amplitude power spectra sit on disjoint frequency rows.
  const LatticeSize pair_size = LatticeSize::from_bits(1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd plus(4), minus(4);
  plus << inv_sqrt2, inv_sqrt2, 0.0, 0.0;
  minus << inv_sqrt2, -inv_sqrt2, 0.0, 0.0;
  const QuantumState s_plus(pair_size, 2, plus);
  const QuantumState s_minus(pair_size, 2, minus);

  const PhaseSpaceDensity born_plus = born_distribution(s_plus);
  const PhaseSpaceDensity born_minus = born_distribution(s_minus);
  const double pair_born_tv = tv_distance(born_plus, born_minus);
  const double pair_harmonics_gap =
      linf_distance(density_harmonics(born_plus), density_harmonics(born_minus));
  const double pair_spectrum_gap =
      (amplitude_power_spectrum(s_plus).grid() - amplitude_power_spectrum(s_minus).grid())
          .abs()
          .maxCoeff();

  // The same contrast from the configured density: zero versus random phases
  // give the same Born density, hence the same harmonics; the spectra are
  // free to differ.
  const LatticeSize size = LatticeSize::from_bits(cfg.nq);
  require_grid_size(size);
  const PhaseSpaceDensity d0 = parse_initial_density(cfg.initial, size);
  const std::uint64_t phase_seed =
      rng::derive(cfg.master_seed, rng::Stream::kSubExperiment, kSeedPhases);
  const QuantumState s_zero = from_density(d0, PhasePolicy::kZero);
  const QuantumState s_rand = from_density(d0, PhasePolicy::kRandom, phase_seed);
  const double phase_pair_harmonics_gap =
      linf_distance(density_harmonics(born_distribution(s_zero)),
                    density_harmonics(born_distribution(s_rand)));
  const double phase_pair_spectrum_gap =
      (amplitude_power_spectrum(s_zero).grid() - amplitude_power_spectrum(s_rand).grid())
          .abs()
          .maxCoeff();

  ExperimentReport report;
  report.experiment = "spectrum";
  report.config = config_json(cfg);
  report.metrics = nlohmann::json{
      {"pair_born_tv", pair_born_tv},
      {"pair_harmonics_linf_gap", pair_harmonics_gap},
      {"pair_spectrum_linf_gap", pair_spectrum_gap},
      {"pair_spectrum_gap_floor", 0.4},
      {"phase_pair_harmonics_linf_gap", phase_pair_harmonics_gap},
      {"phase_pair_spectrum_linf_gap", phase_pair_spectrum_gap},
      {"exact_tolerance", kExactTolerance},
  };
  report.verdicts = nlohmann::json{
      {"pair_density_identical", pair_born_tv <= kExactTolerance},
      {"pair_harmonics_ok", pair_harmonics_gap <= kExactTolerance},
      {"pair_spectrum_gap_ok", pair_spectrum_gap >= 0.4},
      {"phase_pair_harmonics_ok", phase_pair_harmonics_gap <= kExactTolerance},
  };
  report.timings = nlohmann::json{
      {"threads", 1},
      {"total_seconds", total.seconds()},
  };
  return report;
}

ExperimentReport run_resources(const ExperimentConfig& cfg) {
  if (cfg.nq_max < 1 || cfg.nq_max > 31) {
    throw std::invalid_argument("resources: nq_max must be in [1, 31]");
  }
  if (cfg.epsilon <= 0.0 || cfg.epsilon > 1.0) {
    throw std::invalid_argument("resources: epsilon must be in (0, 1]");
  }
  const Stopwatch total;

  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json timing_rows = nlohmann::json::array();
  bool slots_ok = true;
  bool gates_ok = true;

  for (int nq = 1; nq <= cfg.nq_max; ++nq) {
    const LatticeSize size = LatticeSize::from_bits(nq);
    const Circuit step = build_step_circuit(size);
    const double cells = std::pow(4.0, nq);
    // Matching a TV target eps over K occupied cells takes about K / eps^2
    // samples (uniform initial density, worst case all cells occupied).
    const double samples_needed = cells / (cfg.epsilon * cfg.epsilon);

    slots_ok = slots_ok && size.cells() == std::int64_t{1} << (2 * nq);
    gates_ok = gates_ok &&
               step.gates.size() == static_cast<std::size_t>(kGatesPerStepPerBit) * nq;

    rows.push_back(nlohmann::json{
        {"nq", nq},
        {"gate_count_per_step", step.gates.size()},
        {"coherent_amplitude_slots", size.cells()},
        {"coherent_state_bytes",
         sizeof(std::complex<double>) * (std::int64_t{1} << step.width)},
        {"classical_bytes_per_trajectory", sizeof(std::uint64_t)},
        {"samples_for_target_tv", samples_needed},
    });

    // Measured per-step times. Coherent runs stop at the memory cap; the
    // incoherent trajectory has no such cap.
    nlohmann::json trow{{"nq", nq}};
    if (nq <= cfg.coherent_nq_cap && nq <= kMaxGridBits) {
      QuantumState s = from_density(PhaseSpaceDensity::uniform(size), PhasePolicy::kZero);
      const Stopwatch watch;
      int reps = 0;
      do {
        apply_circuit_coherent_inplace(s, step, NoiseModel{}, 0);
        ++reps;
      } while (watch.seconds() < 0.02 && reps < 1 << 16);
      trow["coherent_step_seconds"] = watch.seconds() / reps;
    } else {
      trow["coherent_step_seconds"] = nlohmann::json();
    }
    {
      const NoiseModel quiet{};
      const Stopwatch watch;
      int reps = 0;
      LatticePoint p{0, 0};
      do {
        // Chain the cell through so the loop cannot be optimized away.
        p = run_trajectory(p, step, 1, quiet, 0);
        ++reps;
      } while (watch.seconds() < 0.02 && reps < 1 << 20);
      const double per_traj_step = watch.seconds() / reps;
      trow["classical_trajectory_step_seconds"] = per_traj_step;
      trow["classical_matched_seconds_estimate"] = per_traj_step * samples_needed;
    }
    timing_rows.push_back(std::move(trow));
  }

  ExperimentReport report;
  report.experiment = "resources";
  report.config = config_json(cfg);
  report.config["nq_max"] = cfg.nq_max;
  report.config["epsilon"] = cfg.epsilon;
  report.metrics = nlohmann::json{{"table", std::move(rows)}};
  report.verdicts = nlohmann::json{
      {"amplitude_slots_exponential_ok", slots_ok},
      {"gate_count_linear_ok", gates_ok},
      {"classical_memory_constant_ok", true},
  };
  report.timings = nlohmann::json{
      {"threads", 1},
      {"table", std::move(timing_rows)},
      {"total_seconds", total.seconds()},
  };
  return report;
}

}  // namespace catsim
