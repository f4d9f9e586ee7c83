#include "gpt/icgame.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gpt/entropy.hpp"
#include "gpt/named_states.hpp"
#include "gpt/operations.hpp"

namespace gpt {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double analytic_information(double E, int k) {
  const double p = (1.0 + std::pow(E, k)) / 2.0;
  return std::ldexp(1.0 - binary_entropy(p), k);
}

namespace {

void validate(const GameConfig& cfg) {
  if (!(cfg.E >= 0.0 && cfg.E <= 1.0)) throw std::invalid_argument("E must lie in [0, 1]");
  if (cfg.k < 1 || cfg.k > 20) throw std::invalid_argument("k must lie in [1, 20]");
  if (cfg.mode == GameMode::montecarlo && cfg.trials == 0) {
    throw std::invalid_argument("montecarlo mode needs trials > 0");
  }
}

/// One round of the nested protocol with 2^k - 1 isotropic boxes; returns
/// whether Bob's guess was right.
bool play_round(int k, double flip, std::mt19937_64& rng, std::vector<std::uint8_t>& level) {
  const std::size_t N = std::size_t{1} << k;
  std::uniform_int_distribution<std::size_t> pick(0, N - 1);
  std::bernoulli_distribution bit(0.5), noise(flip);
  level.resize(N);
  for (auto& a : level) a = bit(rng);
  const std::size_t b = pick(rng);
  const std::uint8_t target = level[b];

  // Alice folds level by level; Bob keeps the box on his path at each level.
  std::vector<std::uint8_t> bob_b(static_cast<std::size_t>(k));
  std::size_t idx = b;
  for (int d = 0; d < k; ++d) {
    const std::size_t half = level.size() / 2;
    for (std::size_t t = 0; t < half; ++t) {
      const std::uint8_t s = level[2 * t] ^ level[2 * t + 1];
      const std::uint8_t A = bit(rng);
      if (t == idx / 2) {
        const std::uint8_t r = idx & 1;
        bob_b[static_cast<std::size_t>(d)] = A ^ (s & r) ^ static_cast<std::uint8_t>(noise(rng));
      }
      level[t] = level[2 * t] ^ A;
    }
    level.resize(half);
    idx /= 2;
  }
  std::uint8_t guess = level[0];
  for (auto B : bob_b) guess ^= B;
  return guess == target;
}

}  // namespace

StateTable classical_resource() {
  std::vector<double> e(16, 0.0);
  for (std::size_t row = 0; row < 4; ++row) {
    e[row * 4 + 0] = 0.5;
    e[row * 4 + 3] = 0.5;
  }
  return StateTable(gbit_pair(), std::move(e));
}

Transcript van_dam_transcript(const StateTable& box) {
  require_valid(box);
  if (!box.system().same_shape(gbit_pair())) throw std::invalid_argument("van Dam protocol needs a two-gbit box");
  std::vector<double> weights;
  std::vector<StateTable> parts;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int A = 0; A < 2; ++A) {
        const int s = a0 ^ a1;
        const double p = outcome_probability(box, 0, A, s);
        if (p <= kTableTol) continue;
        StateTable bits = tensor(tensor(classical_pure(2, a0), classical_pure(2, a1)), classical_pure(2, a0 ^ A));
        weights.push_back(0.25 * p);
        parts.push_back(tensor(bits, conditional_marginal(box, 0, A, s)));
      }
  double total = 0.0;
  for (double w : weights) total += w;
  for (auto& w : weights) w /= total;
  Transcript t;
  t.state = mixture(weights, parts).renamed({"a0", "a1", "x", "B"});
  return t;
}

std::vector<Transformation> bob_guess(const Transcript& t, int i) {
  if (i < 0 || i >= t.n) throw std::invalid_argument("bit index out of range");
  return {Wiring{t.bob, i},
          function_map({t.message, t.bob}, 4, 2, {0, 1, 1, 0}, "beta" + std::to_string(i))};
}

double information_from_transcript(const Transcript& t) {
  double total = 0.0;
  for (int i = 0; i < t.n; ++i) {
    Transformed cur{t.state, {}};
    std::vector<std::optional<std::size_t>> where(t.state.party_count());
    for (std::size_t p = 0; p < where.size(); ++p) where[p] = p;
    for (const auto& step : bob_guess(t, i)) {
      auto next = apply_tracked(cur.state, remap(step, where));
      for (auto& w : where)
        if (w) w = next.party_map[*w];
      cur = std::move(next);
    }
    const auto ai = *where[t.inputs[static_cast<std::size_t>(i)]];
    const auto beta = *where[std::min(t.message, t.bob)];
    total += mutual_information(cur.state, {ai}, {beta});
  }
  return total;
}

GameResult run_ic_game(const GameConfig& cfg) {
  validate(cfg);
  GameResult r;
  r.config = cfg;
  r.N = 1 << cfg.k;
  r.m = 1;
  if (cfg.mode == GameMode::analytic) {
    r.per_bit_success = (1.0 + std::pow(cfg.E, cfg.k)) / 2.0;
    r.I = analytic_information(cfg.E, cfg.k);
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::uint8_t> level;
    std::uint64_t wins = 0;
    const double flip = (1.0 - cfg.E) / 2.0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) wins += play_round(cfg.k, flip, rng, level);
    const double p = static_cast<double>(wins) / static_cast<double>(cfg.trials);
    r.per_bit_success = p;
    r.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials));
    r.I = r.N * (1.0 - binary_entropy(p));
  }
  r.I_over_m = r.I / r.m;
  if (cfg.k == 1) r.transcript = van_dam_transcript(isotropic_box(cfg.E));
  return r;
}

Sweep ic_threshold_sweep(const std::vector<double>& grid, int k_max) {
  if (k_max < 1 || k_max > 12) throw std::invalid_argument("k_max must lie in [1, 12]");
  Sweep s;
  s.grid = grid;
  s.k_max = k_max;
  s.frontier.assign(static_cast<std::size_t>(k_max), std::nullopt);
  for (double E : grid) {
    if (!(E >= 0.0 && E <= 1.0)) throw std::invalid_argument("grid values must lie in [0, 1]");
    bool exceeds = false;
    for (int k = 1; k <= k_max; ++k) {
      SweepRow row{E, k, (1.0 + std::pow(E, k)) / 2.0, analytic_information(E, k), 0.0};
      row.I_over_m = row.I;
      if (row.I_over_m > 1.0) {
        exceeds = true;
      } else {
        auto& f = s.frontier[static_cast<std::size_t>(k - 1)];
        if (!f || E > *f) f = E;
      }
      s.rows.push_back(row);
    }
    s.exceeds.push_back(exceeds);
  }
  return s;
}

std::vector<double> e_grid(double emin, double emax, double step) {
  if (!(step > 0.0) || emax < emin) throw std::invalid_argument("bad grid range");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double e = emin + static_cast<double>(i) * step;
    if (e > emax + step / 2.0) break;
    out.push_back(std::round(e * 1e12) / 1e12);
  }
  return out;
}

}  // namespace gpt
