#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpt/state_table.hpp"
#include "gpt/transformation.hpp"

namespace gpt {

enum class GameMode { analytic, montecarlo };

struct GameConfig {
  int k = 1;  // nesting depth, N = 2^k input bits
  double E = 1.0;
  GameMode mode = GameMode::analytic;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Post-protocol state for k = 1: parties a0, a1 (Alice's bits), x (the
/// message) and B (Bob's half of the box, conditioned on Alice's use of it).
struct Transcript {
  StateTable state;
  int n = 2;
  int m = 1;
  PartySet inputs{0, 1};
  std::size_t message = 2;
  std::size_t bob = 3;
};

struct GameResult {
  GameConfig config;
  int N = 2;
  int m = 1;
  double per_bit_success = 0.0;
  double standard_error = 0.0;  // montecarlo only
  double I = 0.0;
  double I_over_m = 0.0;
  std::optional<Transcript> transcript;
};

double binary_entropy(double p);

/// N (1 - h((1 + E^k) / 2)).
double analytic_information(double E, int k);

GameResult run_ic_game(const GameConfig& cfg);

/// Van Dam's k = 1 protocol on an arbitrary two-gbit resource: Alice feeds
/// a0 XOR a1 into her gbit, gets A and sends x = a0 XOR A.
Transcript van_dam_transcript(const StateTable& box);

/// P(ab|jj') = [a = b] / 2: shared randomness in box form.
StateTable classical_resource();

/// Bob's guess for a_i: measure his gbit with setting i, then XOR with x.
/// After both steps the parties are a0, ..., a_{n-1}, beta_i.
std::vector<Transformation> bob_guess(const Transcript& t, int i);

/// Σ_i I(a_i : beta_i) from measurement entropies on the transcript.
double information_from_transcript(const Transcript& t);

struct SweepRow {
  double E = 0.0;
  int k = 1;
  double success = 0.0;
  double I = 0.0;
  double I_over_m = 0.0;
};

struct Sweep {
  std::vector<SweepRow> rows;  // E-major, then k
  /// Per k: largest grid E with I <= m, or nullopt if none.
  std::vector<std::optional<double>> frontier;
  /// Per E: whether I > m for some k.
  std::vector<bool> exceeds;
  std::vector<double> grid;
  int k_max = 1;
};

Sweep ic_threshold_sweep(const std::vector<double>& grid, int k_max);

/// emin, emin + step, ... up to emax (inclusive within step / 2), each
/// rounded to 1e-12.
std::vector<double> e_grid(double emin, double emax, double step);

}  // namespace gpt
