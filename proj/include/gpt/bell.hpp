#pragma once

#include <array>

#include "gpt/quantum.hpp"
#include "gpt/state_table.hpp"

namespace gpt {

/// S = p(a=b|00) + p(a=b|01) + p(a=b|10) + p(a!=b|11).
struct ChshResult {
  double S = 0.0;
  std::array<double, 4> per_term{};
};

/// Requires exactly two (2,2) parties.
ChshResult chsh_value(const StateTable& s);

/// 2 - sqrt2 - 1e-9 <= S <= 2 + sqrt2 + 1e-9.
bool tsirelson_check(double S);

inline const double kTsirelson = 2.0 + std::sqrt(2.0);

struct ClassicalChsh {
  double S = 0.0;
  std::array<int, 4> strategy{};  // a(0), a(1), b(0), b(1)
  std::array<double, 16> all{};   // S for strategy index a0 a1 b0 b1 (binary)
};

/// Exhaustive search over the 16 deterministic local strategies.
ClassicalChsh max_classical_chsh();

struct QuantumChsh {
  double S = 0.0;
  double grid_S = 0.0;
  MeasurementAngles angles;
  MeasurementAngles grid_angles;
  ChshResult result;
};

/// 1 degree grid over all four equatorial angles, then pattern search on
/// the exported behavior table down to step 1e-10.
QuantumChsh max_quantum_chsh(const DensityMatrix& rho = singlet());

}  // namespace gpt
