#include "gpt/bell.hpp"

#include <cmath>
#include <stdexcept>

namespace gpt {

ChshResult chsh_value(const StateTable& s) {
  const auto& sys = s.system();
  if (sys.size() != 2 || !sys[0].same_shape(PartyType{2, 2, ""}) || !sys[1].same_shape(PartyType{2, 2, ""})) {
    throw std::invalid_argument("chsh_value needs two (2,2) parties, got " + sys.describe());
  }
  ChshResult r;
  for (int j = 0; j < 2; ++j)
    for (int jp = 0; jp < 2; ++jp) {
      const std::size_t row = static_cast<std::size_t>(j * 2 + jp);
      const double same = s(row, 0) + s(row, 3);
      r.per_term[row] = j && jp ? s(row, 1) + s(row, 2) : same;
    }
  r.S = r.per_term[0] + r.per_term[1] + r.per_term[2] + r.per_term[3];
  return r;
}

bool tsirelson_check(double S) {
  const double root2 = std::sqrt(2.0);
  return S >= 2.0 - root2 - kEntropyTol && S <= 2.0 + root2 + kEntropyTol;
}

ClassicalChsh max_classical_chsh() {
  ClassicalChsh best;
  best.S = -1.0;
  for (int m = 0; m < 16; ++m) {
    const int a[2] = {m >> 3 & 1, m >> 2 & 1};
    const int b[2] = {m >> 1 & 1, m & 1};
    double S = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int jp = 0; jp < 2; ++jp) S += ((a[j] ^ b[jp]) == (j & jp)) ? 1.0 : 0.0;
    best.all[static_cast<std::size_t>(m)] = S;
    if (S > best.S) {
      best.S = S;
      best.strategy = {a[0], a[1], b[0], b[1]};
    }
  }
  return best;
}

namespace {

double chsh_at(const DensityMatrix& rho, const std::array<double, 4>& x) {
  return chsh_value(qubit_pair_behavior(rho, MeasurementAngles{{x[0], x[1]}, {x[2], x[3]}})).S;
}

}  // namespace

QuantumChsh max_quantum_chsh(const DensityMatrix& rho) {
  // S = 2 + (E00 + E01 + E10 - E11) / 2 with E = n(θA)ᵀ T n(θB) on the equator.
  const Eigen::Matrix2d t = equatorial_correlations(rho);
  constexpr int kGrid = 360;
  const double step = 2.0 * M_PI / kGrid;
  std::vector<Eigen::Vector2d> dir(kGrid), u(kGrid);
  for (int g = 0; g < kGrid; ++g) {
    dir[g] = Eigen::Vector2d(std::cos(g * step), std::sin(g * step));
    u[g] = t.transpose() * dir[g];
  }
  auto best_direction = [&](const Eigen::Vector2d& v) {
    int arg = 0;
    double best = -INFINITY;
    for (int g = 0; g < kGrid; ++g) {
      const double val = v.dot(dir[g]);
      if (val > best) {
        best = val;
        arg = g;
      }
    }
    return std::pair{best, arg};
  };

  QuantumChsh out;
  double best = -INFINITY;
  std::array<int, 4> arg{};
  for (int a0 = 0; a0 < kGrid; ++a0)
    for (int a1 = 0; a1 < kGrid; ++a1) {
      const auto [v0, b0] = best_direction(u[a0] + u[a1]);
      const auto [v1, b1] = best_direction(u[a0] - u[a1]);
      const double S = 2.0 + (v0 + v1) / 2.0;
      if (S > best + 1e-15) {
        best = S;
        arg = {a0, a1, b0, b1};
      }
    }

  std::array<double, 4> x{};
  for (int i = 0; i < 4; ++i) x[static_cast<std::size_t>(i)] = arg[static_cast<std::size_t>(i)] * step;
  out.grid_angles = MeasurementAngles{{x[0], x[1]}, {x[2], x[3]}};
  out.grid_S = chsh_at(rho, x);

  double fx = out.grid_S;
  for (double h = step; h > 1e-10;) {
    bool moved = false;
    for (std::size_t i = 0; i < 4; ++i)
      for (double dirn : {1.0, -1.0}) {
        auto y = x;
        y[i] += dirn * h;
        const double fy = chsh_at(rho, y);
        if (fy > fx) {
          x = y;
          fx = fy;
          moved = true;
        }
      }
    if (!moved) h /= 2.0;
  }
  out.angles = MeasurementAngles{{x[0], x[1]}, {x[2], x[3]}};
  out.result = chsh_value(qubit_pair_behavior(rho, out.angles));
  out.S = out.result.S;
  return out;
}

}  // namespace gpt
