#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpt/icgame.hpp"
#include "gpt/named_states.hpp"
#include "gpt/operations.hpp"
#include "test_support.hpp"

using namespace gpt;
using namespace gpt::testing;

namespace {

double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

double oracle_I(double E, int k) { return std::pow(2.0, k) * (1 - h2((1 + std::pow(E, k)) / 2)); }

}  // namespace

TEST_CASE("analytic game values") {
  auto r = run_ic_game({1, 1.0});
  CHECK(r.per_bit_success == 1.0);
  CHECK(r.I == 2.0);
  CHECK(r.I_over_m == 2.0);
  CHECK(r.N == 2);

  r = run_ic_game({1, 0.0});
  CHECK(r.per_bit_success == 0.5);
  CHECK(r.I == 0.0);

  r = run_ic_game({1, 1 / std::sqrt(2.0)});
  CHECK(std::abs(r.per_bit_success - std::pow(std::cos(M_PI / 8), 2)) < 1e-15);
  CHECK(std::abs(r.I - oracle_I(1 / std::sqrt(2.0), 1)) < 1e-12);
  CHECK(std::abs(r.I - 0.798247927) < 1e-6);
  CHECK(r.I < 1.0);

  for (int k = 1; k <= 12; ++k)
    for (double E : {0.6, 0.7, 0.75, 0.9}) CHECK(std::abs(analytic_information(E, k) - oracle_I(E, k)) < 1e-9);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(run_ic_game({1, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(run_ic_game({1, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(run_ic_game({0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(run_ic_game({1, 0.5, GameMode::montecarlo, 0, 1}), std::invalid_argument);
}

TEST_CASE("transcript information matches the formula") {
  for (double E : {0.0, 0.3, 0.5, 1 / std::sqrt(2.0), 0.9, 1.0}) {
    const auto t = van_dam_transcript(isotropic_box(E));
    CHECK(diagnose(t.state).ok());
    CHECK(t.state.party_count() == 4);
    CHECK(t.state.system()[3].name == "B");
    CHECK(std::abs(information_from_transcript(t) - oracle_I(E, 1)) < 1e-9);
  }
  const auto classical = van_dam_transcript(classical_resource());
  CHECK(std::abs(information_from_transcript(classical) - 1.0) < 1e-12);
  CHECK_THROWS_AS(van_dam_transcript(ssa_example()), std::invalid_argument);
  CHECK(run_ic_game({1, 0.8}).transcript.has_value());
  CHECK_FALSE(run_ic_game({2, 0.8}).transcript.has_value());
}

TEST_CASE("transcript structure at E = 1") {
  // a0, a1 uniform; x = a0 XOR A; Bob's setting j yields A XOR (a0 XOR a1) j.
  const auto t = van_dam_transcript(pr_box());
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int A = 0; A < 2; ++A)
        for (int j = 0; j < 2; ++j) {
          const std::size_t row = static_cast<std::size_t>(j);
          const std::size_t col = static_cast<std::size_t>(((a0 * 2 + a1) * 2 + (a0 ^ A)) * 2 + (A ^ ((a0 ^ a1) & j)));
          CHECK(t.state(row, col) == doctest::Approx(0.125).epsilon(1e-15));
        }
}

TEST_CASE("monte carlo converges to the analytic success") {
  for (int k = 1; k <= 4; ++k)
    for (double E : {0.5, 0.8, 1.0}) {
      const std::uint64_t trials = 100000;
      const auto r = run_ic_game({k, E, GameMode::montecarlo, trials, 42});
      const double p = (1 + std::pow(E, k)) / 2;
      const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
      CHECK(std::abs(r.per_bit_success - p) <= 3 * sigma + 1e-15);
    }
  const auto a = run_ic_game({3, 0.7, GameMode::montecarlo, 5000, 9});
  const auto b = run_ic_game({3, 0.7, GameMode::montecarlo, 5000, 9});
  CHECK(a.per_bit_success == b.per_bit_success);
}

TEST_CASE("threshold sweep") {
  const auto grid = e_grid(0.60, 0.90, 0.01);
  REQUIRE(grid.size() == 31);
  CHECK(grid.front() == 0.6);
  CHECK(grid.back() == 0.9);
  CHECK(grid[11] == 0.71);
  const auto sweep = ic_threshold_sweep(grid, 12);
  CHECK(sweep.rows.size() == 31 * 12);

  const std::vector<double> frontier{0.77, 0.75, 0.74, 0.73, 0.73, 0.72, 0.72, 0.72, 0.72, 0.71, 0.71, 0.71};
  for (std::size_t k = 0; k < 12; ++k) CHECK(sweep.frontier[k] == frontier[k]);

  for (std::size_t e = 0; e < grid.size(); ++e) {
    const double E = grid[e];
    if (E == 0.71) {
      CHECK_FALSE(sweep.exceeds[e]);
    } else {
      CHECK(sweep.exceeds[e] == (E > 1 / std::sqrt(2.0)));
    }
    for (int k = 1; k <= 12; ++k) {
      const auto& row = sweep.rows[e * 12 + static_cast<std::size_t>(k - 1)];
      CHECK(row.E == E);
      CHECK(row.k == k);
      if (e > 0) CHECK(row.I_over_m >= sweep.rows[(e - 1) * 12 + static_cast<std::size_t>(k - 1)].I_over_m);
    }
  }

  const auto at = [](double E) { return ic_threshold_sweep({E}, 12).rows; };
  const auto r75 = at(0.75);
  for (std::size_t k = 4; k < 12; ++k) CHECK(r75[k].I_over_m > r75[k - 1].I_over_m);
  CHECK(r75[11].I_over_m > 1.0);
  const auto r70 = at(0.70);
  for (const auto& r : r70) CHECK(r.I_over_m <= 1.0);
  for (std::size_t k = 1; k < 12; ++k) CHECK(r70[k].I_over_m < r70[k - 1].I_over_m);
  for (const auto& r : at(1 / std::sqrt(2.0))) CHECK(r.I_over_m <= 1.0);

  CHECK_THROWS_AS(ic_threshold_sweep(grid, 13), std::invalid_argument);
  CHECK_THROWS_AS(ic_threshold_sweep({1.2}, 3), std::invalid_argument);
}
