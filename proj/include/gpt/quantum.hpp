#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>
#include <json.hpp>

#include "gpt/state_table.hpp"

namespace gpt {

using Complex = std::complex<double>;

/// Validated 2x2 or 4x4 density operator: Hermitian, PSD and unit trace
/// within kTableTol.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::Index dimension() const { return rho_.rows(); }
  /// Eigenvalues in ascending order, clipped at 0.
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXcd rho_;
};

/// Equatorial Bloch angles per setting for each qubit.
struct MeasurementAngles {
  std::array<double, 2> alice{};
  std::array<double, 2> bob{};
};

double von_neumann_entropy(const DensityMatrix& rho);

/// P(ab|jj') = Tr[ρ Π_a(θ_Aj) ⊗ Π_b(θ_Bj')] with Π_o(θ) = (1 + (-1)^o (cosθ X + sinθ Y)) / 2.
StateTable qubit_pair_behavior(const DensityMatrix& rho, const MeasurementAngles& angles);

/// (|01> - |10>) / sqrt 2.
DensityMatrix singlet();
DensityMatrix maximally_mixed(int dimension);
DensityMatrix pure_state(const Eigen::VectorXcd& psi);
/// U ρ U†.
DensityMatrix conjugate(const DensityMatrix& rho, const Eigen::MatrixXcd& u);

/// Correlation tensor restricted to the equator: T(i, j) = Tr[ρ σ_i ⊗ σ_j], i, j in {X, Y}.
Eigen::Matrix2d equatorial_correlations(const DensityMatrix& rho);

/// Nested arrays of [re, im] pairs.
DensityMatrix density_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DensityMatrix& rho);

}  // namespace gpt
