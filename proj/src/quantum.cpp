#include "gpt/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gpt {

namespace {

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Eigen::Matrix2cd projector(double theta, int outcome) {
  const double sign = outcome == 0 ? 1.0 : -1.0;
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
  p += sign * (std::cos(theta) * pauli_x() + std::sin(theta) * pauli_y());
  return p / 2.0;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || (rho_.rows() != 2 && rho_.rows() != 4)) {
    throw std::invalid_argument("density matrix must be 2x2 or 4x4");
  }
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kTableTol) {
    std::ostringstream os;
    os << "density matrix not Hermitian (deviation " << herm << ")";
    throw std::invalid_argument(os.str());
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > kTableTol) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " != 1";
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -kTableTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << es.eigenvalues()(0);
    throw std::invalid_argument(os.str());
  }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseMax(0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double h = 0.0;
  for (double l : rho.eigenvalues())
    if (l > 0.0) h -= l * std::log2(l);
  return std::max(h, 0.0);
}

StateTable qubit_pair_behavior(const DensityMatrix& rho, const MeasurementAngles& angles) {
  if (rho.dimension() != 4) throw std::invalid_argument("qubit_pair_behavior needs a two-qubit state");
  const SystemType sys({PartyType{2, 2, "A"}, PartyType{2, 2, "B"}});
  std::vector<double> e(16);
  for (int j = 0; j < 2; ++j)
    for (int jp = 0; jp < 2; ++jp)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const Eigen::Matrix4cd op = kron(projector(angles.alice[j], a), projector(angles.bob[jp], b));
          const double p = (rho.matrix() * op).trace().real();
          e[static_cast<std::size_t>((j * 2 + jp) * 4 + a * 2 + b)] = std::clamp(p, 0.0, 1.0);
        }
  return StateTable(sys, std::move(e));
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd v = psi / psi.norm();
  Eigen::MatrixXcd rho = v * v.adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(rho);
}

DensityMatrix singlet() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0;
  psi(2) = -1.0;
  return pure_state(psi);
}

DensityMatrix maximally_mixed(int dimension) {
  return DensityMatrix(Eigen::MatrixXcd::Identity(dimension, dimension) / static_cast<double>(dimension));
}

DensityMatrix conjugate(const DensityMatrix& rho, const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd out = u * rho.matrix() * u.adjoint();
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(out);
}

Eigen::Matrix2d equatorial_correlations(const DensityMatrix& rho) {
  if (rho.dimension() != 4) throw std::invalid_argument("correlations need a two-qubit state");
  const Eigen::Matrix2cd s[2] = {pauli_x(), pauli_y()};
  Eigen::Matrix2d t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t(i, j) = (rho.matrix() * kron(s[i], s[j])).trace().real();
  return t;
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("density matrix must be a nested array");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd rho(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("density matrix rows must all have length " + std::to_string(n));
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& z = row[static_cast<std::size_t>(c)];
      if (z.is_number()) {
        rho(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2) {
        rho(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw std::invalid_argument("density matrix entries must be [re, im] pairs");
      }
    }
  }
  return DensityMatrix(rho);
}

nlohmann::json to_json(const DensityMatrix& rho) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < rho.dimension(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < rho.dimension(); ++c) row.push_back({rho.matrix()(r, c).real(), rho.matrix()(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

}  // namespace gpt
