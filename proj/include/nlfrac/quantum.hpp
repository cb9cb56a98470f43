#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nlfrac/random.hpp"
#include "nlfrac/scenario.hpp"

namespace nlfrac {

using cplx = std::complex<double>;

/// Normalized pure state of N qubits. Qubit 0 (party 1) is the most
/// significant bit of the basis index.
class StateVector {
 public:
  /// Throws std::invalid_argument if the length is not 2^N with N >= 1 or the
  /// norm differs from 1 by more than 1e-12.
  explicit StateVector(Eigen::VectorXcd amplitudes);
  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(Eigen::VectorXcd amplitudes);
  /// Computational basis state, bits[i] is the value of qubit i.
  static StateVector basis(const std::vector<int>& bits);

  int qubits() const { return qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  StateVector tensor(const StateVector& other) const;

 private:
  Eigen::VectorXcd amplitudes_;
  int qubits_ = 0;
};

class DensityMatrix {
 public:
  /// Checks hermiticity and unit trace within 1e-12 and positivity within 1e-10.
  explicit DensityMatrix(Eigen::MatrixXcd entries);
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int qubits);

  int qubits() const { return qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

 private:
  struct Unchecked {};
  DensityMatrix(Eigen::MatrixXcd entries, Unchecked);
  friend DensityMatrix mix_with_white_noise(const DensityMatrix&, double);

  Eigen::MatrixXcd entries_;
  int qubits_ = 0;
};

/// Expansion coefficients T_mu = Tr(rho sigma_mu1 x ... x sigma_muN), mu_i in
/// {I, X, Y, Z} = {0, 1, 2, 3}, flattened base 4 with qubit 0 most significant.
struct PauliTensor {
  int qubits = 0;
  std::vector<double> values;
};

PauliTensor pauli_tensor(const StateVector& psi);
PauliTensor pauli_tensor(const DensityMatrix& rho);

/// Measurement direction e = (sin2phi cos xi, sin2phi sin xi, cos2phi).
struct BlochSetting {
  double phi = 0.0;
  double xi = 0.0;
  std::array<double, 3> unit_vector{0.0, 0.0, 1.0};

  static BlochSetting from_angles(double phi, double xi);
  /// Normalizes v; phi and xi are recovered from the direction.
  static BlochSetting from_vector(const std::array<double, 3>& v);
};

/// per_party[i][j] is setting j of party i.
struct SettingsSample {
  std::vector<std::vector<BlochSetting>> per_party;

  bool matches(const Scenario& scenario) const;
};

/// Haar-random direction: xi ~ U[0, 2pi), omega ~ U[0, 1), phi = asin(sqrt(omega)).
BlochSetting sample_setting(RandomStream& rng);
/// Draws settings party by party, setting by setting.
SettingsSample sample_settings(const Scenario& scenario, RandomStream& rng);

/// e . sigma
Eigen::Matrix2cd observable(const BlochSetting& b);

/// Normalized vector of 2^N i.i.d. standard complex Gaussians.
StateVector random_pure_state(int qubits, RandomStream& rng);

/// v rho + (1 - v) I / 2^N. Throws std::invalid_argument unless 0 <= v <= 1.
DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double v);
/// Same model on the Pauli expansion: every non-identity component scales by v.
PauliTensor mix_with_white_noise(const PauliTensor& t, double v);

}  // namespace nlfrac
