#include "nlfrac/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace nlfrac {

namespace {

int qubits_for_dimension(Eigen::Index dim) {
  if (dim < 2) throw std::invalid_argument("state dimension must be 2^N with N >= 1");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) {
    throw std::invalid_argument("state dimension " + std::to_string(dim) + " is not a power of two");
  }
  return n;
}

// Places rho[r][c] at the base-4 index whose qubit-q digit is 2 r_q + c_q,
// then maps each digit (a, b, c, d) -> (a + d, b + c, i(b - c), a - d).
PauliTensor pauli_from_entries(int n, auto&& entry) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> w(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::size_t idx = 0;
      for (int q = 0; q < n; ++q) {
        const int shift = n - 1 - q;
        idx = idx * 4 + 2 * ((r >> shift) & 1) + ((c >> shift) & 1);
      }
      w[idx] = entry(r, c);
    }
  }
  const cplx i_unit(0.0, 1.0);
  for (int q = 0; q < n; ++q) {
    const std::size_t stride = std::size_t{1} << (2 * (n - 1 - q));
    for (std::size_t base = 0; base < w.size(); base += 4 * stride) {
      for (std::size_t k = base; k < base + stride; ++k) {
        const cplx a = w[k], b = w[k + stride], c = w[k + 2 * stride], d = w[k + 3 * stride];
        w[k] = a + d;
        w[k + stride] = b + c;
        w[k + 2 * stride] = i_unit * (b - c);
        w[k + 3 * stride] = a - d;
      }
    }
  }
  PauliTensor t;
  t.qubits = n;
  t.values.resize(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) t.values[k] = w[k].real();
  return t;
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  qubits_ = qubits_for_dimension(amplitudes_.size());
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("state vector is not normalized (norm " + std::to_string(norm) + ")");
  }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 1e-12)) throw std::invalid_argument("cannot normalize a zero state vector");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(const std::vector<int>& bits) {
  if (bits.empty()) throw std::invalid_argument("basis state needs at least one qubit");
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("basis state bits must be 0 or 1");
    index = 2 * index + static_cast<std::size_t>(b);
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << bits.size());
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::tensor(const StateVector& other) const {
  const Eigen::Index db = other.amplitudes_.size();
  Eigen::VectorXcd v(amplitudes_.size() * db);
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    v.segment(i * db, db) = amplitudes_[i] * other.amplitudes_;
  }
  return StateVector::normalized(std::move(v));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("density matrix must be square");
  qubits_ = qubits_for_dimension(entries_.rows());
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - cplx(1.0)) > 1e-12) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, Unchecked) : entries_(std::move(entries)) {
  qubits_ = qubits_for_dimension(entries_.rows());
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

PauliTensor pauli_tensor(const StateVector& psi) {
  const auto& a = psi.amplitudes();
  return pauli_from_entries(psi.qubits(), [&](std::size_t r, std::size_t c) {
    return a[static_cast<Eigen::Index>(r)] * std::conj(a[static_cast<Eigen::Index>(c)]);
  });
}

PauliTensor pauli_tensor(const DensityMatrix& rho) {
  const auto& m = rho.entries();
  return pauli_from_entries(rho.qubits(), [&](std::size_t r, std::size_t c) {
    return m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  });
}

BlochSetting BlochSetting::from_angles(double phi, double xi) {
  BlochSetting b;
  b.phi = phi;
  b.xi = xi;
  const double s = std::sin(2.0 * phi);
  b.unit_vector = {s * std::cos(xi), s * std::sin(xi), std::cos(2.0 * phi)};
  return b;
}

BlochSetting BlochSetting::from_vector(const std::array<double, 3>& v) {
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(norm > 0.0)) throw std::invalid_argument("measurement direction must be nonzero");
  BlochSetting b;
  b.unit_vector = {v[0] / norm, v[1] / norm, v[2] / norm};
  b.phi = 0.5 * std::acos(std::clamp(b.unit_vector[2], -1.0, 1.0));
  b.xi = std::atan2(b.unit_vector[1], b.unit_vector[0]);
  if (b.xi < 0) b.xi += 2.0 * std::numbers::pi;
  return b;
}

bool SettingsSample::matches(const Scenario& scenario) const {
  if (per_party.size() != static_cast<std::size_t>(scenario.parties())) return false;
  for (int i = 0; i < scenario.parties(); ++i) {
    if (per_party[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(scenario.settings(i))) return false;
  }
  return true;
}

BlochSetting sample_setting(RandomStream& rng) {
  const double xi = 2.0 * std::numbers::pi * rng.uniform();
  const double omega = rng.uniform();
  return BlochSetting::from_angles(std::asin(std::sqrt(omega)), xi);
}

SettingsSample sample_settings(const Scenario& scenario, RandomStream& rng) {
  SettingsSample s;
  s.per_party.resize(static_cast<std::size_t>(scenario.parties()));
  for (int i = 0; i < scenario.parties(); ++i) {
    auto& party = s.per_party[static_cast<std::size_t>(i)];
    party.reserve(static_cast<std::size_t>(scenario.settings(i)));
    for (int j = 0; j < scenario.settings(i); ++j) party.push_back(sample_setting(rng));
  }
  return s;
}

Eigen::Matrix2cd observable(const BlochSetting& b) {
  const auto& [x, y, z] = b.unit_vector;
  Eigen::Matrix2cd m;
  m << cplx(z, 0.0), cplx(x, -y),
       cplx(x, y), cplx(-z, 0.0);
  return m;
}

StateVector random_pure_state(int qubits, RandomStream& rng) {
  if (qubits < 1) throw std::invalid_argument("random state needs at least one qubit");
  Eigen::VectorXcd v(Eigen::Index{1} << qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v[i] = cplx(re, im);
  }
  return StateVector::normalized(std::move(v));
}

DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("visibility must lie in [0, 1]");
  const Eigen::Index dim = rho.entries().rows();
  Eigen::MatrixXcd m = v * rho.entries();
  m.diagonal().array() += (1.0 - v) / static_cast<double>(dim);
  return DensityMatrix(std::move(m), DensityMatrix::Unchecked{});
}

PauliTensor mix_with_white_noise(const PauliTensor& t, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("visibility must lie in [0, 1]");
  PauliTensor out = t;
  for (std::size_t k = 1; k < out.values.size(); ++k) out.values[k] *= v;
  return out;
}

}  // namespace nlfrac
