#include "nlfrac/correlations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace nlfrac {

namespace {

void check_shape(int qubits, const Scenario& scenario, const SettingsSample& s) {
  if (qubits != scenario.parties()) {
    throw std::invalid_argument("state has " + std::to_string(qubits) + " qubits but scenario has " +
                                std::to_string(scenario.parties()) + " parties");
  }
  if (!s.matches(scenario)) throw std::invalid_argument("settings sample does not match scenario");
}

// Rows of the unitary taking the computational basis to the eigenbasis of
// e.sigma: row 0 is <+|, row 1 is <-|.
Eigen::Matrix2cd measurement_basis(const BlochSetting& b) {
  const auto& [x, y, z] = b.unit_vector;
  cplx a(1.0, 0.0), c(0.0, 0.0);
  if (1.0 + z > 1e-12) {
    const double n = std::sqrt(2.0 * (1.0 + z));
    a = cplx((1.0 + z) / n, 0.0);
    c = cplx(x / n, y / n);
  } else {
    a = 0.0;
    c = 1.0;
  }
  Eigen::Matrix2cd u;
  u << std::conj(a), std::conj(c),
       -c, a;
  return u;
}

}  // namespace

CorrelationTensor correlation_tensor(const PauliTensor& t, const Scenario& scenario,
                                     const SettingsSample& s) {
  check_shape(t.qubits, scenario, s);
  const int n = scenario.parties();
  std::vector<double> cur = t.values;
  std::vector<double> next;
  std::size_t outer = 1;
  for (int p = 0; p < n; ++p) {
    const std::size_t inner = std::size_t{1} << (2 * (n - 1 - p));
    const auto m = static_cast<std::size_t>(scenario.settings(p));
    const auto& party = s.per_party[static_cast<std::size_t>(p)];
    next.assign(outer * (m + 1) * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
      const double* src = cur.data() + o * 4 * inner;
      double* dst = next.data() + o * (m + 1) * inner;
      std::copy(src, src + inner, dst);
      for (std::size_t j = 0; j < m; ++j) {
        const auto& e = party[j].unit_vector;
        double* row = dst + (j + 1) * inner;
        for (std::size_t k = 0; k < inner; ++k) {
          row[k] = e[0] * src[inner + k] + e[1] * src[2 * inner + k] + e[2] * src[3 * inner + k];
        }
      }
    }
    cur.swap(next);
    outer *= m + 1;
  }
  cur[0] = 1.0;
  return CorrelationTensor{scenario, std::move(cur)};
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho, const Scenario& scenario,
                                     const SettingsSample& s) {
  return correlation_tensor(pauli_tensor(rho), scenario, s);
}

Behavior behavior_from_born(const DensityMatrix& rho, const Scenario& scenario, const SettingsSample& s) {
  check_shape(rho.qubits(), scenario, s);
  const int n = scenario.parties();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Behavior b{scenario, std::vector<double>(scenario.setting_tuple_count() * scenario.outcome_count())};
  for (std::size_t tuple = 0; tuple < scenario.setting_tuple_count(); ++tuple) {
    const auto k = scenario.setting_tuple(tuple);
    Eigen::MatrixXcd m = rho.entries();
    for (int q = 0; q < n; ++q) {
      const Eigen::Matrix2cd u = measurement_basis(
          s.per_party[static_cast<std::size_t>(q)][static_cast<std::size_t>(k[static_cast<std::size_t>(q)])]);
      const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
      for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
        if (r0 & bit) continue;
        const Eigen::Index r1 = r0 | bit;
        // rows: m <- U m
        for (Eigen::Index c = 0; c < dim; ++c) {
          const cplx top = m(r0, c), bottom = m(r1, c);
          m(r0, c) = u(0, 0) * top + u(0, 1) * bottom;
          m(r1, c) = u(1, 0) * top + u(1, 1) * bottom;
        }
        // columns: m <- m U^dagger
        for (Eigen::Index r = 0; r < dim; ++r) {
          const cplx left = m(r, r0), right = m(r, r1);
          m(r, r0) = left * std::conj(u(0, 0)) + right * std::conj(u(0, 1));
          m(r, r1) = left * std::conj(u(1, 0)) + right * std::conj(u(1, 1));
        }
      }
    }
    for (Eigen::Index r = 0; r < dim; ++r) {
      b.probs[tuple * static_cast<std::size_t>(dim) + static_cast<std::size_t>(r)] = m(r, r).real();
    }
  }
  return b;
}

Behavior behavior_from_correlations(const CorrelationTensor& t) {
  const Scenario& sc = t.scenario;
  const int n = sc.parties();
  const std::size_t outcomes = sc.outcome_count();
  Behavior b{sc, std::vector<double>(sc.setting_tuple_count() * outcomes)};
  std::vector<int> key(static_cast<std::size_t>(n));
  const double scale = 1.0 / static_cast<double>(outcomes);
  for (std::size_t tuple = 0; tuple < sc.setting_tuple_count(); ++tuple) {
    const auto k = sc.setting_tuple(tuple);
    for (std::size_t r = 0; r < outcomes; ++r) {
      double sum = 0.0;
      // subset bit (n - 1 - i) selects party i, matching the outcome layout
      for (std::size_t subset = 0; subset < outcomes; ++subset) {
        for (int i = 0; i < n; ++i) {
          const std::size_t bit = std::size_t{1} << (n - 1 - i);
          key[static_cast<std::size_t>(i)] = (subset & bit) ? k[static_cast<std::size_t>(i)] : kAbsent;
        }
        const double sign = (std::popcount(subset & r) & 1) ? -1.0 : 1.0;
        sum += sign * t.values[sc.term_index(key)];
      }
      b.probs[tuple * outcomes + r] = scale * sum;
    }
  }
  return b;
}

CorrelationTensor correlations_from_behavior(const Behavior& b) {
  const Scenario& sc = b.scenario;
  const int n = sc.parties();
  const std::size_t outcomes = sc.outcome_count();
  std::vector<double> values(sc.term_count());
  std::vector<int> tuple(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < sc.term_count(); ++idx) {
    const TermKey key = sc.term_key(idx);
    std::size_t mask = 0;
    for (int i = 0; i < n; ++i) {
      const int j = key[static_cast<std::size_t>(i)];
      tuple[static_cast<std::size_t>(i)] = j == kAbsent ? 0 : j;
      if (j != kAbsent) mask |= std::size_t{1} << (n - 1 - i);
    }
    const std::size_t t = sc.setting_tuple_index(tuple);
    double sum = 0.0;
    for (std::size_t r = 0; r < outcomes; ++r) {
      sum += ((std::popcount(mask & r) & 1) ? -1.0 : 1.0) * b(t, r);
    }
    values[idx] = sum;
  }
  values[0] = 1.0;
  return CorrelationTensor{sc, std::move(values)};
}

double behavior_defect(const Behavior& b) {
  const Scenario& sc = b.scenario;
  const int n = sc.parties();
  const std::size_t outcomes = sc.outcome_count();
  double defect = 0.0;
  for (std::size_t tuple = 0; tuple < sc.setting_tuple_count(); ++tuple) {
    double total = 0.0;
    for (std::size_t r = 0; r < outcomes; ++r) {
      const double p = b(tuple, r);
      defect = std::max({defect, -p, p - 1.0});
      total += p;
    }
    defect = std::max(defect, std::abs(total - 1.0));
    // marginal over party i must not depend on party i's setting
    auto k = sc.setting_tuple(tuple);
    for (int i = 0; i < n; ++i) {
      auto ref = k;
      ref[static_cast<std::size_t>(i)] = 0;
      const std::size_t rt = sc.setting_tuple_index(ref);
      const std::size_t bit = std::size_t{1} << (n - 1 - i);
      for (std::size_t r = 0; r < outcomes; ++r) {
        if (r & bit) continue;
        const double here = b(tuple, r) + b(tuple, r | bit);
        const double there = b(rt, r) + b(rt, r | bit);
        defect = std::max(defect, std::abs(here - there));
      }
    }
  }
  return defect;
}

}  // namespace nlfrac
