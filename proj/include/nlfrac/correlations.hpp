#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlfrac/quantum.hpp"
#include "nlfrac/scenario.hpp"

namespace nlfrac {

/// Joint expectation values for one settings sample, indexed by
/// Scenario::term_index. values[0] is the constant term and equals 1.
struct CorrelationTensor {
  Scenario scenario;
  std::vector<double> values;

  double operator[](std::size_t index) const { return values[index]; }
  double at(std::span<const int> key) const { return values[scenario.term_index(key)]; }
};

/// Outcome probabilities stored as probs[tuple * 2^N + r], where tuple is
/// Scenario::setting_tuple_index and bit (N - 1 - i) of r is the outcome of
/// party i. Outcome 0 is the +1 eigenvalue.
struct Behavior {
  Scenario scenario;
  std::vector<double> probs;

  double operator()(std::size_t tuple, std::size_t outcomes) const {
    return probs[tuple * scenario.outcome_count() + outcomes];
  }
};

CorrelationTensor correlation_tensor(const PauliTensor& t, const Scenario& scenario,
                                     const SettingsSample& s);
CorrelationTensor correlation_tensor(const DensityMatrix& rho, const Scenario& scenario,
                                     const SettingsSample& s);

/// Projects onto the eigenbases of the chosen observables: P = Tr(rho x_i (I + (-1)^r_i e.sigma)/2).
Behavior behavior_from_born(const DensityMatrix& rho, const Scenario& scenario, const SettingsSample& s);
/// P(r|k) = 2^-N sum over party subsets T of (-1)^(sum_{i in T} r_i) <prod_{i in T} E_{k_i}>.
Behavior behavior_from_correlations(const CorrelationTensor& t);
/// Inverse map: recovers every correlator from the marginal sums of b.
CorrelationTensor correlations_from_behavior(const Behavior& b);

/// Largest deviation from the behavior invariants: probabilities in [0, 1],
/// normalization per setting tuple, and no-signalling marginals.
double behavior_defect(const Behavior& b);

}  // namespace nlfrac
