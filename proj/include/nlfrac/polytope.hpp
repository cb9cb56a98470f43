#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nlfrac/correlations.hpp"
#include "nlfrac/inequality.hpp"
#include "nlfrac/scenario.hpp"
#include "nlfrac/simplex.hpp"

namespace nlfrac {

/// Largest supported number of deterministic strategies, prod 2^{m_i}.
inline constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << 20;

/// Outcome bit per (party, setting). Bit (offset_i + j) is the outcome of
/// setting j of party i, offset_i = m_0 + ... + m_{i-1}; outcome 1 means E = -1.
struct DeterministicStrategy {
  std::uint32_t bits = 0;

  int outcome(const Scenario& s, int party, int setting) const;
  /// +1 or -1 for every correlator term, indexed like CorrelationTensor.
  std::vector<int> correlators(const Scenario& s) const;
};

/// Throws std::invalid_argument above kMaxVertices strategies.
std::vector<DeterministicStrategy> deterministic_strategies(const Scenario& scenario);
Behavior to_behavior(const DeterministicStrategy& d, const Scenario& scenario);
std::vector<Behavior> vertices(const Scenario& scenario);

struct LpResult {
  bool feasible = false;
  /// Visibility LP optimum; absent for plain membership tests.
  std::optional<double> v_star;
  /// Vertex weights in deterministic_strategies() order.
  std::vector<double> certificate;
};

/// Correlator vectors of every vertex, shared between visibility solves.
class LocalPolytope {
 public:
  explicit LocalPolytope(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  std::size_t vertex_count() const { return vertex_count_; }
  /// Row-major vertex_count x (term_count - 1), constant term omitted.
  const std::vector<double>& vertex_correlators() const { return correlators_; }

  /// Largest v such that v C + (1 - v) C_noise lies in the polytope, where
  /// white noise has all non-constant correlators zero.
  LpResult critical_visibility(const CorrelationTensor& t, const SimplexOptions& options = {}) const;

 private:
  Scenario scenario_;
  std::size_t vertex_count_ = 0;
  std::vector<double> correlators_;
};

/// Membership of a behavior, solved directly in probability space.
LpResult is_local(const Behavior& b, const SimplexOptions& options = {});

LpResult critical_visibility_lp(const CorrelationTensor& t, const SimplexOptions& options = {});
LpResult critical_visibility_lp(const DensityMatrix& rho, const Scenario& scenario, const SettingsSample& s,
                                const SimplexOptions& options = {});

/// Maximum of the inequality over deterministic strategies, in exact integer
/// arithmetic.
std::int64_t classical_bound(const BellInequality& ineq);

}  // namespace nlfrac
