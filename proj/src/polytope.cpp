#include "nlfrac/polytope.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace nlfrac {

namespace {

std::uint64_t strategy_count(const Scenario& s) {
  const int total = s.total_settings();
  if (total > 20) {
    throw std::invalid_argument("scenario " + s.to_string() + " has more than 2^20 deterministic strategies");
  }
  return std::uint64_t{1} << total;
}

std::vector<int> setting_offsets(const Scenario& s) {
  std::vector<int> offsets(static_cast<std::size_t>(s.parties()), 0);
  for (int p = 1; p < s.parties(); ++p) {
    offsets[static_cast<std::size_t>(p)] = offsets[static_cast<std::size_t>(p - 1)] + s.settings(p - 1);
  }
  return offsets;
}

}  // namespace

int DeterministicStrategy::outcome(const Scenario& s, int party, int setting) const {
  return static_cast<int>((bits >> (setting_offsets(s)[static_cast<std::size_t>(party)] + setting)) & 1u);
}

std::vector<int> DeterministicStrategy::correlators(const Scenario& s) const {
  const auto offsets = setting_offsets(s);
  std::vector<int> out(s.term_count());
  for (std::size_t idx = 0; idx < s.term_count(); ++idx) {
    int value = 1;
    for (int p = 0; p < s.parties(); ++p) {
      const int j = s.term_setting(idx, p);
      if (j != kAbsent && ((bits >> (offsets[static_cast<std::size_t>(p)] + j)) & 1u)) value = -value;
    }
    out[idx] = value;
  }
  return out;
}

std::vector<DeterministicStrategy> deterministic_strategies(const Scenario& scenario) {
  const std::uint64_t count = strategy_count(scenario);
  std::vector<DeterministicStrategy> out(count);
  for (std::uint64_t k = 0; k < count; ++k) out[k].bits = static_cast<std::uint32_t>(k);
  return out;
}

Behavior to_behavior(const DeterministicStrategy& d, const Scenario& scenario) {
  const int n = scenario.parties();
  const auto offsets = setting_offsets(scenario);
  Behavior b{scenario, std::vector<double>(scenario.setting_tuple_count() * scenario.outcome_count(), 0.0)};
  for (std::size_t tuple = 0; tuple < scenario.setting_tuple_count(); ++tuple) {
    const auto k = scenario.setting_tuple(tuple);
    std::size_t r = 0;
    for (int p = 0; p < n; ++p) {
      r = 2 * r + ((d.bits >> (offsets[static_cast<std::size_t>(p)] + k[static_cast<std::size_t>(p)])) & 1u);
    }
    b.probs[tuple * scenario.outcome_count() + r] = 1.0;
  }
  return b;
}

std::vector<Behavior> vertices(const Scenario& scenario) {
  std::vector<Behavior> out;
  for (const auto& d : deterministic_strategies(scenario)) out.push_back(to_behavior(d, scenario));
  return out;
}

LocalPolytope::LocalPolytope(Scenario scenario) : scenario_(std::move(scenario)) {
  const auto strategies = deterministic_strategies(scenario_);
  vertex_count_ = strategies.size();
  const std::size_t dim = scenario_.term_count() - 1;
  correlators_.resize(vertex_count_ * dim);
  for (std::size_t k = 0; k < vertex_count_; ++k) {
    const auto c = strategies[k].correlators(scenario_);
    for (std::size_t t = 0; t < dim; ++t) correlators_[k * dim + t] = c[t + 1];
  }
}

LpResult LocalPolytope::critical_visibility(const CorrelationTensor& t, const SimplexOptions& options) const {
  if (!(t.scenario == scenario_)) throw std::invalid_argument("correlations and polytope use different scenarios");
  // White noise sits at the origin of correlator space, inside the polytope,
  // so v* = 1 / lambda* with lambda* = min sum(mu) s.t. sum_k mu_k c_k = c,
  // mu >= 0 (the gauge of c). Its right-hand side is generic, which keeps
  // the simplex clear of the degenerate pivots of the (v, q) form.
  const std::size_t dim = scenario_.term_count() - 1;
  const std::size_t k_count = vertex_count_;
  LpProblem lp;
  lp.rows = dim;
  lp.cols = k_count;
  lp.a.resize(dim * k_count);
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t k = 0; k < k_count; ++k) lp.a[row * k_count + k] = correlators_[k * dim + row];
  }
  lp.b.assign(t.values.begin() + 1, t.values.end());
  lp.c.assign(k_count, 1.0);

  const LpSolution sol = solve_lp(lp, options);
  if (sol.status != LpStatus::kOptimal) throw LpFailure("visibility LP did not reach an optimum");
  const double lambda = sol.objective;
  LpResult result;
  result.v_star = lambda > 1.0 ? 1.0 / lambda : 1.0;
  result.feasible = 1.0 - *result.v_star <= options.equality_tolerance;
  // q = mu / lambda, topped up with the uniform mixture when lambda < 1
  result.certificate = sol.x;
  if (lambda > 1.0) {
    for (double& q : result.certificate) q /= lambda;
  } else {
    const double fill = (1.0 - lambda) / static_cast<double>(k_count);
    for (double& q : result.certificate) q += fill;
  }
  return result;
}

LpResult is_local(const Behavior& b, const SimplexOptions& options) {
  const Scenario& sc = b.scenario;
  const auto strategies = deterministic_strategies(sc);
  const std::size_t entries = b.probs.size();
  LpProblem lp;
  lp.rows = entries + 1;
  lp.cols = strategies.size();
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  for (std::size_t k = 0; k < strategies.size(); ++k) {
    const Behavior v = to_behavior(strategies[k], sc);
    for (std::size_t e = 0; e < entries; ++e) lp.at(e, k) = v.probs[e];
    lp.at(entries, k) = 1.0;
  }
  std::copy(b.probs.begin(), b.probs.end(), lp.b.begin());
  lp.b[entries] = 1.0;

  SimplexOptions opts = options;
  opts.feasibility_only = true;
  const LpSolution sol = solve_lp(lp, opts);
  LpResult result;
  result.feasible = sol.status == LpStatus::kOptimal;
  if (result.feasible) result.certificate = sol.x;
  return result;
}

LpResult critical_visibility_lp(const CorrelationTensor& t, const SimplexOptions& options) {
  return LocalPolytope(t.scenario).critical_visibility(t, options);
}

LpResult critical_visibility_lp(const DensityMatrix& rho, const Scenario& scenario, const SettingsSample& s,
                                const SimplexOptions& options) {
  return critical_visibility_lp(correlation_tensor(rho, scenario, s), options);
}

std::int64_t classical_bound(const BellInequality& ineq) {
  const Scenario& sc = ineq.scenario();
  const auto offsets = setting_offsets(sc);
  const std::uint64_t count = strategy_count(sc);
  // per term: bit mask of the (party, setting) outcomes it multiplies
  std::vector<std::uint32_t> masks;
  std::vector<std::int64_t> coefs;
  for (const Term& t : ineq.terms()) {
    std::uint32_t mask = 0;
    for (int p = 0; p < sc.parties(); ++p) {
      const int j = sc.term_setting(t.index, p);
      if (j != kAbsent) mask |= 1u << (offsets[static_cast<std::size_t>(p)] + j);
    }
    masks.push_back(mask);
    coefs.push_back(t.coefficient);
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    std::int64_t value = 0;
    for (std::size_t k = 0; k < masks.size(); ++k) {
      value += (std::popcount(masks[k] & static_cast<std::uint32_t>(bits)) & 1) ? -coefs[k] : coefs[k];
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace nlfrac
