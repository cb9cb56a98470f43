#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlfrac/correlations.hpp"
#include "nlfrac/scenario.hpp"

namespace nlfrac {

inline constexpr double kDefaultViolationEpsilon = 1e-9;

struct Term {
  std::uint32_t index = 0;
  std::int32_t coefficient = 0;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Correlator-form Bell inequality sum_t w_t <E...E>_t <= 0 with integer
/// coefficients. The constant lives on term index 0.
class BellInequality {
 public:
  /// Sorts by term index, merges repeated indices and drops zero coefficients.
  /// Throws std::invalid_argument if no non-constant term remains.
  BellInequality(Scenario scenario, std::vector<Term> terms);

  /// Parses sums of products such as "A0B1 - 2 A1B0C1 + C0 - 4". Letters A..F
  /// name parties 1..6, the digit after a letter is the setting (from 0).
  static BellInequality parse(std::string_view expression, const Scenario& scenario);

  const Scenario& scenario() const { return scenario_; }
  std::span<const Term> terms() const { return terms_; }
  std::int32_t constant() const;
  std::int32_t coefficient(std::size_t index) const;
  std::size_t nonconstant_terms() const;

  /// Settings of each party that occur in some term, ascending.
  std::vector<std::vector<int>> used_settings() const;

  /// Relabels the two outcomes of one setting: E -> -E in every term using it.
  BellInequality flip(int party, int setting) const;

  std::string to_string() const;

  friend bool operator==(const BellInequality&, const BellInequality&) = default;

 private:
  Scenario scenario_;
  std::vector<Term> terms_;
};

double evaluate(const BellInequality& ineq, const CorrelationTensor& t);

/// Visibility at which the inequality is saturated, v = -w_0 / A with A the
/// non-constant part. std::nullopt when the value does not exceed epsilon.
std::optional<double> critical_visibility(const BellInequality& ineq, const CorrelationTensor& t,
                                          double epsilon = kDefaultViolationEpsilon);

/// Deduplicated set of inequalities in one scenario, stored in generation
/// order and packed for repeated evaluation.
class InequalityFamily {
 public:
  InequalityFamily(Scenario scenario, std::vector<BellInequality> variants, std::string provenance);

  const Scenario& scenario() const { return scenario_; }
  const std::string& provenance() const { return provenance_; }
  std::size_t size() const { return variants_.size(); }
  const std::vector<BellInequality>& variants() const { return variants_; }
  const BellInequality& operator[](std::size_t i) const { return variants_[i]; }

  /// Value of every variant on t, in order.
  void evaluate_all(const CorrelationTensor& t, std::vector<double>& out) const;
  /// Largest 1 - v_crit over violated variants.
  std::optional<double> best_strength(const CorrelationTensor& t, double epsilon = kDefaultViolationEpsilon) const;

  /// Union with deduplication; order is this family then the new members of other.
  InequalityFamily merged(const InequalityFamily& other) const;

 private:
  Scenario scenario_;
  std::vector<BellInequality> variants_;
  std::string provenance_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> indices_;
  std::vector<double> coefficients_;
  std::vector<double> constants_;
};

struct FamilyMax {
  double best_value = 0.0;
  std::size_t best_variant = 0;
};

/// Ties go to the earliest variant. Throws std::invalid_argument on an empty family.
FamilyMax max_over_family(const InequalityFamily& family, const CorrelationTensor& t);

/// Lifted CHSH inequalities (CHSH - 2) prod_k (1 - E^(k)) for every ordered
/// pair of CHSH parties, ordered pair of settings per CHSH party, one setting
/// per remaining party, and every output relabeling.
InequalityFamily lifted_chsh_family(const Scenario& scenario);

/// Images of base under party permutations, ordered injections of each base
/// party's used settings into the host party's settings, and output flips.
/// Requires base and scenario to have the same number of parties.
InequalityFamily symmetry_orbit(const BellInequality& base, const Scenario& scenario,
                                const std::string& provenance = "orbit");

}  // namespace nlfrac
