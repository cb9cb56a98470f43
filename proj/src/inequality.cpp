#include "nlfrac/inequality.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace nlfrac {

namespace {

struct TermsHash {
  std::size_t operator()(const std::vector<Term>& terms) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Term& t : terms) {
      h ^= (static_cast<std::uint64_t>(t.index) << 32) ^ static_cast<std::uint32_t>(t.coefficient);
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

using TermSet = std::unordered_set<std::vector<Term>, TermsHash>;

// Terms of one relabeled inequality before output flips. mask[k] has one bit
// per (party, setting) slot occurring in term k. Sorted by index.
struct Candidate {
  std::vector<Term> terms;
  std::vector<std::uint32_t> mask;
  int slots = 0;
};

void sort_candidate(Candidate& c) {
  std::vector<std::size_t> order(c.terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return c.terms[a].index < c.terms[b].index; });
  Candidate sorted;
  sorted.slots = c.slots;
  for (std::size_t k : order) {
    sorted.terms.push_back(c.terms[k]);
    sorted.mask.push_back(c.mask[k]);
  }
  c = std::move(sorted);
}

void emit_flips(const Candidate& c, const Scenario& scenario, TermSet& seen,
                std::vector<BellInequality>& out) {
  std::vector<Term> terms = c.terms;
  for (std::uint32_t flips = 0; flips < (std::uint32_t{1} << c.slots); ++flips) {
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const bool odd = std::popcount(c.mask[k] & flips) & 1;
      terms[k].coefficient = odd ? -c.terms[k].coefficient : c.terms[k].coefficient;
    }
    if (seen.insert(terms).second) out.emplace_back(scenario, terms);
  }
}

// All ordered selections of k distinct values from {0..m-1}, lexicographic.
std::vector<std::vector<int>> ordered_injections(int k, int m) {
  std::vector<std::vector<int>> result;
  std::vector<int> current;
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == k) {
      result.push_back(current);
      return;
    }
    for (int v = 0; v < m; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      current.push_back(v);
      self(self);
      current.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec);
  return result;
}

// Odometer step over one setting per party in `parties`; false after the last.
bool advance_choice(std::vector<int>& choice, const std::vector<int>& parties, const Scenario& scenario) {
  for (std::size_t k = choice.size(); k-- > 0;) {
    if (++choice[k] < scenario.settings(parties[k])) return true;
    choice[k] = 0;
  }
  return false;
}

char party_letter(int party) { return static_cast<char>('A' + party); }

}  // namespace

BellInequality::BellInequality(Scenario scenario, std::vector<Term> terms) : scenario_(std::move(scenario)) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  for (const Term& t : terms) {
    if (t.index >= scenario_.term_count()) throw std::out_of_range("term index outside scenario");
    if (!terms_.empty() && terms_.back().index == t.index) {
      terms_.back().coefficient += t.coefficient;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coefficient == 0; });
  if (nonconstant_terms() == 0) throw std::invalid_argument("inequality has no correlator terms");
}

BellInequality BellInequality::parse(std::string_view expr, const Scenario& scenario) {
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < expr.size() && std::isspace(static_cast<unsigned char>(expr[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("cannot parse inequality at position " + std::to_string(pos) + ": " + what);
  };
  auto read_int = [&]() -> long {
    std::size_t start = pos;
    while (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) ++pos;
    if (pos == start) fail("expected a number");
    if (pos - start > 6) fail("number too large");
    return std::stol(std::string(expr.substr(start, pos - start)));
  };

  skip_space();
  bool first = true;
  while (pos < expr.size()) {
    int sign = 1;
    skip_space();
    if (pos < expr.size() && (expr[pos] == '+' || expr[pos] == '-')) {
      sign = expr[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    skip_space();
    long coefficient = 1;
    bool has_number = false;
    if (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) {
      coefficient = read_int();
      has_number = true;
      skip_space();
      if (pos < expr.size() && expr[pos] == '*') {
        ++pos;
        skip_space();
      }
    }
    std::vector<int> key(static_cast<std::size_t>(scenario.parties()), kAbsent);
    bool has_factor = false;
    while (pos < expr.size() && std::isalpha(static_cast<unsigned char>(expr[pos]))) {
      const int party = std::toupper(static_cast<unsigned char>(expr[pos])) - 'A';
      if (party < 0 || party >= scenario.parties()) fail("party letter outside scenario");
      ++pos;
      const long setting = read_int();
      if (setting >= scenario.settings(party)) fail("setting index outside scenario");
      if (key[static_cast<std::size_t>(party)] != kAbsent) fail("party repeated within a term");
      key[static_cast<std::size_t>(party)] = static_cast<int>(setting);
      has_factor = true;
      skip_space();
    }
    if (!has_factor && !has_number) fail("empty term");
    terms.push_back({static_cast<std::uint32_t>(scenario.term_index(key)),
                     static_cast<std::int32_t>(sign * coefficient)});
    skip_space();
  }
  return BellInequality(scenario, std::move(terms));
}

std::int32_t BellInequality::constant() const {
  return (!terms_.empty() && terms_.front().index == 0) ? terms_.front().coefficient : 0;
}

std::int32_t BellInequality::coefficient(std::size_t index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, std::size_t i) { return t.index < i; });
  return (it != terms_.end() && it->index == index) ? it->coefficient : 0;
}

std::size_t BellInequality::nonconstant_terms() const {
  return terms_.size() - (constant() != 0 ? 1 : 0);
}

std::vector<std::vector<int>> BellInequality::used_settings() const {
  std::vector<std::vector<int>> used(static_cast<std::size_t>(scenario_.parties()));
  for (const Term& t : terms_) {
    for (int p = 0; p < scenario_.parties(); ++p) {
      const int j = scenario_.term_setting(t.index, p);
      if (j != kAbsent) used[static_cast<std::size_t>(p)].push_back(j);
    }
  }
  for (auto& u : used) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }
  return used;
}

BellInequality BellInequality::flip(int party, int setting) const {
  std::vector<Term> terms = terms_;
  for (Term& t : terms) {
    if (scenario_.term_setting(t.index, party) == setting) t.coefficient = -t.coefficient;
  }
  return BellInequality(scenario_, std::move(terms));
}

std::string BellInequality::to_string() const {
  std::string out;
  auto emit = [&](const Term& t) {
    const std::int32_t mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
    if (out.empty()) {
      if (t.coefficient < 0) out += "-";
    } else {
      out += t.coefficient < 0 ? " - " : " + ";
    }
    std::string factors;
    for (int p = 0; p < scenario_.parties(); ++p) {
      const int j = scenario_.term_setting(t.index, p);
      if (j != kAbsent) {
        factors += party_letter(p);
        factors += std::to_string(j);
      }
    }
    if (factors.empty()) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + " ";
      out += factors;
    }
  };
  for (const Term& t : terms_) {
    if (t.index != 0) emit(t);
  }
  if (constant() != 0) emit(terms_.front());
  return out;
}

double evaluate(const BellInequality& ineq, const CorrelationTensor& t) {
  if (!(ineq.scenario() == t.scenario)) throw std::invalid_argument("inequality and correlations use different scenarios");
  double sum = 0.0;
  for (const Term& term : ineq.terms()) sum += term.coefficient * t.values[term.index];
  return sum;
}

std::optional<double> critical_visibility(const BellInequality& ineq, const CorrelationTensor& t,
                                          double epsilon) {
  const double value = evaluate(ineq, t);
  if (!(value > epsilon)) return std::nullopt;
  const double w0 = ineq.constant();
  return -w0 / (value - w0);
}

InequalityFamily::InequalityFamily(Scenario scenario, std::vector<BellInequality> variants, std::string provenance)
    : scenario_(std::move(scenario)), variants_(std::move(variants)), provenance_(std::move(provenance)) {
  offsets_.push_back(0);
  for (const auto& v : variants_) {
    if (!(v.scenario() == scenario_)) throw std::invalid_argument("family member in a different scenario");
    for (const Term& t : v.terms()) {
      indices_.push_back(t.index);
      coefficients_.push_back(t.coefficient);
    }
    offsets_.push_back(static_cast<std::uint32_t>(indices_.size()));
    constants_.push_back(v.constant());
  }
}

void InequalityFamily::evaluate_all(const CorrelationTensor& t, std::vector<double>& out) const {
  out.resize(variants_.size());
  const double* c = t.values.data();
  for (std::size_t v = 0; v < variants_.size(); ++v) {
    double sum = 0.0;
    for (std::uint32_t k = offsets_[v]; k < offsets_[v + 1]; ++k) sum += coefficients_[k] * c[indices_[k]];
    out[v] = sum;
  }
}

std::optional<double> InequalityFamily::best_strength(const CorrelationTensor& t, double epsilon) const {
  std::optional<double> best;
  const double* c = t.values.data();
  for (std::size_t v = 0; v < variants_.size(); ++v) {
    double sum = 0.0;
    for (std::uint32_t k = offsets_[v]; k < offsets_[v + 1]; ++k) sum += coefficients_[k] * c[indices_[k]];
    if (sum > epsilon) {
      const double w0 = constants_[v];
      const double strength = 1.0 + w0 / (sum - w0);
      if (!best || strength > *best) best = strength;
    }
  }
  return best;
}

InequalityFamily InequalityFamily::merged(const InequalityFamily& other) const {
  if (!(other.scenario_ == scenario_)) throw std::invalid_argument("cannot merge families from different scenarios");
  TermSet seen;
  std::vector<BellInequality> all;
  for (const auto* fam : {this, &other}) {
    for (const auto& v : fam->variants_) {
      std::vector<Term> key(v.terms().begin(), v.terms().end());
      if (seen.insert(std::move(key)).second) all.push_back(v);
    }
  }
  return InequalityFamily(scenario_, std::move(all), provenance_ + "+" + other.provenance_);
}

FamilyMax max_over_family(const InequalityFamily& family, const CorrelationTensor& t) {
  if (family.size() == 0) throw std::invalid_argument("empty inequality family");
  std::vector<double> values;
  family.evaluate_all(t, values);
  FamilyMax best{values[0], 0};
  for (std::size_t v = 1; v < values.size(); ++v) {
    if (values[v] > best.best_value) best = {values[v], v};
  }
  return best;
}

InequalityFamily lifted_chsh_family(const Scenario& scenario) {
  const int n = scenario.parties();
  int capable = 0;
  for (int p = 0; p < n; ++p) capable += scenario.settings(p) >= 2 ? 1 : 0;
  if (capable < 2) throw std::invalid_argument("lifted CHSH needs two parties with at least two settings");

  TermSet seen;
  std::vector<BellInequality> variants;
  std::vector<int> others;
  std::vector<int> choice;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || scenario.settings(a) < 2 || scenario.settings(b) < 2) continue;
      others.clear();
      for (int p = 0; p < n; ++p) {
        if (p != a && p != b) others.push_back(p);
      }
      for (const auto& x : ordered_injections(2, scenario.settings(a))) {
        for (const auto& y : ordered_injections(2, scenario.settings(b))) {
          // odometer over one setting per remaining party
          choice.assign(others.size(), 0);
          do {
            // slots: 0,1 -> A x0,x1; 2,3 -> B y0,y1; 4+k -> others[k]
            Candidate c;
            c.slots = 4 + static_cast<int>(others.size());
            struct Factor { int coef; std::vector<int> key; std::uint32_t mask; };
            std::vector<Factor> chsh;
            auto pair_term = [&](int coef, int xi, int yi) {
              std::vector<int> key(static_cast<std::size_t>(n), kAbsent);
              key[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(xi)];
              key[static_cast<std::size_t>(b)] = y[static_cast<std::size_t>(yi)];
              chsh.push_back({coef, key, (1u << xi) | (1u << (2 + yi))});
            };
            pair_term(1, 0, 0);
            pair_term(1, 1, 0);
            pair_term(1, 0, 1);
            pair_term(-1, 1, 1);
            chsh.push_back({-2, std::vector<int>(static_cast<std::size_t>(n), kAbsent), 0u});
            for (std::uint32_t subset = 0; subset < (1u << others.size()); ++subset) {
              const int sign = (std::popcount(subset) & 1) ? -1 : 1;
              for (const Factor& f : chsh) {
                std::vector<int> key = f.key;
                std::uint32_t mask = f.mask;
                for (std::size_t k = 0; k < others.size(); ++k) {
                  if (subset & (1u << k)) {
                    key[static_cast<std::size_t>(others[k])] = choice[k];
                    mask |= 1u << (4 + k);
                  }
                }
                c.terms.push_back({static_cast<std::uint32_t>(scenario.term_index(key)), sign * f.coef});
                c.mask.push_back(mask);
              }
            }
            sort_candidate(c);
            emit_flips(c, scenario, seen, variants);

          } while (advance_choice(choice, others, scenario));
        }
      }
    }
  }
  return InequalityFamily(scenario, std::move(variants), "lifted CHSH");
}

InequalityFamily symmetry_orbit(const BellInequality& base, const Scenario& scenario, const std::string& provenance) {
  const Scenario& bs = base.scenario();
  const int n = bs.parties();
  if (scenario.parties() != n) {
    throw std::invalid_argument("orbit scenario must have the same number of parties as the base inequality");
  }
  const auto used = base.used_settings();
  std::vector<int> slot_offset(static_cast<std::size_t>(n), 0);
  int slots = 0;
  for (int p = 0; p < n; ++p) {
    slot_offset[static_cast<std::size_t>(p)] = slots;
    slots += static_cast<int>(used[static_cast<std::size_t>(p)].size());
  }
  if (slots > 30) throw std::invalid_argument("inequality uses too many settings for orbit generation");

  // per base term: position of each party's setting within used[p], or -1
  const auto base_terms = base.terms();
  std::vector<std::vector<int>> position(base_terms.size(), std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<std::uint32_t> masks(base_terms.size(), 0);
  for (std::size_t k = 0; k < base_terms.size(); ++k) {
    for (int p = 0; p < n; ++p) {
      const int j = bs.term_setting(base_terms[k].index, p);
      if (j == kAbsent) continue;
      const auto& u = used[static_cast<std::size_t>(p)];
      const int pos = static_cast<int>(std::lower_bound(u.begin(), u.end(), j) - u.begin());
      position[k][static_cast<std::size_t>(p)] = pos;
      masks[k] |= 1u << (slot_offset[static_cast<std::size_t>(p)] + pos);
    }
  }

  TermSet seen;
  std::vector<BellInequality> variants;
  std::vector<int> host(static_cast<std::size_t>(n));
  std::iota(host.begin(), host.end(), 0);
  bool fits_somewhere = false;
  do {
    // host[p] is the scenario party that plays base party p
    bool fits = true;
    std::vector<std::vector<std::vector<int>>> options(static_cast<std::size_t>(n));
    for (int p = 0; p < n && fits; ++p) {
      const int k = static_cast<int>(used[static_cast<std::size_t>(p)].size());
      const int m = scenario.settings(host[static_cast<std::size_t>(p)]);
      if (k > m) fits = false;
      else options[static_cast<std::size_t>(p)] = ordered_injections(k, m);
    }
    if (!fits) continue;
    fits_somewhere = true;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    std::vector<int> key(static_cast<std::size_t>(n));
    while (true) {
      Candidate c;
      c.slots = slots;
      for (std::size_t k = 0; k < base_terms.size(); ++k) {
        std::fill(key.begin(), key.end(), kAbsent);
        for (int p = 0; p < n; ++p) {
          const int pos = position[k][static_cast<std::size_t>(p)];
          if (pos < 0) continue;
          key[static_cast<std::size_t>(host[static_cast<std::size_t>(p)])] =
              options[static_cast<std::size_t>(p)][pick[static_cast<std::size_t>(p)]][static_cast<std::size_t>(pos)];
        }
        c.terms.push_back({static_cast<std::uint32_t>(scenario.term_index(key)), base_terms[k].coefficient});
        c.mask.push_back(masks[k]);
      }
      sort_candidate(c);
      emit_flips(c, scenario, seen, variants);

      int p = n - 1;
      while (p >= 0) {
        if (++pick[static_cast<std::size_t>(p)] < options[static_cast<std::size_t>(p)].size()) break;
        pick[static_cast<std::size_t>(p)] = 0;
        --p;
      }
      if (p < 0) break;
    }
  } while (std::next_permutation(host.begin(), host.end()));
  if (!fits_somewhere) throw std::invalid_argument("inequality does not fit into scenario " + scenario.to_string());
  return InequalityFamily(scenario, std::move(variants), provenance);
}

}  // namespace nlfrac
