#include "nlfrac/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nlfrac {

namespace {

struct InequalitySource {
  const char* name;
  const char* table;
  const char* expression;
  // Added to the printed constant when it is not the local bound.
  int constant_correction = 0;
};

// A/B/C are parties 1/2/3, the digit is the setting index.
const InequalitySource kInequalities[] = {
    {"I_opt", "2x2x2",
     "A0B0 + A1B0 + A0B1 - A1B1 - A0B0C0 - A1B0C0 - A0B1C0 + A1B1C0 + 2 C0 - 2"},
    {"I_5", "2x2x2",
     "A0 - A0B0C0 - A0B0C1 + A0B1 - A0B1C0 + A0C1 + A1B0 - A1B0C0 - A1B1 + A1B1C1 + A1C0 - A1C1"
     " + B0 + B0C1 + B1C0 - B1C1 + C0 - 3"},
    {"I_6", "2x2x2",
     "A0 + A0B0 - A0B0C0 - A0B1C0 - A0B1C1 + A0C1 - A1B0C0 + A1B0C1 + A1C0 - A1C1 + B0 - B0C1"
     " + B1C0 + B1C1 + C0 - 3"},
    {"I_13", "2x2x2",
     "2 A0B0 + A0B0C0 + A0B0C1 + A0B1C0 - A0B1C1 + 2 A1B0 - A1B0C0 - A1B0C1 - A1B1C0 + A1B1C1 - 4"},
    {"I_16", "2x2x2",
     "A0 + A0B0 + A0B0C1 + A0B1C0 - A0B1C1 + A0C0 + A1 + A1B0 - 2 A1B0C0 - A1B0C1 - A1B1C0"
     " + A1B1C1 + A1C0 - 4"},
    {"I_19", "2x2x2",
     "A0 + A0B0 + A0B0C1 - A0B1C0 + A0B1C1 + A0C0 + A1 + A1B0 - A1B0C1 - A1B1C0 - A1B1C1 + A1C0"
     " - 2 B0C0 + 2 B1C0 - 4"},
    {"I_21", "2x2x2",
     "A0 + A0B0 - 2 A0B0C0 + A0B0C1 - A0B1C0 - A0B1C1 + A0C0 + A1 + B1 - A1B0C0 - A1B0C1 - A1B1"
     " + A1B1C1 + A1C0 + B0 + B0C0 + B1C0 - 4"},
    {"I_30", "2x2x2",
     "A0 + 2 A0B0 + 2 A0B0C0 - 2 A0B0C1 + A0B1 + A0B1C0 + 2 A0B1C1 + A0C0 - 2 A1B0 + A1B0C0"
     " - A1B0C1 - A1B1 + 2 A1B1C0 + A1B1C1 + A1 - A1C0 - B0C0 + B0C1 - B1C0 - B1C1 - 6"},
    {"I322_1", "3x2x2",
     "- 2 A0B0C0 - 2 A0B1C1 + A1B0C0 - A1B0C1 + A1B1C0 - A1B1C1 - A2B0C0 - A2B0C1 + A2B1C0"
     " + A2B1C1 - 4"},
    // Printed constant -4 leaves a local maximum of +1.
    {"I322_2", "3x2x2",
     "- A0 + A0B0C0 + A0B1 - A0B1C1 - A0C1 - A1B0C1 - A1B1C0 + A2 - A2B0C0 + A2B1 + A2B1C1"
     " - A2C1 + B0C0 - 4",
     -1},
    {"I322_3", "3x2x2",
     "A0B0C0 - A0B0C1 + A0B1C0 + A0B1C1 + 2 A0C0 + A1B1C0 + A1B1C1 - A1C0 - A1C1 - A2B0C0"
     " + A2B0C1 + A2C0 - A2C1 - 4"},
    {"I322_4", "3x2x2",
     "A0B0 + 2 A0B0C0 + A0B0C1 + A0B1 - A0B1C1 - A1B0 + A1B0C0 - A1B1 + A1B1C0 + A2B0C0"
     " - A2B0C1 - A2B1C0 + A2B1C1 - 4"},
    {"I322_5", "3x2x2",
     "- A0B0C0 + A0B0C1 + A0C0 - A0C1 + A1B0 - A1B0C0 + A1B1 + B1 + A1B1C0 + 2 A1C1 + A2B1C0"
     " + A2B1C1 - A2C0 - A2C1 + B0 - B0C1 - B1C1 - 4"},
    {"I322_6", "3x2x2",
     "2 A0B1C0 - 2 A0B1C1 - A1C0 - A1C1 - A1B0C0 - A1B0C1 + A2C0 + A2C1 - A2B0C0 - A2B0C1 - 4"},
    {"I322_7", "3x2x2",
     "- A0B0C0 - A0B0C1 - A0B1C0 - A0B1C1 - A1B0C0 + A1B0C1 - A1B1C0 + A1B1C1 - 2 A2B0"
     " + 2 A2B1 - 4"},
    {"I322_8", "3x2x2",
     "A0 - A0B0 + A0C0 - A0B0C1 - A0B1C0 + A0B1C1 + A1B0 - A1B0C0 + A1B1 - A1B1C0 - A2 - A2B1"
     " - A2C0 - A2B0C0 - A2B0C1 + A2B1C1 - 4"},
    {"I322_9", "3x2x2",
     "A0B1C0 + A0B1C1 - A1B1 - A1B1C0 + A2B1 - A2B1C1 - A0B2C0 - A0B2C1 - A1B2 - A1B2C1 + A2B2"
     " - A2B2C0 - A1C0 + A1C1 - A2C0 + A2C1 - 4"},
    {"I332_1", "3x3x2",
     "- A0B0 + A0B0C0 - 2 A0B1C1 + A0B2 + A0B2C0 + 2 A1B0C1 + A2B0 + 4 A1B1C0 + 2 A1B2C1"
     " + A2B0C0 - 2 A2B1C1 - A2B2 + A2B2C0 - 8"},
    {"I332_2", "3x3x2",
     "- A0B0C0 - A0B0C1 - A0B1C0 + A0B1C1 + 2 A0B2C1 - A1B1C0 + A1B1C1 + A1B2C0 - A1B2C1"
     " - A2B0C0 - A2B0C1 - A2B2C0 - A2B2C1 - 4"},
    {"I332_3", "3x3x2",
     "- A0B0 + A0B0C0 + A0B1C0 - A0B1C1 - A0B2 + A0B2C1 + A1B0 - A1B0C0 - A1B1 - A1B1C1"
     " + A1B2C0 + A1B2C1 - A2B1 - A2B1C0 - A2B2 - A2B2C0 - 4"},
    {"I332_4", "3x3x2",
     "A0B0C0 + A0B0C1 + A0B1C0 + A0B1C1 - A1B0 + A1B0C0 + A1B1 - A1B1C1 + A1B2C0 - A1B2C1"
     " + A2B0 + A2B0C1 - A2B1 - A2B1C0 + A2B2C0 - A2B2C1 - 4"},
    {"I332_5", "3x3x2",
     "2 A0B2C0 - A0B0C1 + A0B2C1 - A0B0 + 2 A0B1 + A0B2 + 2 A1B0C0 + 2 A1B1C0 - 2 A1B1C1"
     " + 2 A1B2C1 + 2 A2B2C0 - A2B0C1 + A2B2C1 + A2B0 - 2 A2B1 - A2B2 - 8"},
    {"I332_6", "3x3x2",
     "A0B0C0 - A0B0C2 - A0B1C0 + A0B1C2 + A1B0C0 - A1B0C2 - A1B1C2 + A2B2C0 + A2B2C2 - A2C0"
     " - A2C2 - B2C0 - B2C2 + A1B1C0 - C0 - C2 - 4"},
    {"I333_1", "3x3x3",
     "A0B0C0 + A0B0C1 + A0B2C0 + A0B2C1 - A1B0C0 - A1B0C2 - A1B1C1 + A1B2C1 + A1B2C2 - A2B0C1"
     " + A2B0C2 + A2B1C0 + A1B1C0 - A2B1C1 + A2B2C0 - A2B2C2 - 4"},
    {"I333_2", "3x3x3",
     "A0B0C0 - A0B0C2 + A0B1C1 - A0B1C2 + A0B2C0 - A0B2C1 + A1B0C2 + 2 A1B1C0 + A1B1C1"
     " + A1B1C2 + A1B2C0 - A1B0C0 - A1B2C1 - 4"},
    // Mermin form E_{001} + E_{010} + E_{100} - E_{111} <= 2.
    {"MABK3", "2x2x2", "A0B0C1 + A0B1C0 + A1B0C0 - A1B1C1 - 2"},
};

struct StateSource {
  const char* name;
  int qubits;
  // (basis index as bit string, sign) pairs with a common modulus
  std::vector<std::pair<const char*, int>> support;
};

const std::vector<StateSource>& state_sources() {
  static const std::vector<StateSource> sources = {
      {"GHZ2", 2, {{"00", 1}, {"11", 1}}},
      {"GHZ3", 3, {{"000", 1}, {"111", 1}}},
      {"W3", 3, {{"001", 1}, {"010", 1}, {"100", 1}}},
      {"GHZ4", 4, {{"0000", 1}, {"1111", 1}}},
      {"W4", 4, {{"0001", 1}, {"0010", 1}, {"0100", 1}, {"1000", 1}}},
      {"D2_4", 4, {{"0011", 1}, {"0101", 1}, {"0110", 1}, {"1001", 1}, {"1010", 1}, {"1100", 1}}},
      {"Cl4", 4, {{"0000", 1}, {"1100", 1}, {"0011", 1}, {"1111", -1}}},
      {"GHZ5", 5, {{"00000", 1}, {"11111", 1}}},
      {"W5", 5, {{"00001", 1}, {"00010", 1}, {"00100", 1}, {"01000", 1}, {"10000", 1}}},
      {"D2_5", 5, {{"00011", 1}, {"00101", 1}, {"00110", 1}, {"01001", 1}, {"01010", 1},
                   {"01100", 1}, {"10001", 1}, {"10010", 1}, {"10100", 1}, {"11000", 1}}},
      {"LCl5", 5, {{"00000", 1}, {"00010", 1}, {"00101", 1}, {"00111", -1},
                   {"01000", 1}, {"01010", 1}, {"01101", 1}, {"01111", -1},
                   {"10001", 1}, {"10011", -1}, {"10100", 1}, {"10110", 1},
                   {"11001", -1}, {"11011", 1}, {"11100", -1}, {"11110", -1}}},
      {"RCl5", 5, {{"00001", 1}, {"00010", 1}, {"00100", 1}, {"00111", -1},
                   {"01000", 1}, {"01011", 1}, {"01101", 1}, {"01110", -1},
                   {"10000", 1}, {"10011", -1}, {"10101", 1}, {"10110", 1},
                   {"11001", -1}, {"11010", 1}, {"11100", -1}, {"11111", -1}}},
  };
  return sources;
}

// Printed moduli and phases, three decimals; renormalized after assembly.
const std::pair<double, double> kPsi3[8] = {
    {0.522, 0.0}, {0.692, 2.387}, {0.172, -2.972}, {0.140, -0.102},
    {0.296, 2.864}, {0.159, 0.068}, {0.206, 2.671}, {0.208, 3.087},
};

Scenario enclosing_scenario(const Scenario& table, std::string_view expression) {
  // Parse against the widest scenario, then grow the table scenario to fit.
  const Scenario wide(std::vector<int>(static_cast<std::size_t>(table.parties()), kMaxSettings));
  const auto used = BellInequality::parse(expression, wide).used_settings();
  std::vector<int> settings(table.settings().begin(), table.settings().end());
  for (std::size_t p = 0; p < settings.size(); ++p) {
    if (!used[p].empty()) settings[p] = std::max(settings[p], used[p].back() + 1);
  }
  return Scenario(settings);
}

const std::map<std::string, NamedInequality, std::less<>>& inequality_table() {
  static const auto table = [] {
    std::map<std::string, NamedInequality, std::less<>> out;
    for (const auto& src : kInequalities) {
      const Scenario table_scenario = Scenario::parse(src.table);
      const Scenario scenario = enclosing_scenario(table_scenario, src.expression);
      const BellInequality printed = BellInequality::parse(src.expression, scenario);
      std::vector<Term> terms(printed.terms().begin(), printed.terms().end());
      if (src.constant_correction != 0) terms.push_back({0, src.constant_correction});
      out.emplace(src.name, NamedInequality{src.name, table_scenario, BellInequality(scenario, std::move(terms)),
                                            src.expression, printed.constant()});
    }
    return out;
  }();
  return table;
}

}  // namespace

StateVector get_state(std::string_view name) {
  if (name == "psi3") {
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i) v[i] = std::polar(kPsi3[i].first, kPsi3[i].second);
    return StateVector::normalized(std::move(v));
  }
  for (const auto& src : state_sources()) {
    if (name != src.name) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << src.qubits);
    const double amp = 1.0 / std::sqrt(static_cast<double>(src.support.size()));
    for (const auto& [bits, sign] : src.support) {
      v[static_cast<Eigen::Index>(std::stoul(bits, nullptr, 2))] = sign * amp;
    }
    return StateVector::normalized(std::move(v));
  }
  throw std::invalid_argument("unknown state '" + std::string(name) + "'");
}

const NamedInequality& get_inequality(std::string_view name) {
  const auto& table = inequality_table();
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown inequality '" + std::string(name) + "'");
  return it->second;
}

const std::vector<std::string>& state_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& src : state_sources()) out.emplace_back(src.name);
    out.emplace_back("psi3");
    return out;
  }();
  return names;
}

const std::vector<std::string>& inequality_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& src : kInequalities) out.emplace_back(src.name);
    return out;
  }();
  return names;
}

std::vector<CatalogEntry> list_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& name : state_names()) {
    std::string shape;
    for (int q = 0; q < get_state(name).qubits(); ++q) shape += q ? "x2" : "2";
    out.push_back({name, "state", shape});
  }
  for (const auto& name : inequality_names()) {
    out.push_back({name, "inequality", get_inequality(name).table_scenario.to_string()});
  }
  return out;
}

StateVector resolve_state(std::string_view spec) {
  const auto& names = state_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return get_state(spec);
  const auto cut = spec.rfind('x');
  if (cut != std::string_view::npos && cut + 1 < spec.size()) {
    const auto bits = spec.substr(cut + 1);
    if (bits.find_first_not_of("01") == std::string_view::npos) {
      std::vector<int> b;
      for (char c : bits) b.push_back(c - '0');
      return get_state(spec.substr(0, cut)).tensor(StateVector::basis(b));
    }
  }
  throw std::invalid_argument("unknown state '" + std::string(spec) + "'");
}

}  // namespace nlfrac
