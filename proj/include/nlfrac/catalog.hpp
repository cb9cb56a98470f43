#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nlfrac/inequality.hpp"
#include "nlfrac/quantum.hpp"
#include "nlfrac/scenario.hpp"

namespace nlfrac {

struct NamedInequality {
  std::string name;
  /// Scenario whose table lists the inequality.
  Scenario table_scenario;
  /// Folded inequality with classical bound 0. Lives in the smallest scenario
  /// containing table_scenario and every setting index the expression uses.
  BellInequality inequality;
  /// Expression as transcribed, including its printed constant.
  std::string expression;
  int printed_constant = 0;
};

struct CatalogEntry {
  std::string name;
  std::string kind;  // "state" or "inequality"
  std::string scenario;
};

/// Throws std::invalid_argument for unknown names.
StateVector get_state(std::string_view name);
const NamedInequality& get_inequality(std::string_view name);

const std::vector<std::string>& state_names();
const std::vector<std::string>& inequality_names();
std::vector<CatalogEntry> list_catalog();

/// Catalog state name, optionally followed by "x" and computational basis
/// bits appended as extra qubits: "GHZ2x00" is GHZ2 (x) |00>.
StateVector resolve_state(std::string_view spec);

}  // namespace nlfrac
