#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "nlfrac/catalog.hpp"
#include "nlfrac/polytope.hpp"

using namespace nlfrac;

TEST(CatalogStates, AreNormalized) {
  for (const auto& name : state_names()) {
    EXPECT_NEAR(get_state(name).amplitudes().norm(), 1.0, 1e-15) << name;
  }
}

TEST(CatalogStates, KnownAmplitudes) {
  const double h = 1.0 / std::sqrt(2.0);
  const StateVector ghz3 = get_state("GHZ3");
  EXPECT_NEAR(ghz3[0].real(), h, 1e-15);
  EXPECT_NEAR(ghz3[7].real(), h, 1e-15);
  const StateVector w3 = get_state("W3");
  for (std::size_t i : {1u, 2u, 4u}) EXPECT_NEAR(w3[i].real(), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(std::abs(w3[3]), 0.0, 1e-15);
  const StateVector d = get_state("D2_4");
  for (std::size_t i = 0; i < 16; ++i) {
    const bool two = __builtin_popcountll(i) == 2;
    EXPECT_NEAR(std::abs(d[i]), two ? 1.0 / std::sqrt(6.0) : 0.0, 1e-15);
  }
  const StateVector cl = get_state("Cl4");
  EXPECT_NEAR(cl[15].real(), -0.5, 1e-15);
}

TEST(CatalogStates, QubitCounts) {
  const std::map<std::string, int> expected = {{"GHZ2", 2}, {"GHZ3", 3}, {"W3", 3}, {"GHZ4", 4}, {"W4", 4},
                                               {"Cl4", 4},  {"GHZ5", 5}, {"W5", 5}, {"D2_5", 5}, {"LCl5", 5}};
  for (const auto& [name, q] : expected) EXPECT_EQ(get_state(name).qubits(), q) << name;
}

TEST(CatalogStates, UnknownNameThrows) {
  EXPECT_THROW(get_state("GHZ9"), std::invalid_argument);
  EXPECT_THROW(get_inequality("I_99"), std::invalid_argument);
}

TEST(CatalogStates, ResolveAppendsBasisQubits) {
  const StateVector s = resolve_state("GHZ2x00");
  ASSERT_EQ(s.qubits(), 4);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(s[0b0000].real(), h, 1e-15);
  EXPECT_NEAR(s[0b1100].real(), h, 1e-15);
  EXPECT_NEAR(resolve_state("GHZ3").amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(resolve_state("GHZ2x02"), std::invalid_argument);
}

TEST(CatalogInequalities, TermCounts) {
  const std::map<std::string, std::size_t> expected = {
      {"I_5", 17},    {"I_6", 15},    {"I_13", 10},   {"I_16", 13},   {"I_19", 14},   {"I_21", 17},
      {"I_30", 20},   {"I322_1", 10}, {"I322_2", 13}, {"I322_3", 13}, {"I322_4", 13}, {"I322_5", 17},
      {"I322_6", 10}, {"I322_7", 10}, {"I322_8", 16}, {"I322_9", 16}, {"I332_1", 13}, {"I332_2", 13},
      {"I332_3", 16}, {"I332_4", 16}, {"I332_5", 16}, {"I332_6", 16}, {"I333_1", 16}, {"I333_2", 13},
      {"MABK3", 4}};
  for (const auto& [name, n] : expected) EXPECT_EQ(get_inequality(name).inequality.nonconstant_terms(), n) << name;
}

TEST(CatalogInequalities, Constants) {
  EXPECT_EQ(get_inequality("I_13").inequality.constant(), -4);
  EXPECT_EQ(get_inequality("I_30").inequality.constant(), -6);
  EXPECT_EQ(get_inequality("I332_1").inequality.constant(), -8);
  EXPECT_EQ(get_inequality("MABK3").inequality.constant(), -2);
  EXPECT_EQ(get_inequality("I322_2").printed_constant, -4);
  EXPECT_EQ(get_inequality("I322_2").inequality.constant(), -5);
}

TEST(CatalogInequalities, EveryClassicalBoundIsZero) {
  for (const auto& name : inequality_names()) EXPECT_EQ(classical_bound(get_inequality(name).inequality), 0) << name;
}

TEST(CatalogInequalities, IndexScenarioCoversUsedSettings) {
  for (const auto& name : inequality_names()) {
    const auto& e = get_inequality(name);
    const auto used = e.inequality.used_settings();
    for (int p = 0; p < e.inequality.scenario().parties(); ++p) {
      EXPECT_GE(e.inequality.scenario().settings(p), e.table_scenario.settings(p)) << name;
      for (int j : used[static_cast<std::size_t>(p)]) EXPECT_LT(j, e.inequality.scenario().settings(p)) << name;
    }
  }
  EXPECT_EQ(get_inequality("I332_6").inequality.scenario().to_string(), "3x3x3");
}

TEST(CatalogListing, ContainsStatesAndInequalities) {
  const auto entries = list_catalog();
  auto has = [&](const std::string& name, const std::string& kind, const std::string& sc) {
    return std::any_of(entries.begin(), entries.end(), [&](const CatalogEntry& e) {
      return e.name == name && e.kind == kind && e.scenario == sc;
    });
  };
  EXPECT_TRUE(has("GHZ3", "state", "2x2x2"));
  EXPECT_TRUE(has("I_5", "inequality", "2x2x2"));
  EXPECT_TRUE(has("I332_6", "inequality", "3x3x2"));
  EXPECT_TRUE(has("MABK3", "inequality", "2x2x2"));
  EXPECT_EQ(entries.size(), state_names().size() + inequality_names().size());
}
