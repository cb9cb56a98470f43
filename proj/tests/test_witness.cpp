#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlfrac/witness.hpp"

using namespace nlfrac;

TEST(Thresholds, BaseAndCompositeValues) {
  EXPECT_NEAR(threshold_p22(), 0.283185307179586, 1e-15);
  EXPECT_NEAR(threshold_p2222(), 0.4862, 5e-5);
  EXPECT_NEAR(threshold_p3222(), 0.6588, 5e-5);
  EXPECT_NEAR(threshold_p3322(), 0.8439, 5e-5);
  EXPECT_NEAR(threshold_p3332(), 0.8963, 5e-5);
}

TEST(Thresholds, ScenarioLookupIgnoresPartyOrder) {
  EXPECT_EQ(witness_threshold(Scenario::parse("2x3x2"))->value, threshold_p32());
  EXPECT_EQ(witness_threshold(Scenario::parse("2x2x3x3"))->value, threshold_p3322());
  EXPECT_EQ(witness_threshold(Scenario::parse("2x2x2"))->value, threshold_p22());
  EXPECT_EQ(witness_threshold(Scenario::parse("2x2x2x2x2"))->value, threshold_p2222());
  EXPECT_EQ(witness_threshold(Scenario::parse("1x2x1x2"))->value, threshold_p22());
  EXPECT_FALSE(witness_threshold(Scenario::parse("4x2x2")).has_value());
}

TEST(Verdicts, TwoStandardErrorRule) {
  EXPECT_EQ(compare_to_threshold(0.70, 0.01, 0.60), Verdict::kDetected);
  EXPECT_EQ(compare_to_threshold(0.50, 0.01, 0.60), Verdict::kNotDetected);
  EXPECT_EQ(compare_to_threshold(0.615, 0.01, 0.60), Verdict::kInconclusive);
  EXPECT_STREQ(verdict_name(Verdict::kNotDetected), "not detected");
}

TEST(Report, UntabulatedScenarioIsInconclusive) {
  Estimate e;
  e.p_v = 0.99;
  e.stderr_p_v = 0.001;
  const WitnessReport r = make_witness_report(e, Scenario::parse("4x4x4"));
  EXPECT_EQ(r.verdict, Verdict::kInconclusive);
  EXPECT_FALSE(r.threshold.has_value());
  EXPECT_FALSE(r.explanation.empty());
}

TEST(Report, FourPartiteCarriesConjecturalVerdict) {
  Estimate e;
  e.p_v = 0.8856;
  e.stderr_p_v = 0.001;
  const WitnessReport r = make_witness_report(e, Scenario::parse("2x2x2x2"));
  EXPECT_EQ(r.verdict, Verdict::kDetected);
  ASSERT_TRUE(r.conjectural_verdict.has_value());
  EXPECT_EQ(*r.conjectural_verdict, Verdict::kDetected);
  EXPECT_FALSE(make_witness_report(e, Scenario::parse("2x2x2")).conjectural_verdict.has_value());
}
