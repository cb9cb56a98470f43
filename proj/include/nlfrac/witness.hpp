#pragma once

#include <optional>
#include <string>

#include "nlfrac/estimators.hpp"
#include "nlfrac/scenario.hpp"

namespace nlfrac {

/// Largest nonlocal fraction reachable by two-producible states.
struct WitnessThreshold {
  std::string name;
  double value = 0.0;
};

/// 2 (pi - 3): two qubits, two settings each.
double threshold_p22();
double threshold_p32();
double threshold_p33();
double threshold_p2222();
double threshold_p3222();
double threshold_p3322();
double threshold_p3332();

/// Genuine four-partite bound for 2x2x2x2; rests on a numerically supported
/// conjecture, so verdicts against it are informational.
inline constexpr double kConjecturalGenuineFourPartite = 0.74688;

/// Tabulated threshold for the scenario, matched on its setting counts in
/// descending order; std::nullopt when none applies.
std::optional<WitnessThreshold> witness_threshold(const Scenario& scenario);

enum class Verdict { kDetected, kNotDetected, kInconclusive };
const char* verdict_name(Verdict v);

/// Detected if p_v - 2 stderr exceeds the threshold, not detected if
/// p_v + 2 stderr falls below it, inconclusive otherwise.
Verdict compare_to_threshold(double p_v, double stderr_p_v, double threshold);

struct WitnessReport {
  double p_v = 0.0;
  double stderr_p_v = 0.0;
  std::optional<WitnessThreshold> threshold;
  Verdict verdict = Verdict::kInconclusive;
  std::string explanation;
  /// Verdict against kConjecturalGenuineFourPartite, 2x2x2x2 only.
  std::optional<Verdict> conjectural_verdict;
};

WitnessReport make_witness_report(const Estimate& e, const Scenario& scenario);

}  // namespace nlfrac
