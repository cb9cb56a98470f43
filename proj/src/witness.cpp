#include "nlfrac/witness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numbers>

namespace nlfrac {

double threshold_p22() { return 2.0 * (std::numbers::pi - 3.0); }
double threshold_p32() { return 0.52401; }
double threshold_p33() { return 0.78219; }
double threshold_p2222() { return 1.0 - (1.0 - threshold_p22()) * (1.0 - threshold_p22()); }
double threshold_p3222() { return 1.0 - (1.0 - threshold_p32()) * (1.0 - threshold_p22()); }
double threshold_p3322() { return 1.0 - (1.0 - threshold_p33()) * (1.0 - threshold_p22()); }
double threshold_p3332() { return 1.0 - (1.0 - threshold_p33()) * (1.0 - threshold_p32()); }

std::optional<WitnessThreshold> witness_threshold(const Scenario& scenario) {
  std::vector<int> m(scenario.settings().begin(), scenario.settings().end());
  std::sort(m.begin(), m.end(), std::greater<>());
  std::string key;
  for (int v : m) key += std::to_string(v);
  static const std::map<std::string, WitnessThreshold> table = {
      {"222", {"P22", threshold_p22()}},     {"322", {"P32", threshold_p32()}},
      {"332", {"P33", threshold_p33()}},     {"333", {"P33", threshold_p33()}},
      {"2211", {"P22", threshold_p22()}},    {"2221", {"P22", threshold_p22()}},
      {"2222", {"P2222", threshold_p2222()}}, {"3222", {"P3222", threshold_p3222()}},
      {"3322", {"P3322", threshold_p3322()}}, {"3332", {"P3332", threshold_p3332()}},
      {"22111", {"P22", threshold_p22()}},   {"22211", {"P22", threshold_p22()}},
      {"22221", {"P2222", threshold_p2222()}}, {"22222", {"P2222", threshold_p2222()}},
  };
  auto it = table.find(key);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kDetected: return "detected";
    case Verdict::kNotDetected: return "not detected";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict compare_to_threshold(double p_v, double stderr_p_v, double threshold) {
  if (p_v - 2.0 * stderr_p_v > threshold) return Verdict::kDetected;
  if (p_v + 2.0 * stderr_p_v < threshold) return Verdict::kNotDetected;
  return Verdict::kInconclusive;
}

WitnessReport make_witness_report(const Estimate& e, const Scenario& scenario) {
  WitnessReport r;
  r.p_v = e.p_v;
  r.stderr_p_v = e.stderr_p_v;
  r.threshold = witness_threshold(scenario);
  if (!r.threshold) {
    r.verdict = Verdict::kInconclusive;
    r.explanation = "no two-producible threshold is tabulated for scenario " + scenario.to_string();
  } else {
    r.verdict = compare_to_threshold(e.p_v, e.stderr_p_v, r.threshold->value);
    switch (r.verdict) {
      case Verdict::kDetected:
        r.explanation = "p_v exceeds the two-producible bound " + r.threshold->name +
                        " by more than two standard errors: the state is multipartite entangled";
        break;
      case Verdict::kNotDetected:
        r.explanation = "p_v lies more than two standard errors below " + r.threshold->name;
        break;
      case Verdict::kInconclusive:
        r.explanation = "p_v is within two standard errors of " + r.threshold->name;
        break;
    }
  }
  std::vector<int> m(scenario.settings().begin(), scenario.settings().end());
  if (m == std::vector<int>{2, 2, 2, 2}) {
    r.conjectural_verdict = compare_to_threshold(e.p_v, e.stderr_p_v, kConjecturalGenuineFourPartite);
  }
  return r;
}

}  // namespace nlfrac
