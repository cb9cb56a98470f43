#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlfrac/inequality.hpp"
#include "nlfrac/polytope.hpp"
#include "nlfrac/quantum.hpp"
#include "nlfrac/scenario.hpp"

namespace nlfrac {

enum class DetectorKind { kFamily, kLp };

/// Decides violation and strength for one correlation tensor. Immutable and
/// shared between worker threads.
class Detector {
 public:
  static Detector family(InequalityFamily family, std::string label);
  static Detector lp(const Scenario& scenario);
  /// "iopt" (lifted CHSH), "lp", or comma-separated catalog names whose
  /// symmetry orbits are merged.
  static Detector from_spec(const std::string& spec, const Scenario& scenario);

  DetectorKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const Scenario& scenario() const;
  const InequalityFamily* inequality_family() const { return family_.get(); }

  /// Strength 1 - v_crit when the tensor is nonlocal, std::nullopt otherwise.
  /// LP mode throws LpFailure on numerical trouble.
  std::optional<double> strength(const CorrelationTensor& t, double epsilon,
                                 const SimplexOptions& lp_options = {}) const;

 private:
  DetectorKind kind_ = DetectorKind::kFamily;
  std::string label_;
  std::shared_ptr<const InequalityFamily> family_;
  std::shared_ptr<const LocalPolytope> polytope_;
};

struct EstimatorOptions {
  std::uint64_t n = 50000;
  std::uint64_t seed = 1;
  /// 0 uses std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Family violation threshold on the inequality value.
  double epsilon = kDefaultViolationEpsilon;
  /// LP violation threshold on 1 - v_star; smaller gaps count as local.
  double lp_ambiguity = 1e-8;
  double bin_width = 0.005;
  SimplexOptions simplex;
};

/// mass[k] is the fraction of counted samples with S in [k w, (k + 1) w);
/// S = 1 falls in the last bin.
struct StrengthHistogram {
  double bin_width = 0.005;
  std::vector<std::uint64_t> counts;
  std::vector<double> mass;
  /// (sum of counts) / counted samples; equals Estimate::p_v exactly.
  double total_mass = 0.0;
};

struct Estimate {
  double p_v = 0.0;
  double stderr_p_v = 0.0;
  double s_bar = 0.0;
  double s_max_observed = 0.0;
  StrengthHistogram histogram;
  std::uint64_t n_samples = 0;
  std::uint64_t violations = 0;
  std::uint64_t seed = 0;
  std::string detector;
  /// Samples dropped after an LP failure; p_v is over n_samples - discarded.
  std::uint64_t discarded = 0;
};

struct TypicalityEstimate {
  double t_v = 0.0;
  double stderr_t_v = 0.0;
  double t_s = 0.0;
  std::uint64_t n_states = 0;
  std::uint64_t settings_per_state = 1;
  Estimate samples;
};

/// Per-sample outcome, kept for paired comparisons between detectors.
struct SampleRecord {
  bool discarded = false;
  bool violated = false;
  double strength = 0.0;
};

/// p_v and the strength statistics share one pass, so both estimators return
/// the same Estimate for the same inputs.
Estimate estimate_nonlocal_fraction(const StateVector& state, const Scenario& scenario, const Detector& detector,
                                    const EstimatorOptions& options);
Estimate estimate_strength(const StateVector& state, const Scenario& scenario, const Detector& detector,
                           const EstimatorOptions& options);
/// Runs on v |psi><psi| + (1 - v) I / 2^N.
Estimate estimate_with_noise(const StateVector& state, double v, const Scenario& scenario, const Detector& detector,
                             const EstimatorOptions& options);
/// One Haar-random N-qubit state and one settings draw per index.
TypicalityEstimate estimate_typicality(int qubits, const Scenario& scenario, const Detector& detector,
                                       const EstimatorOptions& options);

/// Core loop on a precomputed Pauli expansion. records, when non-null,
/// receives every sample outcome in index order.
Estimate estimate_from_tensor(const PauliTensor& t, const Scenario& scenario, const Detector& detector,
                              const EstimatorOptions& options, std::vector<SampleRecord>* records = nullptr);

}  // namespace nlfrac
