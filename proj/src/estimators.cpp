#include "nlfrac/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nlfrac/catalog.hpp"

namespace nlfrac {

namespace {

constexpr std::uint64_t kChunk = 64;

unsigned resolve_threads(unsigned requested, std::uint64_t n) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  return static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(t, chunks)));
}

// Evaluates fn(i) for i in [0, n) and stores results by index, so the caller
// sees the same vector whatever the thread count.
template <class Fn>
std::vector<SampleRecord> run_indexed(std::uint64_t n, unsigned threads, Fn fn) {
  std::vector<SampleRecord> out(n);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      while (true) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= n) return;
        const std::uint64_t end = std::min(n, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i) out[i] = fn(i);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(n);
    }
  };
  const unsigned count = resolve_threads(threads, n);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

SampleRecord evaluate_sample(const CorrelationTensor& c, const Detector& detector, const EstimatorOptions& options) {
  SampleRecord rec;
  try {
    const bool lp = detector.kind() == DetectorKind::kLp;
    const auto s = detector.strength(c, lp ? options.lp_ambiguity : options.epsilon, options.simplex);
    if (s) {
      rec.violated = true;
      rec.strength = *s;
    }
  } catch (const LpFailure&) {
    rec.discarded = true;
  }
  return rec;
}

Estimate reduce(const std::vector<SampleRecord>& records, const Detector& detector, const EstimatorOptions& options) {
  Estimate e;
  e.n_samples = records.size();
  e.seed = options.seed;
  e.detector = detector.label();
  auto& h = e.histogram;
  h.bin_width = options.bin_width;
  const auto bins = static_cast<std::size_t>(std::llround(1.0 / options.bin_width));
  h.counts.assign(bins, 0);
  double s_sum = 0.0;
  for (const auto& r : records) {
    if (r.discarded) {
      ++e.discarded;
      continue;
    }
    if (!r.violated) continue;
    ++e.violations;
    s_sum += r.strength;
    e.s_max_observed = std::max(e.s_max_observed, r.strength);
    const auto k = static_cast<std::size_t>(std::clamp(r.strength / options.bin_width, 0.0, static_cast<double>(bins - 1)));
    ++h.counts[std::min(k, bins - 1)];
  }
  const std::uint64_t counted = e.n_samples - e.discarded;
  h.mass.assign(bins, 0.0);
  if (counted > 0) {
    const auto denom = static_cast<double>(counted);
    std::uint64_t binned = 0;
    for (std::size_t k = 0; k < bins; ++k) {
      h.mass[k] = static_cast<double>(h.counts[k]) / denom;
      binned += h.counts[k];
    }
    // same integer over the same denominator, so the two agree exactly
    h.total_mass = static_cast<double>(binned) / denom;
    e.p_v = static_cast<double>(e.violations) / denom;
    e.s_bar = s_sum / denom;
    e.stderr_p_v = std::sqrt(e.p_v * (1.0 - e.p_v) / denom);
  }
  return e;
}

void check_detector(const Scenario& scenario, const Detector& detector) {
  if (!(detector.scenario() == scenario)) {
    throw std::invalid_argument("detector was built for scenario " + detector.scenario().to_string() + ", not " +
                                scenario.to_string());
  }
}

}  // namespace

Detector Detector::family(InequalityFamily family, std::string label) {
  if (family.size() == 0) throw std::invalid_argument("detector needs a nonempty inequality family");
  Detector d;
  d.kind_ = DetectorKind::kFamily;
  d.label_ = std::move(label);
  d.family_ = std::make_shared<const InequalityFamily>(std::move(family));
  return d;
}

Detector Detector::lp(const Scenario& scenario) {
  Detector d;
  d.kind_ = DetectorKind::kLp;
  d.label_ = "lp";
  d.polytope_ = std::make_shared<const LocalPolytope>(scenario);
  return d;
}

Detector Detector::from_spec(const std::string& spec, const Scenario& scenario) {
  if (spec == "lp" || spec == "LP") return lp(scenario);
  std::optional<InequalityFamily> fam;
  std::string label;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    InequalityFamily part = (item == "iopt" || item == "IOPT")
                                ? lifted_chsh_family(scenario)
                                : symmetry_orbit(get_inequality(item).inequality, scenario, item);
    fam = fam ? fam->merged(part) : std::move(part);
    label += (label.empty() ? "" : ",") + item;
  }
  if (!fam) throw std::invalid_argument("empty detector specification");
  return family(std::move(*fam), "family:" + label);
}

const Scenario& Detector::scenario() const {
  return kind_ == DetectorKind::kLp ? polytope_->scenario() : family_->scenario();
}

std::optional<double> Detector::strength(const CorrelationTensor& t, double epsilon,
                                        const SimplexOptions& lp_options) const {
  if (kind_ == DetectorKind::kFamily) return family_->best_strength(t, epsilon);
  const LpResult r = polytope_->critical_visibility(t, lp_options);
  const double s = 1.0 - *r.v_star;
  if (s > epsilon) return s;
  return std::nullopt;
}

Estimate estimate_from_tensor(const PauliTensor& t, const Scenario& scenario, const Detector& detector,
                              const EstimatorOptions& options, std::vector<SampleRecord>* records) {
  check_detector(scenario, detector);
  if (options.n < 1) throw std::invalid_argument("sample count must be at least 1");
  if (t.qubits != scenario.parties()) throw std::invalid_argument("state size does not match scenario");
  auto recs = run_indexed(options.n, options.threads, [&](std::uint64_t i) {
    RandomStream rng(options.seed, i);
    const SettingsSample s = sample_settings(scenario, rng);
    return evaluate_sample(correlation_tensor(t, scenario, s), detector, options);
  });
  Estimate e = reduce(recs, detector, options);
  if (records) *records = std::move(recs);
  return e;
}

Estimate estimate_nonlocal_fraction(const StateVector& state, const Scenario& scenario, const Detector& detector,
                                    const EstimatorOptions& options) {
  return estimate_from_tensor(pauli_tensor(state), scenario, detector, options);
}

Estimate estimate_strength(const StateVector& state, const Scenario& scenario, const Detector& detector,
                           const EstimatorOptions& options) {
  return estimate_from_tensor(pauli_tensor(state), scenario, detector, options);
}

Estimate estimate_with_noise(const StateVector& state, double v, const Scenario& scenario, const Detector& detector,
                             const EstimatorOptions& options) {
  const DensityMatrix rho = mix_with_white_noise(DensityMatrix::from_pure(state), v);
  return estimate_from_tensor(pauli_tensor(rho), scenario, detector, options);
}

TypicalityEstimate estimate_typicality(int qubits, const Scenario& scenario, const Detector& detector,
                                       const EstimatorOptions& options) {
  check_detector(scenario, detector);
  if (qubits != scenario.parties()) throw std::invalid_argument("qubit count does not match scenario");
  if (options.n < 1) throw std::invalid_argument("state count must be at least 1");
  const auto recs = run_indexed(options.n, options.threads, [&](std::uint64_t i) {
    RandomStream rng(options.seed, i);
    const StateVector psi = random_pure_state(qubits, rng);
    const SettingsSample s = sample_settings(scenario, rng);
    return evaluate_sample(correlation_tensor(pauli_tensor(psi), scenario, s), detector, options);
  });
  TypicalityEstimate t;
  t.samples = reduce(recs, detector, options);
  t.t_v = t.samples.p_v;
  t.stderr_t_v = t.samples.stderr_p_v;
  t.t_s = t.samples.s_bar;
  t.n_states = options.n;
  return t;
}

}  // namespace nlfrac
