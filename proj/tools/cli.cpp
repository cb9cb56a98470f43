#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "nlfrac/catalog.hpp"
#include "nlfrac/estimators.hpp"
#include "nlfrac/report.hpp"
#include "nlfrac/witness.hpp"

namespace nlfrac::cli {

namespace {

struct RunConfig {
  std::string state;
  std::string scenario;
  std::string detector = "iopt";
  std::uint64_t n = 50000;
  std::uint64_t seed = 1;
  double v = 1.0;
  unsigned threads = 0;
  double epsilon = kDefaultViolationEpsilon;
  std::string output;
  std::string histogram;
  std::string export_path;
  std::size_t lp_pivot_limit = 0;
};

unsigned default_threads() {
  if (const char* env = std::getenv("NLFRAC_THREADS")) {
    try {
      const long t = std::stol(env);
      if (t >= 1) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

StateVector load_state(const std::string& spec, const Scenario& scenario) {
  StateVector psi = std::filesystem::is_regular_file(spec) ? read_amplitude_file(spec, scenario.parties())
                                                           : resolve_state(spec);
  if (psi.qubits() != scenario.parties()) {
    throw std::invalid_argument("state '" + spec + "' has " + std::to_string(psi.qubits()) +
                                " qubits but scenario " + scenario.to_string() + " has " +
                                std::to_string(scenario.parties()) + " parties");
  }
  return psi;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

void emit(const RunConfig& cfg, const nlohmann::json& doc, std::ostream& out) {
  if (cfg.output.empty()) {
    out << dump_json(doc);
  } else {
    write_text(cfg.output, dump_json(doc));
  }
}

EstimatorOptions options_from(const RunConfig& cfg) {
  EstimatorOptions o;
  o.n = cfg.n;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.epsilon = cfg.epsilon;
  o.simplex.max_pivots = cfg.lp_pivot_limit;
  return o;
}

nlohmann::json header(const std::string& command, const RunConfig& cfg, const Detector& d) {
  nlohmann::json j = {
      {"command", command},
      {"scenario", Scenario::parse(cfg.scenario).to_string()},
      {"detector", d.label()},
      {"epsilon", cfg.epsilon},
  };
  if (const auto* fam = d.inequality_family()) j["family_size"] = fam->size();
  return j;
}

void add_runtime(nlohmann::json& j, const EstimatorOptions& o, std::chrono::steady_clock::time_point start) {
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  j["runtime"] = {{"threads", threads}, {"elapsed_seconds", elapsed}};
}

// Returns the exit code for a finished estimate: discards mean some LP
// solves failed and the numbers cover fewer samples than requested.
int discard_status(const Estimate& e, std::ostream& err) {
  if (e.discarded == 0) return kExitOk;
  err << "warning: discarded " << e.discarded << " of " << e.n_samples
      << " samples after LP numerical failures; p_v is over the remaining "
      << (e.n_samples - e.discarded) << "\n";
  return kExitNumerical;
}

Estimate run_estimate(const RunConfig& cfg, const Scenario& sc, const Detector& d, const EstimatorOptions& o) {
  const StateVector psi = load_state(cfg.state, sc);
  if (cfg.v < 1.0) return estimate_with_noise(psi, cfg.v, sc, d, o);
  return estimate_strength(psi, sc, d, o);
}

int cmd_estimate(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario sc = Scenario::parse(cfg.scenario);
  const Detector d = Detector::from_spec(cfg.detector, sc);
  const EstimatorOptions o = options_from(cfg);
  const Estimate e = run_estimate(cfg, sc, d, o);
  nlohmann::json doc = header(command, cfg, d);
  doc["state"] = cfg.state;
  doc["visibility"] = cfg.v;
  doc["result"] = to_json(e);
  add_runtime(doc, o, start);
  emit(cfg, doc, out);
  if (!cfg.histogram.empty()) write_text(cfg.histogram, histogram_csv(e.histogram));
  return discard_status(e, err);
}

int cmd_typicality(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario sc = Scenario::parse(cfg.scenario);
  const Detector d = Detector::from_spec(cfg.detector, sc);
  const EstimatorOptions o = options_from(cfg);
  const TypicalityEstimate t = estimate_typicality(sc.parties(), sc, d, o);
  nlohmann::json doc = header("typicality", cfg, d);
  doc["qubits"] = sc.parties();
  doc["result"] = to_json(t);
  add_runtime(doc, o, start);
  emit(cfg, doc, out);
  if (!cfg.histogram.empty()) write_text(cfg.histogram, histogram_csv(t.samples.histogram));
  return discard_status(t.samples, err);
}

// Family and LP detectors on the same settings samples.
int cmd_lp_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario sc = Scenario::parse(cfg.scenario);
  const Detector family = Detector::from_spec(cfg.detector == "lp" ? "iopt" : cfg.detector, sc);
  const Detector lp = Detector::lp(sc);
  const EstimatorOptions o = options_from(cfg);
  const StateVector psi = load_state(cfg.state, sc);
  const PauliTensor t = pauli_tensor(mix_with_white_noise(DensityMatrix::from_pure(psi), cfg.v));
  std::vector<SampleRecord> fam_records, lp_records;
  const Estimate fe = estimate_from_tensor(t, sc, family, o, &fam_records);
  const Estimate le = estimate_from_tensor(t, sc, lp, o, &lp_records);
  std::uint64_t missed_by_lp = 0, strength_inversions = 0;
  for (std::size_t i = 0; i < fam_records.size(); ++i) {
    if (lp_records[i].discarded) continue;
    if (fam_records[i].violated && !lp_records[i].violated) ++missed_by_lp;
    if (fam_records[i].strength > lp_records[i].strength + 1e-7) ++strength_inversions;
  }
  nlohmann::json doc = header("lp-check", cfg, family);
  doc["state"] = cfg.state;
  doc["visibility"] = cfg.v;
  doc["family"] = to_json(fe);
  doc["lp"] = to_json(le);
  doc["paired"] = {
      {"family_violations_not_confirmed_by_lp", missed_by_lp},
      {"strength_inversions", strength_inversions},
      {"consistent", missed_by_lp == 0 && strength_inversions == 0},
  };
  add_runtime(doc, o, start);
  emit(cfg, doc, out);
  if (!cfg.histogram.empty()) write_text(cfg.histogram, histogram_csv(le.histogram));
  return discard_status(le, err);
}

int cmd_witness(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario sc = Scenario::parse(cfg.scenario);
  const Detector d = Detector::from_spec(cfg.detector, sc);
  const EstimatorOptions o = options_from(cfg);
  const Estimate e = run_estimate(cfg, sc, d, o);
  nlohmann::json doc = header("witness", cfg, d);
  doc["state"] = cfg.state;
  doc["visibility"] = cfg.v;
  doc["witness"] = to_json(make_witness_report(e, sc));
  doc["result"] = to_json(e);
  add_runtime(doc, o, start);
  emit(cfg, doc, out);
  return discard_status(e, err);
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.export_path.empty()) {
    write_text(cfg.export_path, dump_json(catalog_json()));
    return kExitOk;
  }
  for (const auto& entry : list_catalog()) {
    out << entry.kind << '\t' << entry.name << '\t' << entry.scenario << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlocal fraction and nonlocality strength of multi-qubit states", "nlfrac"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = default_threads();

  std::uint64_t typicality_n = 120000;
  auto add_common = [&](CLI::App* sub, bool needs_state, std::uint64_t& n) {
    if (needs_state) {
      sub->add_option("--state", cfg.state, "catalog name, NAMEx<bits> product, or amplitude file")->required();
    }
    sub->add_option("--scenario", cfg.scenario, "setting counts, e.g. 2x2x2")->required();
    sub->add_option("--detector", cfg.detector, "iopt, lp, or comma-separated catalog inequalities")
        ->capture_default_str();
    sub->add_option("--n", n, "number of samples")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "base seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores; env NLFRAC_THREADS)");
    sub->add_option("--epsilon", cfg.epsilon, "violation threshold on the inequality value")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--output", cfg.output, "write JSON here instead of stdout");
    sub->add_option("--lp-pivot-limit", cfg.lp_pivot_limit, "diagnostics: cap simplex pivots per LP solve")
        ->group("Diagnostics");
    if (needs_state) {
      sub->add_option("--v", cfg.v, "white-noise visibility")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    }
  };

  std::string command;
  for (const char* name : {"fraction", "strength", "lp-check", "witness"}) {
    auto* sub = app.add_subcommand(name);
    add_common(sub, true, cfg.n);
    if (std::string(name) != "witness") sub->add_option("--histogram", cfg.histogram, "write histogram CSV here");
    sub->callback([&command, name] { command = name; });
  }
  app.get_subcommand("lp-check")->alias("lp_check");
  app.get_subcommand("fraction")->description("nonlocal fraction p_v");
  app.get_subcommand("strength")->description("nonlocality strength statistics and histogram");
  app.get_subcommand("lp-check")->description("family detector and LP oracle on paired samples");
  app.get_subcommand("witness")->description("compare p_v with two-producible thresholds");
  {
    auto* sub = app.add_subcommand("typicality", "nonlocal fraction averaged over Haar-random states");
    add_common(sub, false, typicality_n);
    sub->add_option("--histogram", cfg.histogram, "write histogram CSV here");
    sub->callback([&] {
      command = "typicality";
      cfg.n = typicality_n;
    });
  }
  {
    auto* sub = app.add_subcommand("catalog", "list or export cataloged states and inequalities");
    sub->add_option("--export", cfg.export_path, "write the catalog as JSON");
    sub->callback([&command] { command = "catalog"; });
  }

  // CLI11 consumes a vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (command == "fraction" || command == "strength") return cmd_estimate(command, cfg, out, err);
    if (command == "typicality") return cmd_typicality(cfg, out, err);
    if (command == "lp-check") return cmd_lp_check(cfg, out, err);
    if (command == "witness") return cmd_witness(cfg, out, err);
    if (command == "catalog") return cmd_catalog(cfg, out);
  } catch (const LpFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace nlfrac::cli
