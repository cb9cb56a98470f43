#include "nlfrac/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nlfrac/catalog.hpp"

namespace nlfrac {

nlohmann::json to_json(const StrengthHistogram& h) {
  return {
      {"bin_width", h.bin_width},
      {"counts", h.counts},
      {"mass", h.mass},
      {"total_mass", h.total_mass},
  };
}

nlohmann::json to_json(const Estimate& e) {
  return {
      {"p_v", e.p_v},
      {"stderr_p_v", e.stderr_p_v},
      {"s_bar", e.s_bar},
      {"s_max_observed", e.s_max_observed},
      {"histogram", to_json(e.histogram)},
      {"n_samples", e.n_samples},
      {"violations", e.violations},
      {"seed", e.seed},
      {"detector", e.detector},
      {"discarded", e.discarded},
  };
}

nlohmann::json to_json(const TypicalityEstimate& t) {
  return {
      {"t_v", t.t_v},
      {"stderr_t_v", t.stderr_t_v},
      {"t_s", t.t_s},
      {"n_states", t.n_states},
      {"settings_per_state", t.settings_per_state},
      {"samples", to_json(t.samples)},
  };
}

nlohmann::json to_json(const WitnessReport& w) {
  nlohmann::json j = {
      {"p_v", w.p_v},
      {"stderr_p_v", w.stderr_p_v},
      {"verdict", verdict_name(w.verdict)},
      {"explanation", w.explanation},
  };
  if (w.threshold) {
    j["threshold"] = w.threshold->value;
    j["threshold_name"] = w.threshold->name;
  } else {
    j["threshold"] = nullptr;
    j["threshold_name"] = nullptr;
  }
  if (w.conjectural_verdict) {
    j["conjectural"] = {
        {"threshold", kConjecturalGenuineFourPartite},
        {"claim", "genuine four-partite entanglement"},
        {"verdict", verdict_name(*w.conjectural_verdict)},
    };
  }
  return j;
}

nlohmann::json catalog_json() {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& name : state_names()) {
    const StateVector psi = get_state(name);
    nlohmann::json amps = nlohmann::json::array();
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
      if (std::abs(psi[i]) > 0.0) amps.push_back({i, psi[i].real(), psi[i].imag()});
    }
    states.push_back({{"name", name}, {"qubits", psi.qubits()}, {"amplitudes", amps}});
  }
  nlohmann::json inequalities = nlohmann::json::array();
  for (const auto& name : inequality_names()) {
    const NamedInequality& ni = get_inequality(name);
    const Scenario& sc = ni.inequality.scenario();
    nlohmann::json terms = nlohmann::json::array();
    for (const Term& t : ni.inequality.terms()) {
      if (t.index == 0) continue;
      terms.push_back({{"settings", sc.term_key(t.index)}, {"coefficient", t.coefficient}});
    }
    inequalities.push_back({
        {"name", name},
        {"scenario", ni.table_scenario.to_string()},
        {"index_scenario", sc.to_string()},
        {"expression", ni.expression},
        {"printed_constant", ni.printed_constant},
        {"constant", ni.inequality.constant()},
        {"bound", 0},
        {"nonzero_terms", terms.size()},
        {"terms", terms},
    });
  }
  return {
      {"format", "nlfrac-catalog/1"},
      {"term_convention", "settings[i] is the setting of party i, -1 when the party is absent; "
                          "the inequality reads sum(coefficient * correlator) + constant <= bound"},
      {"states", states},
      {"inequalities", inequalities},
  };
}

std::string histogram_csv(const StrengthHistogram& h) {
  std::string out = "s_low,s_high,mass,density\n";
  char line[128];
  for (std::size_t k = 0; k < h.mass.size(); ++k) {
    const double lo = static_cast<double>(k) * h.bin_width;
    std::snprintf(line, sizeof line, "%.4f,%.4f,%.17g,%.17g\n", lo, lo + h.bin_width, h.mass[k],
                  h.mass[k] / h.bin_width);
    out += line;
  }
  return out;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

StateVector read_amplitude_file(const std::string& path, int qubits) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open amplitude file '" + path + "'");
  const std::size_t dim = std::size_t{1} << qubits;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long index = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> index)) {
      std::string rest;
      if (std::istringstream(line) >> rest) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected 'index re im'");
      }
      continue;
    }
    std::string extra;
    if (!(ls >> re >> im) || (ls >> extra)) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected 'index re im'");
    }
    if (index < 0 || static_cast<std::size_t>(index) >= dim) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": index outside [0, " +
                                  std::to_string(dim) + ")");
    }
    v[static_cast<Eigen::Index>(index)] = cplx(re, im);
  }
  return StateVector::normalized(std::move(v));
}

}  // namespace nlfrac
