#pragma once

#include <string>

#include <json.hpp>

#include "nlfrac/estimators.hpp"
#include "nlfrac/quantum.hpp"
#include "nlfrac/witness.hpp"

namespace nlfrac {

nlohmann::json to_json(const StrengthHistogram& h);
nlohmann::json to_json(const Estimate& e);
nlohmann::json to_json(const TypicalityEstimate& t);
nlohmann::json to_json(const WitnessReport& w);

/// States with their nonzero amplitudes and inequalities as sparse integer
/// term lists; the constant is reported separately and the bound is 0.
nlohmann::json catalog_json();

/// Header "s_low,s_high,mass,density", one row per bin; density = mass / width.
std::string histogram_csv(const StrengthHistogram& h);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const nlohmann::json& j);

/// Plain text "index re im" per line, '#' starts a comment, absent indices
/// are zero. The vector is renormalized; throws std::invalid_argument on
/// malformed lines, indices outside [0, 2^qubits) or a zero vector.
StateVector read_amplitude_file(const std::string& path, int qubits);

}  // namespace nlfrac
