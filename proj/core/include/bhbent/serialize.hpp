#pragma once

// JSON forms of the core types.

#include <nlohmann/json.hpp>

#include "bhbent/bent_search.hpp"
#include "bhbent/constructions.hpp"
#include "bhbent/cyclotomic.hpp"
#include "bhbent/existence.hpp"
#include "bhbent/metrics.hpp"

namespace bhbent {

/// Canonical coefficient array of length q.
void to_json(nlohmann::json& j, const CycElt& z);

/// {"n", "q", "k", "x", "lambda"}.
void to_json(nlohmann::json& j, const BentSolution& s);
void from_json(const nlohmann::json& j, BentSolution& s);

void to_json(nlohmann::json& j, const Census& c);
void to_json(nlohmann::json& j, const NormValue& v);
void to_json(nlohmann::json& j, const MetricValue& v);

/// {"q", "m", "variant", "k", "phi"}.
void to_json(nlohmann::json& j, const MMSpec& s);
void from_json(const nlohmann::json& j, MMSpec& s);

/// Human-readable a_0 + a_1 z + a_2 z^2 ... of the canonical form.
std::string format_cyc(const CycElt& z);

}  // namespace bhbent
