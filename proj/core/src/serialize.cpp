#include "bhbent/serialize.hpp"

#include <sstream>

#include "bhbent/errors.hpp"

namespace bhbent {

void to_json(nlohmann::json& j, const CycElt& z) {
  const CycElt c = z.canonical();
  j = nlohmann::json::array();
  for (Coeff v : c.coeffs()) j.push_back(v);
}

void to_json(nlohmann::json& j, const BentSolution& s) {
  j = nlohmann::json{{"n", s.n}, {"q", s.q}, {"k", s.k}, {"x", s.x}, {"lambda", s.lambda}};
}

void from_json(const nlohmann::json& j, BentSolution& s) {
  try {
    s.n = j.at("n").get<int>();
    s.q = j.at("q").get<int>();
    s.k = j.at("k").get<int>();
    s.x = j.at("x").get<ZqVector>();
    s.lambda = CycElt(s.q, j.at("lambda").get<std::vector<Coeff>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bent solution JSON: ") + e.what());
  }
  if (static_cast<int>(s.x.size()) != s.n) throw ParseError("bent solution JSON: x has the wrong length");
}

void to_json(nlohmann::json& j, const Census& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : c.rows) rows.push_back({{"lambda", r.lambda}, {"text", format_cyc(r.lambda)}, {"count", r.count}});
  j = nlohmann::json{{"n", c.n}, {"q", c.q}, {"k", c.k}, {"distinct_lambdas", c.rows.size()}, {"total", c.total}, {"rows", rows}};
}

void to_json(nlohmann::json& j, const NormValue& v) {
  if (v.exact) {
    j = nlohmann::json{{"value", v.integer}, {"exact", true}};
  } else {
    j = nlohmann::json{{"value", v.approx}, {"exact", false}};
  }
}

void to_json(nlohmann::json& j, const MetricValue& v) {
  if (v.exact) {
    j = nlohmann::json{{"value", v.integer}, {"exact", true}};
  } else {
    j = nlohmann::json{{"value", v.value}, {"exact", false}};
  }
}

void to_json(nlohmann::json& j, const MMSpec& s) {
  j = nlohmann::json{{"q", s.q}, {"m", s.m}, {"variant", s.variant == MMVariant::plain ? "plain" : "shifted"}, {"k", s.k}, {"phi", s.phi}};
}

void from_json(const nlohmann::json& j, MMSpec& s) {
  try {
    s.q = j.at("q").get<int>();
    s.m = j.at("m").get<int>();
    s.k = j.at("k").get<int>();
    s.phi = j.at("phi").get<std::vector<int>>();
    const auto variant = j.at("variant").get<std::string>();
    if (variant == "plain") {
      s.variant = MMVariant::plain;
    } else if (variant == "shifted") {
      s.variant = MMVariant::shifted;
    } else {
      throw ParseError("MMSpec JSON: variant must be \"plain\" or \"shifted\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("MMSpec JSON: ") + e.what());
  }
}

std::string format_cyc(const CycElt& z) {
  const CycElt c = z.canonical();
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < c.modulus(); ++i) {
    const Coeff a = c[i];
    if (a == 0) continue;
    const Coeff mag = a < 0 ? -a : a;
    if (first) {
      if (a < 0) os << '-';
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << 'z';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace bhbent
