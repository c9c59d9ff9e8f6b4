#include "bhbent/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "bhbent/autgroup.hpp"
#include "bhbent/bent_search.hpp"
#include "bhbent/constructions.hpp"
#include "bhbent/errors.hpp"
#include "bhbent/existence.hpp"
#include "bhbent/metrics.hpp"
#include "bhbent/serialize.hpp"

namespace bhbent::cli {

namespace {

using nlohmann::json;

struct Config {
  unsigned threads = 1;
  std::uint64_t budget = 100'000'000;
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 0;
};

// What a subcommand produced: a JSON document and its text rendering.
struct Report {
  json doc;
  std::string text;
};

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string vec_text(const std::vector<int>& x) {
  std::vector<std::string> parts;
  for (int v : x) parts.push_back(std::to_string(v));
  return join(parts, " ");
}

ZqVector parse_vector(const std::string& s) {
  ZqVector x;
  std::string token;
  std::istringstream is(s);
  while (std::getline(is, token, ',')) {
    std::istringstream ts(token);
    int v = 0;
    if (!(ts >> v)) throw ParseError("cannot parse vector entry '" + token + "'");
    x.push_back(v);
  }
  if (x.empty()) throw ParseError("empty vector");
  return x;
}

json metric_json(const MetricValue& v, const std::string& method, const json& hypothesis) {
  json j = v;
  j["method"] = method;
  j["hypothesis"] = hypothesis;
  return j;
}

json real_json(double v, const std::string& method, const json& hypothesis) {
  return json{{"value", v}, {"exact", false}, {"method", method}, {"hypothesis", hypothesis}};
}

std::string metric_text(const MetricValue& v) { return v.exact ? std::to_string(v.integer) : fixed3(v.value); }

SearchOptions search_options(const Config& cfg) {
  SearchOptions o;
  o.candidate_budget = cfg.budget;
  o.composition_budget = std::min<std::uint64_t>(cfg.budget, 10'000'000);
  o.parallelism.threads = cfg.threads;
  return o;
}

std::vector<BentSolution> run_search(const ButsonMatrix& h, int k, const std::string& method, const Config& cfg) {
  if (method == "exhaustive") return exhaustive_search(h, k, search_options(cfg));
  if (method == "eigen") return eigenspace_search(h, k, search_options(cfg));
  throw InvalidArgument("unknown method '" + method + "' (expected exhaustive or eigen)");
}

void require_k(int k, int q) {
  if (gcd_ll(k, q) != 1) throw InvalidArgument("k=" + std::to_string(k) + " is not coprime to q=" + std::to_string(q));
}

json matrix_json(const ButsonMatrix& m) {
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < m.order(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
  return json{{"n", m.order()}, {"q", m.modulus()}, {"log", rows}};
}

// Subcommands.

Report cmd_verify(const std::string& file, const std::string& x_text, int k, const Config& cfg) {
  const ButsonMatrix h = read_matrix_file(file);
  Report r;
  const bool butson = verify_butson(h, Parallelism{cfg.threads});
  r.doc = {{"command", "verify"}, {"n", h.order()}, {"q", h.modulus()}, {"butson", butson}};
  r.text = "BH(" + std::to_string(h.order()) + "," + std::to_string(h.modulus()) + ") " + (butson ? "VERIFIED" : "NOT BUTSON") + "\n";
  if (!x_text.empty()) {
    const ZqVector x = parse_vector(x_text);
    const auto lambda = verify_bent(h, x, k);
    r.doc["bent"] = {{"k", mod_q(k, h.modulus())}, {"x", x}, {"self_dual_bent", lambda.has_value()}};
    if (lambda) {
      r.doc["bent"]["lambda"] = *lambda;
      r.text += "x = " + vec_text(x) + " is self-dual bent for k=" + std::to_string(k) + ", lambda = " + format_cyc(*lambda) + "\n";
    } else {
      r.text += "x = " + vec_text(x) + " is not self-dual bent for k=" + std::to_string(k) + "\n";
    }
  }
  return r;
}

Report cmd_search(const std::string& file, int k, const std::string& method, const Config& cfg) {
  const ButsonMatrix h = read_matrix_file(file);
  require_k(k, h.modulus());
  const auto sols = run_search(h, k, method, cfg);
  Report r;
  json arr = json::array();
  for (const auto& s : sols) {
    json j = s;
    j["lambda_text"] = format_cyc(s.lambda);
    arr.push_back(j);
  }
  r.doc = {{"command", "search"}, {"method", method}, {"n", h.order()}, {"q", h.modulus()}, {"k", mod_q(k, h.modulus())},
           {"count", sols.size()}, {"solutions", arr}};
  std::ostringstream os;
  os << "# n q k method: " << h.order() << ' ' << h.modulus() << ' ' << mod_q(k, h.modulus()) << ' ' << method << '\n';
  for (const auto& s : sols) os << vec_text(s.x) << "  lambda = " << format_cyc(s.lambda) << '\n';
  os << sols.size() << " solution" << (sols.size() == 1 ? "" : "s") << '\n';
  r.text = os.str();
  return r;
}

Report cmd_census(const std::string& file, int k, const std::string& method, const Config& cfg) {
  const ButsonMatrix h = read_matrix_file(file);
  require_k(k, h.modulus());
  const Census c = census(run_search(h, k, method, cfg), h.order(), h.modulus(), k);
  Report r;
  r.doc = c;
  r.doc["command"] = "census";
  std::vector<std::string> counts;
  for (const auto& row : c.rows) counts.push_back(std::to_string(row.count));
  std::ostringstream os;
  os << "# n q #lambda #X per lambda (k=" << c.k << ")\n";
  os << c.n << ' ' << c.q << ' ' << c.rows.size() << ' ' << (counts.empty() ? "0" : join(counts, "; ")) << '\n';
  for (const auto& row : c.rows) os << "# lambda = " << format_cyc(row.lambda) << ": " << row.count << '\n';
  r.text = os.str();
  return r;
}

Report matrix_report(const ButsonMatrix& m, const std::string& kind) {
  Report r;
  r.doc = {{"command", "construct"}, {"kind", kind}, {"matrix", matrix_json(m)}, {"butson", verify_butson(m)}};
  r.text = serialize_matrix(m);
  return r;
}

Report cmd_construct_mm(const std::string& spec_file, int q, int m, int d, const std::string& variant, int k, const Config& cfg) {
  MMSpec spec;
  if (!spec_file.empty()) {
    std::ifstream in(spec_file);
    if (!in) throw ParseError("cannot open " + spec_file);
    try {
      spec = json::parse(in).get<MMSpec>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("MMSpec JSON: ") + e.what());
    }
  } else {
    if (variant != "plain" && variant != "shifted") throw InvalidArgument("variant must be plain or shifted");
    spec = dilation_spec(q, m, d, variant == "plain" ? MMVariant::plain : MMVariant::shifted, k);
  }
  const MMCandidate cand = mm_sequence(spec);
  const bool condition = check_mm_condition(spec, Parallelism{cfg.threads});
  const auto lambda = verify_bent(cand.matrix, cand.candidate.x, spec.k);
  Report r;
  r.doc = {{"command", "construct"}, {"kind", "mm"},          {"spec", spec},
           {"matrix", matrix_json(cand.matrix)},    {"x", cand.candidate.x}, {"condition", condition},
           {"self_dual_bent", lambda.has_value()}};
  if (lambda) r.doc["lambda"] = *lambda;
  std::ostringstream os;
  os << serialize_matrix(cand.matrix);
  os << "# x " << vec_text(cand.candidate.x) << '\n';
  os << "# condition " << (condition ? "holds" : "fails") << ", k=" << spec.k << '\n';
  os << "# " << (lambda ? "self-dual bent, lambda = " + format_cyc(*lambda) : std::string("not self-dual bent")) << '\n';
  r.text = os.str();
  return r;
}

Report cmd_construct_equivalent(const std::string& file, const Config& cfg) {
  const ButsonMatrix h = read_matrix_file(file);
  std::mt19937_64 rng(cfg.seed);
  auto random_monomial = [&] {
    MonomialMatrix m = MonomialMatrix::identity(h.order(), h.modulus());
    std::shuffle(m.perm.begin(), m.perm.end(), rng);
    std::uniform_int_distribution<int> dist(0, h.modulus() - 1);
    for (auto& e : m.diag) e = dist(rng);
    return m;
  };
  const MonomialMatrix p = random_monomial();
  const MonomialMatrix q = random_monomial();
  return matrix_report(transform(p, h, q), "equivalent");
}

Report cmd_exclude(int n, int q, const Config& cfg) {
  const ExclusionReport rep = exclusion_report(n, q, cfg.budget);
  Report r;
  r.doc = {{"command", "exclude"}, {"n", n}, {"q", q}, {"compositions", rep.compositions}, {"values", rep.values},
           {"excluded", rep.excluded}, {"verdict", rep.excluded ? "EXCLUDED" : "NOT EXCLUDED"}};
  std::vector<std::string> vals;
  for (const auto& v : rep.values) vals.push_back(v.exact ? std::to_string(v.integer) : fixed3(v.approx));
  std::ostringstream os;
  os << "# n q #compositions values verdict\n";
  os << n << ' ' << q << ' ' << rep.compositions << ' ' << join(vals, ";") << ' ' << (rep.excluded ? "EXCLUDED" : "NOT EXCLUDED") << '\n';
  r.text = os.str();
  return r;
}

// "2(8-√8)≈10.343" style rendering of a - b sqrt(c) scaled forms.
std::string lower_text(int n, double v) {
  const long long root = std::llround(std::sqrt(static_cast<double>(n)));
  if (root * root == n) return std::to_string(2 * n - 2 * root);
  return "2(" + std::to_string(n) + "-√" + std::to_string(n) + ")≈" + fixed3(v);
}

std::string upper_text(int n, double v) {
  const long long root = std::llround(std::sqrt(2.0 * n));
  if (root * root == 2LL * n) return std::to_string(2 * n - root);
  return std::to_string(2 * n) + "-√" + std::to_string(2 * n) + "≈" + fixed3(v);
}

json bounds_json(int n, int q, const CoveringBounds& b) {
  json j = json::object();
  auto one = [&](const std::optional<double>& v, const char* hyp) -> json {
    if (!v) return nullptr;
    json e = real_json(*v, "closed form", hyp);
    if (auto a = smallest_attainable_at_least(n, q, *v)) e["attainable_at_least"] = json{{"value", *a}, {"exact", true}};
    return e;
  };
  j["lower"] = one(b.lower, "self-dual bent sequence exists");
  j["upper"] = one(b.upper, "q even and dephased");
  return j;
}

std::string bounds_text(int n, int q, const CoveringBounds& b) {
  std::vector<std::string> parts;
  if (b.lower) {
    std::string s = "lower " + lower_text(n, *b.lower);
    if (auto a = smallest_attainable_at_least(n, q, *b.lower); a && static_cast<double>(*a) > *b.lower + 1e-9) {
      s += " (smallest attainable distance " + std::to_string(*a) + ")";
    }
    parts.push_back(s);
  }
  if (b.upper) parts.push_back("upper " + upper_text(n, *b.upper));
  if (parts.empty()) return "no bound applies\n";
  return join(parts, ", ") + "\n";
}

Report cmd_bounds(int n, int q, bool dephased, bool bent) {
  const CoveringBounds b = covering_bounds(n, q, dephased, bent);
  Report r;
  r.doc = bounds_json(n, q, b);
  r.doc["command"] = "bounds";
  r.doc["n"] = n;
  r.doc["q"] = q;
  r.text = bounds_text(n, q, b);
  return r;
}

Report cmd_covradius(const std::string& file, std::optional<int> k, const Config& cfg) {
  const ButsonMatrix h = read_matrix_file(file);
  const CoveringRadius cr = covering_radius(build_code(h, true), Parallelism{cfg.threads}, cfg.budget);
  const std::string method = cr.slice_reduction ? "sweep over x_1 = 0 slice" : "full sweep";
  Report r;
  r.doc = metric_json(cr.value, method, nullptr);
  r.doc["command"] = "covradius";
  r.doc["n"] = h.order();
  r.doc["q"] = h.modulus();
  r.doc["swept"] = cr.swept;
  std::ostringstream os;
  os << metric_text(cr.value) << '\n';
  if (k) {
    require_k(*k, h.modulus());
    SearchOptions opts = search_options(cfg);
    std::vector<BentSolution> sols;
    try {
      sols = exhaustive_search(h, *k, opts);
    } catch (const BudgetExceeded&) {
      sols = eigenspace_search(h, *k, opts);
    }
    const CoveringBounds b = covering_bounds(h.order(), h.modulus(), is_dephased(h), !sols.empty());
    r.doc["k"] = mod_q(*k, h.modulus());
    r.doc["bent_found"] = !sols.empty();
    r.doc["bounds"] = bounds_json(h.order(), h.modulus(), b);
    os << "# bent sequences for k=" << mod_q(*k, h.modulus()) << ": " << sols.size() << '\n';
    os << "# " << bounds_text(h.order(), h.modulus(), b);
  }
  r.text = os.str();
  return r;
}

Report cmd_spectrum(const std::string& file) {
  const ButsonMatrix h = read_matrix_file(file);
  const Spectrum s = distance_spectrum(h);
  Report r;
  r.doc = {{"command", "spectrum"}, {"n", h.order()}, {"q", h.modulus()}, {"values", s.values}, {"formula", s.formula},
           {"contained", s.contained}};
  std::vector<std::string> vals;
  std::vector<std::string> form;
  for (const auto& v : s.values) vals.push_back(metric_text(v));
  for (const auto& v : s.formula) form.push_back(metric_text(v));
  r.text = "distances {" + join(vals, ", ") + "}\nclosed form {" + join(form, ", ") + "}\n" +
           (s.contained ? "contained" : "NOT contained") + "\n";
  return r;
}

Report cmd_design_strength(const std::string& file, bool dephase_first) {
  ButsonMatrix h = read_matrix_file(file);
  if (dephase_first) h = dephase(h);
  const SphericalPoints pts = spherical_embed(build_code(h, true));
  const int strength = design_strength(pts);
  const bool antipodal = is_antipodal(pts);
  const auto bound = sphere_covering_bound(pts);
  const double rho = min_sq_distance(pts);
  Report r;
  r.doc = metric_json(MetricValue::from_int(strength), "moment equations, tolerance 1e-9", nullptr);
  r.doc["command"] = "design-strength";
  r.doc["points"] = pts.points.size();
  r.doc["dimension"] = pts.dim;
  r.doc["antipodal"] = antipodal;
  r.doc["min_sq_distance"] = real_json(rho, "pairwise sweep", nullptr);
  r.doc["sphere_covering_bound"] = bound ? real_json(bound->value, "design-strength bound", bound->hypothesis) : json(nullptr);
  std::ostringstream os;
  os << "strength " << strength << '\n' << "antipodal " << (antipodal ? "yes" : "no") << '\n';
  os << "points " << pts.points.size() << " in dimension " << pts.dim << ", min squared distance " << fixed3(rho) << '\n';
  if (bound) os << "covering radius of the spherical code <= " << fixed3(bound->value) << " (" << bound->hypothesis << ")\n";
  r.text = os.str();
  return r;
}

json monomial_json(const MonomialMatrix& m) { return json{{"perm", m.perm}, {"diag", m.diag}}; }

Report cmd_autgraph(const std::string& file, const std::string& mode, int k, const Config& cfg) {
  const ButsonMatrix h = read_matrix_file(file);
  std::optional<int> strong;
  if (mode == "strong") {
    strong = k;
  } else if (mode != "plain") {
    throw InvalidArgument("mode must be plain or strong");
  }
  const Digraph g = build_digraph(h, strong);
  Report r;
  if (cfg.format == "dot") {
    r.text = to_dot(g);
    return r;
  }
  if (cfg.format == "dimacs") {
    r.text = to_dimacs(g);
    return r;
  }
  const AutomorphismSearch res = digraph_automorphisms(g);
  json gens = json::array();
  std::ostringstream os;
  os << "vertices " << g.vertex_count() << ", arcs " << g.arcs.size() << '\n';
  os << "group order " << res.group_order << ", " << res.generators.size() << " generators\n";
  for (const auto& f : res.generators) {
    const auto d = decode_digraph_perm(g, h, f);
    if (strong) {
      gens.push_back({{"m", monomial_json(d.q)}});
      os << "M: perm " << vec_text(d.q.perm) << " | diag " << vec_text(d.q.diag) << '\n';
    } else {
      gens.push_back({{"p", monomial_json(d.p)}, {"q", monomial_json(d.q)}});
      os << "P: perm " << vec_text(d.p.perm) << " | diag " << vec_text(d.p.diag) << "   Q: perm " << vec_text(d.q.perm)
         << " | diag " << vec_text(d.q.diag) << '\n';
    }
  }
  r.doc = {{"command", "autgraph"}, {"mode", mode}, {"vertices", g.vertex_count()}, {"arcs", g.arcs.size()},
           {"group_order", {{"value", res.group_order}, {"exact", true}}}, {"generators", gens}};
  if (strong) r.doc["k"] = *g.strong_k;
  r.text = os.str();
  return r;
}

void emit(const Report& r, const Config& cfg, std::ostream& out) {
  std::string body;
  if (cfg.format == "json") {
    body = r.doc.dump(2) + "\n";
  } else {
    body = r.text;
  }
  if (cfg.output.empty()) {
    out << body;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw ParseError("cannot write " + cfg.output);
  file << body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Butson Hadamard matrices, self-dual bent sequences and Chinese-Euclidean metrics.\n"
               "Bent sequences are found by exhaustive enumeration or by the eigenspace method; no\n"
               "Groebner-basis solver is included.",
               "bhbent"};
  app.fallthrough();
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "Candidate budget for enumerations")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "dot", "dimacs"}));
  app.add_option("--output", cfg.output, "Write the report to this file");
  app.add_option("--seed", cfg.seed, "Seed for randomized helpers (construct equivalent)");

  std::string file;
  std::string file2;
  std::string method = "exhaustive";
  std::string x_text;
  std::string mode = "plain";
  std::string variant = "plain";
  std::string spec_file;
  int k = 1;
  std::optional<int> cov_k;
  int n = 0;
  int q = 0;
  int r_exp = 1;
  int m = 1;
  int d = 1;
  bool dephased = false;
  bool bent = false;
  bool dephase_first = false;

  std::function<Report()> action;

  auto* verify = app.add_subcommand("verify", "Check H H* = n I exactly; with --x also check a bent sequence");
  verify->add_option("file", file, "Matrix file")->required()->check(CLI::ExistingFile);
  verify->add_option("--x", x_text, "Exponent vector, comma separated");
  verify->add_option("--k", k, "Multiplier index");
  verify->callback([&] { action = [&] { return cmd_verify(file, x_text, k, cfg); }; });

  auto* search = app.add_subcommand("search", "List all self-dual bent sequences for multiplier k");
  search->add_option("file", file, "Matrix file")->required()->check(CLI::ExistingFile);
  search->add_option("--k", k, "Multiplier index");
  search->add_option("--method", method, "exhaustive or eigen")->check(CLI::IsMember({"exhaustive", "eigen"}));
  search->callback([&] { action = [&] { return cmd_search(file, k, method, cfg); }; });

  auto* census_cmd = app.add_subcommand("census", "Count bent sequences per eigenvalue lambda");
  census_cmd->add_option("file", file, "Matrix file")->required()->check(CLI::ExistingFile);
  census_cmd->add_option("--k", k, "Multiplier index");
  census_cmd->add_option("--method", method, "exhaustive or eigen")->check(CLI::IsMember({"exhaustive", "eigen"}));
  census_cmd->callback([&] { action = [&] { return cmd_census(file, k, method, cfg); }; });

  auto* construct = app.add_subcommand("construct", "Build a matrix (text codec output)");
  construct->require_subcommand(1);
  auto* c_fourier = construct->add_subcommand("fourier", "Fourier matrix of Z_q^r");
  c_fourier->add_option("--q", q)->required();
  c_fourier->add_option("--r", r_exp)->required();
  c_fourier->callback([&] { action = [&] { return matrix_report(fourier_matrix(q, r_exp), "fourier"); }; });
  auto* c_gi = construct->add_subcommand("group-invariant", "Group-invariant matrix of order q^(2m)");
  c_gi->add_option("--q", q)->required();
  c_gi->add_option("--m", m)->required();
  c_gi->callback([&] { action = [&] { return matrix_report(group_invariant_matrix(q, m), "group-invariant"); }; });
  auto* c_kron = construct->add_subcommand("kronecker", "Kronecker product of two matrix files");
  c_kron->add_option("a", file, "First matrix")->required()->check(CLI::ExistingFile);
  c_kron->add_option("b", file2, "Second matrix")->required()->check(CLI::ExistingFile);
  c_kron->callback([&] {
    action = [&] { return matrix_report(kronecker(read_matrix_file(file), read_matrix_file(file2)), "kronecker"); };
  });
  auto* c_mm = construct->add_subcommand("mm", "x1 . phi(x2) construction; phi = d x or a JSON spec");
  c_mm->add_option("--spec", spec_file, "MMSpec JSON file")->check(CLI::ExistingFile);
  c_mm->add_option("--q", q);
  c_mm->add_option("--m", m);
  c_mm->add_option("--d", d, "Dilation factor for phi(x) = d x");
  c_mm->add_option("--variant", variant)->check(CLI::IsMember({"plain", "shifted"}));
  c_mm->add_option("--k", k);
  c_mm->callback([&] { action = [&] { return cmd_construct_mm(spec_file, q, m, d, variant, k, cfg); }; });
  auto* c_eq = construct->add_subcommand("equivalent", "Random monomially equivalent matrix (uses --seed)");
  c_eq->add_option("file", file)->required()->check(CLI::ExistingFile);
  c_eq->callback([&] { action = [&] { return cmd_construct_equivalent(file, cfg); }; });

  auto* exclude = app.add_subcommand("exclude", "Norm sieve over compositions of n into q parts");
  exclude->add_option("--n", n)->required();
  exclude->add_option("--q", q)->required();
  exclude->callback([&] { action = [&] { return cmd_exclude(n, q, cfg); }; });

  auto* covradius = app.add_subcommand("covradius", "Chinese-Euclidean covering radius of C_H");
  covradius->add_option("file", file, "Matrix file")->required()->check(CLI::ExistingFile);
  covradius->add_option("--k", cov_k, "Also search bent sequences for k and report the bounds");
  covradius->callback([&] { action = [&] { return cmd_covradius(file, cov_k, cfg); }; });

  auto* spectrum = app.add_subcommand("spectrum", "Pairwise Chinese-Euclidean distances of C_H");
  spectrum->add_option("file", file, "Matrix file")->required()->check(CLI::ExistingFile);
  spectrum->callback([&] { action = [&] { return cmd_spectrum(file); }; });

  auto* strength = app.add_subcommand("design-strength", "Spherical design strength of the embedded C_H");
  strength->add_option("file", file, "Matrix file")->required()->check(CLI::ExistingFile);
  strength->add_flag("--dephase", dephase_first, "Dephase the matrix first");
  strength->callback([&] { action = [&] { return cmd_design_strength(file, dephase_first); }; });

  auto* bounds = app.add_subcommand("bounds", "Covering-radius bounds for BH(n, q)");
  bounds->add_option("--n", n)->required();
  bounds->add_option("--q", q)->required();
  bounds->add_flag("--dephased", dephased);
  bounds->add_flag("--bent", bent);
  bounds->callback([&] { action = [&] { return cmd_bounds(n, q, dephased, bent); }; });

  auto* autgraph = app.add_subcommand("autgraph", "Digraph of H: automorphisms, or export with --format dot|dimacs");
  autgraph->add_option("file", file, "Matrix file")->required()->check(CLI::ExistingFile);
  autgraph->add_option("--mode", mode)->check(CLI::IsMember({"plain", "strong"}));
  autgraph->add_option("--k", k);
  autgraph->callback([&] { action = [&] { return cmd_autgraph(file, mode, k, cfg); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::bad_input;
  }

  const bool graph_format = cfg.format == "dot" || cfg.format == "dimacs";
  if (graph_format && !autgraph->parsed()) {
    err << "error: --format " << cfg.format << " is only valid for autgraph\n";
    return ExitCode::bad_input;
  }

  try {
    emit(action(), cfg, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return ExitCode::budget_exceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::bad_input;
  }
  return ExitCode::ok;
}

}  // namespace bhbent::cli
