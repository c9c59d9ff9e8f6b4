#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bhbent/butson.hpp"
#include "bhbent/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bhbent::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Writes a matrix into a fresh temporary file.
std::string write_matrix(const bhbent::ButsonMatrix& m, const std::string& name) {
  const auto dir = fs::temp_directory_path() / "bhbent_cli_test";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << bhbent::serialize_matrix(m);
  return path.string();
}

}  // namespace

TEST_CASE("construct and verify") {
  const auto r = run({"construct", "fourier", "--q", "3", "--r", "1"});
  CHECK(r.code == 0);
  CHECK(bhbent::parse_matrix(r.out) == bhbent::fourier_matrix(3, 1));
  const auto f3 = write_matrix(bhbent::fourier_matrix(3, 1), "f3.bh");
  const auto v = run({"verify", f3});
  CHECK(v.code == 0);
  CHECK(v.out.find("VERIFIED") != std::string::npos);
  const auto x = run({"verify", f3, "--x", "0,1,1", "--k", "2"});
  CHECK(x.code == 0);
  CHECK(x.out.find("1 + 2z") != std::string::npos);
  const auto bad = write_matrix(bhbent::ones_matrix(3, 3), "ones.bh");
  // A negative verdict is an answer, not an error.
  const auto nb = run({"verify", bad});
  CHECK(nb.code == 0);
  CHECK(nb.out.find("NOT BUTSON") != std::string::npos);
}

TEST_CASE("census text and json") {
  const auto f3 = write_matrix(bhbent::fourier_matrix(3, 1), "f3.bh");
  const auto t = run({"census", f3, "--k", "2"});
  CHECK(t.code == 0);
  CHECK(t.out.find("3 3 6 1; 3; 3; 1; 1; 3") != std::string::npos);
  const auto j = run({"--format", "json", "census", f3, "--k", "2"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["total"] == 12);
  CHECK(doc["distinct_lambdas"] == 6);
}

TEST_CASE("json output does not depend on the thread count") {
  const auto f3 = bhbent::fourier_matrix(3, 1);
  const auto h = write_matrix(bhbent::kronecker(f3, f3), "f3f3.bh");
  for (const std::string method : {"exhaustive", "eigen"}) {
    const auto a = run({"--threads", "1", "--format", "json", "search", h, "--k", "2", "--method", method});
    const auto b = run({"--threads", "4", "--format", "json", "search", h, "--k", "2", "--method", method});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  const auto a = run({"--threads", "1", "--format", "json", "covradius", write_matrix(bhbent::fourier_matrix(5, 1), "f5.bh")});
  const auto b = run({"--threads", "3", "--format", "json", "covradius", write_matrix(bhbent::fourier_matrix(5, 1), "f5.bh")});
  CHECK(a.out == b.out);
}

TEST_CASE("exclusion sieve and bounds") {
  const auto e = run({"exclude", "--n", "6", "--q", "3"});
  CHECK(e.code == 0);
  CHECK(e.out.find("6 3 28 0;3;9;12;21;36 EXCLUDED") != std::string::npos);
  const auto j = run({"--format", "json", "exclude", "--n", "8", "--q", "4"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["excluded"] == false);
  CHECK(doc["compositions"] == 165);
  const auto b = run({"bounds", "--n", "8", "--q", "8", "--dephased", "--bent"});
  CHECK(b.code == 0);
  CHECK(b.out.find("upper 12") != std::string::npos);
}

TEST_CASE("metrics commands") {
  const auto f4 = write_matrix(bhbent::fourier_matrix(4, 1), "f4.bh");
  const auto c = run({"--format", "json", "covradius", f4});
  REQUIRE(c.code == 0);
  const auto doc = nlohmann::json::parse(c.out);
  CHECK(doc["value"] == 4);
  CHECK(doc["exact"] == true);
  CHECK(run({"spectrum", f4}).code == 0);
  const auto s = run({"design-strength", f4, "--dephase"});
  CHECK(s.code == 0);
  CHECK(s.out.find("strength 2") != std::string::npos);
}

TEST_CASE("construct mm and equivalent") {
  const auto mm = run({"construct", "mm", "--q", "5", "--m", "1", "--d", "2", "--variant", "shifted", "--k", "3"});
  CHECK(mm.code == 0);
  CHECK(mm.out.find("25 5") != std::string::npos);
  const auto f3 = write_matrix(bhbent::fourier_matrix(3, 1), "f3.bh");
  const auto a = run({"--seed", "7", "construct", "equivalent", f3});
  const auto b = run({"--seed", "7", "construct", "equivalent", f3});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(bhbent::verify_butson(bhbent::parse_matrix(a.out)));
}

TEST_CASE("autgraph") {
  const auto f3 = write_matrix(bhbent::fourier_matrix(3, 1), "f3.bh");
  const auto r = run({"autgraph", f3, "--mode", "strong", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("group order 6") != std::string::npos);
  const auto p = run({"autgraph", f3});
  CHECK(p.out.find("group order 54") != std::string::npos);
  const auto d = run({"--format", "dimacs", "autgraph", f3});
  CHECK(d.out.rfind("p arc 18 45", 0) == 0);
  CHECK(run({"--format", "dot", "autgraph", f3}).out.rfind("digraph", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({"verify", "/nonexistent/file.bh"}).code == bhbent::cli::bad_input);
  CHECK(run({"nosuchcommand"}).code == bhbent::cli::bad_input);
  const auto f3 = write_matrix(bhbent::fourier_matrix(3, 1), "f3.bh");
  CHECK(run({"--budget", "5", "search", f3, "--k", "2"}).code == bhbent::cli::budget_exceeded);
  CHECK(run({"search", f3, "--k", "3"}).code == bhbent::cli::bad_input);
  CHECK(run({"--format", "dot", "census", f3, "--k", "2"}).code == bhbent::cli::bad_input);
  const auto garbage = fs::temp_directory_path() / "bhbent_cli_test" / "garbage.bh";
  std::ofstream(garbage) << "2 2\n0 5\n0 1\n";
  CHECK(run({"verify", garbage.string()}).code == bhbent::cli::bad_input);
}

TEST_CASE("output file") {
  const auto f3 = write_matrix(bhbent::fourier_matrix(3, 1), "f3.bh");
  const auto out = fs::temp_directory_path() / "bhbent_cli_test" / "census.json";
  fs::remove(out);
  const auto r = run({"--format", "json", "--output", out.string(), "census", f3, "--k", "2"});
  CHECK(r.code == 0);
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["total"] == 12);
}
