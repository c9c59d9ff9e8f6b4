#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "bhbent/autgroup.hpp"
#include "bhbent/errors.hpp"
#include "oracles.hpp"

using namespace bhbent;

namespace {

oracle::Table table(const ButsonMatrix& m) {
  oracle::Table t;
  for (int i = 0; i < m.order(); ++i) t.emplace_back(m.row(i).begin(), m.row(i).end());
  return t;
}

MonomialMatrix to_monomial(const oracle::Mono& m, int q) {
  MonomialMatrix out = MonomialMatrix::identity(static_cast<int>(m.col.size()), q);
  for (std::size_t i = 0; i < m.col.size(); ++i) {
    out.perm[i] = m.col[i];
    out.diag[static_cast<std::size_t>(m.col[i])] = m.exp[i];
  }
  return out;
}

MonomialMatrix random_monomial(std::mt19937& rng, int n, int q) {
  MonomialMatrix m = MonomialMatrix::identity(n, q);
  std::shuffle(m.perm.begin(), m.perm.end(), rng);
  for (auto& e : m.diag) e = static_cast<int>(rng() % static_cast<unsigned>(q));
  return m;
}

const std::vector<std::vector<int>> kExpandedF3{
    {0, 0, 0, 1, 1, 1, 2, 2, 2}, {0, 1, 2, 1, 2, 0, 2, 0, 1}, {0, 2, 1, 1, 0, 2, 2, 1, 0},
    {1, 1, 1, 2, 2, 2, 0, 0, 0}, {1, 2, 0, 2, 0, 1, 0, 1, 2}, {1, 0, 2, 2, 1, 0, 0, 2, 1},
    {2, 2, 2, 0, 0, 0, 1, 1, 1}, {2, 0, 1, 0, 1, 2, 1, 2, 0}, {2, 1, 0, 0, 2, 1, 1, 0, 2}};

const std::vector<std::vector<int>> kAssociatedF3{
    {1, 1, 1, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 1, 0, 1, 0}, {1, 0, 0, 0, 1, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 1, 1, 1}, {0, 0, 1, 0, 1, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 1, 1, 0, 0},
    {0, 0, 0, 1, 1, 1, 0, 0, 0}, {0, 1, 0, 1, 0, 0, 0, 0, 1}, {0, 0, 1, 1, 0, 0, 0, 1, 0}};

}  // namespace

TEST_CASE("digraph shape") {
  for (int q : {2, 3, 4}) {
    const auto h = fourier_matrix(q, 1);
    const int n = q;
    const auto g = build_digraph(h);
    CHECK(g.vertex_count() == 2 * n * q);
    CHECK(g.arcs.size() == static_cast<std::size_t>(2 * n * q + n * n * q));
    const auto gs = build_digraph(h, q - 1);
    CHECK(gs.vertex_count() == 3 * n * q);
    CHECK(gs.arcs.size() == static_cast<std::size_t>(4 * n * q + n * n * q));
  }
  const auto g = build_digraph(fourier_matrix(3, 1), 2);
  CHECK(g.kind(0) == VertexKind::row);
  CHECK(g.kind(9) == VertexKind::column);
  CHECK(g.kind(18) == VertexKind::middle);
  CHECK(g.label(g.row_vertex(1, 0)) == "r(2,0)");
  CHECK(g.label(g.middle_vertex(0, 2)) == "I(1,2)");
  CHECK(g.column_vertex(2, 4) == 9 + 6 + 1);
  CHECK_THROWS_AS(build_digraph(fourier_matrix(4, 1), 2), InvalidArgument);
  // Every entry arc goes from r(t, x) to c(s, L[t][s] + x).
  const auto f3 = fourier_matrix(3, 1);
  for (const auto& a : g.arcs)
    if (a.rule == ArcRule::entry) {
      const int t = a.from / 3;
      const int x = a.from % 3;
      const int s = (a.to - 9) / 3;
      CHECK(a.to == g.column_vertex(s, f3(t, s) + x));
    }
}

TEST_CASE("expanded and associated designs of F_3") {
  const auto f3 = fourier_matrix(3, 1);
  CHECK(expanded_design(f3) == kExpandedF3);
  CHECK(associated_design(f3) == kAssociatedF3);
}

TEST_CASE("theta maps are homomorphisms") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_monomial(rng, 4, 3);
    const auto b = random_monomial(rng, 4, 3);
    const auto [a1, a2] = theta_map(a, a);
    const auto [b1, b2] = theta_map(b, b);
    const auto [c1, c2] = theta_map(a * b, a * b);
    for (std::size_t r = 0; r < c1.size(); ++r) {
      CHECK(c1[r] == b1[static_cast<std::size_t>(a1[r])]);
      CHECK(c2[r] == b2[static_cast<std::size_t>(a2[r])]);
    }
  }
}

TEST_CASE("design fixing matches the automorphism check") {
  for (const auto& h : {fourier_matrix(2, 1), fourier_matrix(3, 1)}) {
    const int n = h.order();
    const int q = h.modulus();
    const auto t = table(h);
    const auto mons = oracle::all_monomials(n, q);
    for (const auto& p : mons)
      for (const auto& qq : mons) {
        const auto mp = to_monomial(p, q);
        const auto mq = to_monomial(qq, q);
        const bool aut = is_automorphism(h, mp, mq);
        CHECK(aut == oracle::fixes(t, q, p, qq));
        const auto [pi1, pi2] = theta_map(mp, mq);
        CHECK(fixes_expanded_design(h, pi1, pi2) == aut);
      }
  }
}

TEST_CASE("group orders against brute force") {
  const auto f2 = fourier_matrix(2, 1);
  for (const auto& h : {f2, fourier_matrix(3, 1), kronecker(f2, f2), group_invariant_matrix(2, 1)}) {
    CAPTURE(h.order());
    const auto s = digraph_automorphisms(build_digraph(h));
    CHECK(s.group_order == oracle::aut_order(table(h), h.modulus()));
  }
  CHECK(digraph_automorphisms(build_digraph(f2)).group_order == 8);
  CHECK(digraph_automorphisms(build_digraph(fourier_matrix(3, 1))).group_order == 54);
  for (int q : {2, 3, 4, 5}) {
    const auto h = fourier_matrix(q, 1);
    for (int k = 1; k < std::max(q, 2); ++k) {
      if (gcd_ll(k, q) != 1) continue;
      CAPTURE(q);
      CAPTURE(k);
      const auto s = digraph_automorphisms(build_digraph(h, k));
      CHECK(s.group_order == oracle::strong_order(table(h), q, k));
    }
  }
}

TEST_CASE("generators decode and re-encode") {
  const auto f3 = fourier_matrix(3, 1);
  const auto sol = exhaustive_search(f3, 2);
  for (const auto& h : {fourier_matrix(2, 1), f3, fourier_matrix(4, 1)}) {
    const auto g = build_digraph(h);
    for (const auto& f : digraph_automorphisms(g).generators) {
      CHECK(preserves_arcs(g, f));
      const auto d = decode_digraph_perm(g, h, f);
      CHECK(is_automorphism(h, d.p, d.q));
      CHECK(encode_monomial_pair(g, d.p, d.q) == f);
    }
  }
  const auto g = build_digraph(f3, 2);
  const auto search = digraph_automorphisms(g);
  CHECK_FALSE(search.generators.empty());
  for (const auto& f : search.generators) {
    const auto d = decode_digraph_perm(g, f3, f);
    CHECK(is_strong(f3, d.q, 2));
    CHECK(d.p == d.q.multiplier(2));
    CHECK(encode_monomial_pair(g, d.p, d.q) == f);
    for (const auto& s : sol) {
      const auto image = act_on_bent(d.q, s, f3);
      const auto l = verify_bent(f3, image.x, 2);
      REQUIRE(l);
      CHECK(*l == image.lambda);
    }
  }
}

TEST_CASE("non-automorphisms are rejected") {
  const auto f3 = fourier_matrix(3, 1);
  const auto g = build_digraph(f3);
  VertexPerm swap(static_cast<std::size_t>(g.vertex_count()));
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  CHECK_FALSE(preserves_arcs(g, swap));
  CHECK_THROWS_AS(decode_digraph_perm(g, f3, swap), InvalidArgument);
  const auto bad = MonomialMatrix::permutation(3, {1, 0, 2});
  CHECK_FALSE(is_strong(f3, bad, 1));
  const auto s = exhaustive_search(f3, 2).front();
  CHECK_THROWS_AS(act_on_bent(bad, s, f3), InvalidArgument);
}

TEST_CASE("vertex budget") {
  AutomorphismOptions opt;
  opt.vertex_budget = 10;
  CHECK_THROWS_AS(digraph_automorphisms(build_digraph(fourier_matrix(3, 1)), opt), BudgetExceeded);
}

TEST_CASE("uncolored refinement finds the same group") {
  AutomorphismOptions opt;
  opt.colored_arcs = false;
  const auto f3 = fourier_matrix(3, 1);
  CHECK(digraph_automorphisms(build_digraph(f3), opt).group_order == 54);
}

TEST_CASE("exports") {
  const auto g = build_digraph(fourier_matrix(2, 1), 1);
  const auto dimacs = to_dimacs(g);
  std::istringstream in(dimacs);
  std::string p, kind;
  int v = 0, a = 0;
  in >> p >> kind >> v >> a;
  CHECK(p == "p");
  CHECK(kind == "arc");
  CHECK(v == g.vertex_count());
  CHECK(a == static_cast<int>(g.arcs.size()));
  std::string line;
  int arc_lines = 0;
  while (std::getline(in, line))
    if (line.rfind("a ", 0) == 0) ++arc_lines;
  CHECK(arc_lines == a);
  const auto dot = to_dot(g);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("r(1,0)") != std::string::npos);
  CHECK(dot.find("I(2,1)") != std::string::npos);
}
