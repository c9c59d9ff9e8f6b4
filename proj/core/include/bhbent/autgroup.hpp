#pragma once

// Automorphisms of Butson matrices through digraphs and expanded designs.
//
// G(H) has row vertices r(t, x) and column vertices c(s, x) for x in Z_q
// (standing for zeta^x), with arcs r(t, x) -> r(t, x + 1),
// c(s, x) -> c(s, x + 1) and r(t, x) -> c(s, L[t][s] + x). The strong digraph
// G^k(H) adds middle vertices I(s, x) on paths r(s, k x) -> I(s, x) -> c(s, x).
// Vertex ids: r(t, x) = t q + x, c(s, x) = n q + s q + x,
// I(s, x) = 2 n q + s q + x.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bhbent/bent_search.hpp"
#include "bhbent/butson.hpp"

namespace bhbent {

enum class VertexKind : std::uint8_t { row = 0, column = 1, middle = 2 };

enum class ArcRule : std::uint8_t { row_cycle = 0, column_cycle = 1, entry = 2, path_in = 3, path_out = 4 };

struct Arc {
  int from = 0;
  int to = 0;
  ArcRule rule = ArcRule::entry;
};

struct Digraph {
  int n = 0;
  int q = 0;
  std::optional<int> strong_k;  // set for G^k(H)
  std::vector<Arc> arcs;

  int vertex_count() const { return (strong_k ? 3 : 2) * n * q; }
  VertexKind kind(int v) const;
  int row_vertex(int t, int x) const { return t * q + mod_q(x, q); }
  int column_vertex(int s, int x) const { return n * q + s * q + mod_q(x, q); }
  int middle_vertex(int s, int x) const { return 2 * n * q + s * q + mod_q(x, q); }
  /// "r(t,x)", "c(s,x)" or "I(s,x)" with t, s counted from 1.
  std::string label(int v) const;
};

/// G(H) when k is empty, G^k(H) otherwise. Throws when gcd(k, q) != 1.
Digraph build_digraph(const ButsonMatrix& h, std::optional<int> k = std::nullopt);

/// Block (i, j) of the nq x nq matrix is zeta^(i + j) H; entry (a n + s, b n + t).
/// Stored as exponents.
std::vector<std::vector<int>> expanded_design(const ButsonMatrix& h);
/// Indicator of the unit entries of the expanded design.
std::vector<std::vector<int>> associated_design(const ButsonMatrix& h);

/// Permutations of {0, .., nq - 1} as row -> column index maps of the
/// permutation matrices theta1(X) = sum T_w (x) X_w and theta2(Y) = sum S_w (x) Y_w.
std::pair<std::vector<int>, std::vector<int>> theta_map(const MonomialMatrix& x, const MonomialMatrix& y);

/// E[pi1(r)][pi2(c)] == E[r][c] for all r, c.
bool fixes_expanded_design(const ButsonMatrix& h, const std::vector<int>& pi1, const std::vector<int>& pi2);

/// P H Q* == H.
bool is_automorphism(const ButsonMatrix& h, const MonomialMatrix& p, const MonomialMatrix& q);
/// mu_k(M) H == H M.
bool is_strong(const ButsonMatrix& h, const MonomialMatrix& m, int k);

/// The solution with vector M X; throws InvalidArgument unless M is strong for sol.k.
BentSolution act_on_bent(const MonomialMatrix& m, const BentSolution& sol, const ButsonMatrix& h);

using VertexPerm = std::vector<int>;

struct AutomorphismSearch {
  std::vector<VertexPerm> generators;
  std::vector<int> base;          // individualized vertices along the first path
  std::vector<std::uint64_t> orbit_sizes;
  std::uint64_t group_order = 1;  // product of the basic orbit sizes
  std::uint64_t leaves = 0;       // leaves examined
};

struct AutomorphismOptions {
  int vertex_budget = 2000;
  bool colored_arcs = true;  // refine with arc rules; false uses the bare digraph
};

/// Generators of Aut(G) by individualization-refinement with a stabilizer
/// chain. Throws BudgetExceeded above the vertex budget.
AutomorphismSearch digraph_automorphisms(const Digraph& g, const AutomorphismOptions& options = {});

/// True when f is a bijection mapping arcs onto arcs (colors ignored).
bool preserves_arcs(const Digraph& g, const VertexPerm& f);

struct DecodedAutomorphism {
  MonomialMatrix p;
  MonomialMatrix q;
};

/// (P, Q) with P H Q* = H, or in strong mode P = mu_k(Q) with M = Q strong.
/// Verifies the result exactly; throws InvalidArgument when f does not decode.
DecodedAutomorphism decode_digraph_perm(const Digraph& g, const ButsonMatrix& h, const VertexPerm& f);

/// Vertex permutation induced by (P, Q); middle vertices follow Q.
VertexPerm encode_monomial_pair(const Digraph& g, const MonomialMatrix& p, const MonomialMatrix& q);

std::string to_dot(const Digraph& g);
/// "p arc V A", then "colors c_1 .. c_V" (0 row, 1 column, 2 middle), then
/// one "a u v" line per arc with 1-based vertices.
std::string to_dimacs(const Digraph& g);

}  // namespace bhbent
