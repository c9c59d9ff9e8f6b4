#include "bhbent/autgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bhbent/errors.hpp"

namespace bhbent {

VertexKind Digraph::kind(int v) const {
  const int block = n * q;
  if (v < block) return VertexKind::row;
  if (v < 2 * block) return VertexKind::column;
  return VertexKind::middle;
}

std::string Digraph::label(int v) const {
  const int block = n * q;
  static constexpr const char* names[] = {"r", "c", "I"};
  const int local = v % block;
  std::ostringstream os;
  os << names[v / block] << '(' << local / q + 1 << ',' << local % q << ')';
  return os.str();
}

Digraph build_digraph(const ButsonMatrix& h, std::optional<int> k) {
  Digraph g;
  g.n = h.order();
  g.q = h.modulus();
  const int n = g.n;
  const int q = g.q;
  if (k) {
    if (gcd_ll(*k, q) != 1) throw InvalidArgument("multiplier k=" + std::to_string(*k) + " is not coprime to q=" + std::to_string(q));
    g.strong_k = mod_q(*k, q);
  }
  for (int t = 0; t < n; ++t)
    for (int x = 0; x < q; ++x) g.arcs.push_back({g.row_vertex(t, x), g.row_vertex(t, x + 1), ArcRule::row_cycle});
  for (int s = 0; s < n; ++s)
    for (int x = 0; x < q; ++x) g.arcs.push_back({g.column_vertex(s, x), g.column_vertex(s, x + 1), ArcRule::column_cycle});
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s)
      for (int x = 0; x < q; ++x) g.arcs.push_back({g.row_vertex(t, x), g.column_vertex(s, h(t, s) + x), ArcRule::entry});
  if (g.strong_k) {
    for (int s = 0; s < n; ++s) {
      for (int x = 0; x < q; ++x) {
        g.arcs.push_back({g.row_vertex(s, *g.strong_k * x), g.middle_vertex(s, x), ArcRule::path_in});
        g.arcs.push_back({g.middle_vertex(s, x), g.column_vertex(s, x), ArcRule::path_out});
      }
    }
  }
  return g;
}

std::vector<std::vector<int>> expanded_design(const ButsonMatrix& h) {
  const int n = h.order();
  const int q = h.modulus();
  std::vector<std::vector<int>> e(static_cast<std::size_t>(n * q), std::vector<int>(static_cast<std::size_t>(n * q)));
  for (int a = 0; a < q; ++a)
    for (int s = 0; s < n; ++s)
      for (int b = 0; b < q; ++b)
        for (int t = 0; t < n; ++t) e[static_cast<std::size_t>(a * n + s)][static_cast<std::size_t>(b * n + t)] = mod_q(a + b + h(s, t), q);
  return e;
}

std::vector<std::vector<int>> associated_design(const ButsonMatrix& h) {
  auto a = expanded_design(h);
  for (auto& row : a)
    for (auto& v : row) v = v == 0 ? 1 : 0;
  return a;
}

std::pair<std::vector<int>, std::vector<int>> theta_map(const MonomialMatrix& x, const MonomialMatrix& y) {
  x.validate();
  y.validate();
  if (x.size() != y.size() || x.q != y.q) throw InvalidArgument("theta_map: shape mismatch");
  const int n = x.size();
  const int q = x.q;
  std::vector<int> first(static_cast<std::size_t>(n * q));
  std::vector<int> second(static_cast<std::size_t>(n * q));
  for (int a = 0; a < q; ++a) {
    for (int i = 0; i < n; ++i) {
      first[static_cast<std::size_t>(a * n + i)] = mod_q(a + x.exponent(i), q) * n + x.column(i);
      second[static_cast<std::size_t>(a * n + i)] = mod_q(a - y.exponent(i), q) * n + y.column(i);
    }
  }
  return {first, second};
}

bool fixes_expanded_design(const ButsonMatrix& h, const std::vector<int>& pi1, const std::vector<int>& pi2) {
  const auto e = expanded_design(h);
  if (pi1.size() != e.size() || pi2.size() != e.size()) throw InvalidArgument("permutation size does not match the design");
  for (std::size_t r = 0; r < e.size(); ++r)
    for (std::size_t c = 0; c < e.size(); ++c)
      if (e[static_cast<std::size_t>(pi1[r])][static_cast<std::size_t>(pi2[c])] != e[r][c]) return false;
  return true;
}

bool is_automorphism(const ButsonMatrix& h, const MonomialMatrix& p, const MonomialMatrix& q) {
  if (p.size() != h.order() || q.size() != h.order() || p.q != h.modulus() || q.q != h.modulus()) {
    throw InvalidArgument("monomial matrices do not match the matrix shape");
  }
  return transform(p, h, q.adjoint()) == h;
}

bool is_strong(const ButsonMatrix& h, const MonomialMatrix& m, int k) {
  if (gcd_ll(k, h.modulus()) != 1) throw InvalidArgument("multiplier k=" + std::to_string(k) + " is not coprime to q");
  return is_automorphism(h, m.multiplier(k), m);
}

BentSolution act_on_bent(const MonomialMatrix& m, const BentSolution& sol, const ButsonMatrix& h) {
  if (!is_strong(h, m, sol.k)) throw InvalidArgument("monomial matrix is not in the strong group for k=" + std::to_string(sol.k));
  BentSolution out = sol;
  out.x = m.apply(sol.x);
  return out;
}

namespace {

using Partition = std::vector<int>;  // vertex -> cell id, ids 0..C-1

int cell_count(const Partition& p) { return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1; }

class Refiner {
 public:
  Refiner(const Digraph& g, bool colored) : v_(g.vertex_count()), out_(static_cast<std::size_t>(v_)), in_(static_cast<std::size_t>(v_)) {
    for (const auto& a : g.arcs) {
      const int color = colored ? static_cast<int>(a.rule) : 0;
      out_[static_cast<std::size_t>(a.from)].push_back({a.to, color});
      in_[static_cast<std::size_t>(a.to)].push_back({a.from, color});
    }
  }

  // Ranks vertices by key, keeping equal keys together; ids follow key order.
  static Partition rank(const std::vector<std::vector<long long>>& keys) {
    std::vector<int> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)]; });
    Partition p(keys.size());
    int id = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || keys[static_cast<std::size_t>(order[i])] != keys[static_cast<std::size_t>(order[i - 1])]) ++id;
      p[static_cast<std::size_t>(order[i])] = id;
    }
    return p;
  }

  Partition refine(Partition p) const {
    int cells = cell_count(p);
    for (;;) {
      std::vector<std::vector<long long>> keys(static_cast<std::size_t>(v_));
      for (int v = 0; v < v_; ++v) {
        auto& key = keys[static_cast<std::size_t>(v)];
        key.push_back(p[static_cast<std::size_t>(v)]);
        std::vector<long long> nb;
        for (const auto& [u, c] : out_[static_cast<std::size_t>(v)]) nb.push_back((0LL * 8 + c) * v_ + p[static_cast<std::size_t>(u)]);
        for (const auto& [u, c] : in_[static_cast<std::size_t>(v)]) nb.push_back((1LL * 8 + c) * v_ + p[static_cast<std::size_t>(u)]);
        std::sort(nb.begin(), nb.end());
        key.insert(key.end(), nb.begin(), nb.end());
      }
      Partition next = rank(keys);
      const int next_cells = cell_count(next);
      p = std::move(next);
      if (next_cells == cells) return p;
      cells = next_cells;
    }
  }

  Partition individualize(const Partition& p, int vertex) const {
    std::vector<std::vector<long long>> keys(static_cast<std::size_t>(v_));
    for (int v = 0; v < v_; ++v) keys[static_cast<std::size_t>(v)] = {p[static_cast<std::size_t>(v)], v == vertex ? 0 : 1};
    return refine(rank(keys));
  }

 private:
  int v_;
  std::vector<std::vector<std::pair<int, int>>> out_;
  std::vector<std::vector<std::pair<int, int>>> in_;
};

std::vector<int> cell_sizes(const Partition& p) {
  std::vector<int> sizes(static_cast<std::size_t>(cell_count(p)), 0);
  for (int c : p) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

// Smallest id of a non-singleton cell, or -1 when discrete.
int target_cell(const std::vector<int>& sizes) {
  for (std::size_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] > 1) return static_cast<int>(c);
  return -1;
}

std::vector<int> members(const Partition& p, int cell) {
  std::vector<int> out;
  for (std::size_t v = 0; v < p.size(); ++v)
    if (p[v] == cell) out.push_back(static_cast<int>(v));
  return out;
}

class ArcSet {
 public:
  ArcSet(const Digraph& g, bool colored) : v_(g.vertex_count()), colored_(colored) {
    for (const auto& a : g.arcs) keys_.push_back(key(a.from, a.to, colored ? static_cast<int>(a.rule) : 0));
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  }

  bool preserved_by(const Digraph& g, const VertexPerm& f) const {
    for (const auto& a : g.arcs) {
      const long long k = key(f[static_cast<std::size_t>(a.from)], f[static_cast<std::size_t>(a.to)], colored_ ? static_cast<int>(a.rule) : 0);
      if (!std::binary_search(keys_.begin(), keys_.end(), k)) return false;
    }
    return true;
  }

 private:
  long long key(int from, int to, int color) const { return (static_cast<long long>(from) * v_ + to) * 8 + color; }
  long long v_;
  bool colored_;
  std::vector<long long> keys_;
};

bool is_bijection(const VertexPerm& f, int v) {
  if (static_cast<int>(f.size()) != v) return false;
  std::vector<bool> seen(static_cast<std::size_t>(v), false);
  for (int x : f) {
    if (x < 0 || x >= v || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

class AutSearch {
 public:
  AutSearch(const Digraph& g, const AutomorphismOptions& options)
      : g_(g), refiner_(g, options.colored_arcs), arcs_(g, options.colored_arcs) {}

  AutomorphismSearch run() {
    const int v = g_.vertex_count();
    std::vector<std::vector<long long>> kinds(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) kinds[static_cast<std::size_t>(i)] = {static_cast<long long>(g_.kind(i))};
    path_.push_back(refiner_.refine(Refiner::rank(kinds)));
    for (;;) {
      const auto sizes = cell_sizes(path_.back());
      profiles_.push_back(sizes);
      const int cell = target_cell(sizes);
      if (cell < 0) break;
      const int b = members(path_.back(), cell).front();
      result_.base.push_back(b);
      path_.push_back(refiner_.individualize(path_.back(), b));
    }
    first_leaf_ = leaf_order(path_.back());
    ++result_.leaves;

    const int depth = static_cast<int>(result_.base.size());
    result_.orbit_sizes.assign(static_cast<std::size_t>(depth), 1);
    for (int level = depth - 1; level >= 0; --level) {
      const auto& p = path_[static_cast<std::size_t>(level)];
      const int b = result_.base[static_cast<std::size_t>(level)];
      auto orbit = orbit_of(b);
      for (int w : members(p, p[static_cast<std::size_t>(b)])) {
        if (orbit[static_cast<std::size_t>(w)]) continue;
        if (auto gamma = search(refiner_.individualize(p, w), level + 1)) {
          result_.generators.push_back(std::move(*gamma));
          orbit = orbit_of(b);
        }
      }
      result_.orbit_sizes[static_cast<std::size_t>(level)] = static_cast<std::uint64_t>(std::count(orbit.begin(), orbit.end(), true));
    }
    for (auto s : result_.orbit_sizes) result_.group_order *= s;
    return result_;
  }

 private:
  static std::vector<int> leaf_order(const Partition& p) {
    std::vector<int> order(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) order[static_cast<std::size_t>(p[v])] = static_cast<int>(v);
    return order;
  }

  std::vector<bool> orbit_of(int b) const {
    std::vector<bool> seen(static_cast<std::size_t>(g_.vertex_count()), false);
    std::vector<int> queue{b};
    seen[static_cast<std::size_t>(b)] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& gen : result_.generators) {
        const int u = gen[static_cast<std::size_t>(queue[i])];
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = true;
          queue.push_back(u);
        }
      }
    }
    return seen;
  }

  // Depth-first search below p for a leaf equivalent to the first one.
  std::optional<VertexPerm> search(const Partition& p, int depth) {
    const auto sizes = cell_sizes(p);
    if (depth >= static_cast<int>(profiles_.size()) || sizes != profiles_[static_cast<std::size_t>(depth)]) return std::nullopt;
    const int cell = target_cell(sizes);
    if (cell < 0) {
      ++result_.leaves;
      const auto leaf = leaf_order(p);
      VertexPerm gamma(leaf.size());
      for (std::size_t c = 0; c < leaf.size(); ++c) gamma[static_cast<std::size_t>(first_leaf_[c])] = leaf[c];
      if (arcs_.preserved_by(g_, gamma)) return gamma;
      return std::nullopt;
    }
    for (int w : members(p, cell)) {
      if (auto gamma = search(refiner_.individualize(p, w), depth + 1)) return gamma;
    }
    return std::nullopt;
  }

  const Digraph& g_;
  Refiner refiner_;
  ArcSet arcs_;
  std::vector<Partition> path_;
  std::vector<std::vector<int>> profiles_;
  std::vector<int> first_leaf_;
  AutomorphismSearch result_;
};

}  // namespace

AutomorphismSearch digraph_automorphisms(const Digraph& g, const AutomorphismOptions& options) {
  if (g.vertex_count() > options.vertex_budget) {
    throw BudgetExceeded("digraph has " + std::to_string(g.vertex_count()) + " vertices, above the budget of " +
                         std::to_string(options.vertex_budget) + "; export it instead");
  }
  return AutSearch(g, options).run();
}

bool preserves_arcs(const Digraph& g, const VertexPerm& f) {
  if (!is_bijection(f, g.vertex_count())) return false;
  return ArcSet(g, false).preserved_by(g, f);
}

namespace {

// f(block(t, x)) = block(pi(t), x + shift[t]) on the vertex block starting at `offset`.
struct BlockAction {
  std::vector<int> pi;
  std::vector<int> shift;
};

BlockAction decode_block(const Digraph& g, const VertexPerm& f, int offset) {
  const int n = g.n;
  const int q = g.q;
  BlockAction act{std::vector<int>(static_cast<std::size_t>(n)), std::vector<int>(static_cast<std::size_t>(n))};
  for (int t = 0; t < n; ++t) {
    const int image = f[static_cast<std::size_t>(offset + t * q)] - offset;
    if (image < 0 || image >= n * q) throw InvalidArgument("permutation does not preserve the vertex classes");
    act.pi[static_cast<std::size_t>(t)] = image / q;
    act.shift[static_cast<std::size_t>(t)] = image % q;
    for (int x = 0; x < q; ++x) {
      const int expected = offset + (image / q) * q + mod_q(image % q + x, q);
      if (f[static_cast<std::size_t>(offset + t * q + x)] != expected) {
        throw InvalidArgument("permutation is not a consistent cyclic shift on " + g.label(offset + t * q));
      }
    }
  }
  return act;
}

MonomialMatrix to_monomial(const BlockAction& act, int q) {
  const int n = static_cast<int>(act.pi.size());
  MonomialMatrix m;
  m.q = q;
  m.perm.assign(static_cast<std::size_t>(n), -1);
  m.diag.assign(static_cast<std::size_t>(n), 0);
  for (int t = 0; t < n; ++t) {
    m.perm[static_cast<std::size_t>(act.pi[static_cast<std::size_t>(t)])] = t;
    m.diag[static_cast<std::size_t>(t)] = mod_q(-act.shift[static_cast<std::size_t>(t)], q);
  }
  m.validate();
  return m;
}

}  // namespace

DecodedAutomorphism decode_digraph_perm(const Digraph& g, const ButsonMatrix& h, const VertexPerm& f) {
  if (h.order() != g.n || h.modulus() != g.q) throw InvalidArgument("matrix does not match the digraph");
  if (!is_bijection(f, g.vertex_count())) throw InvalidArgument("not a permutation of the vertex set");
  const int block = g.n * g.q;
  DecodedAutomorphism d{to_monomial(decode_block(g, f, 0), g.q), to_monomial(decode_block(g, f, block), g.q)};
  if (g.strong_k) {
    const BlockAction mid = decode_block(g, f, 2 * block);
    if (!(to_monomial(mid, g.q) == d.q)) throw InvalidArgument("middle vertices do not follow the columns");
    if (!(d.p == d.q.multiplier(*g.strong_k))) throw InvalidArgument("row action is not mu_k of the column action");
    if (!is_strong(h, d.q, *g.strong_k)) throw InvalidArgument("decoded monomial is not in the strong group");
  } else if (!is_automorphism(h, d.p, d.q)) {
    throw InvalidArgument("decoded pair is not an automorphism");
  }
  return d;
}

VertexPerm encode_monomial_pair(const Digraph& g, const MonomialMatrix& p, const MonomialMatrix& q) {
  if (p.size() != g.n || q.size() != g.n) throw InvalidArgument("monomial size does not match the digraph");
  VertexPerm f(static_cast<std::size_t>(g.vertex_count()));
  auto fill = [&](const MonomialMatrix& m, int offset) {
    for (int i = 0; i < g.n; ++i) {
      const int t = m.column(i);  // source block t goes to block i
      const int shift = mod_q(-m.diag[static_cast<std::size_t>(t)], g.q);
      for (int x = 0; x < g.q; ++x) f[static_cast<std::size_t>(offset + t * g.q + x)] = offset + i * g.q + mod_q(x + shift, g.q);
    }
  };
  const int block = g.n * g.q;
  fill(p, 0);
  fill(q, block);
  if (g.strong_k) fill(q, 2 * block);
  return f;
}

std::string to_dot(const Digraph& g) {
  static constexpr const char* colors[] = {"black", "gray", "blue", "red", "red"};
  std::ostringstream os;
  os << "digraph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) os << "  v" << v << " [label=\"" << g.label(v) << "\"];\n";
  for (const auto& a : g.arcs) os << "  v" << a.from << " -> v" << a.to << " [color=" << colors[static_cast<int>(a.rule)] << "];\n";
  os << "}\n";
  return os.str();
}

std::string to_dimacs(const Digraph& g) {
  std::ostringstream os;
  os << "p arc " << g.vertex_count() << ' ' << g.arcs.size() << '\n';
  os << "colors";
  for (int v = 0; v < g.vertex_count(); ++v) os << ' ' << static_cast<int>(g.kind(v));
  os << '\n';
  for (const auto& a : g.arcs) os << "a " << a.from + 1 << ' ' << a.to + 1 << '\n';
  return os.str();
}

}  // namespace bhbent
