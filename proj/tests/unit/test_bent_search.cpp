#include <doctest.h>

#include <cmath>
#include <set>

#include "bhbent/bent_search.hpp"
#include "bhbent/errors.hpp"
#include "oracles.hpp"

using namespace bhbent;

namespace {

oracle::Table table(const ButsonMatrix& m) {
  oracle::Table t;
  for (int i = 0; i < m.order(); ++i) t.emplace_back(m.row(i).begin(), m.row(i).end());
  return t;
}

std::set<std::pair<int, ZqVector>> keys(const std::vector<BentSolution>& s) {
  std::set<std::pair<int, ZqVector>> out;
  for (const auto& b : s) out.emplace(b.k, b.x);
  return out;
}

std::vector<int> units(int q) {
  std::vector<int> out;
  for (int k = 1; k < std::max(q, 2); ++k)
    if (gcd_ll(k, q) == 1) out.push_back(k);
  return out;
}

// Exhaustive results against the floating-point oracle, lambda included.
void check_against_oracle(const ButsonMatrix& h, int k) {
  const auto exact = exhaustive_search(h, k);
  const auto approx = oracle::all_bent_float(table(h), h.modulus(), k);
  REQUIRE(exact.size() == approx.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(exact[i].x == approx[i].x);
    CHECK(std::abs(exact[i].lambda.embed() - approx[i].lambda) < 1e-9);
    CHECK(as_integer(norm_sq(exact[i].lambda)) == h.order());
  }
}

}  // namespace

TEST_CASE("worked example on F_3") {
  const auto f3 = fourier_matrix(3, 1);
  const ZqVector x{0, 1, 1};
  const auto lambda = verify_bent(f3, x, 2);
  REQUIRE(lambda);
  CHECK(*lambda == CycElt(3, {1, 2, 0}));
  CHECK(as_integer(norm_sq(*lambda)) == 3);
  CHECK_FALSE(verify_bent(f3, x, 1));
  CHECK_FALSE(verify_bent(f3, ZqVector{0, 0, 0}, 2));
  CHECK_THROWS_AS(verify_bent(f3, x, 3), InvalidArgument);
  CHECK_THROWS_AS(verify_bent(f3, ZqVector{0, 1}, 2), InvalidArgument);

  const auto ex = exhaustive_search(f3, 2);
  CHECK(ex.size() == 12);
  const auto eig = eigenspace_search(f3, 2);
  CHECK(keys(ex) == keys(eig));
  bool found = false;
  for (const auto& s : ex)
    if (s.x == x) {
      found = true;
      CHECK(s.lambda == *lambda);
    }
  CHECK(found);
  CHECK(exhaustive_search(f3, 1).empty());
}

TEST_CASE("exhaustive search agrees with the floating-point oracle") {
  for (int q : {2, 3, 4, 5})
    for (int k : units(q)) check_against_oracle(fourier_matrix(q, 1), k);
  check_against_oracle(fourier_matrix(2, 2), 1);
  check_against_oracle(group_invariant_matrix(2, 1), 1);
  const auto f3 = fourier_matrix(3, 1);
  check_against_oracle(kronecker(f3, f3), 1);
  check_against_oracle(kronecker(f3, f3), 2);
}

TEST_CASE("eigenspace search equals exhaustive search") {
  const auto f2 = fourier_matrix(2, 1);
  std::vector<ButsonMatrix> ms{f2, fourier_matrix(3, 1), fourier_matrix(4, 1), fourier_matrix(5, 1), kronecker(f2, f2),
                               group_invariant_matrix(2, 1), group_invariant_matrix(3, 1)};
  for (const auto& h : ms)
    for (int k : units(h.modulus())) {
      CAPTURE(h.order());
      CAPTURE(k);
      const auto a = exhaustive_search(h, k);
      const auto b = eigenspace_search(h, k);
      CHECK(keys(a) == keys(b));
      for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) CHECK(a[i].lambda == b[i].lambda);
    }
}

TEST_CASE("eigenspace search with floating-point targets") {
  SearchOptions opt;
  opt.composition_budget = 1;
  const auto h = fourier_matrix(4, 1);
  const auto report = eigenspace_search_report(h, 1, opt);
  CHECK(report.float_targets);
  CHECK(keys(report.solutions) == keys(exhaustive_search(h, 1)));
  const auto report3 = eigenspace_search_report(fourier_matrix(5, 1), 2, opt);
  CHECK(report3.product_length == 4);
  CHECK(keys(report3.solutions) == keys(exhaustive_search(fourier_matrix(5, 1), 2)));
}

TEST_CASE("results do not depend on the thread count") {
  const auto f3 = fourier_matrix(3, 1);
  const auto h = kronecker(f3, f3);
  SearchOptions one;
  SearchOptions many;
  many.parallelism.threads = 4;
  CHECK(exhaustive_search(h, 2, one) == exhaustive_search(h, 2, many));
  CHECK(eigenspace_search(h, 2, one) == eigenspace_search(h, 2, many));
}

TEST_CASE("candidate budget") {
  SearchOptions opt;
  opt.candidate_budget = 10;
  CHECK_THROWS_AS(exhaustive_search(fourier_matrix(4, 1), 1, opt), BudgetExceeded);
  CHECK_THROWS_AS(candidate_lambdas(10, 6, 5), BudgetExceeded);
}

TEST_CASE("scaling by a root of unity") {
  for (int q : {3, 4, 5}) {
    const auto h = fourier_matrix(q, 1);
    for (int k : units(q))
      for (const auto& s : exhaustive_search(h, k))
        for (int a = 1; a < q; ++a) {
          ZqVector y = s.x;
          for (auto& v : y) v = mod_q(v + a, q);
          const auto l = verify_bent(h, y, k);
          REQUIRE(l);
          CHECK(*l == s.lambda * CycElt::root(q, static_cast<long long>(a) * (1 - k)));
        }
  }
}

TEST_CASE("candidate lambdas") {
  const auto two = candidate_lambdas(4, 2);
  REQUIRE(two.size() == 2);
  CHECK(as_integer(two[0]) == -2);
  CHECK(as_integer(two[1]) == 2);
  CHECK(candidate_lambdas(6, 3).empty());
  CHECK(candidate_lambdas(2, 2).empty());
  for (const auto& l : candidate_lambdas(3, 3)) CHECK(as_integer(norm_sq(l)) == 3);
  // Every lambda seen on F_3 (k = 2) is a candidate.
  const auto cands = candidate_lambdas(3, 3);
  for (const auto& s : exhaustive_search(fourier_matrix(3, 1), 2)) {
    bool hit = false;
    for (const auto& c : cands) hit = hit || c == s.lambda;
    CHECK(hit);
  }
}

TEST_CASE("greedy column selection") {
  Eigen::MatrixXcd b(2, 3);
  b << 0, 1, 0, 0, 0, 1;
  // A zero first column means no eigenvector can be a sequence; nothing is selected.
  auto g = greedy_submatrix(b);
  CHECK(g.columns.empty());
  CHECK(g.rank == 2);
  CHECK(g.first_column_zero);
  CHECK_THROWS_AS(greedy_submatrix(Eigen::MatrixXcd::Zero(2, 2)), InvalidArgument);

  Eigen::MatrixXcd c(2, 3);
  c << 1, 2, 3, 2, 4, 6;
  g = greedy_submatrix(c);
  CHECK(g.columns == std::vector<int>{0});
  CHECK(g.rank == 1);
  CHECK_FALSE(g.first_column_zero);

  Eigen::MatrixXcd d(2, 3);
  d << 1, 1, 0, 1, 1, 1;
  g = greedy_submatrix(d);
  CHECK(g.columns == std::vector<int>{0, 2});
}

TEST_CASE("product matrix") {
  // k = 1: the product is H itself.
  const auto f3 = fourier_matrix(3, 1);
  const auto p1 = product_matrix(f3, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(p1[static_cast<std::size_t>(i * 3 + j)] == f3.entry(i, j));
  // k = 2 on F_3: conj(F) F = 3 I.
  const auto p2 = product_matrix(f3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(p2[static_cast<std::size_t>(i * 3 + j)] == CycElt::integer(3, i == j ? 3 : 0));
}

TEST_CASE("census") {
  const auto f3 = fourier_matrix(3, 1);
  const auto c = census(exhaustive_search(f3, 2), 3, 3, 2);
  CHECK(c.total == 12);
  CHECK(c.rows.size() == 6);
  std::size_t sum = 0;
  for (const auto& r : c.rows) sum += r.count;
  CHECK(sum == 12);
  for (std::size_t i = 1; i < c.rows.size(); ++i) CHECK(canonical_less(c.rows[i - 1].lambda, c.rows[i].lambda));
  const auto f2 = fourier_matrix(2, 1);
  const auto c4 = census(exhaustive_search(kronecker(f2, f2), 1), 4, 2, 1);
  REQUIRE(c4.rows.size() == 2);
  CHECK(c4.rows[0].count == 2);
  CHECK(c4.rows[1].count == 2);
  CHECK(census({}, 2, 2, 1).rows.empty());
}

TEST_CASE("bent to self-dual") {
  const auto f3 = fourier_matrix(3, 1);
  const ZqVector x{0, 1, 1};
  const ZqVector y{0, 2, 2};
  const auto [hd, yy] = bent_to_selfdual(f3, x, y);
  CHECK(yy == y);
  CHECK(verify_butson(hd));
  const auto l = verify_bent(hd, yy, 1);
  REQUIRE(l);
  CHECK(*l == CycElt(3, {1, 2, 0}));
  CHECK_THROWS_AS(bent_to_selfdual(f3, ZqVector{0, 0, 0}, ZqVector{0, 0, 0}), InvalidArgument);
}
