#include <doctest.h>

#include <random>

#include "bhbent/butson.hpp"
#include "bhbent/errors.hpp"
#include "oracles.hpp"

using namespace bhbent;

namespace {

oracle::Table table(const ButsonMatrix& m) {
  oracle::Table t;
  for (int i = 0; i < m.order(); ++i) t.emplace_back(m.row(i).begin(), m.row(i).end());
  return t;
}

MonomialMatrix random_monomial(std::mt19937& rng, int n, int q) {
  MonomialMatrix m = MonomialMatrix::identity(n, q);
  std::shuffle(m.perm.begin(), m.perm.end(), rng);
  std::uniform_int_distribution<int> d(0, q - 1);
  for (auto& e : m.diag) e = d(rng);
  return m;
}

ButsonMatrix bush42() {
  return ButsonMatrix::from_rows(2, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
}

}  // namespace

TEST_CASE("fourier matrices") {
  CHECK(table(fourier_matrix(3, 1)) == oracle::Table{{0, 0, 0}, {0, 1, 2}, {0, 2, 1}});
  for (int q : {2, 3, 4, 5, 6})
    for (int r : {1, 2}) {
      const auto f = fourier_matrix(q, r);
      CHECK(table(f) == oracle::fourier(q, r));
      CHECK(verify_butson(f));
      CHECK(oracle::is_butson_float(table(f), q));
    }
  CHECK(fourier_matrix(5, 2).order() == 25);
}

TEST_CASE("verification rejects non-Hadamard matrices") {
  CHECK_FALSE(verify_butson(ones_matrix(3, 3)));
  CHECK_FALSE(verify_butson(ones_matrix(2, 2)));
  CHECK(verify_butson(ones_matrix(1, 5)));
}

TEST_CASE("group-invariant matrices") {
  const auto g2 = group_invariant_matrix(2, 1);
  CHECK(verify_butson(g2));
  const auto sigma = is_regular(g2);
  REQUIRE(sigma);
  CHECK(as_integer(*sigma) == 2);
  for (int q : {2, 3, 4, 6}) {
    const auto g = group_invariant_matrix(q, 1);
    CHECK(verify_butson(g));
    CHECK(oracle::is_butson_float(table(g), q));
  }
  std::mt19937 rng(9);
  const auto g = group_invariant_matrix(3, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const int a = static_cast<int>(rng() % 9);
    for (int x = 0; x < 9; ++x)
      for (int y = 0; y < 9; ++y) {
        auto add = [](int u, int v) {
          const ZqVector su = decode_zq(static_cast<std::uint64_t>(u), 3, 2);
          const ZqVector sv = decode_zq(static_cast<std::uint64_t>(v), 3, 2);
          return static_cast<int>(encode_zq(ZqVector{(su[0] + sv[0]) % 3, (su[1] + sv[1]) % 3}, 3));
        };
        CHECK(g(add(x, a), add(y, a)) == g(x, y));
      }
  }
}

TEST_CASE("regularity") {
  CHECK_FALSE(is_regular(fourier_matrix(2, 1)));
  const auto g = group_invariant_matrix(3, 1);
  const auto sigma = is_regular(g);
  REQUIRE(sigma);
  std::vector<int> perm{3, 1, 4, 0, 2, 5, 8, 7, 6};
  const auto permuted = left_multiply(MonomialMatrix::permutation(3, perm), g);
  const auto sigma2 = is_regular(permuted);
  REQUIRE(sigma2);
  CHECK(*sigma2 == *sigma);
}

TEST_CASE("dephasing") {
  std::mt19937 rng(1);
  for (int q : {2, 3, 4, 5}) {
    const auto f = fourier_matrix(q, 1);
    CHECK(dephase(f) == f);
    CHECK(is_dephased(f));
    const auto h = transform(random_monomial(rng, q, q), f, random_monomial(rng, q, q));
    const auto d = dephase(h);
    CHECK(is_dephased(d));
    CHECK(verify_butson(d));
    const auto pair = dephasing_pair(h);
    CHECK(transform(pair.left, h, pair.right) == d);
  }
  auto shifted = fourier_matrix(3, 1).log_entries();
  for (auto& e : shifted) e = (e + 1) % 3;
  CHECK(dephase(ButsonMatrix(3, 3, shifted)) == dephase(fourier_matrix(3, 1)));
  const auto g = dephase(group_invariant_matrix(2, 1));
  CHECK(is_dephased(g));
  CHECK(verify_butson(g));
}

TEST_CASE("equivalence preserves the Butson property") {
  std::mt19937 rng(2);
  for (int q : {2, 3, 4, 6}) {
    const auto f = fourier_matrix(q, 1);
    for (int t = 0; t < 10; ++t) CHECK(verify_butson(transform(random_monomial(rng, q, q), f, random_monomial(rng, q, q))));
    auto bad = ones_matrix(q, q);
    CHECK_FALSE(verify_butson(transform(random_monomial(rng, q, q), bad, random_monomial(rng, q, q))));
  }
}

TEST_CASE("monomial algebra") {
  std::mt19937 rng(4);
  const auto f = fourier_matrix(4, 1);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_monomial(rng, 4, 4);
    const auto b = random_monomial(rng, 4, 4);
    CHECK(left_multiply(a * b, f) == left_multiply(a, left_multiply(b, f)));
    CHECK((a * a.adjoint()) == MonomialMatrix::identity(4, 4));
    ZqVector x{1, 2, 3, 0};
    CHECK((a * b).apply(x) == a.apply(b.apply(x)));
  }
}

TEST_CASE("kronecker products") {
  const auto f2 = fourier_matrix(2, 1);
  CHECK(kronecker(f2, f2) == fourier_matrix(2, 2));
  const auto f3 = fourier_matrix(3, 1);
  CHECK(kronecker(f3, ones_matrix(1, 3)) == f3);
  const auto k33 = kronecker(f3, f3);
  CHECK(k33.order() == 9);
  CHECK(verify_butson(k33));
  CHECK_THROWS_AS(kronecker(f2, f3), InvalidArgument);
  for (int q = 2; q <= 8; ++q) {
    const auto a = fourier_matrix(q, 1);
    if (q * 2 <= 16) CHECK(verify_butson(kronecker(a, ones_matrix(1, q))));
    if (q * q <= 16) CHECK(verify_butson(kronecker(a, a)));
  }
}

TEST_CASE("bush-type block identity") {
  const auto h = bush42();
  CHECK(verify_butson(h));
  CHECK(is_bush_type(h, 2));
  CHECK_FALSE(is_bush_type(fourier_matrix(2, 2), 2));
  CHECK_THROWS_AS(is_bush_type(fourier_matrix(3, 1), 2), InvalidArgument);
  CHECK_FALSE(is_bush_type(ones_matrix(4, 2), 2));
}

TEST_CASE("codes") {
  const auto c2 = build_code(fourier_matrix(2, 1), true);
  CHECK(c2.words == std::vector<ZqVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto c4 = build_code(fourier_matrix(4, 1), true);
  CHECK(c4.words.size() == 16);
  CHECK(is_translation_closed(c4));
  CHECK(build_code(fourier_matrix(4, 1), false).words.size() == 4);
  CHECK_FALSE(is_translation_closed(build_code(fourier_matrix(4, 1), false)));
  CHECK(c4.words == oracle::full_code(table(fourier_matrix(4, 1)), 4));
}

TEST_CASE("text codec") {
  std::mt19937 rng(6);
  for (int q : {2, 3, 5}) {
    const auto h = transform(random_monomial(rng, q, q), fourier_matrix(q, 1), random_monomial(rng, q, q));
    CHECK(parse_matrix(serialize_matrix(h)) == h);
  }
  CHECK(parse_matrix("# comment\n2 2\n0 0\n# inner\n0 1\n") == fourier_matrix(2, 1));
  CHECK_THROWS_AS(parse_matrix("2\n0 0\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n0 0\n0 2\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n0 0\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2 2\n0 0\n"), ParseError);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.bh"), ParseError);
}

TEST_CASE("Z_q^r encoding") {
  for (std::uint64_t i = 0; i < 125; ++i) CHECK(encode_zq(decode_zq(i, 5, 3), 5) == i);
  CHECK(decode_zq(7, 3, 2) == ZqVector{1, 2});
  CHECK_FALSE(checked_pow(10, 9, 1000));
  CHECK(checked_pow(3, 4, 1000) == 81);
}
