#include <doctest.h>

#include <cmath>
#include <random>

#include "bhbent/cyclotomic.hpp"
#include "bhbent/errors.hpp"
#include "oracles.hpp"

using namespace bhbent;

namespace {

CycElt elt(int q, std::vector<Coeff> c) { return CycElt(q, std::move(c)); }

CycElt random_elt(std::mt19937& rng, int q) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Coeff> c(static_cast<std::size_t>(q));
  for (auto& v : c) v = d(rng);
  return CycElt(q, c);
}

std::vector<Coeff> coeffs(const CycElt& z) { return {z.coeffs().begin(), z.coeffs().end()}; }

}  // namespace

TEST_CASE("canonical reduction") {
  CHECK(coeffs(reduce_canonical(elt(4, {0, 0, 1, 0}))) == std::vector<Coeff>{-1, 0, 0, 0});
  CHECK(reduce_canonical(elt(3, {1, 1, 1})).is_zero());
  CHECK(coeffs(reduce_canonical(elt(6, {0, 0, 1, 0, 0, 0}))) == std::vector<Coeff>{-1, 1, 0, 0, 0, 0});

  std::mt19937 rng(7);
  for (int q = 1; q <= 24; ++q) {
    const CycElt z = random_elt(rng, q);
    const CycElt c = reduce_canonical(z);
    CHECK(coeffs(reduce_canonical(c)) == coeffs(c));
    for (int i = euler_phi(q); i < q; ++i) CHECK(c[i] == 0);
    CHECK(c == z);
  }
}

TEST_CASE("cyclotomic polynomials multiply back to x^q - 1") {
  for (int q = 1; q <= 60; ++q) {
    std::vector<long long> prod{1};
    for (int d = 1; d <= q; ++d)
      if (q % d == 0) {
        const auto& phi = cyclotomic_polynomial(d);
        prod = oracle::poly_mul(prod, std::vector<long long>(phi.begin(), phi.end()));
      }
    std::vector<long long> expected(static_cast<std::size_t>(q) + 1, 0);
    expected.front() = -1;
    expected.back() = 1;
    CHECK_MESSAGE(prod == expected, "q=" << q);
  }
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(7) == 6);
}

TEST_CASE("ring operations") {
  CHECK(arith(CycElt::root(4, 1), CycElt::root(4, 1), ArithOp::mul) == arith(CycElt::root(4, 0), {}, ArithOp::neg));
  const CycElt a = elt(3, {1, 2, 0});
  const CycElt b = elt(3, {1, 0, 2});
  CHECK(as_integer(a * b) == 3);
  std::mt19937 rng(11);
  for (int q : {2, 3, 5, 8, 12}) {
    const CycElt z = random_elt(rng, q);
    CHECK(is_zero(arith(z, arith(z, z, ArithOp::neg), ArithOp::add)));
  }
  CHECK_THROWS_AS(arith(CycElt::root(3, 1), CycElt::root(4, 1), ArithOp::add), InvalidArgument);
}

TEST_CASE("multipliers") {
  CHECK(coeffs(apply_multiplier(elt(4, {0, 1, 0, 0}), 3)) == std::vector<Coeff>{0, 0, 0, 1});
  CHECK(coeffs(apply_multiplier(elt(5, {1, 1, 1, 0, 0}), 2)) == std::vector<Coeff>{1, 0, 1, 0, 1});
  CHECK_THROWS_AS(apply_multiplier(elt(4, {0, 1, 0, 0}), 2), InvalidArgument);

  std::mt19937 rng(3);
  for (int q : {3, 4, 5, 7, 8, 9, 12}) {
    for (int k = 1; k < q; ++k) {
      if (gcd_ll(k, q) != 1) continue;
      const CycElt a = random_elt(rng, q);
      const CycElt b = random_elt(rng, q);
      CHECK(apply_multiplier(a * b, k) == apply_multiplier(a, k) * apply_multiplier(b, k));
      CHECK(apply_multiplier(a + b, k) == apply_multiplier(a, k) + apply_multiplier(b, k));
    }
    const CycElt z = random_elt(rng, q);
    CHECK(std::abs(apply_multiplier(z, q - 1).embed() - std::conj(z.embed())) < 1e-9);
  }
}

TEST_CASE("norms and integers") {
  CHECK(as_integer(norm_sq(elt(3, {3, 2, 1}))) == 3);
  CHECK(as_integer(norm_sq(elt(2, {3, 1}))) == 4);
  for (int q : {2, 5, 9})
    for (int r = 0; r < q; ++r) CHECK(as_integer(norm_sq(CycElt::root(q, r))) == 1);
  CHECK_FALSE(as_integer(CycElt::root(5, 1)).has_value());

  std::mt19937 rng(5);
  for (int q : {3, 4, 5, 6, 7, 8, 10, 12}) {
    for (int t = 0; t < 20; ++t) {
      const CycElt z = random_elt(rng, q);
      if (auto m = as_integer(norm_sq(z))) CHECK(std::abs(static_cast<double>(*m) - std::norm(z.embed())) < 1e-9);
    }
  }
}

TEST_CASE("complex embedding") {
  CHECK(std::abs(embed_complex(CycElt::root(4, 1)) - std::complex<double>(0, 1)) < 1e-12);
  CHECK(std::abs(embed_complex(elt(3, {1, 1, 1}))) < 1e-12);
  CHECK(std::abs(embed_complex(CycElt::root(6, 1)) - std::complex<double>(0.5, std::sqrt(3.0) / 2)) < 1e-12);
}

TEST_CASE("modular helpers") {
  CHECK(mod_q(-1, 5) == 4);
  CHECK(inverse_mod(2, 5) == 3);
  CHECK(multiplicative_order(2, 5) == 4);
  CHECK(multiplicative_order(1, 7) == 1);
  CHECK_THROWS_AS(inverse_mod(2, 4), InvalidArgument);
}
