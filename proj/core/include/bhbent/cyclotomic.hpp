#pragma once

// Exact arithmetic in the cyclotomic ring Z[zeta_q].
//
// Elements are stored in group-ring form: a length-q coefficient vector
// c with value sum_i c[i] * zeta^i, i.e. a polynomial in Z[x]/(x^q - 1).
// Multiplying by a root of unity or applying a Galois multiplier is then a
// cyclic index shift or permutation. The representation is not unique
// (1 + zeta + zeta^2 = 0 for q = 3); equality and the zero test go through
// `canonical()`, the remainder modulo the q-th cyclotomic polynomial.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bhbent {

using Coeff = std::int64_t;

/// Integer polynomial, lowest degree first.
using IntPoly = std::vector<Coeff>;

/// Phi_q, computed once per q by dividing x^q - 1 by Phi_d for the proper
/// divisors d of q. The returned reference stays valid for the process
/// lifetime. Thread-safe.
const IntPoly& cyclotomic_polynomial(int q);

int euler_phi(int q);

/// Reduces r into [0, q).
constexpr int mod_q(long long r, int q) {
  const long long m = r % q;
  return static_cast<int>(m < 0 ? m + q : m);
}

class CycElt {
 public:
  /// The zero of Z[zeta_1] (= Z).
  CycElt() : q_(1), coeffs_(1, 0) {}
  /// The zero of Z[zeta_q].
  explicit CycElt(int q);
  /// Requires coeffs.size() == q.
  CycElt(int q, std::vector<Coeff> coeffs);

  /// zeta_q^r.
  static CycElt root(int q, long long r);
  /// The rational integer m.
  static CycElt integer(int q, Coeff m);

  int modulus() const { return q_; }
  std::span<const Coeff> coeffs() const { return coeffs_; }
  Coeff operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  /// Adds c * zeta^r in place.
  void add_root(long long r, Coeff c = 1) { coeffs_[static_cast<std::size_t>(mod_q(r, q_))] += c; }

  /// Remainder modulo Phi_q, padded with zeros back to length q.
  CycElt canonical() const;
  bool is_zero() const;
  /// m when the canonical form is the constant m.
  std::optional<Coeff> as_integer() const;
  /// Image under zeta_q -> exp(2 pi i / q).
  std::complex<double> embed() const;

  /// Galois multiplier mu_k: zeta^i -> zeta^(k i). Requires gcd(k, q) = 1.
  CycElt multiplier(long long k) const;
  CycElt conj() const { return multiplier(q_ - 1); }
  /// z * conj(z), exact.
  CycElt norm_sq() const;
  /// z * zeta^r.
  CycElt shifted(long long r) const;

  CycElt& operator+=(const CycElt& other);
  CycElt& operator-=(const CycElt& other);
  CycElt& operator*=(const CycElt& other);

  friend CycElt operator+(CycElt a, const CycElt& b) { return a += b; }
  friend CycElt operator-(CycElt a, const CycElt& b) { return a -= b; }
  friend CycElt operator*(const CycElt& a, const CycElt& b);
  friend CycElt operator-(const CycElt& a);

  /// Equality in Z[zeta_q] (not of the stored vectors).
  friend bool operator==(const CycElt& a, const CycElt& b);

 private:
  void require_same_modulus(const CycElt& other) const;

  int q_;
  std::vector<Coeff> coeffs_;
};

/// Total order used for sorting lambdas: lexicographic on canonical coefficients.
bool canonical_less(const CycElt& a, const CycElt& b);

/// Zero test of a raw group-ring coefficient vector of length q.
bool is_zero_mod_cyclotomic(std::span<const Coeff> coeffs, int q);
/// Same test, reducing `scratch` in place (no allocation).
bool is_zero_mod_cyclotomic_inplace(std::span<Coeff> scratch, int q);

// Free-function spellings of the ring operations.

CycElt reduce_canonical(const CycElt& z);
enum class ArithOp { add, sub, mul, neg };
/// `b` is ignored for neg. Throws InvalidArgument on a modulus mismatch.
CycElt arith(const CycElt& a, const CycElt& b, ArithOp op);
CycElt apply_multiplier(const CycElt& z, long long k);
inline CycElt norm_sq(const CycElt& z) { return z.norm_sq(); }
inline std::optional<Coeff> as_integer(const CycElt& z) { return z.as_integer(); }
inline std::complex<double> embed_complex(const CycElt& z) { return z.embed(); }
inline bool is_zero(const CycElt& z) { return z.is_zero(); }

long long gcd_ll(long long a, long long b);
/// Inverse of a modulo q; requires gcd(a, q) = 1.
int inverse_mod(long long a, int q);
/// Multiplicative order of k modulo q; requires gcd(k, q) = 1.
int multiplicative_order(long long k, int q);

}  // namespace bhbent
