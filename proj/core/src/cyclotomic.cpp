#include "bhbent/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "bhbent/errors.hpp"

namespace bhbent {

namespace {

// Exact division of `num` by the monic polynomial `den`; the remainder must vanish.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const Coeff c = num[i];
    if (c == 0) continue;
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

IntPoly compute_cyclotomic(int q) {
  IntPoly p(static_cast<std::size_t>(q) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(q)] = 1;
  for (int d = 1; d < q; ++d) {
    if (q % d == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(d));
  }
  return p;
}

}  // namespace

const IntPoly& cyclotomic_polynomial(int q) {
  if (q < 1) throw InvalidArgument("cyclotomic modulus must be >= 1, got " + std::to_string(q));
  static std::mutex mutex;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  // Computed outside the lock: the recursion re-enters for the divisors.
  IntPoly p = compute_cyclotomic(q);
  std::lock_guard lock(mutex);
  return cache.try_emplace(q, std::move(p)).first->second;
}

int euler_phi(int q) { return static_cast<int>(cyclotomic_polynomial(q).size()) - 1; }

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int inverse_mod(long long a, int q) {
  const int r = mod_q(a, q);
  if (gcd_ll(r, q) != 1) throw InvalidArgument(std::to_string(a) + " is not invertible modulo " + std::to_string(q));
  for (int x = 0; x < q; ++x) {
    if (static_cast<long long>(r) * x % q == 1 % q) return x;
  }
  return 0;  // unreachable
}

int multiplicative_order(long long k, int q) {
  if (gcd_ll(k, q) != 1) throw InvalidArgument("multiplier " + std::to_string(k) + " is not coprime to " + std::to_string(q));
  const int base = mod_q(k, q);
  int t = 1;
  long long acc = base;
  while (mod_q(acc, q) != 1 % q) {
    acc = acc * base % q;
    ++t;
  }
  return t;
}

bool is_zero_mod_cyclotomic(std::span<const Coeff> coeffs, int q) {
  std::vector<Coeff> r(coeffs.begin(), coeffs.end());
  return is_zero_mod_cyclotomic_inplace(r, q);
}

bool is_zero_mod_cyclotomic_inplace(std::span<Coeff> r, int q) {
  const IntPoly& phi = cyclotomic_polynomial(q);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = r.size(); i-- > deg;) {
    const Coeff c = r[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi[j];
  }
  return std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(deg), [](Coeff c) { return c == 0; });
}

CycElt::CycElt(int q) : q_(q), coeffs_(static_cast<std::size_t>(q), 0) {
  if (q < 1) throw InvalidArgument("cyclotomic modulus must be >= 1");
}

CycElt::CycElt(int q, std::vector<Coeff> coeffs) : q_(q), coeffs_(std::move(coeffs)) {
  if (q < 1) throw InvalidArgument("cyclotomic modulus must be >= 1");
  if (coeffs_.size() != static_cast<std::size_t>(q)) {
    throw InvalidArgument("coefficient vector has length " + std::to_string(coeffs_.size()) + ", expected " +
                          std::to_string(q));
  }
}

CycElt CycElt::root(int q, long long r) {
  CycElt z(q);
  z.add_root(r);
  return z;
}

CycElt CycElt::integer(int q, Coeff m) {
  CycElt z(q);
  z.coeffs_[0] = m;
  return z;
}

void CycElt::require_same_modulus(const CycElt& other) const {
  if (q_ != other.q_) {
    throw InvalidArgument("modulus mismatch: " + std::to_string(q_) + " vs " + std::to_string(other.q_));
  }
}

CycElt CycElt::canonical() const {
  const IntPoly& phi = cyclotomic_polynomial(q_);
  const std::size_t deg = phi.size() - 1;
  CycElt r = *this;
  auto& c = r.coeffs_;
  for (std::size_t i = c.size(); i-- > deg;) {
    const Coeff lead = c[i];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) c[i - deg + j] -= lead * phi[j];
  }
  return r;
}

bool CycElt::is_zero() const { return is_zero_mod_cyclotomic(coeffs_, q_); }

std::optional<Coeff> CycElt::as_integer() const {
  const CycElt c = canonical();
  for (std::size_t i = 1; i < c.coeffs_.size(); ++i) {
    if (c.coeffs_[i] != 0) return std::nullopt;
  }
  return c.coeffs_[0];
}

std::complex<double> CycElt::embed() const {
  std::complex<double> sum{0.0, 0.0};
  for (int r = 0; r < q_; ++r) {
    const Coeff c = coeffs_[static_cast<std::size_t>(r)];
    if (c == 0) continue;
    const double angle = 2.0 * std::numbers::pi * r / q_;
    sum += static_cast<double>(c) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

CycElt CycElt::multiplier(long long k) const {
  if (gcd_ll(k, q_) != 1) {
    throw InvalidArgument("multiplier " + std::to_string(k) + " is not coprime to " + std::to_string(q_));
  }
  CycElt r(q_);
  const int kk = mod_q(k, q_);
  for (int i = 0; i < q_; ++i) {
    r.coeffs_[static_cast<std::size_t>(static_cast<long long>(kk) * i % q_)] += coeffs_[static_cast<std::size_t>(i)];
  }
  return r;
}

CycElt CycElt::norm_sq() const { return *this * conj(); }

CycElt CycElt::shifted(long long r) const {
  CycElt out(q_);
  const int s = mod_q(r, q_);
  for (int i = 0; i < q_; ++i) out.coeffs_[static_cast<std::size_t>((i + s) % q_)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

CycElt& CycElt::operator+=(const CycElt& other) {
  require_same_modulus(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycElt& CycElt::operator-=(const CycElt& other) {
  require_same_modulus(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CycElt& CycElt::operator*=(const CycElt& other) { return *this = *this * other; }

CycElt operator*(const CycElt& a, const CycElt& b) {
  a.require_same_modulus(b);
  const int q = a.q_;
  CycElt r(q);
  for (int i = 0; i < q; ++i) {
    const Coeff ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 0; j < q; ++j) {
      r.coeffs_[static_cast<std::size_t>((i + j) % q)] += ai * b.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return r;
}

CycElt operator-(const CycElt& a) {
  CycElt r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const CycElt& a, const CycElt& b) {
  if (a.q_ != b.q_) return false;
  return (a - b).is_zero();
}

bool canonical_less(const CycElt& a, const CycElt& b) {
  if (a.modulus() != b.modulus()) return a.modulus() < b.modulus();
  const CycElt ca = a.canonical();
  const CycElt cb = b.canonical();
  return std::lexicographical_compare(ca.coeffs().begin(), ca.coeffs().end(), cb.coeffs().begin(), cb.coeffs().end());
}

CycElt reduce_canonical(const CycElt& z) { return z.canonical(); }

CycElt arith(const CycElt& a, const CycElt& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::neg:
      return -a;
  }
  return a;
}

CycElt apply_multiplier(const CycElt& z, long long k) { return z.multiplier(k); }

}  // namespace bhbent
