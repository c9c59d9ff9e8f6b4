#include "bhbent/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "bhbent/errors.hpp"

namespace bhbent {

namespace {

int dot(std::span<const int> a, std::span<const int> b, int q) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
  return mod_q(s, q);
}

std::uint64_t domain_size(int q, int m) {
  const auto size = checked_pow(static_cast<std::uint64_t>(q), m, 1u << 14);
  if (!size) throw InvalidArgument("Z_q^m too large for q=" + std::to_string(q) + ", m=" + std::to_string(m));
  return *size;
}

// f(x1, x2) for the variant, arguments given as indices into Z_q^m.
int mm_value(const MMSpec& spec, std::uint64_t i1, std::uint64_t i2) {
  const ZqVector x1 = decode_zq(i1, spec.q, spec.m);
  const ZqVector x2 = decode_zq(i2, spec.q, spec.m);
  const ZqVector p2 = decode_zq(static_cast<std::uint64_t>(spec.phi[i2]), spec.q, spec.m);
  int f = dot(x1, p2, spec.q);
  if (spec.variant == MMVariant::shifted) f = mod_q(f - dot(x1, x2, spec.q), spec.q);
  return f;
}

}  // namespace

void MMSpec::validate() const {
  if (q < 2 || m < 1) throw InvalidArgument("MMSpec needs q >= 2 and m >= 1");
  const std::uint64_t size = domain_size(q, m);
  if (phi.size() != size) {
    throw InvalidArgument("phi has " + std::to_string(phi.size()) + " images, expected " + std::to_string(size));
  }
  std::vector<bool> seen(size, false);
  for (int v : phi) {
    if (v < 0 || static_cast<std::uint64_t>(v) >= size || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("phi is not a permutation of Z_q^m");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  if (gcd_ll(k, q) != 1) throw InvalidArgument("k=" + std::to_string(k) + " is not coprime to q=" + std::to_string(q));
  if (variant == MMVariant::shifted) {
    bool nonzero = false;
    for (std::uint64_t a = 0; a < size && !nonzero; ++a)
      for (std::uint64_t b = 0; b < size && !nonzero; ++b) nonzero = mm_value(*this, a, b) != 0;
    if (!nonzero) throw InvalidArgument("shifted variant requires f to be nonzero");
  }
}

std::vector<int> dilation_table(int q, int m, int d) {
  if (gcd_ll(d, q) != 1) throw InvalidArgument("dilation d=" + std::to_string(d) + " is not a unit mod " + std::to_string(q));
  const std::uint64_t size = domain_size(q, m);
  std::vector<int> table(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    ZqVector x = decode_zq(i, q, m);
    for (auto& e : x) e = mod_q(static_cast<long long>(d) * e, q);
    table[i] = static_cast<int>(encode_zq(x, q));
  }
  return table;
}

MMSpec dilation_spec(int q, int m, int d, MMVariant variant, int k) {
  return MMSpec{q, m, dilation_table(q, m, d), variant, mod_q(k, q)};
}

BentSolution regular_bent(const ButsonMatrix& h, int u) {
  const auto sigma = is_regular(h);
  if (!sigma) throw InvalidArgument("matrix is not regular");
  const int q = h.modulus();
  return BentSolution{h.order(), q, 1, ZqVector(static_cast<std::size_t>(h.order()), mod_q(u, q)), sigma->canonical()};
}

BentSolution bush_bent(const ButsonMatrix& h, int block, std::span<const int> u) {
  if (!is_bush_type(h, block)) throw InvalidArgument("matrix is not Bush-type with block " + std::to_string(block));
  if (static_cast<int>(u.size()) != block) throw InvalidArgument("u must have length " + std::to_string(block));
  const int q = h.modulus();
  ZqVector x;
  x.reserve(static_cast<std::size_t>(h.order()));
  for (int b = 0; b < block; ++b)
    for (int j = 0; j < block; ++j) x.push_back(mod_q(u[static_cast<std::size_t>(b)], q));
  return BentSolution{h.order(), q, 1, x, CycElt::integer(q, block).canonical()};
}

BentSolution kronecker_bent(const BentSolution& a, const BentSolution& b) {
  if (a.q != b.q) throw InvalidArgument("kronecker_bent: modulus mismatch");
  if (mod_q(a.k, a.q) != mod_q(b.k, b.q)) throw InvalidArgument("kronecker_bent: multiplier mismatch");
  ZqVector x;
  x.reserve(a.x.size() * b.x.size());
  for (int xa : a.x)
    for (int xb : b.x) x.push_back(mod_q(static_cast<long long>(xa) + xb, a.q));
  return BentSolution{a.n * b.n, a.q, mod_q(a.k, a.q), std::move(x), (a.lambda * b.lambda).canonical()};
}

MMCandidate mm_sequence(const MMSpec& spec) {
  spec.validate();
  const int q = spec.q;
  const std::uint64_t size = domain_size(q, spec.m);
  ButsonMatrix h = spec.variant == MMVariant::plain ? fourier_matrix(q, 2 * spec.m) : group_invariant_matrix(q, spec.m);
  ZqVector x(static_cast<std::size_t>(size * size));
  for (std::uint64_t i2 = 0; i2 < size; ++i2)
    for (std::uint64_t i1 = 0; i1 < size; ++i1) x[i1 + i2 * size] = mm_value(spec, i1, i2);
  const int n = h.order();
  BentSolution cand{n, q, spec.k, std::move(x), CycElt::integer(q, static_cast<Coeff>(size))};
  return MMCandidate{std::move(h), std::move(cand)};
}

bool check_mm_condition(const MMSpec& spec, const Parallelism& par) {
  spec.validate();
  const int q = spec.q;
  const long long k = spec.k;
  const std::uint64_t size = domain_size(q, spec.m);
  std::vector<ZqVector> vec(size), img(size), img2(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    vec[i] = decode_zq(i, q, spec.m);
    img[i] = decode_zq(static_cast<std::uint64_t>(spec.phi[i]), q, spec.m);
    img2[i] = decode_zq(static_cast<std::uint64_t>(spec.phi[static_cast<std::size_t>(spec.phi[i])]), q, spec.m);
  }
  std::atomic<bool> holds{true};
  parallel_chunks(size, par, size, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t a = begin; a < end && holds.load(std::memory_order_relaxed); ++a) {
      for (std::uint64_t b = 0; b < size; ++b) {
        long long v = 0;
        if (spec.variant == MMVariant::plain) {
          v = dot(vec[a], vec[b], q) + k * dot(img[a], img[b], q);
        } else {
          v = k * dot(vec[a], img2[b], q) - (k + 1) * dot(vec[a], img[b], q) + dot(vec[a], vec[b], q);
        }
        if (mod_q(v, q) != 0) {
          holds.store(false, std::memory_order_relaxed);
          return;
        }
      }
    }
  });
  return holds.load();
}

DilationSets dilation_k_sets(int q) {
  if (q < 2) throw InvalidArgument("dilation sets need q >= 2");
  DilationSets sets;
  for (int d = 1; d < q; ++d) {
    if (gcd_ll(d, q) != 1) continue;
    const int inv = inverse_mod(d, q);
    sets.plain.insert(mod_q(-static_cast<long long>(inv) * inv, q));
    if (d != 1) sets.shifted.insert(inv);
  }
  return sets;
}

}  // namespace bhbent
