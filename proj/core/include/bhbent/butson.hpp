#pragma once

// Butson Hadamard matrices in logarithmic form.
//
// A ButsonMatrix stores the exponent matrix L with H[i][j] = zeta_q^L[i][j].
// Vectors over Z_q^r (used to index Fourier and group-invariant matrices)
// are encoded as integers with the first coordinate least significant:
// (x_1, ..., x_r) <-> x_1 + x_2 q + ... + x_r q^(r-1).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bhbent/cyclotomic.hpp"
#include "bhbent/parallel.hpp"

namespace bhbent {

/// Exponent vector in Z_q^n; X = (zeta^x_1, ..., zeta^x_n).
using ZqVector = std::vector<int>;

class ButsonMatrix {
 public:
  /// `log_entries` is row-major n*n; every entry must lie in [0, q).
  ButsonMatrix(int n, int q, std::vector<int> log_entries);
  static ButsonMatrix from_rows(int q, const std::vector<std::vector<int>>& rows);

  int order() const { return n_; }
  int modulus() const { return q_; }
  int operator()(int i, int j) const { return log_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const int> row(int i) const {
    return {log_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<int>& log_entries() const { return log_; }
  CycElt entry(int i, int j) const { return CycElt::root(q_, (*this)(i, j)); }

  ButsonMatrix transposed() const;

  friend bool operator==(const ButsonMatrix&, const ButsonMatrix&) = default;

 private:
  int n_;
  int q_;
  std::vector<int> log_;
};

/// A set of words of Z_q^n (F_H or C_H).
struct ZqCode {
  int q = 0;
  int n = 0;
  std::vector<ZqVector> words;
};

/// M = P * D with P a permutation matrix and D diagonal over Omega_q.
///
/// Row i of M has its single nonzero entry in column perm[i], with value
/// zeta^diag[perm[i]]; equivalently (M x)_i = zeta^diag[perm[i]] x_perm[i].
/// The diagonal is thus indexed by the source coordinate.
struct MonomialMatrix {
  int q = 1;
  std::vector<int> perm;
  std::vector<int> diag;

  static MonomialMatrix identity(int n, int q);
  static MonomialMatrix scalar(int n, int q, int exponent);
  static MonomialMatrix permutation(int q, std::vector<int> perm);

  int size() const { return static_cast<int>(perm.size()); }
  /// Column of the nonzero entry in row i and its exponent.
  int column(int i) const { return perm[static_cast<std::size_t>(i)]; }
  int exponent(int i) const { return diag[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]; }

  /// Exponents of M X for X = zeta^x.
  ZqVector apply(std::span<const int> x) const;
  /// Entrywise Galois multiplier.
  MonomialMatrix multiplier(long long k) const;
  /// Conjugate transpose (= inverse).
  MonomialMatrix adjoint() const;

  friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b);
  friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;

  void validate() const;
};

/// M * H.
ButsonMatrix left_multiply(const MonomialMatrix& m, const ButsonMatrix& h);
/// H * M.
ButsonMatrix right_multiply(const ButsonMatrix& h, const MonomialMatrix& m);
/// P H Q for monomial P, Q (the equivalence action with Q = P_2 D_2).
ButsonMatrix transform(const MonomialMatrix& p, const ButsonMatrix& h, const MonomialMatrix& q);

/// Exact check of H H* = n I over Z[zeta_q].
bool verify_butson(const ButsonMatrix& m, const Parallelism& par = {});

/// Equivalent matrix with all-zero first row and column.
ButsonMatrix dephase(const ButsonMatrix& m);

/// Monomial pair (P, Q) with P M Q = dephase(M).
struct DephasingPair {
  MonomialMatrix left;
  MonomialMatrix right;
};
DephasingPair dephasing_pair(const ButsonMatrix& m);

bool is_dephased(const ButsonMatrix& m);

/// Rows of A (x) B are indexed i * B.order() + k.
ButsonMatrix kronecker(const ButsonMatrix& a, const ButsonMatrix& b);

/// The order-n matrix with all-zero logarithmic form; I_1 for n = 1.
ButsonMatrix ones_matrix(int n, int q);

/// H(x, y) = zeta^(x . y) over Z_q^r, order q^r.
ButsonMatrix fourier_matrix(int q, int r);

/// Group-invariant matrix of order q^(2m): entry at row (x1, x2), column
/// (y1, y2) is zeta^((x1 - y1) . (x2 - y2)); x1 occupies the m least
/// significant coordinates.
ButsonMatrix group_invariant_matrix(int q, int m);

/// Common row and column sum, when all row and column sums agree.
std::optional<CycElt> is_regular(const ButsonMatrix& m);

/// Block identity J H_ij = H_ij J = delta_ij * block * J for every block.
/// Throws InvalidArgument unless order == block^2.
bool is_bush_type(const ButsonMatrix& m, int block);

/// F_H (full = false) or C_H = union of F_H + alpha 1 (full = true). Words
/// are deduplicated and sorted lexicographically.
ZqCode build_code(const ButsonMatrix& m, bool full);

/// True if adding alpha * 1 maps the code to itself for every alpha.
bool is_translation_closed(const ZqCode& code);

/// Encode/decode vectors of Z_q^r (first coordinate least significant).
std::uint64_t encode_zq(std::span<const int> x, int q);
ZqVector decode_zq(std::uint64_t index, int q, int r);

/// Integer power with overflow check against `limit`; returns nullopt above it.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exp, std::uint64_t limit);

// Text codec:
//   line 1        "n q"
//   next n lines  n integers in [0, q)
//   lines starting with '#' are comments.
ButsonMatrix parse_matrix(std::string_view text);
ButsonMatrix read_matrix_file(const std::string& path);
std::string serialize_matrix(const ButsonMatrix& m);

}  // namespace bhbent
