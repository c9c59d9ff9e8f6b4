#pragma once

// Designed self-dual bent sequences: constant vectors on regular matrices,
// blockwise-constant vectors on Bush-type matrices, Kronecker products, and
// the Maiorana-McFarland type functions f(x1, x2) = x1 . phi(x2) (plain, on
// the Fourier matrix) and x1 . phi(x2) - x1 . x2 (shifted, on the
// group-invariant matrix).

#include <set>
#include <utility>
#include <vector>

#include "bhbent/bent_search.hpp"
#include "bhbent/butson.hpp"
#include "bhbent/parallel.hpp"

namespace bhbent {

enum class MMVariant { plain, shifted };

struct MMSpec {
  int q = 2;
  int m = 1;
  std::vector<int> phi;  // images of phi on Z_q^m, indexed by encode_zq
  MMVariant variant = MMVariant::plain;
  int k = 1;

  /// Throws InvalidArgument when phi is not a permutation of Z_q^m, k is not
  /// a unit, or the shifted f vanishes identically.
  void validate() const;
};

/// phi(x) = d x on Z_q^m.
std::vector<int> dilation_table(int q, int m, int d);
MMSpec dilation_spec(int q, int m, int d, MMVariant variant, int k);

/// u * 1 with lambda the common row sum. Throws InvalidArgument when H is not regular.
BentSolution regular_bent(const ButsonMatrix& h, int u);

/// (u_1 1, ..., u_b 1) with trivial multiplier. Throws InvalidArgument
/// when H is not Bush-type for `block` or u has the wrong length.
BentSolution bush_bent(const ButsonMatrix& h, int block, std::span<const int> u);

/// X (x) Y with lambda_a * lambda_b. Throws on a q or k mismatch.
BentSolution kronecker_bent(const BentSolution& a, const BentSolution& b);

struct MMCandidate {
  ButsonMatrix matrix;
  BentSolution candidate;  // lambda set to q^m; not verified
};

/// Matrix of order q^(2m) and the exponent vector of f, x1 in the low m
/// coordinates of the row index.
MMCandidate mm_sequence(const MMSpec& spec);

/// Exhaustive check of the algebraic identity behind the construction.
bool check_mm_condition(const MMSpec& spec, const Parallelism& par = {});

struct DilationSets {
  std::set<int> plain;    // { -d^-2 }
  std::set<int> shifted;  // { d^-1 : d != 1 }
};

DilationSets dilation_k_sets(int q);

}  // namespace bhbent
