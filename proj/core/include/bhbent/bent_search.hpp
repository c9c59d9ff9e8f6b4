#pragma once

// Self-dual bent sequences: X in Omega_q^n with H X = lambda mu_k(X).
//
// Two search routes are provided. `exhaustive_search` sweeps all of
// Omega_q^n and is the reference. `eigenspace_search` works on the product
// matrix mu_k^(t-1)(H) ... mu_k(H) H (t the order of k mod q), whose
// eigenvectors contain every solution, enumerates root-of-unity patterns on
// a greedily chosen invertible column subset of an eigenspace basis, and
// sieves the completions through the exact verifier.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bhbent/butson.hpp"
#include "bhbent/cyclotomic.hpp"
#include "bhbent/parallel.hpp"

namespace bhbent {

struct BentSolution {
  int n = 0;
  int q = 0;
  int k = 1;
  ZqVector x;
  CycElt lambda;
};

/// Solutions compare by (k, x); lambda is a function of those.
bool operator==(const BentSolution& a, const BentSolution& b);
bool operator<(const BentSolution& a, const BentSolution& b);

/// lambda with H zeta^x = lambda mu_k(zeta^x), computed exactly from the first
/// row and checked on the rest; nullopt when x is not self-dual bent.
/// Throws InvalidArgument when gcd(k, q) != 1 or the length is wrong.
std::optional<CycElt> verify_bent(const ButsonMatrix& h, std::span<const int> x, int k);

struct SearchOptions {
  std::uint64_t candidate_budget = 100'000'000;
  std::uint64_t composition_budget = 10'000'000;
  Parallelism parallelism{};
};

/// All solutions, sorted by exponent vector.
std::vector<BentSolution> exhaustive_search(const ButsonMatrix& h, int k, const SearchOptions& options = {});

/// Distinct canonical sums of n q-th roots of unity with norm exactly n.
/// Sorted by `canonical_less`. Throws BudgetExceeded when the number of
/// compositions exceeds `budget`.
std::vector<CycElt> candidate_lambdas(int n, int q, std::uint64_t budget = 10'000'000);

struct GreedySelection {
  std::vector<int> columns;  // 0-based, increasing
  int rank = 0;
  bool first_column_zero = false;
};

/// Column subset J with |J| = rank(B) scanning left to right from column 0,
/// appending a column whenever it raises the rank. Rank decisions use the
/// tolerance `tol` relative to the largest singular value of B.
GreedySelection greedy_submatrix(const Eigen::MatrixXcd& basis, double tol = 1e-8);

/// Diagnostics for one target eigenvalue of the product matrix.
struct EigenTarget {
  std::complex<double> value;
  std::optional<CycElt> exact;  // set when the target came from candidate_lambdas
  int dimension = 0;
  bool first_column_zero = false;
  std::uint64_t patterns = 0;   // q^dimension patterns tried
  std::size_t survivors = 0;    // root-of-unity completions passed to the exact sieve
};

struct EigenSearchReport {
  int product_length = 1;  // t, the multiplicative order of k
  bool float_targets = false;
  std::vector<EigenTarget> targets;
  std::vector<BentSolution> solutions;
};

EigenSearchReport eigenspace_search_report(const ButsonMatrix& h, int k, const SearchOptions& options = {});
std::vector<BentSolution> eigenspace_search(const ButsonMatrix& h, int k, const SearchOptions& options = {});

/// mu_k^(t-1)(H) ... mu_k(H) H over Z[zeta_q]; entry (i, j) is
/// product[(i * n + j)], each a length-q group-ring vector.
std::vector<CycElt> product_matrix(const ButsonMatrix& h, int k);

struct CensusRow {
  CycElt lambda;
  std::size_t count = 0;
};

struct Census {
  int n = 0;
  int q = 0;
  int k = 1;
  std::vector<CensusRow> rows;  // sorted by canonical_less on lambda
  std::size_t total = 0;
};

/// Groups solutions by exact lambda. Solutions must share (n, q, k).
Census census(const std::vector<BentSolution>& solutions, int n, int q, int k);

/// Given H zeta^x = lambda zeta^y, returns (H D, y) with D = diag(zeta^(x - y)),
/// for which y is self-dual bent with trivial multiplier and the same lambda.
/// Throws InvalidArgument when no such lambda exists.
std::pair<ButsonMatrix, ZqVector> bent_to_selfdual(const ButsonMatrix& h, std::span<const int> x, std::span<const int> y);

}  // namespace bhbent
