#pragma once

// Arithmetic exclusion test for BH(n, q) matrices with a trivial-multiplier
// self-dual bent sequence: such a matrix has an eigenvalue that is a sum of
// n q-th roots of unity with squared modulus n. Sums of n roots are indexed
// by compositions y of n into q parts (y_r = number of copies of zeta^r).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bhbent/cyclotomic.hpp"

namespace bhbent {

struct Composition {
  int n = 0;
  int q = 0;
  std::vector<int> parts;  // length q, sums to n

  /// sum_r parts[r] * zeta^r.
  CycElt root_sum() const;
};

/// C(n + q - 1, q - 1), saturating at UINT64_MAX.
std::uint64_t composition_count(int n, int q);

/// Streams the compositions of n into q parts in decreasing lexicographic
/// order: (n, 0, ..., 0) first, (0, ..., 0, n) last.
class CompositionStream {
 public:
  /// Throws BudgetExceeded when composition_count(n, q) > budget.
  CompositionStream(int n, int q, std::uint64_t budget = 10'000'000);

  std::optional<Composition> next();
  std::uint64_t size() const { return count_; }

 private:
  int n_;
  int q_;
  std::uint64_t count_;
  std::vector<int> current_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Composition> compositions(int n, int q, std::uint64_t budget = 10'000'000);

/// One distinct value of |sum_r y_r zeta^r|^2.
struct NormValue {
  bool exact = false;       // the norm is a rational integer
  Coeff integer = 0;        // valid when exact
  double approx = 0.0;      // always set
};

bool operator==(const NormValue& a, const NormValue& b);

/// Distinct norms over all compositions, ascending.
std::vector<NormValue> admissible_norms(int n, int q, std::uint64_t budget = 10'000'000);

/// True iff no composition has norm exactly n (exact cyclotomic zero test).
bool is_excluded(int n, int q, std::uint64_t budget = 10'000'000);

struct ExclusionReport {
  int n = 0;
  int q = 0;
  std::uint64_t compositions = 0;
  std::vector<NormValue> values;
  bool excluded = false;
};

ExclusionReport exclusion_report(int n, int q, std::uint64_t budget = 10'000'000);

}  // namespace bhbent
