#include "bhbent/existence.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "bhbent/errors.hpp"

namespace bhbent {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

CycElt Composition::root_sum() const {
  std::vector<Coeff> c(parts.begin(), parts.end());
  return CycElt(q, std::move(c));
}

std::uint64_t composition_count(int n, int q) {
  if (n < 0 || q < 1) return 0;
  // C(n + q - 1, k) with k = min(n, q - 1), computed incrementally; each
  // partial product is itself a binomial coefficient so the division is exact.
  const std::uint64_t k = static_cast<std::uint64_t>(std::min(n, q - 1));
  const std::uint64_t top = static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(q) - 1;
  u128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (top - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

CompositionStream::CompositionStream(int n, int q, std::uint64_t budget) : n_(n), q_(q), count_(composition_count(n, q)) {
  if (n < 0 || q < 1) throw InvalidArgument("compositions need n >= 0 and q >= 1");
  if (count_ > budget) {
    throw BudgetExceeded(std::to_string(count_) + " compositions of " + std::to_string(n) + " into " + std::to_string(q) +
                         " parts exceed the budget of " + std::to_string(budget));
  }
  current_.assign(static_cast<std::size_t>(q), 0);
  current_[0] = n;
}

std::optional<Composition> CompositionStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return Composition{n_, q_, current_};
  }
  // Predecessor in lexicographic order: find the rightmost position p < q-1
  // with a positive entry, move one unit to p+1 and gather the tail there.
  auto& c = current_;
  int p = q_ - 2;
  while (p >= 0 && c[static_cast<std::size_t>(p)] == 0) --p;
  if (p < 0) {
    done_ = true;
    return std::nullopt;
  }
  const int tail = c[static_cast<std::size_t>(q_ - 1)];
  c[static_cast<std::size_t>(q_ - 1)] = 0;
  --c[static_cast<std::size_t>(p)];
  c[static_cast<std::size_t>(p + 1)] = tail + 1;
  return Composition{n_, q_, c};
}

std::vector<Composition> compositions(int n, int q, std::uint64_t budget) {
  CompositionStream stream(n, q, budget);
  std::vector<Composition> out;
  out.reserve(static_cast<std::size_t>(stream.size()));
  while (auto c = stream.next()) out.push_back(std::move(*c));
  return out;
}

bool operator==(const NormValue& a, const NormValue& b) {
  if (a.exact != b.exact) return false;
  return a.exact ? a.integer == b.integer : a.approx == b.approx;
}

std::vector<NormValue> admissible_norms(int n, int q, std::uint64_t budget) {
  CompositionStream stream(n, q, budget);
  std::map<Coeff, NormValue> exact;
  std::map<std::vector<Coeff>, NormValue> inexact;  // keyed by canonical form
  while (auto comp = stream.next()) {
    const CycElt norm = comp->root_sum().norm_sq().canonical();
    if (auto m = norm.as_integer()) {
      exact.try_emplace(*m, NormValue{true, *m, static_cast<double>(*m)});
    } else {
      std::vector<Coeff> key(norm.coeffs().begin(), norm.coeffs().end());
      inexact.try_emplace(std::move(key), NormValue{false, 0, norm.embed().real()});
    }
  }
  std::vector<NormValue> values;
  values.reserve(exact.size() + inexact.size());
  for (const auto& [_, v] : exact) values.push_back(v);
  for (const auto& [_, v] : inexact) values.push_back(v);
  std::stable_sort(values.begin(), values.end(), [](const NormValue& a, const NormValue& b) { return a.approx < b.approx; });
  return values;
}

bool is_excluded(int n, int q, std::uint64_t budget) {
  CompositionStream stream(n, q, budget);
  const CycElt target = CycElt::integer(q, n);
  while (auto comp = stream.next()) {
    if ((comp->root_sum().norm_sq() - target).is_zero()) return false;
  }
  return true;
}

ExclusionReport exclusion_report(int n, int q, std::uint64_t budget) {
  ExclusionReport report;
  report.n = n;
  report.q = q;
  report.compositions = composition_count(n, q);
  report.values = admissible_norms(n, q, budget);
  report.excluded = is_excluded(n, q, budget);
  return report;
}

}  // namespace bhbent
