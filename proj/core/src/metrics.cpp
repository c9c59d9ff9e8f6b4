#include "bhbent/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "bhbent/errors.hpp"

namespace bhbent {

namespace {

constexpr double kTol = 1e-9;

void require_same_shape(std::span<const int> u, std::span<const int> v) {
  if (u.size() != v.size()) throw InvalidArgument("vectors have different lengths");
}

std::vector<MetricValue> dedupe(std::vector<MetricValue> values) {
  std::sort(values.begin(), values.end(), [](const MetricValue& a, const MetricValue& b) { return a.value < b.value; });
  std::vector<MetricValue> out;
  for (const auto& v : values) {
    if (out.empty() || std::abs(out.back().value - v.value) > kTol) out.push_back(v);
  }
  return out;
}

}  // namespace

WeightTable WeightTable::make(int q) {
  if (q < 1) throw InvalidArgument("weight table needs q >= 1");
  WeightTable t;
  t.q = q;
  t.w.resize(static_cast<std::size_t>(q));
  t.integral = q == 1 || q == 2 || q == 3 || q == 4 || q == 6;
  for (int i = 0; i < q; ++i) t.w[static_cast<std::size_t>(i)] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * i / q);
  if (t.integral) {
    for (double x : t.w) t.w_int.push_back(std::llround(x));
    for (std::size_t i = 0; i < t.w.size(); ++i) t.w[i] = static_cast<double>(t.w_int[i]);
  }
  return t;
}

MetricValue chinese_distance(std::span<const int> u, std::span<const int> v, const WeightTable& tbl) {
  require_same_shape(u, v);
  if (tbl.integral) {
    long long s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += tbl.w_int[static_cast<std::size_t>(mod_q(static_cast<long long>(u[i]) - v[i], tbl.q))];
    return MetricValue::from_int(s);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += tbl.w[static_cast<std::size_t>(mod_q(static_cast<long long>(u[i]) - v[i], tbl.q))];
  return MetricValue::from_double(s);
}

namespace {

// Sweep shared by the integer and floating-point weight types.
template <class W>
W sweep_radius(const ZqCode& code, const std::vector<W>& w, std::uint64_t total, int free_from, const Parallelism& par) {
  const int n = code.n;
  const int q = code.q;
  const std::size_t words = code.words.size();
  // Column-major copy of the code for cache-friendly inner loops.
  std::vector<int> flat(words * static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < words; ++c)
    for (int i = 0; i < n; ++i) flat[c * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = code.words[c][static_cast<std::size_t>(i)];

  std::atomic<W> best{W{}};
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
  parallel_chunks(total, par, chunks, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    ZqVector x(static_cast<std::size_t>(n), 0);
    ZqVector tail = decode_zq(begin, q, n - free_from);
    std::copy(tail.begin(), tail.end(), x.begin() + free_from);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const W floor = best.load(std::memory_order_relaxed);
      W nearest = std::numeric_limits<W>::max();
      for (std::size_t c = 0; c < words && nearest > floor; ++c) {
        const int* word = flat.data() + c * static_cast<std::size_t>(n);
        W d{};
        for (int i = 0; i < n && d < nearest; ++i) {
          int diff = x[static_cast<std::size_t>(i)] - word[i];
          if (diff < 0) diff += q;
          d += w[static_cast<std::size_t>(diff)];
        }
        nearest = std::min(nearest, d);
      }
      if (nearest > floor) {
        W cur = best.load(std::memory_order_relaxed);
        while (nearest > cur && !best.compare_exchange_weak(cur, nearest, std::memory_order_relaxed)) {
        }
      }
      for (int c = free_from; c < n; ++c) {
        if (++x[static_cast<std::size_t>(c)] < q) break;
        x[static_cast<std::size_t>(c)] = 0;
      }
    }
  });
  return best.load();
}

}  // namespace

CoveringRadius covering_radius(const ZqCode& code, const Parallelism& par, std::uint64_t budget) {
  if (code.words.empty()) throw InvalidArgument("covering radius of an empty code");
  if (code.n < 1) throw InvalidArgument("covering radius needs n >= 1");
  CoveringRadius out;
  out.slice_reduction = is_translation_closed(code);
  const int free_from = out.slice_reduction ? 1 : 0;
  const auto total = checked_pow(static_cast<std::uint64_t>(code.q), code.n - free_from, budget);
  if (!total) throw BudgetExceeded("covering-radius sweep exceeds the budget of " + std::to_string(budget));
  out.swept = *total;
  const WeightTable tbl = WeightTable::make(code.q);
  if (tbl.integral) {
    out.value = MetricValue::from_int(sweep_radius<long long>(code, tbl.w_int, *total, free_from, par));
  } else {
    out.value = MetricValue::from_double(sweep_radius<double>(code, tbl.w, *total, free_from, par));
  }
  return out;
}

Spectrum distance_spectrum(const ButsonMatrix& m) {
  const int n = m.order();
  const int q = m.modulus();
  const WeightTable tbl = WeightTable::make(q);
  const ZqCode code = build_code(m, true);
  Spectrum out;
  std::vector<MetricValue> values;
  for (std::size_t a = 0; a < code.words.size(); ++a) {
    for (std::size_t b = a + 1; b < code.words.size(); ++b) values.push_back(chinese_distance(code.words[a], code.words[b], tbl));
  }
  out.values = dedupe(std::move(values));

  std::vector<MetricValue> formula{MetricValue::from_int(2LL * n)};
  for (int t = 1; t <= q / 2; ++t) {
    formula.push_back(tbl.integral ? MetricValue::from_int(n * tbl.w_int[static_cast<std::size_t>(t)])
                                   : MetricValue::from_double(n * tbl.w[static_cast<std::size_t>(t)]));
  }
  out.formula = dedupe(std::move(formula));
  out.contained = std::all_of(out.values.begin(), out.values.end(), [&](const MetricValue& v) {
    return std::any_of(out.formula.begin(), out.formula.end(), [&](const MetricValue& f) {
      return v.exact && f.exact ? v.integer == f.integer : std::abs(v.value - f.value) <= kTol;
    });
  });
  return out;
}

CoveringBounds covering_bounds(int n, int q, bool dephased, bool has_bent) {
  if (n < 1 || q < 1) throw InvalidArgument("bounds need n >= 1 and q >= 1");
  CoveringBounds b;
  if (has_bent) b.lower = 2.0 * n - 2.0 * std::sqrt(static_cast<double>(n));
  if (q % 2 == 0 && dephased) b.upper = 2.0 * n - std::sqrt(2.0 * n);
  return b;
}

std::optional<long long> smallest_attainable_at_least(int n, int q, double bound) {
  const WeightTable tbl = WeightTable::make(q);
  if (!tbl.integral || n < 0) return std::nullopt;
  const long long top = 4LL * n;
  // reach[s]: s is a sum of exactly `step` weights
  std::vector<char> reach(static_cast<std::size_t>(top) + 1, 0);
  reach[0] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<char> next(reach.size(), 0);
    for (std::size_t s = 0; s < reach.size(); ++s) {
      if (!reach[s]) continue;
      for (long long w : tbl.w_int) {
        if (s + static_cast<std::size_t>(w) < next.size()) next[s + static_cast<std::size_t>(w)] = 1;
      }
    }
    reach = std::move(next);
  }
  for (long long s = 0; s <= top; ++s) {
    if (reach[static_cast<std::size_t>(s)] && static_cast<double>(s) >= bound - kTol) return s;
  }
  return std::nullopt;
}

double deviation(const ZqCode& code, std::span<const int> x) {
  if (static_cast<int>(x.size()) != code.n) throw InvalidArgument("deviation: length mismatch");
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(code.q));
  for (int e = 0; e < code.q; ++e) roots[static_cast<std::size_t>(e)] = std::polar(1.0, 2.0 * std::numbers::pi * e / code.q);
  double best = 0.0;
  for (const auto& y : code.words) {
    std::complex<double> s{0.0, 0.0};
    for (int i = 0; i < code.n; ++i) {
      s += roots[static_cast<std::size_t>(mod_q(static_cast<long long>(x[static_cast<std::size_t>(i)]) - y[static_cast<std::size_t>(i)], code.q))];
    }
    best = std::max(best, std::abs(s));
  }
  return best;
}

SphericalPoints spherical_embed(const ZqCode& code) {
  SphericalPoints s;
  s.dim = 2 * code.n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(code.n));
  for (const auto& word : code.words) {
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(s.dim));
    for (int e : word) {
      const double angle = 2.0 * std::numbers::pi * e / code.q;
      p.push_back(std::cos(angle) * scale);
      p.push_back(std::sin(angle) * scale);
    }
    s.points.push_back(std::move(p));
  }
  return s;
}

double min_sq_distance(const SphericalPoints& s) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < s.points.size(); ++a) {
    for (std::size_t b = a + 1; b < s.points.size(); ++b) {
      double d = 0.0;
      for (int i = 0; i < s.dim; ++i) {
        const double t = s.points[a][static_cast<std::size_t>(i)] - s.points[b][static_cast<std::size_t>(i)];
        d += t * t;
      }
      best = std::min(best, d);
    }
  }
  return best;
}

int design_strength(const SphericalPoints& s) {
  if (s.points.empty() || s.dim == 0) return 0;
  const auto d = static_cast<std::size_t>(s.dim);
  const double count = static_cast<double>(s.points.size());
  std::vector<double> centroid(d, 0.0);
  std::vector<double> moment(d * d, 0.0);
  for (const auto& p : s.points) {
    for (std::size_t i = 0; i < d; ++i) {
      centroid[i] += p[i];
      for (std::size_t j = 0; j < d; ++j) moment[i * d + j] += p[i] * p[j];
    }
  }
  for (double c : centroid)
    if (std::abs(c / count) > kTol) return 0;
  const double diag = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double expected = i == j ? diag : 0.0;
      if (std::abs(moment[i * d + j] / count - expected) > kTol) return 1;
    }
  }
  return 2;
}

bool is_antipodal(const SphericalPoints& s) {
  std::vector<bool> used(s.points.size(), false);
  for (const auto& p : s.points) {
    bool matched = false;
    for (std::size_t b = 0; b < s.points.size() && !matched; ++b) {
      if (used[b]) continue;
      bool same = true;
      for (int i = 0; i < s.dim && same; ++i) same = std::abs(p[static_cast<std::size_t>(i)] + s.points[b][static_cast<std::size_t>(i)]) <= kTol;
      if (same) {
        used[b] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return !s.points.empty();
}

std::optional<SphereBound> sphere_covering_bound(const SphericalPoints& s) {
  const int strength = design_strength(s);
  const bool antipodal = is_antipodal(s);
  const double d = s.dim;
  if (strength >= 2 && antipodal) return SphereBound{std::sqrt(2.0 * (1.0 - 1.0 / std::sqrt(d))), "antipodal 2-design"};
  if (strength >= 2) return SphereBound{std::sqrt(2.0 * (1.0 - 1.0 / d)), "2-design"};
  if (antipodal) return SphereBound{std::sqrt(2.0), "antipodal"};
  if (strength == 1) return SphereBound{std::sqrt(2.0), "1-design"};
  return std::nullopt;
}

double levenshtein_L3(int d, double s) {
  if (d < 1) throw InvalidArgument("levenshtein_L3 needs d >= 1");
  const double limit = 1.0 / (std::sqrt(d + 3.0) + 1.0);
  if (!(s >= 0.0 && s < limit)) {
    throw InvalidArgument("s=" + std::to_string(s) + " is outside [0, " + std::to_string(limit) + ")");
  }
  return d * (2.0 + (d + 1.0) * s) * (1.0 - s) / (1.0 - d * s * s);
}

}  // namespace bhbent
