#pragma once

// Chinese-Euclidean geometry of the codes attached to a Butson matrix and
// of their spherical images.
//
// The weight of t in Z_q is 2 - 2 cos(2 pi t / q), the squared distance
// between zeta^t and 1. For q in {1, 2, 3, 4, 6} every weight is an integer
// and all sums are computed exactly in integers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bhbent/butson.hpp"
#include "bhbent/parallel.hpp"

namespace bhbent {

struct WeightTable {
  int q = 1;
  std::vector<double> w;
  bool integral = false;
  std::vector<long long> w_int;  // filled when integral

  static WeightTable make(int q);
};

/// A distance-like quantity; `exact` is set when it is known to be the integer `integer`.
struct MetricValue {
  double value = 0.0;
  bool exact = false;
  long long integer = 0;

  static MetricValue from_int(long long v) { return {static_cast<double>(v), true, v}; }
  static MetricValue from_double(double v) { return {v, false, 0}; }
};

MetricValue chinese_distance(std::span<const int> u, std::span<const int> v, const WeightTable& tbl);

struct CoveringRadius {
  MetricValue value;
  bool slice_reduction = false;  // x_1 = 0 sweep was used
  std::uint64_t swept = 0;       // ambient vectors examined
};

/// max_x min_{c in C} d(x, c). Throws BudgetExceeded when the sweep size
/// exceeds `budget`.
CoveringRadius covering_radius(const ZqCode& code, const Parallelism& par = {}, std::uint64_t budget = 100'000'000);

struct Spectrum {
  std::vector<MetricValue> values;   // distinct nonzero pairwise distances, ascending
  std::vector<MetricValue> formula;  // {2n} and n w[t] for t = 1 .. q/2
  bool contained = false;
};

/// Pairwise distances of C_H and the containment check against the closed form.
Spectrum distance_spectrum(const ButsonMatrix& m);

struct CoveringBounds {
  std::optional<double> lower;  // 2n - 2 sqrt(n), needs a bent sequence
  std::optional<double> upper;  // 2n - sqrt(2n), needs q even and dephased
};

CoveringBounds covering_bounds(int n, int q, bool dephased, bool has_bent);

/// Smallest sum of n weights that is >= bound (integral tables only).
std::optional<long long> smallest_attainable_at_least(int n, int q, double bound);

/// max_{y in C} |<zeta^x, zeta^y>|.
double deviation(const ZqCode& code, std::span<const int> x);

struct SphericalPoints {
  int dim = 0;
  std::vector<std::vector<double>> points;
};

/// Word y -> (cos, sin) pairs of 2 pi y_i / q, scaled by 1 / sqrt(n).
SphericalPoints spherical_embed(const ZqCode& code);

/// Smallest squared Euclidean distance between distinct points.
double min_sq_distance(const SphericalPoints& s);

/// Largest t in {1, 2} whose moment conditions hold within 1e-9, else 0.
int design_strength(const SphericalPoints& s);
bool is_antipodal(const SphericalPoints& s);

struct SphereBound {
  double value = 0.0;
  std::string hypothesis;  // "antipodal", "1-design", "2-design", "antipodal 2-design"
};

/// Smallest covering-radius bound whose hypothesis the point set meets.
std::optional<SphereBound> sphere_covering_bound(const SphericalPoints& s);

/// d (2 + (d + 1) s)(1 - s) / (1 - d s^2) for 0 <= s < 1 / (sqrt(d + 3) + 1).
/// Throws InvalidArgument outside that interval.
double levenshtein_L3(int d, double s);

}  // namespace bhbent
