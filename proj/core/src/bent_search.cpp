#include "bhbent/bent_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include <Eigen/SVD>

#include "bhbent/errors.hpp"
#include "bhbent/existence.hpp"

namespace bhbent {

namespace {

constexpr double kNullspaceCutoff = 1e-8;
constexpr double kRootTolerance = 1e-6;
constexpr double kClusterRadius = 1e-6;

std::string str(long long v) { return std::to_string(v); }

void require_coprime(int k, int q) {
  if (gcd_ll(k, q) != 1) throw InvalidArgument("multiplier k=" + str(k) + " is not coprime to q=" + str(q));
}

// Allocation-free verifier for the hot enumeration loops.
class BentChecker {
 public:
  BentChecker(const ButsonMatrix& h, int k)
      : h_(h), n_(h.order()), q_(h.modulus()), k_(mod_q(k, h.modulus())),
        lambda_(static_cast<std::size_t>(q_)), scratch_(static_cast<std::size_t>(q_)) {}

  // On success leaves the raw lambda coefficients in lambda().
  bool check(std::span<const int> x) {
    std::fill(lambda_.begin(), lambda_.end(), 0);
    const long long shift0 = static_cast<long long>(k_) * x[0];
    auto r0 = h_.row(0);
    for (int j = 0; j < n_; ++j) {
      ++lambda_[static_cast<std::size_t>(mod_q(r0[static_cast<std::size_t>(j)] + x[static_cast<std::size_t>(j)] - shift0, q_))];
    }
    for (int i = 1; i < n_; ++i) {
      // row_i - lambda * zeta^(k x_i), taken in the frame shifted by -k x_i.
      const long long shift = static_cast<long long>(k_) * x[static_cast<std::size_t>(i)];
      for (int r = 0; r < q_; ++r) scratch_[static_cast<std::size_t>(r)] = -lambda_[static_cast<std::size_t>(r)];
      auto ri = h_.row(i);
      for (int j = 0; j < n_; ++j) {
        ++scratch_[static_cast<std::size_t>(mod_q(ri[static_cast<std::size_t>(j)] + x[static_cast<std::size_t>(j)] - shift, q_))];
      }
      if (!is_zero_mod_cyclotomic_inplace(scratch_, q_)) return false;
    }
    return true;
  }

  CycElt lambda() const { return CycElt(q_, lambda_).canonical(); }

 private:
  const ButsonMatrix& h_;
  int n_;
  int q_;
  int k_;
  std::vector<Coeff> lambda_;
  std::vector<Coeff> scratch_;
};

std::uint64_t chunk_count_for(std::uint64_t total, const Parallelism& par) {
  const std::uint64_t wanted = std::max<std::uint64_t>(64, 16ull * std::max(1u, par.threads));
  return std::min(total, wanted);
}

}  // namespace

bool operator==(const BentSolution& a, const BentSolution& b) {
  return a.n == b.n && a.q == b.q && a.k == b.k && a.x == b.x;
}

bool operator<(const BentSolution& a, const BentSolution& b) {
  if (a.k != b.k) return a.k < b.k;
  return a.x < b.x;
}

std::optional<CycElt> verify_bent(const ButsonMatrix& h, std::span<const int> x, int k) {
  require_coprime(k, h.modulus());
  if (static_cast<int>(x.size()) != h.order()) {
    throw InvalidArgument("sequence length " + str(static_cast<long long>(x.size())) + " does not match order " + str(h.order()));
  }
  ZqVector reduced(x.begin(), x.end());
  for (auto& e : reduced) e = mod_q(e, h.modulus());
  BentChecker checker(h, k);
  if (!checker.check(reduced)) return std::nullopt;
  return checker.lambda();
}

std::vector<BentSolution> exhaustive_search(const ButsonMatrix& h, int k, const SearchOptions& options) {
  const int n = h.order();
  const int q = h.modulus();
  require_coprime(k, q);
  const auto total = checked_pow(static_cast<std::uint64_t>(q), n, options.candidate_budget);
  if (!total) {
    throw BudgetExceeded("exhaustive search over " + str(q) + "^" + str(n) + " candidates exceeds the budget of " +
                         str(static_cast<long long>(options.candidate_budget)));
  }
  const std::uint64_t chunks = chunk_count_for(*total, options.parallelism);
  std::vector<std::vector<BentSolution>> found(chunks);
  parallel_chunks(*total, options.parallelism, chunks, [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
    BentChecker checker(h, k);
    ZqVector x = decode_zq(begin, q, n);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      if (checker.check(x)) found[chunk].push_back(BentSolution{n, q, mod_q(k, q), x, checker.lambda()});
      for (int c = 0; c < n; ++c) {  // odometer, first coordinate fastest
        if (++x[static_cast<std::size_t>(c)] < q) break;
        x[static_cast<std::size_t>(c)] = 0;
      }
    }
  });
  std::vector<BentSolution> out;
  for (auto& part : found) std::move(part.begin(), part.end(), std::back_inserter(out));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CycElt> candidate_lambdas(int n, int q, std::uint64_t budget) {
  CompositionStream stream(n, q, budget);
  const CycElt target = CycElt::integer(q, n);
  std::map<std::vector<Coeff>, CycElt> distinct;
  while (auto comp = stream.next()) {
    const CycElt sum = comp->root_sum();
    if (!(sum.norm_sq() - target).is_zero()) continue;
    const CycElt c = sum.canonical();
    distinct.try_emplace(std::vector<Coeff>(c.coeffs().begin(), c.coeffs().end()), c);
  }
  std::vector<CycElt> out;
  out.reserve(distinct.size());
  for (auto& [_, v] : distinct) out.push_back(v);
  return out;
}

GreedySelection greedy_submatrix(const Eigen::MatrixXcd& basis, double tol) {
  if (basis.size() == 0 || basis.cwiseAbs().maxCoeff() == 0.0) throw InvalidArgument("greedy_submatrix: basis matrix is zero");
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(basis);
  const auto& sv = svd.singularValues();
  const double scale = sv(0);
  const double cutoff = tol * scale;
  GreedySelection sel;
  sel.rank = static_cast<int>((sv.array() > cutoff).count());

  if (basis.col(0).norm() <= cutoff) {
    sel.first_column_zero = true;
    return sel;
  }
  // Orthonormal basis of the selected columns; a column raises the rank iff
  // its residual after projection is above the cutoff.
  std::vector<Eigen::VectorXcd> ortho;
  auto try_append = [&](int j) {
    Eigen::VectorXcd v = basis.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : ortho) v -= u * u.dot(v);
    const double norm = v.norm();
    if (norm <= cutoff) return false;
    ortho.push_back(v / norm);
    sel.columns.push_back(j);
    return true;
  };
  for (int j = 0; j < basis.cols() && static_cast<int>(sel.columns.size()) < sel.rank; ++j) try_append(j);
  return sel;
}

std::vector<CycElt> product_matrix(const ButsonMatrix& h, int k) {
  const int n = h.order();
  const int q = h.modulus();
  require_coprime(k, q);
  const int t = multiplicative_order(k, q);
  std::vector<CycElt> prod;
  prod.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) prod.push_back(h.entry(i, j));
  long long kk = 1;
  for (int step = 1; step < t; ++step) {
    kk = kk * mod_q(k, q) % q;
    std::vector<CycElt> next(static_cast<std::size_t>(n) * n, CycElt(q));
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        const long long shift = kk * h(a, c);
        for (int b = 0; b < n; ++b) {
          const CycElt& src = prod[static_cast<std::size_t>(c) * n + b];
          CycElt& dst = next[static_cast<std::size_t>(a) * n + b];
          for (int r = 0; r < q; ++r) {
            const Coeff v = src[r];
            if (v != 0) dst.add_root(r + shift, v);
          }
        }
      }
    }
    prod = std::move(next);
  }
  return prod;
}

namespace {

struct PendingTarget {
  std::complex<double> value;
  std::optional<CycElt> exact;
};

std::vector<PendingTarget> exact_targets(const std::vector<CycElt>& lambdas, int k, int t) {
  std::map<std::vector<Coeff>, CycElt> distinct;
  for (const auto& lambda : lambdas) {
    CycElt big = lambda;
    long long kk = 1;
    for (int i = 1; i < t; ++i) {
      kk = kk * k % lambda.modulus();
      big = big * lambda.multiplier(kk);
    }
    const CycElt c = big.canonical();
    distinct.try_emplace(std::vector<Coeff>(c.coeffs().begin(), c.coeffs().end()), c);
  }
  std::vector<PendingTarget> out;
  for (auto& [_, v] : distinct) out.push_back(PendingTarget{v.embed(), v});
  return out;
}

std::vector<PendingTarget> float_targets(const Eigen::MatrixXcd& m) {
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<std::complex<double>> values(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(values.begin(), values.end(), [](auto a, auto b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  std::vector<std::vector<std::complex<double>>> clusters;
  for (const auto& v : values) {
    bool placed = false;
    for (auto& cl : clusters) {
      if (std::abs(cl.front() - v) <= kClusterRadius * std::max(1.0, std::abs(v))) {
        cl.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({v});
  }
  std::vector<PendingTarget> out;
  for (const auto& cl : clusters) {
    std::complex<double> mean{0.0, 0.0};
    for (const auto& v : cl) mean += v;
    out.push_back(PendingTarget{mean / static_cast<double>(cl.size()), std::nullopt});
  }
  return out;
}

}  // namespace

EigenSearchReport eigenspace_search_report(const ButsonMatrix& h, int k, const SearchOptions& options) {
  const int n = h.order();
  const int q = h.modulus();
  require_coprime(k, q);
  k = mod_q(k, q);

  EigenSearchReport report;
  report.product_length = multiplicative_order(k, q);

  const std::vector<CycElt> exact_product = product_matrix(h, k);
  Eigen::MatrixXcd product(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) product(i, j) = exact_product[static_cast<std::size_t>(i) * n + j].embed();

  std::vector<PendingTarget> targets;
  try {
    targets = exact_targets(candidate_lambdas(n, q, options.composition_budget), k, report.product_length);
  } catch (const BudgetExceeded&) {
    report.float_targets = true;
    targets = float_targets(product);
  }

  std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
  for (int e = 0; e < q; ++e) roots[static_cast<std::size_t>(e)] = std::polar(1.0, 2.0 * std::numbers::pi * e / q);

  std::set<BentSolution> solutions;
  for (const auto& target : targets) {
    EigenTarget diag;
    diag.value = target.value;
    diag.exact = target.exact;

    const Eigen::MatrixXcd shifted = product - target.value * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = kNullspaceCutoff * std::max(sv(0), 1.0);
    int dim = 0;
    for (int i = 0; i < sv.size(); ++i) dim += sv(i) <= cutoff ? 1 : 0;
    diag.dimension = dim;
    if (dim == 0) {
      report.targets.push_back(diag);
      continue;
    }
    // Rows of `basis` span the eigenspace.
    const Eigen::MatrixXcd basis = svd.matrixV().rightCols(dim).transpose();
    const GreedySelection sel = greedy_submatrix(basis, kNullspaceCutoff);
    if (sel.first_column_zero) {
      diag.first_column_zero = true;
      report.targets.push_back(diag);
      continue;
    }
    const auto patterns = checked_pow(static_cast<std::uint64_t>(q), dim, options.candidate_budget);
    if (!patterns) {
      throw BudgetExceeded("eigenspace of dimension " + str(dim) + " needs " + str(q) + "^" + str(dim) +
                           " patterns, above the budget of " + str(static_cast<long long>(options.candidate_budget)));
    }
    diag.patterns = *patterns;

    Eigen::MatrixXcd sub(dim, dim);
    for (int c = 0; c < dim; ++c) sub.col(c) = basis.col(sel.columns[static_cast<std::size_t>(c)]);
    // X = Z * sub^{-1} * basis for the pattern row vector Z.
    const Eigen::MatrixXcd completion = sub.fullPivLu().solve(basis);

    // table[(r * q + e)] = zeta^e * completion.row(r)
    std::vector<Eigen::RowVectorXcd> table(static_cast<std::size_t>(dim) * q);
    for (int r = 0; r < dim; ++r)
      for (int e = 0; e < q; ++e) table[static_cast<std::size_t>(r) * q + e] = roots[static_cast<std::size_t>(e)] * completion.row(r);

    const std::uint64_t chunks = chunk_count_for(*patterns, options.parallelism);
    std::vector<std::vector<BentSolution>> found(chunks);
    std::vector<std::size_t> survivors(chunks, 0);
    parallel_chunks(*patterns, options.parallelism, chunks, [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
      BentChecker checker(h, k);
      ZqVector z = decode_zq(begin, q, dim);
      ZqVector x(static_cast<std::size_t>(n));
      Eigen::RowVectorXcd row(n);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        row = table[static_cast<std::size_t>(z[0])];
        for (int r = 1; r < dim; ++r) row += table[static_cast<std::size_t>(r) * q + z[static_cast<std::size_t>(r)]];
        bool on_roots = true;
        for (int j = 0; j < n && on_roots; ++j) {
          const std::complex<double> v = row(j);
          const int e = mod_q(std::llround(q * std::arg(v) / (2.0 * std::numbers::pi)), q);
          if (std::abs(v - roots[static_cast<std::size_t>(e)]) > kRootTolerance) on_roots = false;
          x[static_cast<std::size_t>(j)] = e;
        }
        if (on_roots) {
          ++survivors[chunk];
          if (checker.check(x)) found[chunk].push_back(BentSolution{n, q, k, x, checker.lambda()});
        }
        for (int c = 0; c < dim; ++c) {
          if (++z[static_cast<std::size_t>(c)] < q) break;
          z[static_cast<std::size_t>(c)] = 0;
        }
      }
    });
    for (std::uint64_t c = 0; c < chunks; ++c) {
      diag.survivors += survivors[c];
      for (auto& s : found[c]) solutions.insert(std::move(s));
    }
    report.targets.push_back(diag);
  }
  report.solutions.assign(solutions.begin(), solutions.end());
  return report;
}

std::vector<BentSolution> eigenspace_search(const ButsonMatrix& h, int k, const SearchOptions& options) {
  return eigenspace_search_report(h, k, options).solutions;
}

Census census(const std::vector<BentSolution>& solutions, int n, int q, int k) {
  Census out{n, q, mod_q(k, q), {}, 0};
  std::map<std::vector<Coeff>, CensusRow> groups;
  for (const auto& s : solutions) {
    if (s.n != n || s.q != q || s.k != out.k) throw InvalidArgument("census: solution parameters do not match");
    const CycElt c = s.lambda.canonical();
    auto [it, inserted] = groups.try_emplace(std::vector<Coeff>(c.coeffs().begin(), c.coeffs().end()), CensusRow{c, 0});
    ++it->second.count;
  }
  for (auto& [_, row] : groups) {
    out.total += row.count;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::pair<ButsonMatrix, ZqVector> bent_to_selfdual(const ButsonMatrix& h, std::span<const int> x, std::span<const int> y) {
  const int n = h.order();
  const int q = h.modulus();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) throw InvalidArgument("bent_to_selfdual: length mismatch");
  // lambda from the first coordinate, then H zeta^x = lambda zeta^y row by row.
  CycElt lambda(q);
  for (int j = 0; j < n; ++j) lambda.add_root(static_cast<long long>(h(0, j)) + x[static_cast<std::size_t>(j)] - y[0]);
  for (int i = 1; i < n; ++i) {
    CycElt row(q);
    for (int j = 0; j < n; ++j) row.add_root(static_cast<long long>(h(i, j)) + x[static_cast<std::size_t>(j)]);
    if (!(row == lambda.shifted(y[static_cast<std::size_t>(i)]))) {
      throw InvalidArgument("bent_to_selfdual: H zeta^x is not a multiple of zeta^y");
    }
  }
  std::vector<int> log(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      log[static_cast<std::size_t>(i) * n + j] =
          mod_q(static_cast<long long>(h(i, j)) + x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)], q);
  ZqVector yy(y.begin(), y.end());
  for (auto& e : yy) e = mod_q(e, q);
  return {ButsonMatrix(n, q, std::move(log)), yy};
}

}  // namespace bhbent
