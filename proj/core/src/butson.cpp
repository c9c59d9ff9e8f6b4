#include "bhbent/butson.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "bhbent/errors.hpp"

namespace bhbent {

namespace {

std::string str(long long v) { return std::to_string(v); }

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  return inv;
}

}  // namespace

ButsonMatrix::ButsonMatrix(int n, int q, std::vector<int> log_entries) : n_(n), q_(q), log_(std::move(log_entries)) {
  if (n < 1) throw InvalidArgument("matrix order must be >= 1");
  if (q < 1) throw InvalidArgument("root order must be >= 1");
  if (log_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidArgument("expected " + str(static_cast<long long>(n) * n) + " entries, got " + str(static_cast<long long>(log_.size())));
  }
  for (int e : log_) {
    if (e < 0 || e >= q) throw InvalidArgument("log entry " + str(e) + " outside [0, " + str(q) + ")");
  }
}

ButsonMatrix ButsonMatrix::from_rows(int q, const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw InvalidArgument("ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ButsonMatrix(n, q, std::move(flat));
}

ButsonMatrix ButsonMatrix::transposed() const {
  std::vector<int> t(log_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t[static_cast<std::size_t>(j) * n_ + i] = (*this)(i, j);
  return ButsonMatrix(n_, q_, std::move(t));
}

// ---------------------------------------------------------------------------
// Monomial matrices

MonomialMatrix MonomialMatrix::identity(int n, int q) {
  MonomialMatrix m;
  m.q = q;
  m.perm.resize(static_cast<std::size_t>(n));
  std::iota(m.perm.begin(), m.perm.end(), 0);
  m.diag.assign(static_cast<std::size_t>(n), 0);
  return m;
}

MonomialMatrix MonomialMatrix::scalar(int n, int q, int exponent) {
  MonomialMatrix m = identity(n, q);
  std::fill(m.diag.begin(), m.diag.end(), mod_q(exponent, q));
  return m;
}

MonomialMatrix MonomialMatrix::permutation(int q, std::vector<int> perm) {
  MonomialMatrix m;
  m.q = q;
  m.diag.assign(perm.size(), 0);
  m.perm = std::move(perm);
  m.validate();
  return m;
}

void MonomialMatrix::validate() const {
  if (perm.size() != diag.size()) throw InvalidArgument("monomial matrix: perm/diag size mismatch");
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[static_cast<std::size_t>(p)]) {
      throw InvalidArgument("monomial matrix: perm is not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }
  for (int d : diag) {
    if (d < 0 || d >= q) throw InvalidArgument("monomial matrix: diagonal exponent out of range");
  }
}

ZqVector MonomialMatrix::apply(std::span<const int> x) const {
  if (x.size() != perm.size()) throw InvalidArgument("monomial matrix: vector length mismatch");
  ZqVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto src = static_cast<std::size_t>(perm[i]);
    y[i] = mod_q(static_cast<long long>(diag[src]) + x[src], q);
  }
  return y;
}

MonomialMatrix MonomialMatrix::multiplier(long long k) const {
  if (gcd_ll(k, q) != 1) throw InvalidArgument("multiplier " + str(k) + " is not coprime to " + str(q));
  MonomialMatrix m = *this;
  for (auto& d : m.diag) d = mod_q(k * d, q);
  return m;
}

MonomialMatrix MonomialMatrix::adjoint() const {
  MonomialMatrix m;
  m.q = q;
  m.perm = inverse_permutation(perm);
  m.diag.resize(diag.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m.diag[i] = mod_q(-static_cast<long long>(diag[static_cast<std::size_t>(perm[i])]), q);
  return m;
}

MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.q != b.q || a.perm.size() != b.perm.size()) throw InvalidArgument("monomial product: shape or modulus mismatch");
  const std::size_t n = a.perm.size();
  MonomialMatrix m;
  m.q = a.q;
  m.perm.resize(n);
  m.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto mid = static_cast<std::size_t>(a.perm[i]);
    const auto src = static_cast<std::size_t>(b.perm[mid]);
    m.perm[i] = static_cast<int>(src);
    m.diag[src] = mod_q(static_cast<long long>(a.diag[mid]) + b.diag[src], a.q);
  }
  return m;
}

ButsonMatrix left_multiply(const MonomialMatrix& m, const ButsonMatrix& h) {
  return transform(m, h, MonomialMatrix::identity(h.order(), h.modulus()));
}

ButsonMatrix right_multiply(const ButsonMatrix& h, const MonomialMatrix& m) {
  return transform(MonomialMatrix::identity(h.order(), h.modulus()), h, m);
}

ButsonMatrix transform(const MonomialMatrix& p, const ButsonMatrix& h, const MonomialMatrix& q) {
  const int n = h.order();
  const int mq = h.modulus();
  if (p.size() != n || q.size() != n) throw InvalidArgument("monomial size does not match matrix order");
  if (p.q != mq || q.q != mq) throw InvalidArgument("monomial modulus does not match matrix");
  const std::vector<int> qinv = inverse_permutation(q.perm);
  std::vector<int> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const int src_row = p.column(i);
    const int row_shift = p.exponent(i);
    for (int j = 0; j < n; ++j) {
      out[static_cast<std::size_t>(i) * n + j] =
          mod_q(static_cast<long long>(row_shift) + h(src_row, qinv[static_cast<std::size_t>(j)]) + q.diag[static_cast<std::size_t>(j)], mq);
    }
  }
  return ButsonMatrix(n, mq, std::move(out));
}

// ---------------------------------------------------------------------------
// Verification and normal forms

bool verify_butson(const ButsonMatrix& m, const Parallelism& par) {
  const int n = m.order();
  const int q = m.modulus();
  std::atomic<bool> ok{true};
  parallel_chunks(static_cast<std::uint64_t>(n), par, static_cast<std::uint64_t>(n), [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    std::vector<Coeff> counts(static_cast<std::size_t>(q));
    for (auto i = static_cast<int>(begin); i < static_cast<int>(end) && ok.load(std::memory_order_relaxed); ++i) {
      const auto ri = m.row(i);
      for (int j = i + 1; j < n; ++j) {
        const auto rj = m.row(j);
        std::fill(counts.begin(), counts.end(), 0);
        for (int s = 0; s < n; ++s) ++counts[static_cast<std::size_t>(mod_q(ri[static_cast<std::size_t>(s)] - rj[static_cast<std::size_t>(s)], q))];
        if (!is_zero_mod_cyclotomic(counts, q)) {
          ok.store(false, std::memory_order_relaxed);
          return;
        }
      }
    }
  });
  return ok.load();
}

DephasingPair dephasing_pair(const ButsonMatrix& m) {
  const int n = m.order();
  const int q = m.modulus();
  DephasingPair pair{MonomialMatrix::identity(n, q), MonomialMatrix::identity(n, q)};
  for (int i = 0; i < n; ++i) pair.left.diag[static_cast<std::size_t>(i)] = mod_q(-m(i, 0), q);
  for (int j = 0; j < n; ++j) pair.right.diag[static_cast<std::size_t>(j)] = mod_q(static_cast<long long>(m(0, 0)) - m(0, j), q);
  return pair;
}

ButsonMatrix dephase(const ButsonMatrix& m) {
  const DephasingPair pair = dephasing_pair(m);
  return transform(pair.left, m, pair.right);
}

bool is_dephased(const ButsonMatrix& m) {
  for (int i = 0; i < m.order(); ++i) {
    if (m(i, 0) != 0 || m(0, i) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generators

ButsonMatrix kronecker(const ButsonMatrix& a, const ButsonMatrix& b) {
  if (a.modulus() != b.modulus()) {
    throw InvalidArgument("kronecker: modulus mismatch " + str(a.modulus()) + " vs " + str(b.modulus()));
  }
  const int na = a.order();
  const int nb = b.order();
  const int q = a.modulus();
  const int n = na * nb;
  std::vector<int> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < nb; ++k)
      for (int j = 0; j < na; ++j)
        for (int l = 0; l < nb; ++l)
          out[static_cast<std::size_t>(i * nb + k) * n + (j * nb + l)] = (a(i, j) + b(k, l)) % q;
  return ButsonMatrix(n, q, std::move(out));
}

ButsonMatrix ones_matrix(int n, int q) { return ButsonMatrix(n, q, std::vector<int>(static_cast<std::size_t>(n) * n, 0)); }

std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exp, std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && acc > limit / base) return std::nullopt;
    acc *= base;
  }
  if (acc > limit) return std::nullopt;
  return acc;
}

std::uint64_t encode_zq(std::span<const int> x, int q) {
  std::uint64_t idx = 0;
  for (std::size_t i = x.size(); i-- > 0;) idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(mod_q(x[i], q));
  return idx;
}

ZqVector decode_zq(std::uint64_t index, int q, int r) {
  ZqVector x(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    x[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return x;
}

namespace {

constexpr std::uint64_t kMaxGeneratedOrder = 1u << 14;

int generated_order(int q, int r) {
  if (q < 2) throw InvalidArgument("q must be >= 2");
  if (r < 1) throw InvalidArgument("dimension must be >= 1");
  const auto n = checked_pow(static_cast<std::uint64_t>(q), r, kMaxGeneratedOrder);
  if (!n) throw BudgetExceeded("matrix order q^r exceeds " + str(static_cast<long long>(kMaxGeneratedOrder)));
  return static_cast<int>(*n);
}

int dot_mod(std::span<const int> a, std::span<const int> b, int q) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
  return mod_q(s, q);
}

}  // namespace

ButsonMatrix fourier_matrix(int q, int r) {
  const int n = generated_order(q, r);
  std::vector<ZqVector> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coords[static_cast<std::size_t>(i)] = decode_zq(static_cast<std::uint64_t>(i), q, r);
  std::vector<int> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i) * n + j] = dot_mod(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)], q);
  return ButsonMatrix(n, q, std::move(out));
}

ButsonMatrix group_invariant_matrix(int q, int m) {
  const int n = generated_order(q, 2 * m);
  std::vector<ZqVector> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coords[static_cast<std::size_t>(i)] = decode_zq(static_cast<std::uint64_t>(i), q, 2 * m);
  std::vector<int> out(static_cast<std::size_t>(n) * n);
  ZqVector d1(static_cast<std::size_t>(m));
  ZqVector d2(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    const auto& x = coords[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const auto& y = coords[static_cast<std::size_t>(j)];
      for (int c = 0; c < m; ++c) {
        d1[static_cast<std::size_t>(c)] = x[static_cast<std::size_t>(c)] - y[static_cast<std::size_t>(c)];
        d2[static_cast<std::size_t>(c)] = x[static_cast<std::size_t>(m + c)] - y[static_cast<std::size_t>(m + c)];
      }
      out[static_cast<std::size_t>(i) * n + j] = dot_mod(d1, d2, q);
    }
  }
  return ButsonMatrix(n, q, std::move(out));
}

// ---------------------------------------------------------------------------
// Structural predicates

std::optional<CycElt> is_regular(const ButsonMatrix& m) {
  const int n = m.order();
  const int q = m.modulus();
  auto row_sum = [&](int i) {
    CycElt s(q);
    for (int j = 0; j < n; ++j) s.add_root(m(i, j));
    return s;
  };
  auto col_sum = [&](int j) {
    CycElt s(q);
    for (int i = 0; i < n; ++i) s.add_root(m(i, j));
    return s;
  };
  const CycElt sigma = row_sum(0);
  for (int i = 0; i < n; ++i) {
    if (!(row_sum(i) == sigma) || !(col_sum(i) == sigma)) return std::nullopt;
  }
  return sigma.canonical();
}

bool is_bush_type(const ButsonMatrix& m, int block) {
  if (block < 1 || static_cast<long long>(block) * block != m.order()) {
    throw InvalidArgument("is_bush_type: order " + str(m.order()) + " is not block^2 for block " + str(block));
  }
  const int q = m.modulus();
  for (int bi = 0; bi < block; ++bi) {
    for (int bj = 0; bj < block; ++bj) {
      const CycElt target = CycElt::integer(q, bi == bj ? block : 0);
      for (int t = 0; t < block; ++t) {
        CycElt row(q);
        CycElt col(q);
        for (int u = 0; u < block; ++u) {
          row.add_root(m(bi * block + t, bj * block + u));
          col.add_root(m(bi * block + u, bj * block + t));
        }
        if (!(row == target) || !(col == target)) return false;
      }
    }
  }
  return true;
}

ZqCode build_code(const ButsonMatrix& m, bool full) {
  const int n = m.order();
  const int q = m.modulus();
  std::set<ZqVector> words;
  const int shifts = full ? q : 1;
  for (int i = 0; i < n; ++i) {
    const auto r = m.row(i);
    for (int a = 0; a < shifts; ++a) {
      ZqVector w(r.begin(), r.end());
      for (auto& e : w) e = (e + a) % q;
      words.insert(std::move(w));
    }
  }
  return ZqCode{q, n, std::vector<ZqVector>(words.begin(), words.end())};
}

bool is_translation_closed(const ZqCode& code) {
  const std::set<ZqVector> words(code.words.begin(), code.words.end());
  for (const auto& w : code.words) {
    ZqVector t = w;
    for (auto& e : t) e = (e + 1) % code.q;
    if (!words.contains(t)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text codec

namespace {

std::vector<long long> parse_integers(std::string_view line, int line_no) {
  std::vector<long long> values;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
    if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
      throw ParseError("line " + str(line_no) + ": expected integers");
    }
    values.push_back(v);
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  return values;
}

}  // namespace

ButsonMatrix parse_matrix(std::string_view text) {
  std::vector<std::pair<int, std::vector<long long>>> lines;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') lines.emplace_back(line_no, parse_integers(line, line_no));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError("empty matrix file");
  const auto& header = lines.front().second;
  if (header.size() != 2) throw ParseError("line " + str(lines.front().first) + ": header must be 'n q'");
  const long long n = header[0];
  const long long q = header[1];
  if (n < 1 || q < 1 || n > (1 << 15) || q > (1 << 20)) throw ParseError("header values out of range");
  if (static_cast<long long>(lines.size()) - 1 != n) {
    throw ParseError("expected " + str(n) + " rows, found " + str(static_cast<long long>(lines.size()) - 1));
  }
  std::vector<int> entries;
  entries.reserve(static_cast<std::size_t>(n * n));
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& [ln, values] = lines[r];
    if (static_cast<long long>(values.size()) != n) {
      throw ParseError("line " + str(ln) + ": ragged row with " + str(static_cast<long long>(values.size())) + " entries");
    }
    for (long long v : values) {
      if (v < 0 || v >= q) throw ParseError("line " + str(ln) + ": entry " + str(v) + " outside [0, " + str(q) + ")");
      entries.push_back(static_cast<int>(v));
    }
  }
  return ButsonMatrix(static_cast<int>(n), static_cast<int>(q), std::move(entries));
}

ButsonMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix(buffer.str());
}

std::string serialize_matrix(const ButsonMatrix& m) {
  std::ostringstream out;
  out << m.order() << ' ' << m.modulus() << '\n';
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j < m.order(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace bhbent
