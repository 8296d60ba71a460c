#include "ellkv/exactlin.hpp"

#include <algorithm>
#include <cctype>

namespace ellkv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ConstantTermPresent: return "ConstantTermPresent";
    case ErrorKind::MixedDepth: return "MixedDepth";
    case ErrorKind::NonHomogeneous: return "NonHomogeneous";
    case ErrorKind::NotInCSpan: return "NotInCSpan";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::NotPushInvariant: return "NotPushInvariant";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::WeightTooSmall: return "WeightTooSmall";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::PreconditionViolated, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::PreconditionViolated, "division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

// ----------------------------------------------------------------- QMatrix

QMatrix QMatrix::from_dense(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(0, cols);
  for (const auto& r : rows) m.append_dense_row(r);
  return m;
}

Rational QMatrix::get(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Rational();
}

void QMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (c >= cols_) throw Error(ErrorKind::DimensionMismatch, "column out of range");
  auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (v.is_zero()) row.erase(it);
    else it->second = v;
  } else if (!v.is_zero()) {
    row.insert(it, {c, v});
  }
}

void QMatrix::add_to(std::size_t r, std::size_t c, const Rational& v) {
  if (v.is_zero()) return;
  set(r, c, get(r, c) + v);
}

QVector QMatrix::dense_row(std::size_t r) const {
  QVector out(cols_);
  for (const auto& [c, v] : rows_.at(r)) out[c] = v;
  return out;
}

void QMatrix::append_row(SparseRow row) {
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseRow clean;
  clean.reserve(row.size());
  for (auto& e : row) {
    if (e.first >= cols_) throw Error(ErrorKind::DimensionMismatch, "column out of range");
    if (!clean.empty() && clean.back().first == e.first) {
      clean.back().second += e.second;
      if (clean.back().second.is_zero()) clean.pop_back();
    } else if (!e.second.is_zero()) {
      clean.push_back(std::move(e));
    }
  }
  rows_.push_back(std::move(clean));
}

void QMatrix::append_dense_row(std::span<const Rational> row) {
  if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "row length differs from column count");
  SparseRow s;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (!row[c].is_zero()) s.emplace_back(c, row[c]);
  }
  rows_.push_back(std::move(s));
}

std::size_t QMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

QVector QMatrix::multiply(std::span<const Rational> x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from column count");
  QVector out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    mpq_class acc;
    for (const auto& [c, v] : rows_[r]) acc += v.value() * x[c].value();
    out[r] = Rational(acc);
  }
  return out;
}

// -------------------------------------------------------------------- RREF

namespace {

// target -= factor * source, both sorted.
SparseRow axpy(const SparseRow& target, const Rational& factor, const SparseRow& source) {
  SparseRow out;
  out.reserve(target.size() + source.size());
  auto t = target.begin();
  auto s = source.begin();
  while (t != target.end() || s != source.end()) {
    if (s == source.end() || (t != target.end() && t->first < s->first)) {
      out.push_back(*t++);
    } else if (t == target.end() || s->first < t->first) {
      out.emplace_back(s->first, -(factor * s->second));
      ++s;
    } else {
      Rational v = t->second - factor * s->second;
      if (!v.is_zero()) out.emplace_back(t->first, std::move(v));
      ++t;
      ++s;
    }
  }
  return out;
}

const Rational* find_entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// Incremental Gauss-Jordan: every stored row has a unit pivot and zeros in
// all other pivot columns.
class Reducer {
 public:
  explicit Reducer(std::size_t cols) : cols_(cols) {}

  void add(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return;
    std::size_t pc = row.front().first;
    Rational inv = Rational(1) / row.front().second;
    for (auto& e : row) e.second *= inv;
    for (auto& [col, other] : rows_) {
      if (const Rational* v = find_entry(other, pc)) {
        Rational f = *v;
        other = axpy(other, f, row);
      }
    }
    rows_.emplace_back(pc, std::move(row));
  }

  SparseRow reduce(SparseRow row) const {
    // Pivot rows are fully reduced, so one ascending pass over the row's
    // pivot-column entries clears them all.
    for (const auto& [pc, prow] : sorted()) {
      if (const Rational* v = find_entry(row, pc)) {
        Rational f = *v;
        row = axpy(row, f, *prow);
      }
    }
    return row;
  }

  RrefResult result() const {
    RrefResult res{QMatrix(0, cols_), {}};
    for (const auto& [pc, prow] : sorted()) {
      res.reduced.append_row(*prow);
      res.pivots.push_back(pc);
    }
    return res;
  }

 private:
  std::vector<std::pair<std::size_t, const SparseRow*>> sorted() const {
    std::vector<std::pair<std::size_t, const SparseRow*>> v;
    v.reserve(rows_.size());
    for (const auto& [pc, r] : rows_) v.emplace_back(pc, &r);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  std::size_t cols_;
  std::vector<std::pair<std::size_t, SparseRow>> rows_;
};

}  // namespace

RrefResult rref_with_pivots(const QMatrix& m) {
  Reducer red(m.cols());
  // Sparse rows first keeps fill-in and coefficient growth down.
  std::vector<std::size_t> order(m.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });
  for (std::size_t i : order) red.add(m.row(i));
  return red.result();
}

QMatrix rref(const QMatrix& m) { return rref_with_pivots(m).reduced; }

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(const QMatrix& rows, std::string label) {
  Subspace s;
  s.label_ = std::move(label);
  s.basis_ = rref(rows);
  return s;
}

bool Subspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
  Reducer red(ambient_dim());
  for (std::size_t i = 0; i < basis_.rows(); ++i) red.add(basis_.row(i));
  SparseRow row;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!v[c].is_zero()) row.emplace_back(c, v[c]);
  }
  return red.reduce(std::move(row)).empty();
}

Subspace kernel_basis(const QMatrix& m, std::string label) {
  RrefResult r = rref_with_pivots(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  QMatrix vecs(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    SparseRow v;
    v.emplace_back(free, Rational(1));
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      if (const Rational* e = find_entry(r.reduced.row(i), free)) v.emplace_back(r.pivots[i], -*e);
    }
    vecs.append_row(std::move(v));
  }
  return Subspace::span(vecs, std::move(label));
}

bool subspaces_equal(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim() || s1.label() != s2.label()) {
    throw Error(ErrorKind::DimensionMismatch,
                "cannot compare subspaces of '" + s1.label() + "' and '" + s2.label() + "'");
  }
  return s1.basis() == s2.basis();
}

std::optional<Rational> proportionality_factor(std::span<const Rational> lhs,
                                               std::span<const Rational> rhs) {
  if (lhs.size() != rhs.size()) throw Error(ErrorKind::LengthMismatch, "proportionality of unequal lengths");
  std::optional<Rational> k;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (!rhs[i].is_zero()) {
      k = lhs[i] / rhs[i];
      break;
    }
  }
  Rational kk = k.value_or(Rational());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != kk * rhs[i]) return std::nullopt;
  }
  return kk;
}

std::optional<QVector> solve(const QMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length differs from row count");
  QMatrix aug(0, a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow row = a.row(r);
    if (!b[r].is_zero()) row.emplace_back(a.cols(), b[r]);
    aug.append_row(std::move(row));
  }
  RrefResult red = rref_with_pivots(aug);
  QVector x(a.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == a.cols()) return std::nullopt;
    x[red.pivots[i]] = red.reduced.get(i, a.cols());
  }
  return x;
}

Subspace project_prefix(const Subspace& s, std::size_t keep, std::string label) {
  QMatrix rows(0, keep);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    SparseRow r;
    for (const auto& e : s.basis().row(i)) {
      if (e.first < keep) r.push_back(e);
    }
    rows.append_row(std::move(r));
  }
  return Subspace::span(rows, std::move(label));
}

}  // namespace ellkv
