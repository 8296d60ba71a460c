#pragma once

// Exact rational arithmetic and sparse Gauss-Jordan elimination.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ellkv/error.hpp"

namespace ellkv {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p" or "p/q" with optional leading '-'; canonicalizes.
  static Rational parse(std::string_view text);

  // "p/q", or "p" when q = 1; sign carried by the numerator.
  std::string str() const;

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  const mpq_class& value() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

using QVector = std::vector<Rational>;

// Sorted (column, value) pairs; never holds a zero value.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static QMatrix from_dense(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Rational get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add_to(std::size_t r, std::size_t c, const Rational& v);

  const SparseRow& row(std::size_t r) const { return rows_.at(r); }
  QVector dense_row(std::size_t r) const;
  void append_row(SparseRow row);
  void append_dense_row(std::span<const Rational> row);
  std::size_t nonzeros() const;

  QVector multiply(std::span<const Rational> x) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

struct RrefResult {
  QMatrix reduced;                 // rank rows, zero rows dropped
  std::vector<std::size_t> pivots; // pivot column of each row, increasing
};

RrefResult rref_with_pivots(const QMatrix& m);
QMatrix rref(const QMatrix& m);

// Linear subspace of Q^ambient_dim held as its unique RREF basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient_dim, std::string label) : label_(std::move(label)), basis_(0, ambient_dim) {}

  // Span of the given rows; the rows are reduced to RREF.
  static Subspace span(const QMatrix& rows, std::string label);

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const std::string& label() const { return label_; }
  const QMatrix& basis() const { return basis_; }
  QVector basis_vector(std::size_t i) const { return basis_.dense_row(i); }

  bool contains(std::span<const Rational> v) const;

 private:
  std::string label_;
  QMatrix basis_;
};

Subspace kernel_basis(const QMatrix& m, std::string label = {});

// Throws DimensionMismatch when the ambient dims or labels differ.
bool subspaces_equal(const Subspace& s1, const Subspace& s2);

// K with lhs = K * rhs, or nullopt. K = 0 when lhs is zero (including the
// both-zero case). Throws LengthMismatch.
std::optional<Rational> proportionality_factor(std::span<const Rational> lhs,
                                               std::span<const Rational> rhs);

// One solution of a * x = b with free variables set to zero.
std::optional<QVector> solve(const QMatrix& a, std::span<const Rational> b);

// Restricts every basis vector to its first `keep` coordinates and re-spans.
Subspace project_prefix(const Subspace& s, std::size_t keep, std::string label);

}  // namespace ellkv
