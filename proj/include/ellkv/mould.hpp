#pragma once

// Polynomial-valued moulds with rational coefficients and the swap, push,
// circ and Delta operators; the dictionary between c-alphabet polynomials
// and moulds; circ-constance in cleared-denominator form.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ellkv/freelie.hpp"
#include "ellkv/ncword.hpp"

namespace ellkv {

using Exponents = std::vector<int>;

// Graded lexicographic: lower total degree first, then lex-descending
// exponent vectors within one degree (u_1 > u_2 > ...).
struct GrlexLess {
  bool operator()(const Exponents& x, const Exponents& y) const;
};

// Sparse polynomial in a fixed number of commuting variables.
class MPoly {
 public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MPoly constant(std::size_t nvars, const Rational& c);
  static MPoly variable(std::size_t nvars, std::size_t i);
  static MPoly monomial(Exponents e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Exponents& e, const Rational& c);
  Rational coeff(const Exponents& e) const;

  // Degree-d part.
  MPoly homogeneous_part(int d) const;
  std::vector<int> degrees() const;

  // P(images[0], ..., images[nvars-1]); all images share one variable count.
  MPoly substitute(const std::vector<MPoly>& images) const;
  // P(v_{perm[0]}, ..., v_{perm[n-1]}).
  MPoly rename(std::span<const std::size_t> perm) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const Rational& c);
  friend MPoly operator+(MPoly x, const MPoly& y) { return x += y; }
  friend MPoly operator-(MPoly x, const MPoly& y) { return x -= y; }
  friend MPoly operator*(const Rational& c, MPoly x) { return x *= c; }
  friend MPoly operator*(const MPoly& x, const MPoly& y);
  friend bool operator==(const MPoly& x, const MPoly& y) { return x.nvars_ == y.nvars_ && x.terms_ == y.terms_; }

  std::string str() const;

 private:
  std::size_t nvars_;
  Terms terms_;
};

// Family (A_r)_{r >= 0}; A_0 = empty_value, A_r a polynomial in r variables.
class Mould {
 public:
  Mould() = default;

  const Rational& empty_value() const { return empty_; }
  void set_empty_value(const Rational& v) { empty_ = v; }

  // Zero polynomial when the depth is unsupported.
  MPoly component(std::size_t r) const;
  void set_component(std::size_t r, MPoly p);
  void add_to_component(std::size_t r, const MPoly& p);
  const std::map<std::size_t, MPoly>& components() const { return components_; }

  bool is_zero() const { return empty_.is_zero() && components_.empty(); }

  Mould& operator+=(const Mould& o);
  Mould& operator-=(const Mould& o);
  Mould& operator*=(const Rational& c);
  friend Mould operator+(Mould x, const Mould& y) { return x += y; }
  friend Mould operator-(Mould x, const Mould& y) { return x -= y; }
  friend Mould operator*(const Rational& c, Mould x) { return x *= c; }
  friend bool operator==(const Mould&, const Mould&) = default;

 private:
  Rational empty_;
  std::map<std::size_t, MPoly> components_;  // never holds a zero polynomial
};

// c_{a_1}...c_{a_r} -> (-1)^{n+r} u_1^{a_1-1} ... u_r^{a_r-1}, n = sum a_i.
// Throws NotInCSpan.
Mould poly_to_mould(const NCPoly& p);
Mould mould_to_poly_mould(const CPoly& cp);  // same map on a c-alphabet input
NCPoly mould_to_poly(const Mould& m);

// A(v_r, v_{r-1} - v_r, ..., v_1 - v_2)
Mould swap(const Mould& m);
// A(u_2, ..., u_r, -u_1 - ... - u_r)
Mould push_mould(const Mould& m);
// A(v_r, v_1, ..., v_{r-1})
Mould circ(const Mould& m);
// (u_1 + ... + u_r) u_1 ... u_r A(u_1, ..., u_r)
Mould delta(const Mould& m);

bool is_alternal(const Mould& m);

// Reads the words ending in b straight off p:
// a^{k_0} b ... a^{k_{r-1}} b contributes v_1^{k_0} ... v_r^{k_{r-1}}.
Mould swap_of_poly(const NCPoly& p);
// Sign relating the two swap routes on a depth-r monomial of degree d
// (weight n = d + r): swap(poly_to_mould(p)) carries (-1)^{n+1} times the
// matching term of swap_of_poly(p).
int swap_route_sign(int degree, std::size_t depth);
Mould sign_normalized(const Mould& swap_of_poly_result);

struct CircWitness {
  std::size_t depth;
  Exponents exponents;  // monomial of the cleared identity where it fails
};

struct CircReport {
  enum class Status { Neutral, Constant, Fail };
  Status status = Status::Neutral;
  std::optional<Rational> k;
  std::optional<CircWitness> witness;
};

std::string_view to_string(CircReport::Status s);

// Cleared circ-sum at depth r >= 2:
// sum over rotations of S(w) w_2 ... w_{r-1} (w_r - w_1).
MPoly cleared_circ_sum(const MPoly& swap_component);
// v_1 ... v_r (v_1 - v_2) ... (v_{r-1} - v_r)(v_r - v_1).
MPoly cyclic_vandermonde(std::size_t r);

// For each depth r >= 2 with a nonzero component: does the cleared circ-sum
// equal K r v_1...v_r (v_1-v_2)...(v_r-v_1) with one K across depths? Only
// degree-(r+1) parts can carry K; all other degrees must sum to zero.
CircReport circ_constance(const Mould& swapped);

// Same test through the coefficient relations indexed by tuples
// (i_1, ..., i_r): the cleared sum read at v^{i+1}.
CircReport circ_constance_coefficientwise(const Mould& swapped);
// Left side of the relation at tuple i (length r) for the component S.
Rational circ_relation_lhs(const MPoly& swap_component, const Exponents& i);

}  // namespace ellkv
