#pragma once

// Free Lie algebra on {a, b}: brackets, Lyndon bases of the bigraded pieces,
// the shuffle criterion for Lie membership, and the Lazard letters
// c_i = ad(a)^{i-1}(b).

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "ellkv/ncword.hpp"

namespace ellkv {

NCPoly bracket(const NCPoly& x, const NCPoly& y);

// A letter (leaf) or a bracket of two subtrees.
struct BracketTree {
  Letter letter = Letter::A;
  std::vector<BracketTree> children;  // empty for a leaf, else [left, right]

  bool is_leaf() const { return children.empty(); }
  NCPoly expand() const;
  std::string str() const;  // "[a,[a,b]]"
};

bool is_lyndon(const Word& w);
// Longest proper Lyndon suffix v of w = u v; w must be Lyndon of length >= 2.
std::pair<Word, Word> standard_factorization(const Word& w);
BracketTree standard_bracketing(const Word& lyndon);

// Lyndon words of length n with r letters b, in increasing lex order.
std::vector<Word> lyndon_words(std::size_t n, std::size_t r);

struct LyndonElement {
  Word word;
  BracketTree tree;
  NCPoly expansion;
};

// Cached basis of lie_{n,r}; the returned reference is stable.
const std::vector<LyndonElement>& lyndon_basis(std::size_t n, std::size_t r);

// Text naming the ordered coordinate system of lyndon_basis(n, r).
std::string lyndon_label(std::size_t n, std::size_t r);

// Coordinates of p over lyndon_basis(n, r); nullopt when p is not a Lie
// element of that bidegree.
std::optional<QVector> lyndon_coordinates(const NCPoly& p, std::size_t n, std::size_t r);
NCPoly from_lyndon_coordinates(std::span<const Rational> x, std::size_t n, std::size_t r);

// Shuffle criterion: (p | sh(u, v)) = 0 for all nonempty u, v.
// Throws NonHomogeneous for a polynomial mixing weights.
bool is_lie(const NCPoly& p);

class LieElement {
 public:
  // nullopt unless p passes is_lie.
  static std::optional<LieElement> certify(NCPoly p);

  const NCPoly& poly() const { return poly_; }
  bool certified() const { return true; }

 private:
  explicit LieElement(NCPoly p) : poly_(std::move(p)) {}
  NCPoly poly_;
};

// Monomial c_{a_1} ... c_{a_r} in the Lazard letters.
struct CWord {
  std::vector<int> indices;

  std::size_t weight() const;
  std::size_t depth() const { return indices.size(); }
  friend auto operator<=>(const CWord&, const CWord&) = default;
};

using CPoly = std::map<CWord, Rational>;

// ad(a)^{i-1}(b), i >= 1.
const NCPoly& c_letter(int i);
NCPoly c_word_expand(const CWord& cw);
NCPoly c_poly_expand(const CPoly& cp);
// All c-monomials of weight n and depth r (compositions of n into r parts).
std::vector<CWord> c_words_of(std::size_t n, std::size_t r);

// Unique expression of p in the c-monomials. Throws NotInCSpan.
CPoly to_c_alphabet(const NCPoly& p);

// [a,b]^r.
NCPoly c2_power(std::size_t r);
// Closed form of (c2_power(r) | w): (-1)^{#ba blocks} when w splits into
// blocks ab and ba, else 0. Throws WeightMismatch unless weight(w) = 2r.
Rational coeff_in_c2_power(const Word& w, std::size_t r);

}  // namespace ellkv
