#pragma once

// Words and noncommutative polynomials over the alphabet {a, b}, the
// letter-stripping decompositions, push/pushsym and the trace space.

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ellkv/exactlin.hpp"

namespace ellkv {

enum class Letter : std::uint8_t { A = 0, B = 1 };

// A word of at most 64 letters, one bit per letter (a = 0, b = 1), first
// letter in the most significant used bit. Ordered by (weight, depth, lex).
class Word {
 public:
  static constexpr std::size_t kMaxLength = 64;

  Word() = default;

  static Word from_string(std::string_view letters);
  static Word letter(Letter l) { return Word(static_cast<std::uint64_t>(l), 1); }
  static Word a_power(std::size_t n) { return Word(0, n); }
  // a^{e_0} b a^{e_1} b ... b a^{e_r}
  static Word from_exponents(std::span<const int> exps);
  static Word from_bits(std::uint64_t bits, std::size_t length) { return Word(bits, length); }

  std::size_t weight() const { return len_; }
  std::size_t depth() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return len_ == 0; }
  std::uint64_t bits() const { return bits_; }

  Letter at(std::size_t i) const {
    return static_cast<Letter>((bits_ >> (len_ - 1 - i)) & 1u);
  }
  Letter front() const { return at(0); }
  Letter back() const { return at(len_ - 1); }

  // (e_0, ..., e_depth) with this word = a^{e_0} b ... b a^{e_depth}.
  std::vector<int> exponents() const;

  Word drop_front(std::size_t k = 1) const;
  Word drop_back(std::size_t k = 1) const;
  // Moves the first k letters to the end.
  Word rotate(std::size_t k) const;
  Word reversed() const;

  std::string str() const;

  friend Word concat(const Word& x, const Word& y);

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
    if (auto c = x.len_ <=> y.len_; c != 0) return c;
    if (auto c = x.depth() <=> y.depth(); c != 0) return c;
    return x.bits_ <=> y.bits_;
  }

 private:
  Word(std::uint64_t bits, std::size_t len);

  std::uint64_t bits_ = 0;
  std::uint8_t len_ = 0;
};

// Lexicographic comparison with a < b, shorter prefix first.
bool lex_less(const Word& x, const Word& y);

// Finite Q-linear combination of words; zero coefficients are never stored.
class NCPoly {
 public:
  using Terms = std::map<Word, Rational>;

  NCPoly() = default;
  NCPoly(const Word& w, Rational c = Rational(1)) { add(w, std::move(c)); }  // NOLINT

  static NCPoly parse_words(std::initializer_list<std::pair<std::string_view, long>> terms);

  void add(const Word& w, const Rational& c);
  Rational coeff(const Word& w) const;
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_weight_homogeneous() const;
  bool is_depth_homogeneous() const;
  // Weight and depth of a nonzero homogeneous polynomial.
  std::optional<std::size_t> weight() const;
  std::optional<std::size_t> depth() const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const Rational& c);

  friend NCPoly operator+(NCPoly x, const NCPoly& y) { return x += y; }
  friend NCPoly operator-(NCPoly x, const NCPoly& y) { return x -= y; }
  friend NCPoly operator-(NCPoly x) { return x *= Rational(-1); }
  friend NCPoly operator*(const Rational& c, NCPoly x) { return x *= c; }
  // Concatenation product.
  friend NCPoly operator*(const NCPoly& x, const NCPoly& y);

  friend bool operator==(const NCPoly&, const NCPoly&) = default;

  std::string str() const;

 private:
  Terms terms_;
};

NCPoly concat(const NCPoly& p, const NCPoly& q);

// All interleavings of u and v, counted with multiplicity.
NCPoly shuffle(const Word& u, const Word& v);

// Inverse concatenation: p = f_a a + f_b b = a f^a + b f^b, and, for terms of
// weight >= 2, p = a f^a_a a + a f^a_b b + b f^b_a a + b f^b_b b. The upper
// index is the stripped first letter, the lower index the stripped last one.
struct Decomposition {
  NCPoly f_a, f_b;    // right factors removed
  NCPoly fa, fb;      // left factors removed (f^a, f^b)
  struct Double {
    NCPoly aa, ab, ba, bb;  // f^a_a, f^a_b, f^b_a, f^b_b
  };
  std::optional<Double> inner;  // absent when p has a weight-1 term
};

// Throws ConstantTermPresent.
Decomposition decompose(const NCPoly& p);

// Single pieces on their own, without the constant-term check: terms that do
// not start (end) with the letter are dropped.
NCPoly strip_front(const NCPoly& p, Letter first);
NCPoly strip_back(const NCPoly& p, Letter last);
NCPoly strip_both(const NCPoly& p, Letter first, Letter last);

// (e_0, ..., e_r) -> (e_r, e_0, ..., e_{r-1}); depth-0 words are fixed.
Word push_word(const Word& w);
NCPoly push(const NCPoly& p);
// Sum of push^i(p), i = 0..depth. Throws MixedDepth.
NCPoly pushsym(const NCPoly& p);
bool is_push_invariant(const NCPoly& p);

// Rotation class of a word.
class CyclicClass {
 public:
  explicit CyclicClass(const Word& w);

  // Lexicographically least rotation.
  const Word& representative() const { return members_.front(); }
  // Distinct rotations, representative first, then increasing.
  const std::vector<Word>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  std::vector<Word> starting_with(Letter l) const;  // C^a, C^b
  std::vector<Word> ending_with(Letter l) const;    // C_a, C_b

 private:
  std::vector<Word> members_;
};

CyclicClass cyclic_class(const Word& w);
Word canonical_rotation(const Word& w);

// Element of the trace space: classes keyed by their canonical representative.
class TraceVector {
 public:
  using Terms = std::map<Word, Rational>;

  void add_class(const Word& any_member, const Rational& c);
  Rational coeff(const Word& any_member) const;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TraceVector& operator+=(const TraceVector& o);
  TraceVector& operator-=(const TraceVector& o);
  friend TraceVector operator+(TraceVector x, const TraceVector& y) { return x += y; }
  friend TraceVector operator-(TraceVector x, const TraceVector& y) { return x -= y; }
  friend bool operator==(const TraceVector&, const TraceVector&) = default;

 private:
  Terms terms_;
};

TraceVector trace(const NCPoly& p);

// All words of the given weight and depth in increasing lex order.
std::vector<Word> words_of(std::size_t weight, std::size_t depth);

}  // namespace ellkv
