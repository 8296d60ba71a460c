#pragma once

// Shared generators and independent oracles for the test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include "ellkv/freelie.hpp"
#include "ellkv/krvcore.hpp"
#include "ellkv/ncword.hpp"

namespace testing {

using namespace ellkv;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261014);
  return gen;
}

inline Rational small_rational(int span = 5) {
  std::uniform_int_distribution<long> num(-span, span), den(1, 3);
  return Rational(num(rng()), den(rng()));
}

inline Rational nonzero_rational(int span = 5) {
  for (;;) {
    Rational q = small_rational(span);
    if (!q.is_zero()) return q;
  }
}

inline Word random_word(std::size_t len) {
  std::uniform_int_distribution<std::uint64_t> bits(0, len == 0 ? 0 : (len >= 64 ? ~0ull : (1ull << len) - 1));
  return Word::from_bits(bits(rng()), len);
}

inline NCPoly random_poly(std::size_t len, std::size_t terms) {
  NCPoly p;
  for (std::size_t i = 0; i < terms; ++i) p.add(random_word(len), nonzero_rational());
  return p;
}

inline NCPoly random_bihomogeneous(std::size_t n, std::size_t r, std::size_t terms) {
  auto words = words_of(n, r);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  NCPoly p;
  for (std::size_t i = 0; i < terms; ++i) p.add(words[pick(rng())], nonzero_rational());
  return p;
}

// Random element of a subspace: integer combination of its basis.
inline QVector random_member(const Subspace& s) {
  QVector x(s.ambient_dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Rational c = small_rational(4);
    QVector v = s.basis_vector(i);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += c * v[k];
  }
  return x;
}

inline NCPoly random_lie(std::size_t n, std::size_t r) {
  const auto& basis = lyndon_basis(n, r);
  QVector x(basis.size());
  for (auto& c : x) c = small_rational(3);
  return from_lyndon_coordinates(x, n, r);
}

// Binomial sign parity oracle: c_n = sum_k (-1)^k C(n-1,k) a^{n-1-k} b a^k is
// fixed by push iff the coefficient of a^{n-1-k} b a^k equals that of
// a^k b a^{n-1-k}, i.e. (-1)^k = (-1)^{n-1-k}, i.e. n odd.
inline bool c_n_push_invariant_by_parity(std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if ((k % 2) != ((n - 1 - k) % 2)) return false;
  }
  return true;
}

// Interleavings of u and v by explicit enumeration of position subsets.
inline NCPoly shuffle_by_subsets(const Word& u, const Word& v) {
  const std::size_t n = u.weight() + v.weight();
  NCPoly out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != u.weight()) continue;
    std::string s;
    std::size_t iu = 0, iv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Letter l = (mask >> i) & 1u ? u.at(iu++) : v.at(iv++);
      s.push_back(l == Letter::A ? 'a' : 'b');
    }
    out.add(Word::from_string(s), Rational(1));
  }
  return out;
}

inline NCPoly A() { return NCPoly(Word::letter(Letter::A)); }
inline NCPoly B() { return NCPoly(Word::letter(Letter::B)); }

inline NCPoly P(std::initializer_list<std::pair<std::string_view, long>> terms) { return NCPoly::parse_words(terms); }

}  // namespace testing
