#include "ellkv/freelie.hpp"

#include <algorithm>
#include <unordered_map>

#include "ellkv/memo.hpp"

namespace ellkv {

NCPoly bracket(const NCPoly& x, const NCPoly& y) { return x * y - y * x; }

// ------------------------------------------------------------------ Lyndon

NCPoly BracketTree::expand() const {
  if (is_leaf()) return NCPoly(Word::letter(letter));
  return bracket(children[0].expand(), children[1].expand());
}

std::string BracketTree::str() const {
  if (is_leaf()) return letter == Letter::A ? "a" : "b";
  return "[" + children[0].str() + "," + children[1].str() + "]";
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t k = 1; k < w.weight(); ++k) {
    if (!lex_less(w, w.drop_front(k))) return false;
  }
  return true;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  for (std::size_t k = 1; k < w.weight(); ++k) {
    Word suffix = w.drop_front(k);
    if (is_lyndon(suffix)) return {w.drop_back(w.weight() - k), suffix};
  }
  throw Error(ErrorKind::PreconditionViolated, "standard factorization of '" + w.str() + "'");
}

BracketTree standard_bracketing(const Word& lyndon) {
  if (lyndon.weight() == 1) return BracketTree{lyndon.front(), {}};
  auto [u, v] = standard_factorization(lyndon);
  return BracketTree{Letter::A, {standard_bracketing(u), standard_bracketing(v)}};
}

std::vector<Word> lyndon_words(std::size_t n, std::size_t r) {
  // Duval's generation of all Lyndon words of length <= n in lex order.
  std::vector<Word> out;
  if (n == 0 || n > Word::kMaxLength) return out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (w.size() == n) {
      std::string s;
      for (int c : w) s.push_back(c == 0 ? 'a' : 'b');
      Word word = Word::from_string(s);
      if (word.depth() == r) out.push_back(word);
    }
    std::size_t m = w.size();
    while (w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == 1) w.pop_back();
  }
  return out;
}

namespace {

detail::Memo<std::pair<std::size_t, std::size_t>, std::vector<LyndonElement>>& basis_memo() {
  static detail::Memo<std::pair<std::size_t, std::size_t>, std::vector<LyndonElement>> memo;
  return memo;
}

detail::Memo<Word, NCPoly>& lyndon_expansion_memo() {
  static detail::Memo<Word, NCPoly> memo;
  return memo;
}

const NCPoly& lyndon_expansion(const Word& w) {
  return lyndon_expansion_memo().get(w, [&] {
    if (w.weight() == 1) return NCPoly(w);
    auto [u, v] = standard_factorization(w);
    return bracket(lyndon_expansion(u), lyndon_expansion(v));
  });
}

}  // namespace

const std::vector<LyndonElement>& lyndon_basis(std::size_t n, std::size_t r) {
  return basis_memo().get({n, r}, [&] {
    std::vector<LyndonElement> out;
    for (const Word& w : lyndon_words(n, r)) {
      out.push_back(LyndonElement{w, standard_bracketing(w), lyndon_expansion(w)});
    }
    return out;
  });
}

std::string lyndon_label(std::size_t n, std::size_t r) {
  return "lyndon(" + std::to_string(n) + "," + std::to_string(r) + ")";
}

std::optional<QVector> lyndon_coordinates(const NCPoly& p, std::size_t n, std::size_t r) {
  const auto& basis = lyndon_basis(n, r);
  // The bracketing of a Lyndon word w is w plus lex-greater words, so the
  // coordinates come out of a forward substitution in lex order.
  NCPoly residual = p;
  QVector x(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    x[i] = residual.coeff(basis[i].word);
    if (!x[i].is_zero()) residual -= x[i] * basis[i].expansion;
  }
  if (!residual.is_zero()) return std::nullopt;
  return x;
}

NCPoly from_lyndon_coordinates(std::span<const Rational> x, std::size_t n, std::size_t r) {
  const auto& basis = lyndon_basis(n, r);
  if (x.size() != basis.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate vector length");
  NCPoly out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) out += x[i] * basis[i].expansion;
  }
  return out;
}

// ------------------------------------------------------------ Lie criterion

namespace {

struct SplitKey {
  std::uint64_t u, v;
  std::uint8_t ulen;
  bool operator==(const SplitKey&) const = default;
};

struct SplitHash {
  std::size_t operator()(const SplitKey& k) const noexcept {
    std::uint64_t h = (k.u * 0x9E3779B97F4A7C15ull) ^ (k.v + 0x632BE59BD9B4E019ull) ^ (std::uint64_t{k.ulen} << 58);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

bool is_lie(const NCPoly& p) {
  if (p.is_zero()) return true;
  if (!p.is_weight_homogeneous()) throw Error(ErrorKind::NonHomogeneous, "is_lie needs a weight-homogeneous polynomial");
  const std::size_t n = *p.weight();
  if (n == 0) return false;
  if (n == 1) return true;
  if (n > 24) throw Error(ErrorKind::PreconditionViolated, "is_lie limited to weight 24");
  std::unordered_map<SplitKey, mpq_class, SplitHash> pairing;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (const auto& [w, c] : p.terms()) {
    const std::uint64_t bits = w.bits();
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      std::uint64_t u = 0, v = 0;
      std::uint8_t ulen = 0;
      for (std::size_t i = n; i-- > 0;) {
        std::uint64_t bit = (bits >> i) & 1u;
        if ((mask >> i) & 1u) {
          u = (u << 1) | bit;
          ++ulen;
        } else {
          v = (v << 1) | bit;
        }
      }
      pairing[SplitKey{u, v, ulen}] += c.value();
    }
  }
  return std::all_of(pairing.begin(), pairing.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
}

std::optional<LieElement> LieElement::certify(NCPoly p) {
  if (!p.is_weight_homogeneous() || !is_lie(p)) return std::nullopt;
  return LieElement(std::move(p));
}

// ------------------------------------------------------------ Lazard letters

std::size_t CWord::weight() const {
  std::size_t s = 0;
  for (int i : indices) s += static_cast<std::size_t>(i);
  return s;
}

const NCPoly& c_letter(int i) {
  if (i < 1) throw Error(ErrorKind::PreconditionViolated, "c_i needs i >= 1");
  static detail::Memo<int, NCPoly> memo;
  return memo.get(i, [&] {
    NCPoly out;
    const std::size_t m = static_cast<std::size_t>(i - 1);
    mpz_class binom = 1;
    for (std::size_t k = 0; k <= m; ++k) {
      Word w = concat(concat(Word::a_power(m - k), Word::letter(Letter::B)), Word::a_power(k));
      Rational c{mpq_class(binom)};
      out.add(w, (k % 2 == 0) ? c : -c);
      binom = binom * static_cast<unsigned long>(m - k) / static_cast<unsigned long>(k + 1);
    }
    return out;
  });
}

NCPoly c_word_expand(const CWord& cw) {
  static detail::Memo<CWord, NCPoly> memo;
  return memo.get(cw, [&] {
    NCPoly out(Word{});
    for (int i : cw.indices) out = out * c_letter(i);
    return out;
  });
}

NCPoly c_poly_expand(const CPoly& cp) {
  NCPoly out;
  for (const auto& [cw, c] : cp) out += c * c_word_expand(cw);
  return out;
}

std::vector<CWord> c_words_of(std::size_t n, std::size_t r) {
  std::vector<CWord> out;
  if (r == 0) {
    if (n == 0) out.push_back(CWord{});
    return out;
  }
  if (n < r) return out;
  // Compositions in lex order of the part vector.
  std::vector<int> cur(r);
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == r) {
      cur[pos] = remaining;
      out.push_back(CWord{cur});
      return;
    }
    for (int v = 1; v <= remaining - static_cast<int>(r - pos - 1); ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, static_cast<int>(n));
  return out;
}

CPoly to_c_alphabet(const NCPoly& p) {
  // Split into bigraded pieces.
  std::map<std::pair<std::size_t, std::size_t>, NCPoly> pieces;
  for (const auto& [w, c] : p.terms()) pieces[{w.weight(), w.depth()}].add(w, c);

  CPoly out;
  for (auto& [nr, piece] : pieces) {
    auto [n, r] = nr;
    if (r == 0) {
      if (n != 0) throw Error(ErrorKind::NotInCSpan, "pure power of a has no c-alphabet expression");
      out[CWord{}] = piece.coeff(Word{});
      continue;
    }
    // c_{i_1}...c_{i_r} contains a^{i_1-1}b...a^{i_r-1}b once, and its other
    // words ending in b have exponent tuples lex-smaller: a unitriangular
    // system over the words ending in b, solved in increasing word order.
    NCPoly residual = piece;
    std::vector<Word> tops;
    for (const Word& w : words_of(n, r)) {
      if (w.back() == Letter::B) tops.push_back(w);
    }
    for (const Word& top : tops) {
      Rational x = residual.coeff(top);
      if (x.is_zero()) continue;
      std::vector<int> e = top.exponents();
      CWord cw;
      for (std::size_t k = 0; k < r; ++k) cw.indices.push_back(e[k] + 1);
      residual -= x * c_word_expand(cw);
      out[cw] = x;
    }
    if (!residual.is_zero()) {
      throw Error(ErrorKind::NotInCSpan,
                  "weight " + std::to_string(n) + ", depth " + std::to_string(r) + " part is not a combination of c-monomials");
    }
  }
  return out;
}

NCPoly c2_power(std::size_t r) {
  if (r < 1) throw Error(ErrorKind::PreconditionViolated, "c2_power needs r >= 1");
  NCPoly c = c_letter(2);
  NCPoly out = c;
  for (std::size_t i = 1; i < r; ++i) out = out * c;
  return out;
}

Rational coeff_in_c2_power(const Word& w, std::size_t r) {
  if (w.weight() != 2 * r) throw Error(ErrorKind::WeightMismatch, "word weight must be 2r");
  int u_blocks = 0;
  for (std::size_t i = 0; i < r; ++i) {
    Letter x = w.at(2 * i), y = w.at(2 * i + 1);
    if (x == y) return Rational(0);
    if (x == Letter::B) ++u_blocks;
  }
  return Rational(u_blocks % 2 == 0 ? 1 : -1);
}

}  // namespace ellkv
