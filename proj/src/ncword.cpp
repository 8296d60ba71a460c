#include "ellkv/ncword.hpp"

#include <algorithm>

namespace ellkv {

namespace {

constexpr std::uint64_t low_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

}  // namespace

// -------------------------------------------------------------------- Word

Word::Word(std::uint64_t bits, std::size_t len) : bits_(bits & low_mask(len)), len_(static_cast<std::uint8_t>(len)) {
  if (len > kMaxLength) throw Error(ErrorKind::PreconditionViolated, "word longer than 64 letters");
}

Word Word::from_string(std::string_view letters) {
  if (letters.size() > kMaxLength) throw Error(ErrorKind::PreconditionViolated, "word longer than 64 letters");
  std::uint64_t bits = 0;
  for (char c : letters) {
    if (c != 'a' && c != 'b') {
      throw Error(ErrorKind::ParseError, "word '" + std::string(letters) + "' has a letter other than a, b");
    }
    bits = (bits << 1) | (c == 'b' ? 1u : 0u);
  }
  return Word(bits, letters.size());
}

Word Word::from_exponents(std::span<const int> exps) {
  Word w;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw Error(ErrorKind::PreconditionViolated, "negative exponent");
    if (i > 0) w = concat(w, letter(Letter::B));
    w = concat(w, a_power(static_cast<std::size_t>(exps[i])));
  }
  return w;
}

std::vector<int> Word::exponents() const {
  std::vector<int> e{0};
  for (std::size_t i = 0; i < len_; ++i) {
    if (at(i) == Letter::B) e.push_back(0);
    else ++e.back();
  }
  return e;
}

Word Word::drop_front(std::size_t k) const {
  if (k > len_) throw Error(ErrorKind::PreconditionViolated, "drop_front past the end");
  return Word(bits_, len_ - k);
}

Word Word::drop_back(std::size_t k) const {
  if (k > len_) throw Error(ErrorKind::PreconditionViolated, "drop_back past the end");
  return k >= 64 ? Word() : Word(bits_ >> k, len_ - k);
}

Word Word::rotate(std::size_t k) const {
  if (len_ == 0) return *this;
  k %= len_;
  if (k == 0) return *this;
  return Word((bits_ << k) | (bits_ >> (len_ - k)), len_);
}

Word Word::reversed() const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < len_; ++i) r |= ((bits_ >> i) & 1u) << (len_ - 1 - i);
  return Word(r, len_);
}

std::string Word::str() const {
  std::string s;
  s.reserve(len_);
  for (std::size_t i = 0; i < len_; ++i) s.push_back(at(i) == Letter::A ? 'a' : 'b');
  return s;
}

Word concat(const Word& x, const Word& y) {
  std::size_t len = std::size_t{x.len_} + y.len_;
  if (len > Word::kMaxLength) throw Error(ErrorKind::PreconditionViolated, "word longer than 64 letters");
  if (y.len_ == 64) return y;
  return Word((x.bits_ << y.len_) | y.bits_, len);
}

bool lex_less(const Word& x, const Word& y) {
  std::size_t n = std::min(x.weight(), y.weight());
  for (std::size_t i = 0; i < n; ++i) {
    if (x.at(i) != y.at(i)) return x.at(i) == Letter::A;
  }
  return x.weight() < y.weight();
}

// ------------------------------------------------------------------ NCPoly

NCPoly NCPoly::parse_words(std::initializer_list<std::pair<std::string_view, long>> terms) {
  NCPoly p;
  for (const auto& [w, c] : terms) p.add(Word::from_string(w), Rational(c));
  return p;
}

void NCPoly::add(const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational() : it->second;
}

bool NCPoly::is_weight_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.weight() == terms_.rbegin()->first.weight();
}

bool NCPoly::is_depth_homogeneous() const {
  if (terms_.empty()) return true;
  std::size_t d = terms_.begin()->first.depth();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.depth() == d; });
}

std::optional<std::size_t> NCPoly::weight() const {
  if (terms_.empty() || !is_weight_homogeneous()) return std::nullopt;
  return terms_.begin()->first.weight();
}

std::optional<std::size_t> NCPoly::depth() const {
  if (terms_.empty() || !is_depth_homogeneous()) return std::nullopt;
  return terms_.begin()->first.depth();
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NCPoly operator*(const NCPoly& x, const NCPoly& y) {
  NCPoly out;
  for (const auto& [wx, cx] : x.terms_) {
    for (const auto& [wy, cy] : y.terms_) out.add(concat(wx, wy), cx * cy);
  }
  return out;
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string coeff = c.str();
    bool neg = coeff[0] == '-';
    if (neg) coeff.erase(0, 1);
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    if (w.empty()) {
      s += coeff;
    } else {
      if (coeff != "1") s += coeff + "*";
      s += w.str();
    }
  }
  return s;
}

NCPoly concat(const NCPoly& p, const NCPoly& q) { return p * q; }

// ------------------------------------------------------------------ shuffle

namespace {

void shuffle_into(const Word& u, std::size_t iu, const Word& v, std::size_t iv, Word prefix, NCPoly& out) {
  if (iu == u.weight() && iv == v.weight()) {
    out.add(prefix, Rational(1));
    return;
  }
  if (iu < u.weight()) shuffle_into(u, iu + 1, v, iv, concat(prefix, Word::letter(u.at(iu))), out);
  if (iv < v.weight()) shuffle_into(u, iu, v, iv + 1, concat(prefix, Word::letter(v.at(iv))), out);
}

}  // namespace

NCPoly shuffle(const Word& u, const Word& v) {
  NCPoly out;
  shuffle_into(u, 0, v, 0, Word(), out);
  return out;
}

// ------------------------------------------------------------ decomposition

NCPoly strip_front(const NCPoly& p, Letter first) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    if (!w.empty() && w.front() == first) out.add(w.drop_front(), c);
  }
  return out;
}

NCPoly strip_back(const NCPoly& p, Letter last) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    if (!w.empty() && w.back() == last) out.add(w.drop_back(), c);
  }
  return out;
}

NCPoly strip_both(const NCPoly& p, Letter first, Letter last) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    if (w.weight() >= 2 && w.front() == first && w.back() == last) out.add(w.drop_front().drop_back(), c);
  }
  return out;
}

Decomposition decompose(const NCPoly& p) {
  bool has_short = false;
  for (const auto& [w, c] : p.terms()) {
    if (w.empty()) throw Error(ErrorKind::ConstantTermPresent, "polynomial has a constant term");
    if (w.weight() < 2) has_short = true;
  }
  Decomposition d;
  d.f_a = strip_back(p, Letter::A);
  d.f_b = strip_back(p, Letter::B);
  d.fa = strip_front(p, Letter::A);
  d.fb = strip_front(p, Letter::B);
  if (!has_short) {
    d.inner = Decomposition::Double{strip_both(p, Letter::A, Letter::A), strip_both(p, Letter::A, Letter::B),
                                    strip_both(p, Letter::B, Letter::A), strip_both(p, Letter::B, Letter::B)};
  }
  return d;
}

// --------------------------------------------------------------------- push

Word push_word(const Word& w) {
  if (w.depth() == 0) return w;
  std::size_t trailing = static_cast<std::size_t>(std::countr_zero(w.bits()));
  Word head = w.drop_back(trailing + 1);
  return concat(Word::a_power(trailing), concat(Word::letter(Letter::B), head));
}

NCPoly push(const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) out.add(push_word(w), c);
  return out;
}

NCPoly pushsym(const NCPoly& p) {
  if (!p.is_depth_homogeneous()) throw Error(ErrorKind::MixedDepth, "pushsym needs a depth-homogeneous polynomial");
  if (p.is_zero()) return p;
  std::size_t d = *p.depth();
  NCPoly out = p;
  NCPoly cur = p;
  for (std::size_t i = 0; i < d; ++i) {
    cur = push(cur);
    out += cur;
  }
  return out;
}

bool is_push_invariant(const NCPoly& p) { return push(p) == p; }

// ------------------------------------------------------------- trace space

CyclicClass::CyclicClass(const Word& w) {
  std::size_t n = std::max<std::size_t>(w.weight(), 1);
  members_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) members_.push_back(w.rotate(k));
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::vector<Word> CyclicClass::starting_with(Letter l) const {
  std::vector<Word> out;
  for (const auto& m : members_) {
    if (!m.empty() && m.front() == l) out.push_back(m);
  }
  return out;
}

std::vector<Word> CyclicClass::ending_with(Letter l) const {
  std::vector<Word> out;
  for (const auto& m : members_) {
    if (!m.empty() && m.back() == l) out.push_back(m);
  }
  return out;
}

CyclicClass cyclic_class(const Word& w) { return CyclicClass(w); }

Word canonical_rotation(const Word& w) {
  Word best = w;
  for (std::size_t k = 1; k < w.weight(); ++k) best = std::min(best, w.rotate(k));
  return best;
}

void TraceVector::add_class(const Word& any_member, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(canonical_rotation(any_member), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational TraceVector::coeff(const Word& any_member) const {
  auto it = terms_.find(canonical_rotation(any_member));
  return it == terms_.end() ? Rational() : it->second;
}

TraceVector& TraceVector::operator+=(const TraceVector& o) {
  for (const auto& [w, c] : o.terms_) add_class(w, c);
  return *this;
}

TraceVector& TraceVector::operator-=(const TraceVector& o) {
  for (const auto& [w, c] : o.terms_) add_class(w, -c);
  return *this;
}

TraceVector trace(const NCPoly& p) {
  TraceVector t;
  for (const auto& [w, c] : p.terms()) t.add_class(w, c);
  return t;
}

std::vector<Word> words_of(std::size_t weight, std::size_t depth) {
  std::vector<Word> out;
  if (depth > weight || weight > 63) return out;
  if (depth == 0) return {Word::a_power(weight)};
  std::uint64_t v = (std::uint64_t{1} << depth) - 1;
  const std::uint64_t limit = std::uint64_t{1} << weight;
  while (v < limit) {
    out.push_back(Word::from_bits(v, weight));
    std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

}  // namespace ellkv
