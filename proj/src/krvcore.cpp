#include "ellkv/krvcore.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

namespace ellkv {

namespace {

// Accumulates a constraint matrix column by column; rows are created on
// first use of a key.
template <typename Key>
class RowBuilder {
 public:
  void add(std::size_t col, const Key& key, const Rational& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = index_.try_emplace(key, rows_.size());
    if (inserted) rows_.emplace_back();
    rows_[it->second].emplace_back(col, v);
  }

  void append_to(QMatrix& m) const {
    for (const auto& r : rows_) m.append_row(r);
  }

 private:
  std::map<Key, std::size_t> index_;
  std::vector<SparseRow> rows_;
};

NCPoly bigraded_part(const NCPoly& p, std::size_t depth) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    if (w.depth() == depth) out.add(w, c);
  }
  return out;
}

std::pair<std::size_t, std::size_t> bidegree_or_throw(const NCPoly& f, const char* what) {
  if (f.is_zero() || !f.weight() || !f.depth()) {
    throw Error(ErrorKind::PreconditionViolated, std::string(what) + " needs a nonzero bihomogeneous polynomial");
  }
  return {*f.weight(), *f.depth()};
}

}  // namespace

// -------------------------------------------------------------- derivations

NCPoly apply_derivation(const Derivation& d, const NCPoly& p) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t i = 0; i < w.weight(); ++i) {
      NCPoly prefix(w.drop_back(w.weight() - i));
      NCPoly suffix(w.drop_front(i + 1));
      const NCPoly& img = w.at(i) == Letter::A ? d.f : d.g;
      out += c * (prefix * img * suffix);
    }
  }
  return out;
}

bool kills_boundary(const Derivation& d) {
  const NCPoly a(Word::letter(Letter::A));
  const NCPoly b(Word::letter(Letter::B));
  return (bracket(d.f, b) + bracket(a, d.g)).is_zero();
}

Derivation complete_derivation(const NCPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::PreconditionViolated, "zero f has no weight");
  auto n = f.weight();
  if (!n || *n < 2) throw Error(ErrorKind::PreconditionViolated, "f must be weight-homogeneous of weight > 1");
  if (!is_push_invariant(f)) throw Error(ErrorKind::NotPushInvariant, "f = " + f.str() + " is not push-invariant");

  const NCPoly a(Word::letter(Letter::A));
  const NCPoly b(Word::letter(Letter::B));
  Derivation d{f, NCPoly(), *n};
  std::set<std::size_t> depths;
  for (const auto& [w, c] : f.terms()) depths.insert(w.depth());

  for (std::size_t r : depths) {
    NCPoly piece = bigraded_part(f, r);
    if (!lyndon_coordinates(piece, *n, r)) {
      throw Error(ErrorKind::PreconditionViolated, "f is not a Lie element");
    }
    // [a, g] = [b, f] over lyndon_basis(n, r+1).
    const auto& basis = lyndon_basis(*n, r + 1);
    NCPoly target = bracket(b, piece);
    RowBuilder<Word> rows;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      NCPoly col = bracket(a, basis[j].expansion);
      for (const auto& [w, c] : col.terms()) rows.add(j, w, c);
    }
    for (const auto& [w, c] : target.terms()) rows.add(basis.size(), w, c);
    QMatrix aug(0, basis.size() + 1);
    rows.append_to(aug);
    QMatrix m(0, basis.size());
    QVector rhs;
    for (std::size_t i = 0; i < aug.rows(); ++i) {
      SparseRow row;
      Rational last;
      for (const auto& e : aug.row(i)) {
        if (e.first == basis.size()) last = e.second;
        else row.push_back(e);
      }
      m.append_row(std::move(row));
      rhs.push_back(last);
    }
    auto y = solve(m, rhs);
    if (!y) throw Error(ErrorKind::NoSolution, "no g with [a,g] = [b,f] at depth " + std::to_string(r + 1));
    d.g += from_lyndon_coordinates(*y, *n, r + 1);
  }
  return d;
}

TraceVector divergence(const Derivation& d) {
  return trace(strip_back(d.f, Letter::A) + strip_back(d.g, Letter::B));
}

bool gb_equals_minus_fa_upper(const Derivation& d) {
  return strip_back(d.g, Letter::B) == -strip_front(d.f, Letter::A);
}

std::optional<Rational> div_condition_eq1(const Derivation& d) {
  if (d.weight < 3) throw Error(ErrorKind::WeightTooSmall, "divergence condition needs weight >= 3");
  TraceVector div = divergence(d);
  if (d.weight % 2 == 0) {
    if (div.is_zero()) return Rational(0);
    return std::nullopt;
  }
  TraceVector target = trace(c2_power((d.weight - 1) / 2));
  std::map<Word, std::size_t> keys;
  for (const auto& [w, c] : div.terms()) keys.try_emplace(w, keys.size());
  for (const auto& [w, c] : target.terms()) keys.try_emplace(w, keys.size());
  QVector lhs(keys.size()), rhs(keys.size());
  for (const auto& [w, i] : keys) {
    lhs[i] = div.coeff(w);
    rhs[i] = target.coeff(w);
  }
  return proportionality_factor(lhs, rhs);
}

Rational eq5_rhs(const Word& u, std::size_t r) {
  Word w = concat(u, Word::letter(Letter::B));
  CyclicClass cls(w);
  Rational sum;
  for (const Word& v : cls.members()) sum += coeff_in_c2_power(v, r);
  const long cb = static_cast<long>(cls.ending_with(Letter::B).size());
  return Rational(static_cast<long>(r)) * sum / Rational(cb);
}

namespace {

NCPoly eq5_lhs_poly(const NCPoly& f) {
  return pushsym(strip_both(f, Letter::B, Letter::A) - strip_both(f, Letter::A, Letter::B));
}

}  // namespace

std::optional<Rational> div_condition_eq5(const NCPoly& f, std::size_t n, std::size_t r) {
  if (n < 3 || r < 1) throw Error(ErrorKind::PreconditionViolated, "word family needs n >= 3 and r >= 1");
  if (!f.is_zero() && (f.weight() != n || f.depth() != r)) {
    throw Error(ErrorKind::PreconditionViolated, "f is not bihomogeneous of the stated bidegree");
  }
  if (!is_push_invariant(f)) throw Error(ErrorKind::PreconditionViolated, "f is not push-invariant");
  NCPoly h = eq5_lhs_poly(f);
  const bool with_k = n == 2 * r + 1;
  std::vector<Word> us = words_of(n - 2, r - 1);
  QVector lhs, rhs;
  for (const Word& u : us) {
    lhs.push_back(h.coeff(u));
    rhs.push_back(with_k ? eq5_rhs(u, r) : Rational());
  }
  return proportionality_factor(lhs, rhs);
}

std::optional<Rational> div_condition_eq5(const NCPoly& f) {
  auto [n, r] = bidegree_or_throw(f, "div_condition_eq5");
  return div_condition_eq5(f, n, r);
}

CircReport circ_report(const NCPoly& f) { return circ_constance(swap(poly_to_mould(f))); }

std::optional<Rational> circ_condition(const NCPoly& f) {
  CircReport rep = circ_report(f);
  if (rep.status == CircReport::Status::Fail) return std::nullopt;
  return rep.k;
}

// ---------------------------------------------------------------- subspaces

namespace {

void add_push_rows(const std::vector<LyndonElement>& basis, RowBuilder<Word>& rows) {
  for (std::size_t j = 0; j < basis.size(); ++j) {
    NCPoly diff = push(basis[j].expansion) - basis[j].expansion;
    for (const auto& [w, c] : diff.terms()) rows.add(j, w, c);
  }
}

// Kernel of the constraints, coordinates past `keep` (the K unknown) dropped.
Subspace solve_piece(const QMatrix& constraints, std::size_t keep, std::string label) {
  Subspace ker = kernel_basis(constraints, label);
  if (constraints.cols() == keep) return ker;
  return project_prefix(ker, keep, std::move(label));
}

template <typename KFn>
KrvPiece finish_piece(std::size_t n, std::size_t r, Subspace space, KFn k_of) {
  KrvPiece piece{n, r, std::move(space), std::nullopt};
  if (n == 2 * r + 1) {
    std::vector<Rational> ks;
    for (std::size_t i = 0; i < piece.space.dim(); ++i) {
      NCPoly f = from_lyndon_coordinates(piece.space.basis_vector(i), n, r);
      auto k = k_of(f);
      if (!k) throw Error(ErrorKind::NoSolution, "basis vector of a krv piece violates its own condition");
      ks.push_back(*k);
    }
    piece.k_line = std::move(ks);
  }
  return piece;
}

void check_piece_args(std::size_t n, std::size_t r) {
  if (n < 3 || r < 1 || r > n - 1) throw Error(ErrorKind::PreconditionViolated, "need n >= 3 and 1 <= r <= n-1");
}

}  // namespace

Subspace push_invariant_lie_space(std::size_t n, std::size_t r) {
  const auto& basis = lyndon_basis(n, r);
  RowBuilder<Word> rows;
  add_push_rows(basis, rows);
  QMatrix m(0, basis.size());
  rows.append_to(m);
  return kernel_basis(m, lyndon_label(n, r));
}

KrvPiece krv11_subspace(std::size_t n, std::size_t r) {
  check_piece_args(n, r);
  const auto& basis = lyndon_basis(n, r);
  const std::size_t dim = basis.size();
  const bool with_k = n == 2 * r + 1;

  RowBuilder<Word> push_rows;
  add_push_rows(basis, push_rows);

  RowBuilder<Word> family;
  for (std::size_t j = 0; j < dim; ++j) {
    NCPoly h = eq5_lhs_poly(basis[j].expansion);
    for (const auto& [u, c] : h.terms()) family.add(j, u, c);
  }
  if (with_k) {
    for (const Word& u : words_of(n - 2, r - 1)) family.add(dim, u, -eq5_rhs(u, r));
  }

  QMatrix m(0, dim + (with_k ? 1 : 0));
  push_rows.append_to(m);
  family.append_to(m);
  Subspace space = solve_piece(m, dim, lyndon_label(n, r));
  return finish_piece(n, r, std::move(space), [&](const NCPoly& f) { return div_condition_eq5(f, n, r); });
}

KrvPiece krvell_subspace(std::size_t n, std::size_t r) {
  check_piece_args(n, r);
  const auto& basis = lyndon_basis(n, r);
  const std::size_t dim = basis.size();
  const bool with_k = n == 2 * r + 1;

  // Row keys: (condition, split, monomial).
  using Key = std::tuple<int, std::size_t, Exponents>;
  RowBuilder<Key> rows;
  for (std::size_t j = 0; j < dim; ++j) {
    Mould f = poly_to_mould(basis[j].expansion);
    if (!f.empty_value().is_zero()) rows.add(j, Key{0, 0, {}}, f.empty_value());
    const MPoly comp = f.component(r);

    // Alternality: shuffle sums for every split k.
    Mould single;
    single.set_component(r, comp);
    for (std::size_t k = 1; k < r; ++k) {
      MPoly sum(r);
      std::vector<std::size_t> seq;
      // Enumerate shuffles of (0..k-1) and (k..r-1) as variable sequences.
      auto rec = [&](auto&& self, std::size_t i, std::size_t l) -> void {
        if (i == k && l == r) {
          sum += comp.rename(seq);
          return;
        }
        if (i < k) {
          seq.push_back(i);
          self(self, i + 1, l);
          seq.pop_back();
        }
        if (l < r) {
          seq.push_back(l);
          self(self, i, l + 1);
          seq.pop_back();
        }
      };
      rec(rec, 0, k);
      for (const auto& [e, c] : sum.terms()) rows.add(j, Key{1, k, e}, c);
    }

    // Push-invariance of the mould.
    MPoly pdiff = push_mould(single).component(r) - comp;
    for (const auto& [e, c] : pdiff.terms()) rows.add(j, Key{2, 0, e}, c);

    // Cleared circ-sum of the swap.
    if (r >= 2) {
      MPoly lhs = cleared_circ_sum(swap(single).component(r));
      for (const auto& [e, c] : lhs.terms()) rows.add(j, Key{3, 0, e}, c);
    }
  }
  if (with_k && r >= 2) {
    MPoly target = Rational(static_cast<long>(r)) * cyclic_vandermonde(r);
    for (const auto& [e, c] : target.terms()) rows.add(dim, Key{3, 0, e}, -c);
  }

  QMatrix m(0, dim + (with_k ? 1 : 0));
  rows.append_to(m);
  Subspace space = solve_piece(m, dim, lyndon_label(n, r));
  return finish_piece(n, r, std::move(space), [](const NCPoly& f) { return circ_condition(f); });
}

KrvPiece krv_eq1_subspace(std::size_t n, std::size_t r) {
  check_piece_args(n, r);
  const std::size_t dim = lyndon_basis(n, r).size();
  Subspace pinv = push_invariant_lie_space(n, r);
  const std::size_t p = pinv.dim();
  const bool odd = n % 2 == 1;

  RowBuilder<Word> rows;
  for (std::size_t i = 0; i < p; ++i) {
    NCPoly f = from_lyndon_coordinates(pinv.basis_vector(i), n, r);
    TraceVector div = divergence(complete_derivation(f));
    for (const auto& [w, c] : div.terms()) rows.add(i, w, c);
  }
  if (odd) {
    TraceVector target = trace(c2_power((n - 1) / 2));
    for (const auto& [w, c] : target.terms()) rows.add(p, w, -c);
  }
  QMatrix m(0, p + (odd ? 1 : 0));
  rows.append_to(m);
  Subspace ys = solve_piece(m, p, "push-invariant");

  QMatrix xs(0, dim);
  for (std::size_t k = 0; k < ys.dim(); ++k) {
    QVector x(dim);
    for (const auto& [i, y] : ys.basis().row(k)) {
      for (const auto& [c, v] : pinv.basis().row(i)) x[c] += y * v;
    }
    xs.append_dense_row(x);
  }
  Subspace space = Subspace::span(xs, lyndon_label(n, r));
  return finish_piece(n, r, std::move(space),
                      [](const NCPoly& f) { return div_condition_eq1(complete_derivation(f)); });
}

// ------------------------------------------------------------------ theorem

TheoremReport compare_pieces(const KrvPiece& krv11, const KrvPiece& krvell) {
  TheoremReport rep;
  rep.weight = krv11.weight;
  rep.depth = krv11.depth;
  rep.checked_count = krv11.space.ambient_dim();
  rep.dim_krv11 = krv11.space.dim();
  rep.dim_krvell = krvell.space.dim();
  rep.equal = subspaces_equal(krv11.space, krvell.space);
  for (std::size_t i = 0; i < krv11.space.dim(); ++i) {
    QVector v = krv11.space.basis_vector(i);
    if (!krvell.space.contains(v)) rep.failures.push_back({"krv11", std::move(v)});
  }
  for (std::size_t i = 0; i < krvell.space.dim(); ++i) {
    QVector v = krvell.space.basis_vector(i);
    if (!krv11.space.contains(v)) rep.failures.push_back({"krvell", std::move(v)});
  }
  return rep;
}

TheoremReport verify_theorem(std::size_t n, std::size_t r) {
  return compare_pieces(krv11_subspace(n, r), krvell_subspace(n, r));
}

std::vector<TheoremReport> sweep_theorem(std::size_t max_weight, unsigned jobs) {
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t n = 3; n <= max_weight; ++n) {
    for (std::size_t r = 1; r + 1 <= n; ++r) tasks.emplace_back(n, r);
  }
  // Heaviest pieces first.
  std::vector<std::size_t> order(tasks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return lyndon_words(tasks[x].first, tasks[x].second).size() > lyndon_words(tasks[y].first, tasks[y].second).size();
  });

  std::vector<TheoremReport> out(tasks.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < order.size();) {
      try {
        auto [n, r] = tasks[order[i]];
        out[order[i]] = verify_theorem(n, r);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// -------------------------------------------------------------------- lemma

LemmaReport verify_lemma(std::size_t r, CoefficientSource source) {
  if (r < 2) throw Error(ErrorKind::PreconditionViolated, "lemma check needs r >= 2");
  NCPoly expansion;
  if (source == CoefficientSource::Expansion) expansion = c2_power(r);
  auto coeff = [&](const Word& w) {
    return source == CoefficientSource::ClosedForm ? coeff_in_c2_power(w, r) : expansion.coeff(w);
  };
  const Word b = Word::letter(Letter::B);
  const Rational sign = (r - 1) % 2 == 0 ? Rational(1) : Rational(-1);

  LemmaReport rep;
  rep.r = r;
  for (const Word& u : words_of(2 * r - 1, r - 1)) {
    Word ub = concat(u, b);
    CyclicClass cls(ub);
    Rational sum;
    for (const Word& v : cls.members()) sum += coeff(v);
    Rational lhs = sum / Rational(static_cast<long>(cls.ending_with(Letter::B).size()));
    Rational rhs = coeff(ub) - sign * coeff(concat(u.reversed(), b));
    ++rep.checked_count;
    if (lhs != rhs) rep.failures.push_back({u, lhs, rhs});
  }
  return rep;
}

Derivation bracket_derivations(const Derivation& d1, const Derivation& d2) {
  Derivation out;
  out.f = apply_derivation(d1, d2.f) - apply_derivation(d2, d1.f);
  out.g = apply_derivation(d1, d2.g) - apply_derivation(d2, d1.g);
  out.weight = d1.weight + d2.weight - 1;
  return out;
}

}  // namespace ellkv
