#include "ellkv/mould.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ellkv {

namespace {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

bool GrlexLess::operator()(const Exponents& x, const Exponents& y) const {
  int dx = total_degree(x), dy = total_degree(y);
  if (dx != dy) return dx < dy;
  return x > y;
}

// -------------------------------------------------------------------- MPoly

MPoly MPoly::constant(std::size_t nvars, const Rational& c) {
  MPoly p(nvars);
  p.add(Exponents(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e.at(i) = 1;
  return monomial(std::move(e), Rational(1));
}

MPoly MPoly::monomial(Exponents e, const Rational& c) {
  MPoly p(e.size());
  p.add(e, c);
  return p;
}

void MPoly::add(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "exponent vector length differs from variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational MPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational() : it->second;
}

MPoly MPoly::homogeneous_part(int d) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == d) out.terms_.emplace(e, c);
  }
  return out;
}

std::vector<int> MPoly::degrees() const {
  std::vector<int> out;
  for (const auto& [e, c] : terms_) {
    int d = total_degree(e);
    if (out.empty() || out.back() != d) out.push_back(d);
  }
  return out;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
  if (images.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "substitution needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  MPoly out(target);
  std::vector<std::vector<MPoly>> powers(nvars_);
  for (std::size_t k = 0; k < nvars_; ++k) powers[k].push_back(MPoly::constant(target, Rational(1)));
  for (const auto& [e, c] : terms_) {
    MPoly term = MPoly::constant(target, c);
    for (std::size_t k = 0; k < nvars_; ++k) {
      auto& pk = powers[k];
      while (pk.size() <= static_cast<std::size_t>(e[k])) pk.push_back(pk.back() * images[k]);
      if (e[k] > 0) term = term * pk[static_cast<std::size_t>(e[k])];
    }
    out += term;
  }
  return out;
}

MPoly MPoly::rename(std::span<const std::size_t> perm) const {
  if (perm.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "rename needs a full permutation");
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents f(nvars_, 0);
    for (std::size_t k = 0; k < nvars_; ++k) f[perm[k]] += e[k];
    out.add(f, c);
  }
  return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "adding polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "subtracting polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MPoly operator*(const MPoly& x, const MPoly& y) {
  if (x.nvars_ != y.nvars_) throw Error(ErrorKind::DimensionMismatch, "multiplying polynomials in different variable counts");
  MPoly out(x.nvars_);
  Exponents e(x.nvars_);
  for (const auto& [ex, cx] : x.terms_) {
    for (const auto& [ey, cy] : y.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ex[k] + ey[k];
      out.add(e, cx * cy);
    }
  }
  return out;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string coeff = c.str();
    bool neg = coeff[0] == '-';
    if (neg) coeff.erase(0, 1);
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "u" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    if (mono.empty()) s += coeff;
    else s += (coeff == "1" ? "" : coeff + "*") + mono;
  }
  return s;
}

// -------------------------------------------------------------------- Mould

MPoly Mould::component(std::size_t r) const {
  auto it = components_.find(r);
  return it == components_.end() ? MPoly(r) : it->second;
}

void Mould::set_component(std::size_t r, MPoly p) {
  if (p.nvars() != r) throw Error(ErrorKind::DimensionMismatch, "depth-r component needs r variables");
  if (p.is_zero()) components_.erase(r);
  else components_[r] = std::move(p);
}

void Mould::add_to_component(std::size_t r, const MPoly& p) { set_component(r, component(r) + p); }

Mould& Mould::operator+=(const Mould& o) {
  empty_ += o.empty_;
  for (const auto& [r, p] : o.components_) add_to_component(r, p);
  return *this;
}

Mould& Mould::operator-=(const Mould& o) {
  empty_ -= o.empty_;
  for (const auto& [r, p] : o.components_) set_component(r, component(r) - p);
  return *this;
}

Mould& Mould::operator*=(const Rational& c) {
  empty_ *= c;
  if (c.is_zero()) {
    components_.clear();
    return *this;
  }
  for (auto& [r, p] : components_) p *= c;
  return *this;
}

// ---------------------------------------------------------------- dictionary

namespace {

int sign_of(long e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

Mould mould_to_poly_mould(const CPoly& cp) {
  Mould m;
  for (const auto& [cw, c] : cp) {
    const std::size_t r = cw.depth();
    const long n = static_cast<long>(cw.weight());
    Rational coeff = sign_of(n + static_cast<long>(r)) == 1 ? c : -c;
    if (r == 0) {
      m.set_empty_value(m.empty_value() + coeff);
      continue;
    }
    Exponents e(r);
    for (std::size_t k = 0; k < r; ++k) e[k] = cw.indices[k] - 1;
    m.add_to_component(r, MPoly::monomial(e, coeff));
  }
  return m;
}

Mould poly_to_mould(const NCPoly& p) { return mould_to_poly_mould(to_c_alphabet(p)); }

NCPoly mould_to_poly(const Mould& m) {
  CPoly cp;
  if (!m.empty_value().is_zero()) cp[CWord{}] = m.empty_value();
  for (const auto& [r, poly] : m.components()) {
    for (const auto& [e, c] : poly.terms()) {
      CWord cw;
      long n = 0;
      for (int x : e) {
        cw.indices.push_back(x + 1);
        n += x + 1;
      }
      cp[cw] = sign_of(n + static_cast<long>(r)) == 1 ? c : -c;
    }
  }
  return c_poly_expand(cp);
}

// ----------------------------------------------------------------- operators

namespace {

template <typename ImageFn>
Mould substitute_each(const Mould& m, ImageFn images_for_depth) {
  Mould out;
  out.set_empty_value(m.empty_value());
  for (const auto& [r, p] : m.components()) out.set_component(r, p.substitute(images_for_depth(r)));
  return out;
}

MPoly var(std::size_t r, std::size_t i) { return MPoly::variable(r, i); }

}  // namespace

Mould swap(const Mould& m) {
  return substitute_each(m, [](std::size_t r) {
    std::vector<MPoly> img;
    img.push_back(var(r, r - 1));
    for (std::size_t k = 1; k < r; ++k) img.push_back(var(r, r - 1 - k) - var(r, r - k));
    return img;
  });
}

Mould push_mould(const Mould& m) {
  return substitute_each(m, [](std::size_t r) {
    std::vector<MPoly> img;
    MPoly total(r);
    for (std::size_t k = 0; k < r; ++k) total -= var(r, k);
    for (std::size_t k = 1; k < r; ++k) img.push_back(var(r, k));
    img.push_back(total);
    return img;
  });
}

Mould circ(const Mould& m) {
  Mould out;
  out.set_empty_value(m.empty_value());
  for (const auto& [r, p] : m.components()) {
    std::vector<std::size_t> perm(r);
    perm[0] = r - 1;
    for (std::size_t k = 1; k < r; ++k) perm[k] = k - 1;
    out.set_component(r, p.rename(perm));
  }
  return out;
}

Mould delta(const Mould& m) {
  Mould out;
  out.set_empty_value(m.empty_value());
  for (const auto& [r, p] : m.components()) {
    MPoly factor(r);
    for (std::size_t k = 0; k < r; ++k) factor += var(r, k);
    for (std::size_t k = 0; k < r; ++k) factor = factor * var(r, k);
    out.set_component(r, factor * p);
  }
  return out;
}

namespace {

// Every shuffle of (0..k-1) with (k..r-1) as a sequence of variable indices.
void shuffles(std::size_t k, std::size_t r, std::vector<std::size_t>& cur, std::size_t i, std::size_t j,
              std::vector<std::vector<std::size_t>>& out) {
  if (i == k && j == r) {
    out.push_back(cur);
    return;
  }
  if (i < k) {
    cur.push_back(i);
    shuffles(k, r, cur, i + 1, j, out);
    cur.pop_back();
  }
  if (j < r) {
    cur.push_back(j);
    shuffles(k, r, cur, i, j + 1, out);
    cur.pop_back();
  }
}

}  // namespace

bool is_alternal(const Mould& m) {
  if (!m.empty_value().is_zero()) return false;
  for (const auto& [r, p] : m.components()) {
    for (std::size_t k = 1; k < r; ++k) {
      std::vector<std::vector<std::size_t>> sh;
      std::vector<std::size_t> cur;
      shuffles(k, r, cur, 0, k, sh);
      MPoly sum(r);
      for (const auto& w : sh) sum += p.rename(w);
      if (!sum.is_zero()) return false;
    }
  }
  return true;
}

Mould swap_of_poly(const NCPoly& p) {
  Mould m;
  for (const auto& [w, c] : p.terms()) {
    if (w.empty()) {
      m.set_empty_value(m.empty_value() + c);
      continue;
    }
    if (w.back() != Letter::B) continue;
    std::vector<int> k = w.exponents();
    k.pop_back();  // k_r = 0
    m.add_to_component(k.size(), MPoly::monomial(k, c));
  }
  return m;
}

int swap_route_sign(int degree, std::size_t depth) { return (degree + static_cast<int>(depth)) % 2 == 1 ? 1 : -1; }

Mould sign_normalized(const Mould& s) {
  Mould out;
  out.set_empty_value(s.empty_value());
  for (const auto& [r, p] : s.components()) {
    MPoly q(r);
    for (const auto& [e, c] : p.terms()) q.add(e, swap_route_sign(total_degree(e), r) == 1 ? c : -c);
    out.set_component(r, std::move(q));
  }
  return out;
}

// ------------------------------------------------------------ circ-constance

std::string_view to_string(CircReport::Status s) {
  switch (s) {
    case CircReport::Status::Neutral: return "neutral";
    case CircReport::Status::Constant: return "constant";
    case CircReport::Status::Fail: return "fail";
  }
  return "fail";
}

MPoly cleared_circ_sum(const MPoly& s) {
  const std::size_t r = s.nvars();
  if (r < 2) throw Error(ErrorKind::PreconditionViolated, "circ-sum needs depth >= 2");
  MPoly factor = var(r, r - 1) - var(r, 0);
  for (std::size_t k = 1; k + 1 < r; ++k) factor = factor * var(r, k);
  MPoly h = s * factor;
  MPoly sum(r);
  std::vector<std::size_t> perm(r);
  for (std::size_t i = 0; i < r; ++i) {
    // circ^i: variable slot k reads v_{(k - i) mod r}.
    for (std::size_t k = 0; k < r; ++k) perm[k] = (k + r - i) % r;
    sum += h.rename(perm);
  }
  return sum;
}

MPoly cyclic_vandermonde(std::size_t r) {
  MPoly p = MPoly::constant(r, Rational(1));
  for (std::size_t k = 0; k < r; ++k) p = p * var(r, k);
  for (std::size_t k = 0; k < r; ++k) p = p * (var(r, k) - var(r, (k + 1) % r));
  return p;
}

namespace {

// Collects "lhs = K * rhs" equations where only some pieces carry K.
class KSolver {
 public:
  void require_zero(std::size_t depth, const MPoly& lhs) {
    if (!witness_ && !lhs.is_zero()) witness_ = CircWitness{depth, lhs.terms().begin()->first};
  }

  void require_zero_at(std::size_t depth, const Exponents& where, const Rational& value) {
    if (!witness_ && !value.is_zero()) witness_ = CircWitness{depth, where};
  }

  void add_proportional(std::size_t depth, const Exponents& where, const Rational& lhs, const Rational& rhs) {
    eqs_.push_back({depth, where, lhs, rhs});
  }

  CircReport finish() const {
    CircReport rep;
    if (witness_) {
      rep.status = CircReport::Status::Fail;
      rep.witness = witness_;
      return rep;
    }
    QVector l, r;
    for (const auto& e : eqs_) {
      l.push_back(e.lhs);
      r.push_back(e.rhs);
    }
    auto k = proportionality_factor(l, r);
    if (!k) {
      // Candidate from the first equation with a nonzero right side.
      Rational cand;
      for (const auto& e : eqs_) {
        if (!e.rhs.is_zero()) {
          cand = e.lhs / e.rhs;
          break;
        }
      }
      for (const auto& e : eqs_) {
        if (e.lhs != cand * e.rhs) {
          rep.status = CircReport::Status::Fail;
          rep.witness = CircWitness{e.depth, e.where};
          return rep;
        }
      }
    }
    rep.k = k.value_or(Rational());
    rep.status = rep.k->is_zero() ? CircReport::Status::Neutral : CircReport::Status::Constant;
    return rep;
  }

 private:
  struct Eq {
    std::size_t depth;
    Exponents where;
    Rational lhs, rhs;
  };
  std::vector<Eq> eqs_;
  std::optional<CircWitness> witness_;
};

void enumerate_tuples(std::size_t r, int total, Exponents& cur, std::size_t pos,
                      const std::function<void(const Exponents&)>& f) {
  if (pos + 1 == r) {
    cur[pos] = total;
    f(cur);
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur[pos] = v;
    enumerate_tuples(r, total - v, cur, pos + 1, f);
  }
}

}  // namespace

CircReport circ_constance(const Mould& swapped) {
  KSolver solver;
  for (const auto& [r, s] : swapped.components()) {
    if (r < 2) continue;
    const MPoly rhs = Rational(static_cast<long>(r)) * cyclic_vandermonde(r);
    for (int d : s.degrees()) {
      MPoly lhs = cleared_circ_sum(s.homogeneous_part(d));
      if (d != static_cast<int>(r) + 1) {
        solver.require_zero(r, lhs);
        continue;
      }
      // Compare over the union of supports.
      for (const auto& [e, c] : lhs.terms()) solver.add_proportional(r, e, c, rhs.coeff(e));
      for (const auto& [e, c] : rhs.terms()) {
        if (lhs.coeff(e).is_zero()) solver.add_proportional(r, e, Rational(), c);
      }
    }
  }
  return solver.finish();
}

Rational circ_relation_lhs(const MPoly& s, const Exponents& i) {
  const std::size_t r = s.nvars();
  if (i.size() != r) throw Error(ErrorKind::DimensionMismatch, "tuple length differs from depth");
  Rational total;
  Exponents t(r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) t[k] = i[(k + j) % r];
    t[0] += 1;
    total += s.coeff(t);
    t[0] -= 1;
    t[r - 1] += 1;
    total -= s.coeff(t);
  }
  return total;
}

CircReport circ_constance_coefficientwise(const Mould& swapped) {
  KSolver solver;
  for (const auto& [r, s] : swapped.components()) {
    if (r < 2) continue;
    const MPoly cyc = [&] {
      MPoly p = MPoly::constant(r, Rational(1));
      for (std::size_t k = 0; k < r; ++k) p = p * (var(r, k) - var(r, (k + 1) % r));
      return p;
    }();
    const Rational rr(static_cast<long>(r));
    for (int d : s.degrees()) {
      if (d < 1) continue;  // the cleared sum of a constant vanishes identically
      MPoly part = s.homogeneous_part(d);
      Exponents cur(r);
      enumerate_tuples(r, d - 1, cur, 0, [&](const Exponents& i) {
        Rational lhs = circ_relation_lhs(part, i);
        if (d != static_cast<int>(r) + 1) {
          solver.require_zero_at(r, i, lhs);
        } else {
          solver.add_proportional(r, i, lhs, rr * cyc.coeff(i));
        }
      });
    }
  }
  return solver.finish();
}

}  // namespace ellkv
