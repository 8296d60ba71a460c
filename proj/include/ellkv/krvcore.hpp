#pragma once

// Derivations of Lie[a,b] killing [a,b], the elliptic divergence, and the two
// descriptions of the elliptic Kashiwara-Vergne pieces: the divergence side
// (krv^{(1,1)}) and the mould side (krv_ell), both as subspaces in Lyndon
// coordinates of lie_{n,r}.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ellkv/exactlin.hpp"
#include "ellkv/freelie.hpp"
#include "ellkv/mould.hpp"
#include "ellkv/ncword.hpp"

namespace ellkv {

// u = D_{f,g}: u(a) = f, u(b) = g.
struct Derivation {
  NCPoly f;
  NCPoly g;
  std::size_t weight = 0;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

// Leibniz action on words: each letter occurrence replaced in turn.
NCPoly apply_derivation(const Derivation& d, const NCPoly& p);
// [f, b] + [a, g] == 0
bool kills_boundary(const Derivation& d);

// The unique g with [a, g] = [b, f]. Throws NotPushInvariant, NoSolution,
// PreconditionViolated (f not a weight-homogeneous Lie element of weight > 1).
Derivation complete_derivation(const NCPoly& f);

// tr(f_a + g_b)
TraceVector divergence(const Derivation& d);
bool gb_equals_minus_fa_upper(const Derivation& d);

// Divergence condition read directly on the trace space: for odd n the K with
// div(u) = K tr([a,b]^{(n-1)/2}); for even n, 0 iff div(u) = 0.
// Throws WeightTooSmall for n < 3.
std::optional<Rational> div_condition_eq1(const Derivation& d);

// The same condition as the word family
// (pushsym(f^b_a - f^a_b) | u) = K r / |C_b(ub)| sum_{v in C(ub)} ([a,b]^r | v)
// over words u of weight n-2 and depth r-1 (right side zero unless
// n = 2r+1). Throws PreconditionViolated.
std::optional<Rational> div_condition_eq5(const NCPoly& f);
std::optional<Rational> div_condition_eq5(const NCPoly& f, std::size_t n, std::size_t r);
// Right side of the word family at u without the factor K.
Rational eq5_rhs(const Word& u, std::size_t r);

// circ_constance of swap(poly_to_mould(f)); K when it passes.
std::optional<Rational> circ_condition(const NCPoly& f);
CircReport circ_report(const NCPoly& f);

// Push-invariant part of lie_{n,r}, in Lyndon coordinates.
Subspace push_invariant_lie_space(std::size_t n, std::size_t r);

struct KrvPiece {
  std::size_t weight = 0;
  std::size_t depth = 0;
  Subspace space;  // over lyndon_basis(weight, depth)
  // Only when weight = 2 depth + 1: K of each basis vector of `space`.
  std::optional<std::vector<Rational>> k_line;
};

// Divergence side through the word family (with one extra unknown K when
// n = 2r+1, projected away).
KrvPiece krv11_subspace(std::size_t n, std::size_t r);
// Mould side: alternal, push-invariant mould, circ-constant swap.
KrvPiece krvell_subspace(std::size_t n, std::size_t r);
// Divergence side computed on the trace space through completed derivations.
KrvPiece krv_eq1_subspace(std::size_t n, std::size_t r);

struct TheoremWitness {
  std::string side;  // "krv11" or "krvell": the side whose vector the other lacks
  QVector coordinates;
};

struct TheoremReport {
  std::size_t weight = 0;
  std::size_t depth = 0;
  std::size_t checked_count = 0;  // dim lie_{n,r}
  std::size_t dim_krv11 = 0;
  std::size_t dim_krvell = 0;
  bool equal = false;
  std::vector<TheoremWitness> failures;

  bool pass() const { return equal && failures.empty() && dim_krv11 == dim_krvell; }
};

TheoremReport compare_pieces(const KrvPiece& krv11, const KrvPiece& krvell);
TheoremReport verify_theorem(std::size_t n, std::size_t r);

// All (n, r) with 3 <= n <= max_weight, 1 <= r <= n-1, sorted by (n, r).
// Runs on up to `jobs` threads (0: hardware concurrency).
std::vector<TheoremReport> sweep_theorem(std::size_t max_weight, unsigned jobs = 0);

enum class CoefficientSource { ClosedForm, Expansion };

struct LemmaWitness {
  Word u;
  Rational lhs;
  Rational rhs;
};

struct LemmaReport {
  std::size_t r = 0;
  std::size_t checked_count = 0;
  std::vector<LemmaWitness> failures;

  bool pass() const { return failures.empty(); }
};

// For every u of depth r-1 and weight 2r-1:
// (1/|C_b(ub)|) sum_{v in C(ub)} ([a,b]^r|v) = ([a,b]^r|ub) - (-1)^{r-1} ([a,b]^r|u'b).
LemmaReport verify_lemma(std::size_t r, CoefficientSource source = CoefficientSource::ClosedForm);

// [u1, u2](x) = u1(u2(x)) - u2(u1(x)) on both letters.
Derivation bracket_derivations(const Derivation& d1, const Derivation& d2);

}  // namespace ellkv
