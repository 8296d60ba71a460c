// One PASS/FAIL line per acceptance criterion; exact arithmetic, no tolerances.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli_support.hpp"
#include "ellkv/serialize.hpp"
#include "support.hpp"

using namespace ellkv;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) note << " first failure: " << why;
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << "." << o.note.str() << std::endl;
  if (!o.pass) ++failures;
}

std::string at(std::size_t n, std::size_t r) { return "(" + std::to_string(n) + "," + std::to_string(r) + ")"; }

// Elements to test on a push-invariant space: its basis, a few random members,
// and their sum.
std::vector<NCPoly> samples(const Subspace& s, std::size_t n, std::size_t r, int randoms) {
  std::vector<NCPoly> out;
  QVector total(s.ambient_dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    QVector v = s.basis_vector(i);
    out.push_back(from_lyndon_coordinates(v, n, r));
    for (std::size_t k = 0; k < v.size(); ++k) total[k] += v[k];
  }
  if (s.dim() == 0) return out;
  out.push_back(from_lyndon_coordinates(total, n, r));
  for (int t = 0; t < randoms; ++t) {
    NCPoly f = from_lyndon_coordinates(testing::random_member(s), n, r);
    if (!f.is_zero()) out.push_back(f);
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "theorem sweep: krv11 = krvell in RREF for 3 <= n <= 11", [](Outcome& o) {
    auto reports = sweep_theorem(11);
    std::size_t expected = 0;
    for (std::size_t n = 3; n <= 11; ++n) expected += n - 1;
    o.require(reports.size() == expected, "piece count");
    for (const auto& rep : reports) o.require(rep.pass(), "pieces differ at " + at(rep.weight, rep.depth));
    o.note << " " << reports.size() << " pieces";
  });

  criterion(2, "depth-1 dimension law against the binomial push-parity oracle", [](Outcome& o) {
    for (std::size_t n = 3; n <= 11; ++n) {
      const bool odd = n % 2 == 1;
      const std::size_t want = odd ? 1 : 0;
      o.require(testing::c_n_push_invariant_by_parity(n) == odd, "parity oracle at n=" + std::to_string(n));
      o.require(is_push_invariant(c_letter(static_cast<int>(n))) == testing::c_n_push_invariant_by_parity(n),
                "push of c_n at n=" + std::to_string(n));
      o.require(krv11_subspace(n, 1).space.dim() == want, "dim krv11 " + at(n, 1));
      o.require(krvell_subspace(n, 1).space.dim() == want, "dim krvell " + at(n, 1));
    }
  });

  criterion(3, "averaging lemma for 2 <= r <= 6, closed form and full expansion", [](Outcome& o) {
    const std::size_t counts[] = {0, 0, 3, 10, 35, 126, 462};
    for (std::size_t r = 2; r <= 6; ++r) {
      LemmaReport closed = verify_lemma(r, CoefficientSource::ClosedForm);
      LemmaReport expanded = verify_lemma(r, CoefficientSource::Expansion);
      o.require(closed.pass() && expanded.pass(), "failures at r=" + std::to_string(r));
      o.require(closed.checked_count == counts[r] && expanded.checked_count == counts[r],
                "word count at r=" + std::to_string(r));
    }
  });

  criterion(4, "divergence identities on >= 100 random push-invariant Lie elements", [](Outcome& o) {
    std::size_t tested = 0;
    for (int round = 0; tested < 120 && round < 20; ++round) {
      for (std::size_t n = 3; n <= 10; ++n) {
        for (std::size_t r = 1; r < n; ++r) {
          Subspace s = push_invariant_lie_space(n, r);
          if (s.dim() == 0) continue;
          NCPoly f = from_lyndon_coordinates(testing::random_member(s), n, r);
          if (f.is_zero()) continue;
          Derivation d = complete_derivation(f);
          o.require(strip_back(d.g, Letter::B) == -strip_front(f, Letter::A), "g_b = -f^a at " + at(n, r));
          o.require(divergence(d) == trace(strip_back(f, Letter::A) - strip_front(f, Letter::A)),
                    "tr(f_a + g_b) = tr(f_a - f^a) at " + at(n, r));
          o.require(kills_boundary(d), "[f,b] + [a,g] = 0 at " + at(n, r));
          ++tested;
        }
      }
    }
    o.require(tested >= 100, "fewer than 100 samples");
    o.note << " " << tested << " elements";
  });

  criterion(5, "trace form <=> word family <=> circ-constance for n <= 10, K_circ = -K_trace", [](Outcome& o) {
    std::size_t checked = 0, nonzero_k = 0;
    for (std::size_t n = 3; n <= 10; ++n) {
      for (std::size_t r = 1; r < n; ++r) {
        Subspace pinv = push_invariant_lie_space(n, r);
        for (const NCPoly& f : samples(pinv, n, r, 3)) {
          auto k1 = div_condition_eq1(complete_derivation(f));
          auto k5 = div_condition_eq5(f);
          auto kc = circ_condition(f);
          o.require(k1.has_value() == k5.has_value() && k5.has_value() == kc.has_value(), "membership at " + at(n, r));
          if (k1 && k5 && kc) {
            o.require(*k1 == *k5, "K trace vs word family at " + at(n, r));
            o.require(*kc == -*k5, "K circ vs word family at " + at(n, r));
            if (!k1->is_zero()) ++nonzero_k;
          }
          ++checked;
        }
        KrvPiece k11 = krv11_subspace(n, r);
        o.require(subspaces_equal(k11.space, krv_eq1_subspace(n, r).space), "trace-form subspace at " + at(n, r));
        o.require(subspaces_equal(k11.space, krvell_subspace(n, r).space), "mould subspace at " + at(n, r));
      }
    }
    o.note << " " << checked << " elements, " << nonzero_k << " with K != 0";
  });

  criterion(6, "dictionary round trips, swap routes, push transfer, alternal <=> Lie", [](Outcome& o) {
    for (std::size_t n = 1; n <= 10; ++n) {
      for (std::size_t r = 1; r <= n; ++r) {
        for (const auto& e : lyndon_basis(n, r)) {
          Mould m = poly_to_mould(e.expansion);
          o.require(mould_to_poly(m) == e.expansion, "round trip " + e.word.str());
          o.require(is_alternal(m), "alternality of " + e.word.str());
          if (n <= 9) {
            o.require(swap(m) == sign_normalized(swap_of_poly(e.expansion)), "swap routes " + e.word.str());
            o.require(is_push_invariant(e.expansion) == (push_mould(m) == m), "push transfer " + e.word.str());
          }
        }
      }
    }
    // Push transfer on the whole c-monomial basis and on push-invariant spaces.
    for (std::size_t n = 1; n <= 9; ++n) {
      for (std::size_t r = 1; r <= n; ++r) {
        for (const auto& cw : c_words_of(n, r)) {
          NCPoly p = c_word_expand(cw);
          Mould m = poly_to_mould(p);
          o.require(is_push_invariant(p) == (push_mould(m) == m), "push transfer on a c-monomial");
          o.require(push_mould(m) == poly_to_mould(push(p)), "push commutes with the dictionary");
        }
        if (r < n) {
          Subspace s = push_invariant_lie_space(n, r);
          for (const NCPoly& f : samples(s, n, r, 1)) {
            Mould m = poly_to_mould(f);
            o.require(push_mould(m) == m, "push-invariant element at " + at(n, r));
          }
        }
      }
    }
    int non_lie = 0;
    for (int t = 0; non_lie < 50 && t < 1000; ++t) {
      std::size_t n = 3 + t % 7, r = 1 + (t / 7) % (n - 1);
      auto words = c_words_of(n, r);
      CPoly cp;
      cp[words[static_cast<std::size_t>(t) % words.size()]] = testing::nonzero_rational();
      NCPoly p = c_poly_expand(cp);
      if (!lyndon_basis(n, r).empty()) p += testing::random_lie(n, r);
      if (is_lie(p)) continue;
      ++non_lie;
      o.require(!is_alternal(poly_to_mould(p)), "non-Lie element passed alternality");
    }
    o.require(non_lie >= 50, "fewer than 50 non-Lie samples");
  });

  criterion(7, "brackets of krv generators at weights (3,3) and (3,5) stay in krv", [](Outcome& o) {
    // Every piece of krv at weight n, as completed derivations.
    auto generators = [](std::size_t n) {
      std::vector<Derivation> out;
      for (std::size_t r = 1; r < n; ++r) {
        KrvPiece p = krv11_subspace(n, r);
        for (std::size_t i = 0; i < p.space.dim(); ++i)
          out.push_back(complete_derivation(from_lyndon_coordinates(p.space.basis_vector(i), n, r)));
      }
      return out;
    };
    // The bracket's f, split by depth, must sit in both subspaces.
    auto lands = [&](const Derivation& br, std::size_t n) {
      o.require(br.weight == n && kills_boundary(br), "bracket kills [a,b]");
      for (std::size_t r = 1; r < n; ++r) {
        NCPoly piece;
        for (const auto& [w, c] : br.f.terms())
          if (w.depth() == r) piece.add(w, c);
        if (piece.is_zero()) continue;
        auto x = lyndon_coordinates(piece, n, r);
        o.require(x.has_value(), "bracket f is Lie at " + at(n, r));
        if (!x) continue;
        o.require(krv11_subspace(n, r).space.contains(*x), "bracket in krv11 " + at(n, r));
        o.require(krvell_subspace(n, r).space.contains(*x), "bracket in krvell " + at(n, r));
      }
    };

    auto d3 = generators(3);
    auto d5 = generators(5);
    o.require(d3.size() == 1, "one generator at weight 3");
    // d3 is a multiple of ad [a,b], which commutes with every derivation killing [a,b].
    const NCPoly a(Word::letter(Letter::A)), b(Word::letter(Letter::B));
    const NCPoly theta = bracket(a, b);
    const Rational s = d3[0].f.coeff(Word::from_string("aab")) / bracket(theta, a).coeff(Word::from_string("aab"));
    o.require(d3[0].f == s * bracket(theta, a) && d3[0].g == s * bracket(theta, b), "d3 is inner");
    Derivation self = bracket_derivations(d3[0], d3[0]);
    o.require(self.f.is_zero() && self.g.is_zero(), "[d3, d3] = 0");
    lands(self, 5);
    for (const auto& d : d5) {
      Derivation br = bracket_derivations(d3[0], d);
      o.require(br.f.is_zero() && br.g.is_zero(), "[d3, d5] = 0");
      lands(br, 7);
    }

    // Nonvacuous closure: [d5, d7] at weight 11.
    std::size_t nonzero = 0;
    for (const auto& x : d5) {
      for (const auto& y : generators(7)) {
        Derivation br = bracket_derivations(x, y);
        if (br.f.is_zero()) continue;
        lands(br, 11);
        ++nonzero;
      }
    }
    o.require(nonzero > 0, "every [d5, d7] vanished");
    o.note << " " << d5.size() << " weight-5 generators, " << nonzero << " nonzero [d5, d7] brackets";
  });

  criterion(8, "CLI dims --max-weight 11 matches the sweep; a corrupted stored basis exits 1", [](Outcome& o) {
    auto bases = testing::scratch_dir() / "acceptance_bases.json";
    auto run = testing::run_cli("dims --max-weight 11 --save-bases '" + bases.string() + "'");
    o.require(run.status == 0, "exit status " + std::to_string(run.status));
    o.require(run.out == dims_csv(sweep_theorem(11)), "CSV differs from the library sweep");

    auto doc = parse_json_document(testing::slurp(bases));
    bool corrupted = false;
    for (auto& piece : doc["pieces"]) {
      if (piece["n"] == 11 && piece["r"] == 5) {
        auto& row = piece["krv11"]["basis"][1];
        row[row.size() - 1] = (rational_from_json(row[row.size() - 1]) + Rational(1)).str();
        corrupted = true;
      }
    }
    o.require(corrupted, "piece (11,5) missing from stored bases");
    auto path = testing::write_scratch("acceptance_corrupt.json", doc.dump());
    auto bad = testing::run_cli("dims --max-weight 11 --check-bases '" + path.string() + "'");
    o.require(bad.status == 1, "corrupted basis exit status " + std::to_string(bad.status));
    o.require(bad.err.find("\"failures\":[{") != std::string::npos, "no witness on stderr");
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
