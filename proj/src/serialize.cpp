#include "ellkv/serialize.hpp"

#include <sstream>

namespace ellkv {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) schema_error(std::string("expected an object with key \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array_member(const Json& j, const char* key) {
  const Json& a = member(j, key);
  if (!a.is_array()) schema_error(std::string("\"") + key + "\" must be an array");
  return a;
}

template <typename Add>
void read_word_terms(const Json& j, Add add) {
  for (const Json& t : array_member(j, "terms")) {
    const Json& w = member(t, "word");
    if (!w.is_string()) schema_error("\"word\" must be a string");
    add(Word::from_string(w.get<std::string>()), rational_from_json(member(t, "coeff")));
  }
}

}  // namespace

Json parse_json_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

Json rational_to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  schema_error("coefficient must be a \"p/q\" string or an integer");
}

Json ncpoly_to_json(const NCPoly& p) {
  Json terms = Json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back({{"word", w.str()}, {"coeff", c.str()}});
  return {{"terms", terms}};
}

NCPoly ncpoly_from_json(const Json& j) {
  NCPoly p;
  read_word_terms(j, [&](const Word& w, const Rational& c) { p.add(w, c); });
  return p;
}

Json trace_to_json(const TraceVector& t) {
  Json terms = Json::array();
  for (const auto& [w, c] : t.terms()) terms.push_back({{"word", w.str()}, {"coeff", c.str()}});
  return {{"terms", terms}};
}

TraceVector trace_from_json(const Json& j) {
  TraceVector t;
  read_word_terms(j, [&](const Word& w, const Rational& c) { t.add_class(w, c); });
  return t;
}

Json mould_to_json(const Mould& m) {
  Json out = Json::object();
  if (!m.empty_value().is_zero()) out["empty"] = m.empty_value().str();
  Json comps = Json::object();
  for (const auto& [r, p] : m.components()) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", c.str()}});
    comps[std::to_string(r)] = terms;
  }
  out["components"] = comps;
  return out;
}

Mould mould_from_json(const Json& j) {
  Mould m;
  if (!j.is_object()) schema_error("mould must be an object");
  if (auto it = j.find("empty"); it != j.end()) m.set_empty_value(rational_from_json(*it));
  const Json& comps = member(j, "components");
  if (!comps.is_object()) schema_error("\"components\" must be an object keyed by depth");
  for (const auto& [key, terms] : comps.items()) {
    std::size_t r = 0;
    try {
      std::size_t used = 0;
      r = std::stoul(key, &used);
      if (used != key.size() || r == 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      schema_error("component key \"" + key + "\" is not a positive depth");
    }
    if (!terms.is_array()) schema_error("component " + key + " must be an array");
    MPoly p(r);
    for (const Json& t : terms) {
      const Json& e = array_member(t, "exponents");
      if (e.size() != r) schema_error("exponent vector length differs from depth " + key);
      Exponents exps;
      for (const Json& x : e) {
        if (!x.is_number_integer() || x.get<long>() < 0) schema_error("exponents must be nonnegative integers");
        exps.push_back(x.get<int>());
      }
      p.add(exps, rational_from_json(member(t, "coeff")));
    }
    m.add_to_component(r, p);
  }
  return m;
}

Json cpoly_to_json(const CPoly& p) {
  Json terms = Json::array();
  for (const auto& [cw, c] : p) {
    if (c.is_zero()) continue;
    terms.push_back({{"c", cw.indices}, {"coeff", c.str()}});
  }
  return {{"terms", terms}};
}

Json bracket_tree_to_json(const BracketTree& t) {
  if (t.is_leaf()) return t.letter == Letter::A ? "a" : "b";
  return Json::array({bracket_tree_to_json(t.children[0]), bracket_tree_to_json(t.children[1])});
}

Json lyndon_basis_to_json(const std::vector<LyndonElement>& basis) {
  Json out = Json::array();
  for (const auto& e : basis) {
    out.push_back({{"lyndon_word", e.word.str()},
                   {"bracketing", bracket_tree_to_json(e.tree)},
                   {"expansion", ncpoly_to_json(e.expansion)}});
  }
  return out;
}

Json derivation_to_json(const Derivation& d) {
  return {{"weight", d.weight}, {"f", ncpoly_to_json(d.f)}, {"g", ncpoly_to_json(d.g)}};
}

Json subspace_to_json(const Subspace& s) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Json row = Json::array();
    for (const Rational& q : s.basis_vector(i)) row.push_back(q.str());
    rows.push_back(row);
  }
  return {{"ambient", s.ambient_dim()}, {"basis", rows}};
}

Subspace subspace_from_json(const Json& j, std::string label) {
  const Json& amb = member(j, "ambient");
  if (!amb.is_number_unsigned()) schema_error("\"ambient\" must be a nonnegative integer");
  const std::size_t n = amb.get<std::size_t>();
  QMatrix rows(0, n);
  for (const Json& row : array_member(j, "basis")) {
    if (!row.is_array() || row.size() != n) schema_error("basis vector length differs from \"ambient\"");
    QVector v;
    for (const Json& x : row) v.push_back(rational_from_json(x));
    rows.append_dense_row(v);
  }
  return Subspace::span(rows, std::move(label));
}

Json circ_report_to_json(const CircReport& rep) {
  Json out = {{"status", std::string(to_string(rep.status))}};
  if (rep.k) out["k"] = rep.k->str();
  if (rep.witness) out["witness"] = {{"depth", rep.witness->depth}, {"exponents", rep.witness->exponents}};
  return out;
}

Json theorem_report_to_json(const TheoremReport& rep) {
  Json failures = Json::array();
  for (const auto& w : rep.failures) {
    Json coords = Json::array();
    for (const Rational& q : w.coordinates) coords.push_back(q.str());
    failures.push_back({{"side", w.side}, {"coordinates", coords}});
  }
  return {{"n", rep.weight},
          {"r", rep.depth},
          {"checked", rep.checked_count},
          {"dim_krv11", rep.dim_krv11},
          {"dim_krvell", rep.dim_krvell},
          {"equal", rep.equal},
          {"pass", rep.pass()},
          {"failures", failures}};
}

Json lemma_report_to_json(const LemmaReport& rep) {
  Json failures = Json::array();
  for (const auto& w : rep.failures) {
    failures.push_back({{"u", w.u.str()}, {"lhs", w.lhs.str()}, {"rhs", w.rhs.str()}});
  }
  return {{"r", rep.r}, {"checked", rep.checked_count}, {"pass", rep.pass()}, {"failures", failures}};
}

std::string dims_csv(const std::vector<TheoremReport>& reports) {
  std::ostringstream out;
  out << "n,r,dim_krv11,dim_krvell,equal\n";
  for (const auto& rep : reports) {
    out << rep.weight << ',' << rep.depth << ',' << rep.dim_krv11 << ',' << rep.dim_krvell << ','
        << (rep.pass() ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace ellkv
