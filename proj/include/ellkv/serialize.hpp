#pragma once

// JSON and CSV forms of the library's values. Every reader throws
// Error(ParseError) on malformed or mistyped input; every writer emits terms in
// canonical order so output is byte-for-byte reproducible.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ellkv/exactlin.hpp"
#include "ellkv/freelie.hpp"
#include "ellkv/krvcore.hpp"
#include "ellkv/mould.hpp"
#include "ellkv/ncword.hpp"

namespace ellkv {

using Json = nlohmann::ordered_json;

// Parses text, reporting "line L, column C" on syntax errors.
Json parse_json_document(std::string_view text);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);  // "p/q" string or JSON integer

// {"terms":[{"word":"aab","coeff":"-2"}, ...]}
Json ncpoly_to_json(const NCPoly& p);
NCPoly ncpoly_from_json(const Json& j);

// Same shape, words are canonical representatives.
Json trace_to_json(const TraceVector& t);
TraceVector trace_from_json(const Json& j);

// {"empty":"1","components":{"2":[{"exponents":[1,0],"coeff":"-1"}]}};
// "empty" is written only when nonzero and optional on input.
Json mould_to_json(const Mould& m);
Mould mould_from_json(const Json& j);

// {"terms":[{"c":[2,3],"coeff":"1"}]}; the empty index list is the constant.
Json cpoly_to_json(const CPoly& p);

// Leaves are "a"/"b", inner nodes two-element arrays.
Json bracket_tree_to_json(const BracketTree& t);
Json lyndon_basis_to_json(const std::vector<LyndonElement>& basis);

Json derivation_to_json(const Derivation& d);

// {"ambient":N,"basis":[["1","-1/2"], ...]}
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j, std::string label);

Json circ_report_to_json(const CircReport& rep);
Json theorem_report_to_json(const TheoremReport& rep);
Json lemma_report_to_json(const LemmaReport& rep);

// Header n,r,dim_krv11,dim_krvell,equal; one row per report in order.
std::string dims_csv(const std::vector<TheoremReport>& reports);

}  // namespace ellkv
