#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellkv/serialize.hpp"
#include "support.hpp"

using namespace ellkv;
using testing::A;
using testing::B;

TEST_CASE("rational strings") {
  CHECK(rational_to_json(Rational(-3, 6)) == Json("-1/2"));
  CHECK(rational_to_json(Rational(4)) == Json("4"));
  CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
  CHECK(rational_from_json(Json(-7)) == Rational(-7));
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), Error);
}

TEST_CASE("polynomial json is canonical") {
  NCPoly p = NCPoly::parse_words({{"ba", -1}, {"aab", -2}, {"ab", 1}});
  CHECK(ncpoly_to_json(p).dump() ==
        R"({"terms":[{"word":"ab","coeff":"1"},{"word":"ba","coeff":"-1"},{"word":"aab","coeff":"-2"}]})");
  CHECK(ncpoly_from_json(ncpoly_to_json(p)) == p);
  for (int t = 0; t < 30; ++t) {
    NCPoly q = testing::random_poly(1 + t % 7, 6);
    CHECK(ncpoly_from_json(parse_json_document(ncpoly_to_json(q).dump())) == q);
  }
  CHECK_THROWS_AS(ncpoly_from_json(Json::parse(R"({"terms":[{"word":"abc","coeff":"1"}]})")), Error);
  CHECK_THROWS_AS(ncpoly_from_json(Json::parse(R"({"term":[]})")), Error);
}

TEST_CASE("trace json uses canonical representatives") {
  TraceVector t = trace(NCPoly::parse_words({{"ba", 1}, {"bba", 2}}));
  CHECK(trace_to_json(t).dump() == R"({"terms":[{"word":"ab","coeff":"1"},{"word":"abb","coeff":"2"}]})");
  CHECK(trace_from_json(trace_to_json(t)) == t);
}

TEST_CASE("mould json") {
  Mould m = poly_to_mould(bracket(A(), B()));
  CHECK(mould_to_json(m).dump() == R"({"components":{"1":[{"exponents":[1],"coeff":"-1"}]}})");
  Mould e;
  e.set_empty_value(Rational(2));
  e.set_component(2, MPoly::monomial({1, 0}, Rational(-1)));
  CHECK(mould_to_json(e).dump() == R"({"empty":"2","components":{"2":[{"exponents":[1,0],"coeff":"-1"}]}})");
  CHECK(mould_from_json(mould_to_json(e)) == e);
  CHECK(mould_from_json(Json::parse(R"({"empty":"0","components":{}})")).is_zero());
  CHECK_THROWS_AS(mould_from_json(Json::parse(R"({"components":{"2":[{"exponents":[1],"coeff":"1"}]}})")), Error);
  CHECK_THROWS_AS(mould_from_json(Json::parse(R"({"components":{"x":[]}})")), Error);
}

TEST_CASE("basis export") {
  Json j = lyndon_basis_to_json(lyndon_basis(4, 2));
  CHECK(j.dump() ==
        R"([{"lyndon_word":"aabb","bracketing":["a",[["a","b"],"b"]],"expansion":{"terms":[)"
        R"({"word":"aabb","coeff":"1"},{"word":"abab","coeff":"-2"},)"
        R"({"word":"baba","coeff":"2"},{"word":"bbaa","coeff":"-1"}]}}])");
}

TEST_CASE("subspace json round trip") {
  Subspace s = krv11_subspace(7, 3).space;
  Subspace back = subspace_from_json(subspace_to_json(s), s.label());
  CHECK(subspaces_equal(s, back));
  CHECK_THROWS_AS(subspace_from_json(Json::parse(R"({"ambient":2,"basis":[["1"]]})"), "x"), Error);
}

TEST_CASE("reports and csv") {
  TheoremReport rep = verify_theorem(3, 1);
  Json j = theorem_report_to_json(rep);
  CHECK(j["dim_krv11"] == 1);
  CHECK(j["pass"] == true);
  CHECK(dims_csv({rep}) == "n,r,dim_krv11,dim_krvell,equal\n3,1,1,1,true\n");
  Json l = lemma_report_to_json(verify_lemma(2));
  CHECK(l["checked"] == 3);
  CHECK(l["failures"].empty());
  CircReport c = circ_constance(swap(poly_to_mould(c_letter(3))));
  CHECK(circ_report_to_json(c).dump() == R"({"status":"neutral","k":"0"})");
}

TEST_CASE("syntax errors report line and column") {
  try {
    parse_json_document("{\n  \"terms\": [,]\n}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
