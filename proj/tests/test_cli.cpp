#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_support.hpp"
#include "ellkv/serialize.hpp"

using testing::run_cli;
using testing::write_scratch;

namespace {

std::string quoted(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

const char* kBracket = R"({"terms":[{"word":"ab","coeff":"1"},{"word":"ba","coeff":"-1"}]})";
const char* kC3 = R"({"terms":[{"word":"aab","coeff":"1"},{"word":"aba","coeff":"-2"},{"word":"baa","coeff":"1"}]})";

}  // namespace

TEST_CASE("dims") {
  auto r = run_cli("dims --max-weight 4");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("n,r,dim_krv11,dim_krvell,equal\n", 0) == 0);
  CHECK(r.out.find("3,1,1,1,true\n") != std::string::npos);
  CHECK(r.out.find("4,2,0,0,true\n") != std::string::npos);
  CHECK(r.err.find("n=3 r=1") != std::string::npos);
  CHECK(run_cli("dims --max-weight 2").status == 2);
  CHECK(run_cli("dims").status == 2);
  CHECK(run_cli("dims --max-weight 4 --bogus").status == 2);
  CHECK(run_cli("dims --max-weight x").status == 2);
}

TEST_CASE("dims output is deterministic and --out writes the file") {
  auto a = run_cli("dims --max-weight 7 --jobs 1");
  auto b = run_cli("dims --max-weight 7 --jobs 4");
  CHECK(a.out == b.out);
  auto path = testing::scratch_dir() / "dims.csv";
  auto c = run_cli("dims --max-weight 7 --out " + quoted(path));
  CHECK(c.status == 0);
  CHECK(c.out.empty());
  CHECK(testing::slurp(path) == a.out);
  auto j = run_cli("dims --max-weight 4 --json");
  CHECK(j.status == 0);
  CHECK(ellkv::parse_json_document(j.out).size() == 5);
}

TEST_CASE("verify-lemma") {
  auto r = run_cli("verify-lemma --r-max 2");
  CHECK(r.status == 0);
  CHECK(r.out == "r=2: 3 words checked, 0 failures\n");
  auto e = run_cli("verify-lemma --r-max 4 --expansion");
  CHECK(e.status == 0);
  CHECK(e.out.find("r=4: 35 words checked, 0 failures") != std::string::npos);
  CHECK(run_cli("verify-lemma --r-max 1").status == 2);
}

TEST_CASE("verify-theorem") {
  auto r = run_cli("verify-theorem --weight 7 --depth 3");
  CHECK(r.status == 0);
  CHECK(r.out == "n=7 r=3: dim krv11 2, dim krvell 2, equal\n");
  auto all = run_cli("verify-theorem --weight 5 --json");
  CHECK(all.status == 0);
  CHECK(ellkv::parse_json_document(all.out).size() == 4);
  CHECK(run_cli("verify-theorem --weight 5 --depth 5").status == 2);
}

TEST_CASE("translate") {
  auto br = write_scratch("bracket.json", kBracket);
  auto r = run_cli("translate " + quoted(br) + " --direction poly-to-mould");
  CHECK(r.status == 0);
  CHECK(r.out == "{\"components\":{\"1\":[{\"exponents\":[1],\"coeff\":\"-1\"}]}}\n");

  auto m = write_scratch("mould.json", r.out);
  auto back = run_cli("translate " + quoted(m) + " --direction mould-to-poly");
  CHECK(back.status == 0);
  CHECK(ellkv::ncpoly_from_json(ellkv::parse_json_document(back.out)) ==
        ellkv::ncpoly_from_json(ellkv::parse_json_document(kBracket)));

  CHECK(run_cli("translate " + quoted(br) + " --direction trace").out == "{\"terms\":[]}\n");
  CHECK(run_cli("translate " + quoted(br) + " --direction c-alphabet").out ==
        "{\"terms\":[{\"c\":[2],\"coeff\":\"1\"}]}\n");
  CHECK(run_cli("translate " + quoted(br) + " --direction push").out ==
        "{\"terms\":[{\"word\":\"ab\",\"coeff\":\"-1\"},{\"word\":\"ba\",\"coeff\":\"1\"}]}\n");
  CHECK(run_cli("translate " + quoted(br) + " --direction swap").out ==
        "{\"components\":{\"1\":[{\"exponents\":[1],\"coeff\":\"-1\"}]}}\n");
  CHECK(run_cli("translate " + quoted(br) + " --direction circ").status == 0);

  auto bad = write_scratch("bad.json", "{\n \"terms\": [\n");
  auto e = run_cli("translate " + quoted(bad) + " --direction trace");
  CHECK(e.status == 2);
  CHECK(e.err.find("line") != std::string::npos);
  CHECK(e.err.find("column") != std::string::npos);

  auto ab = write_scratch("ab.json", R"({"terms":[{"word":"ab","coeff":"1"}]})");
  auto d = run_cli("translate " + quoted(ab) + " --direction c-alphabet");
  CHECK(d.status == 3);
  CHECK(d.err.find("NotInCSpan") != std::string::npos);

  CHECK(run_cli("translate " + quoted(br) + " --direction sideways").status == 2);
  CHECK(run_cli("translate /nonexistent/file.json --direction trace").status == 2);
}

TEST_CASE("complete and divergence") {
  auto c3 = write_scratch("c3.json", kC3);
  auto r = run_cli("complete " + quoted(c3));
  CHECK(r.status == 0);
  auto j = ellkv::parse_json_document(r.out);
  CHECK(j["weight"] == 3);
  CHECK(j["g"]["terms"].size() == 3);

  auto d = run_cli("divergence " + quoted(c3));
  CHECK(d.status == 0);
  auto dj = ellkv::parse_json_document(d.out);
  CHECK(dj["divergence"]["terms"].empty());
  CHECK(dj["k"] == "0");

  auto br = write_scratch("bracket.json", kBracket);
  auto e = run_cli("complete " + quoted(br));
  CHECK(e.status == 3);
  CHECK(e.err.find("NotPushInvariant") != std::string::npos);
}

TEST_CASE("mould-op") {
  auto m = write_scratch("m2.json", R"({"components":{"2":[{"exponents":[1,0],"coeff":"1"},{"exponents":[0,1],"coeff":"-1"}]}})");
  CHECK(run_cli("mould-op " + quoted(m) + " --op alternal").out.find("true") != std::string::npos);
  CHECK(run_cli("mould-op " + quoted(m) + " --op circ").status == 0);
  CHECK(run_cli("mould-op " + quoted(m) + " --op delta").status == 0);
  CHECK(run_cli("mould-op " + quoted(m) + " --op circ-constance").status == 0);
  CHECK(run_cli("mould-op " + quoted(m) + " --op bogus").status == 2);
}

TEST_CASE("stored bases") {
  auto bases = testing::scratch_dir() / "bases.json";
  CHECK(run_cli("dims --max-weight 7 --save-bases " + quoted(bases)).status == 0);
  auto ok = run_cli("dims --max-weight 7 --check-bases " + quoted(bases));
  CHECK(ok.status == 0);
  CHECK(ok.out == run_cli("dims --max-weight 7").out);

  auto doc = ellkv::parse_json_document(testing::slurp(bases));
  for (auto& piece : doc["pieces"]) {
    if (piece["n"] == 7 && piece["r"] == 3) piece["krv11"]["basis"][0][0] = "5";
  }
  auto corrupt = write_scratch("corrupt.json", doc.dump());
  auto bad = run_cli("dims --max-weight 7 --check-bases " + quoted(corrupt));
  CHECK(bad.status == 1);
  auto witness = ellkv::parse_json_document(bad.err.substr(bad.err.find('{'), bad.err.find('\n', bad.err.find('{')) - bad.err.find('{')));
  CHECK(witness["report"]["n"] == 7);
  CHECK(witness["report"]["r"] == 3);
  CHECK_FALSE(witness["report"]["failures"].empty());

  auto truncated = write_scratch("short.json", R"({"pieces":[]})");
  CHECK(run_cli("dims --max-weight 7 --check-bases " + quoted(truncated)).status == 2);
}
