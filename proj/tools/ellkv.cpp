// ellkv: dimension tables, theorem and lemma sweeps, and format translation.
//
// Exit status: 0 success, 1 a mathematical check failed (JSON witness on
// stderr), 2 usage or parse error, 3 domain precondition error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ellkv/krvcore.hpp"
#include "ellkv/serialize.hpp"

using namespace ellkv;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;

constexpr std::size_t kMaxSweepWeight = 16;
constexpr std::size_t kMaxLemmaDepth = 12;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

Json read_json(const std::string& path) { return parse_json_document(read_input(path)); }

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void report_failure(const Json& witness) { std::cerr << witness.dump() << "\n"; }

// ------------------------------------------------------------------ dims

struct DimsArgs {
  std::size_t max_weight = 0;
  std::string out;
  bool json = false;
  unsigned jobs = 0;
  std::string save_bases;
  std::string check_bases;
};

using PieceKey = std::pair<std::size_t, std::size_t>;

std::map<PieceKey, Subspace> load_stored_bases(const std::string& path) {
  Json doc = read_json(path);
  std::map<PieceKey, Subspace> out;
  if (!doc.is_object() || !doc.contains("pieces") || !doc["pieces"].is_array()) {
    throw Error(ErrorKind::ParseError, "stored bases need a \"pieces\" array");
  }
  for (const Json& p : doc["pieces"]) {
    if (!p.is_object() || !p.contains("n") || !p.contains("r") || !p.contains("krv11") ||
        !p["n"].is_number_unsigned() || !p["r"].is_number_unsigned()) {
      throw Error(ErrorKind::ParseError, "each stored piece needs integer \"n\", \"r\" and a \"krv11\" subspace");
    }
    std::size_t n = p["n"].get<std::size_t>(), r = p["r"].get<std::size_t>();
    out.emplace(PieceKey{n, r}, subspace_from_json(p["krv11"], lyndon_label(n, r)));
  }
  return out;
}

int run_dims(const DimsArgs& a) {
  if (a.max_weight < 3 || a.max_weight > kMaxSweepWeight) {
    throw UsageError("--max-weight must lie in [3, " + std::to_string(kMaxSweepWeight) + "]");
  }
  std::vector<TheoremReport> reports;
  if (!a.check_bases.empty()) {
    auto stored = load_stored_bases(a.check_bases);
    for (std::size_t n = 3; n <= a.max_weight; ++n) {
      for (std::size_t r = 1; r < n; ++r) {
        auto it = stored.find({n, r});
        if (it == stored.end()) {
          throw Error(ErrorKind::ParseError, "stored bases lack the piece n=" + std::to_string(n) + " r=" + std::to_string(r));
        }
        if (it->second.ambient_dim() != lyndon_basis(n, r).size()) {
          throw Error(ErrorKind::ParseError, "stored piece n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                                 " has the wrong ambient dimension");
        }
        KrvPiece stored_piece{n, r, it->second, std::nullopt};
        reports.push_back(compare_pieces(stored_piece, krvell_subspace(n, r)));
      }
    }
  } else {
    reports = sweep_theorem(a.max_weight, a.jobs);
  }

  bool all = true;
  for (const auto& rep : reports) {
    std::cerr << "n=" << rep.weight << " r=" << rep.depth << ": " << rep.dim_krv11 << " / " << rep.dim_krvell
              << (rep.pass() ? " equal" : " DIFFER") << "\n";
    if (!rep.pass()) {
      all = false;
      report_failure({{"check", "dims"}, {"report", theorem_report_to_json(rep)}});
    }
  }

  if (!a.save_bases.empty()) {
    Json pieces = Json::array();
    for (std::size_t n = 3; n <= a.max_weight; ++n) {
      for (std::size_t r = 1; r < n; ++r) {
        pieces.push_back({{"n", n},
                          {"r", r},
                          {"krv11", subspace_to_json(krv11_subspace(n, r).space)},
                          {"krvell", subspace_to_json(krvell_subspace(n, r).space)}});
      }
    }
    std::ofstream out(a.save_bases, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + a.save_bases + "'");
    out << dump({{"pieces", pieces}});
  }

  if (a.json) {
    Json arr = Json::array();
    for (const auto& rep : reports) arr.push_back(theorem_report_to_json(rep));
    write_output(a.out, dump(arr));
  } else {
    write_output(a.out, dims_csv(reports));
  }
  return all ? kOk : kFalse;
}

// ------------------------------------------------------- verify-theorem

int run_verify_theorem(std::size_t n, std::size_t r, bool have_r, bool json, const std::string& out) {
  if (n < 3 || n > kMaxSweepWeight) throw UsageError("--weight must lie in [3, " + std::to_string(kMaxSweepWeight) + "]");
  if (have_r && (r < 1 || r > n - 1)) throw UsageError("--depth must lie in [1, weight-1]");
  std::vector<TheoremReport> reports;
  for (std::size_t d = have_r ? r : 1; d <= (have_r ? r : n - 1); ++d) reports.push_back(verify_theorem(n, d));
  bool all = true;
  std::ostringstream text;
  Json arr = Json::array();
  for (const auto& rep : reports) {
    text << "n=" << rep.weight << " r=" << rep.depth << ": dim krv11 " << rep.dim_krv11 << ", dim krvell "
         << rep.dim_krvell << ", " << (rep.pass() ? "equal" : "NOT equal") << "\n";
    arr.push_back(theorem_report_to_json(rep));
    if (!rep.pass()) {
      all = false;
      report_failure({{"check", "verify-theorem"}, {"report", theorem_report_to_json(rep)}});
    }
  }
  write_output(out, json ? dump(arr) : text.str());
  return all ? kOk : kFalse;
}

// --------------------------------------------------------- verify-lemma

int run_verify_lemma(std::size_t r_max, bool expansion, bool json, const std::string& out) {
  if (r_max < 2 || r_max > kMaxLemmaDepth) throw UsageError("--r-max must lie in [2, " + std::to_string(kMaxLemmaDepth) + "]");
  const auto source = expansion ? CoefficientSource::Expansion : CoefficientSource::ClosedForm;
  bool all = true;
  std::ostringstream text;
  Json arr = Json::array();
  for (std::size_t r = 2; r <= r_max; ++r) {
    LemmaReport rep = verify_lemma(r, source);
    text << "r=" << r << ": " << rep.checked_count << " words checked, " << rep.failures.size() << " failures\n";
    arr.push_back(lemma_report_to_json(rep));
    if (!rep.pass()) {
      all = false;
      report_failure({{"check", "verify-lemma"}, {"report", lemma_report_to_json(rep)}});
    }
  }
  write_output(out, json ? dump(arr) : text.str());
  return all ? kOk : kFalse;
}

// ------------------------------------------------ complete / divergence

int run_complete(const std::string& input, const std::string& out) {
  NCPoly f = ncpoly_from_json(read_json(input));
  write_output(out, dump(derivation_to_json(complete_derivation(f))));
  return kOk;
}

int run_divergence(const std::string& input, const std::string& out) {
  NCPoly f = ncpoly_from_json(read_json(input));
  Derivation d = complete_derivation(f);
  Json result = {{"derivation", derivation_to_json(d)}, {"divergence", trace_to_json(divergence(d))}};
  if (d.weight >= 3) {
    auto k = div_condition_eq1(d);
    result["k"] = k ? Json(k->str()) : Json(nullptr);
  }
  write_output(out, dump(result));
  return kOk;
}

// ------------------------------------------------------------- mould-op

int run_mould_op(const std::string& input, const std::string& op, const std::string& out) {
  Mould m = mould_from_json(read_json(input));
  Json result;
  if (op == "swap") result = mould_to_json(swap(m));
  else if (op == "push") result = mould_to_json(push_mould(m));
  else if (op == "circ") result = mould_to_json(circ(m));
  else if (op == "delta") result = mould_to_json(delta(m));
  else if (op == "alternal") result = {{"alternal", is_alternal(m)}};
  else result = circ_report_to_json(circ_constance(m));  // circ-constance
  write_output(out, dump(result));
  return kOk;
}

// ------------------------------------------------------------ translate

int run_translate(const std::string& input, const std::string& direction, const std::string& out) {
  Json doc = read_json(input);
  Json result;
  if (direction == "mould-to-poly") {
    result = ncpoly_to_json(mould_to_poly(mould_from_json(doc)));
  } else {
    NCPoly p = ncpoly_from_json(doc);
    if (direction == "poly-to-mould") result = mould_to_json(poly_to_mould(p));
    else if (direction == "swap") result = mould_to_json(swap(poly_to_mould(p)));
    else if (direction == "push") result = ncpoly_to_json(push(p));
    else if (direction == "circ") result = mould_to_json(circ(poly_to_mould(p)));
    else if (direction == "trace") result = trace_to_json(trace(p));
    else result = cpoly_to_json(to_c_alphabet(p));  // c-alphabet
  }
  write_output(out, result.dump() + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic Kashiwara-Vergne computations in exact arithmetic"};
  app.require_subcommand(1);

  DimsArgs dims;
  auto* c_dims = app.add_subcommand("dims", "Dimension table of both pieces for 3 <= n <= max-weight");
  c_dims->add_option("--max-weight", dims.max_weight, "Largest weight")->required();
  c_dims->add_option("--out", dims.out, "Write the table here instead of stdout");
  c_dims->add_flag("--json", dims.json, "Emit theorem reports as JSON instead of CSV");
  c_dims->add_option("--jobs", dims.jobs, "Worker threads (0: all cores)");
  c_dims->add_option("--save-bases", dims.save_bases, "Store both bases of every piece as JSON");
  c_dims->add_option("--check-bases", dims.check_bases,
                     "Compare stored divergence-side bases against freshly computed mould-side bases");

  std::size_t t_weight = 0, t_depth = 0;
  bool t_json = false;
  std::string t_out;
  auto* c_thm = app.add_subcommand("verify-theorem", "Compare both pieces at one weight");
  c_thm->add_option("--weight", t_weight, "Weight n")->required();
  auto* t_depth_opt = c_thm->add_option("--depth", t_depth, "Depth r (all depths when omitted)");
  c_thm->add_flag("--json", t_json, "JSON output");
  c_thm->add_option("--out", t_out, "Output path");

  std::size_t l_rmax = 0;
  bool l_json = false, l_expansion = false;
  std::string l_out;
  auto* c_lem = app.add_subcommand("verify-lemma", "Brute-force check of the averaging identity for 2 <= r <= r-max");
  c_lem->add_option("--r-max", l_rmax, "Largest r")->required();
  c_lem->add_flag("--expansion", l_expansion, "Read coefficients off the full expansion of [a,b]^r");
  c_lem->add_flag("--json", l_json, "JSON output");
  c_lem->add_option("--out", l_out, "Output path");

  std::string io_in, io_out;
  auto* c_comp = app.add_subcommand("complete", "Complete f to the derivation (f, g) killing [a,b]");
  c_comp->add_option("input", io_in, "Polynomial JSON file ('-' for stdin)")->required();
  c_comp->add_option("--out", io_out, "Output path");

  auto* c_div = app.add_subcommand("divergence", "Divergence of the completed derivation and its K");
  c_div->add_option("input", io_in, "Polynomial JSON file ('-' for stdin)")->required();
  c_div->add_option("--out", io_out, "Output path");

  std::string op;
  auto* c_mop = app.add_subcommand("mould-op", "Apply a mould operator");
  c_mop->add_option("input", io_in, "Mould JSON file ('-' for stdin)")->required();
  c_mop->add_option("--op", op, "Operator")
      ->required()
      ->check(CLI::IsMember({"swap", "push", "circ", "delta", "alternal", "circ-constance"}));
  c_mop->add_option("--out", io_out, "Output path");

  std::string direction;
  auto* c_tr = app.add_subcommand("translate", "Convert between polynomial, mould, trace and c-alphabet forms");
  c_tr->add_option("input", io_in, "Input JSON file ('-' for stdin)")->required();
  c_tr->add_option("--direction", direction, "Conversion")
      ->required()
      ->check(CLI::IsMember({"poly-to-mould", "mould-to-poly", "swap", "push", "circ", "trace", "c-alphabet"}));
  c_tr->add_option("--out", io_out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c_dims->parsed()) return run_dims(dims);
    if (c_thm->parsed()) return run_verify_theorem(t_weight, t_depth, t_depth_opt->count() > 0, t_json, t_out);
    if (c_lem->parsed()) return run_verify_lemma(l_rmax, l_expansion, l_json, l_out);
    if (c_comp->parsed()) return run_complete(io_in, io_out);
    if (c_div->parsed()) return run_divergence(io_in, io_out);
    if (c_mop->parsed()) return run_mould_op(io_in, op, io_out);
    if (c_tr->parsed()) return run_translate(io_in, direction, io_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? kUsage : kDomain;
  }
  return kUsage;
}
