#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "verify.hpp"

#ifndef CURVELAB_DATA_DIR
#define CURVELAB_DATA_DIR "data"
#endif

using namespace curvelab;
using namespace curvelab::app;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw usage_error("cannot write " + path);
  out << text;
}

struct Output {
  bool json = false;
  std::string json_file;

  void emit(const Report& r) const {
    if (!json_file.empty()) write_file(json_file, r.data.dump(2) + "\n");
    if (json && json_file.empty()) {
      std::cout << r.data.dump(2) << "\n";
    } else {
      std::cout << r.text;
    }
  }
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_flag("--json", out.json, "Print the JSON report instead of text");
  cmd->add_option("--json-file", out.json_file, "Also write the JSON report to this file");
}

struct PresetArgs {
  std::string preset;
  std::uint32_t n = 0;
  std::uint32_t kmax = kDefaultKmax;
};

void add_preset(CLI::App* cmd, PresetArgs& a) {
  cmd->add_option("--preset", a.preset, "Curve family: cq2 for C_{2^n,2}, cq for C_{2^n}")->check(CLI::IsMember({"cq2", "cq"}));
  cmd->add_option("--n", a.n, "Family index n (q = 2^n)");
  cmd->add_option("--kmax", a.kmax, "Largest extension degree searched for singular points")->check(CLI::Range(1u, 20u));
}

ParamCurve require_preset(const PresetArgs& a) {
  if (a.preset.empty()) throw usage_error("give --preset with --n, or a germ/equation");
  if (a.n == 0) throw usage_error("--n is required with --preset");
  return preset_curve(a.preset, a.n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on plane curve singularities and double planes over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for randomized checks");

  // curve analyze
  auto* curve = app.add_subcommand("curve", "Plane curves");
  curve->require_subcommand(1);
  auto* analyze = curve->add_subcommand("analyze", "Implicit equation, singular points and genus");
  PresetArgs analyze_preset;
  std::string equation;
  std::uint32_t eq_p = 2, eq_k = 1;
  Output analyze_out;
  add_preset(analyze, analyze_preset);
  analyze->add_option("--equation", equation, "Homogeneous equation in x, y, z");
  analyze->add_option("--p", eq_p, "Characteristic for --equation");
  analyze->add_option("--k", eq_k, "Extension degree for --equation");
  add_output(analyze, analyze_out);

  // resolve
  auto* resolve = app.add_subcommand("resolve", "Blow-up resolution of a singular germ");
  PresetArgs resolve_preset_args;
  GermInput germ;
  std::string mode = "normalization", dot_file;
  long precision = 32;
  Output resolve_out;
  add_preset(resolve, resolve_preset_args);
  resolve->add_option("--germ", germ.text, "Germ in two variables, e.g. z^2+x^3");
  resolve->add_option("--p", germ.p, "Characteristic of the germ's field, 0 for Q");
  resolve->add_option("--k", germ.k, "Extension degree of the germ's field");
  resolve->add_option("--mode", mode, "normalization or embedded")->check(CLI::IsMember({"normalization", "embedded"}));
  resolve->add_option("--dot", dot_file, "Write the embedded dual graph in DOT format");
  resolve->add_option("--precision", precision, "Starting series precision for the value semigroup")->check(CLI::Range(4L, 8192L));
  add_output(resolve, resolve_out);

  // lct
  auto* lct = app.add_subcommand("lct", "Log canonical thresholds");
  PresetArgs lct_preset_args;
  GermInput lct_germ_in;
  Output lct_out;
  add_preset(lct, lct_preset_args);
  lct->add_option("--germ", lct_germ_in.text, "Germ in two variables");
  lct->add_option("--p", lct_germ_in.p, "Characteristic, 0 for Q");
  lct->add_option("--k", lct_germ_in.k, "Extension degree");
  add_output(lct, lct_out);

  // verdict
  auto* verdict = app.add_subcommand("verdict", "Compare A_m with the characteristic-zero bound");
  PresetArgs verdict_args;
  Output verdict_out;
  add_preset(verdict, verdict_args);
  add_output(verdict, verdict_out);

  // surface census
  auto* surface = app.add_subcommand("surface", "Double planes S_r");
  surface->require_subcommand(1);
  auto* census = surface->add_subcommand("census", "Singular points of S_r");
  long r = 1;
  Output census_out;
  census->add_option("--r", r, "Index r of S_r")->required();
  add_output(census, census_out);

  // lattice
  auto* lattice = app.add_subcommand("lattice", "Rational intersection lattices");
  lattice->require_subcommand(1);
  auto* pullback = lattice->add_subcommand("pullback", "Intersections after contracting exceptional curves");
  LatticeInput lin;
  std::string chain, lattice_file;
  Output pullback_out;
  pullback->add_option("--chain", chain, "A<n> chain of (-2)-curves C1..Cn");
  pullback->add_option("--attach", lin.attach, "Chain positions meeting B1, B2, ...")->delimiter(',');
  pullback->add_option("--file", lattice_file, "Lattice file");
  pullback->add_option("--exceptional", lin.exceptional, "Curves to contract (with --file)")->delimiter(',');
  pullback->add_option("--curves", lin.curves, "Curves to keep (with --file)")->delimiter(',');
  add_output(pullback, pullback_out);

  auto* contract = lattice->add_subcommand("contract", "Contract all but the kept curves and name the singularities");
  std::string contract_file;
  std::vector<std::string> keep;
  bool use_s1 = false;
  Output contract_out;
  contract->add_option("--file", contract_file, "Lattice file");
  contract->add_flag("--s1", use_s1, "Use the resolution configuration of S_1");
  contract->add_option("--keep", keep, "Curves to keep")->delimiter(',')->required();
  add_output(contract, contract_out);

  // verification
  auto* verify = app.add_subcommand("paper-verify", "Recompute every manifest item and compare exactly");
  VerifyOptions vopt;
  std::string manifest = std::string(CURVELAB_DATA_DIR) + "/paper_claims.json";
  Output verify_out;
  verify->add_option("--n-max", vopt.n_max, "Skip curve items with n above this")->check(CLI::Range(1L, 8L));
  verify->add_option("--r-max", vopt.r_max, "Skip surface items with r above this")->check(CLI::Range(1L, 16L));
  verify->add_option("--threads", vopt.threads, "Worker threads, 0 for all cores");
  verify->add_option("--manifest", manifest, "Manifest path");
  add_output(verify, verify_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze->parsed()) {
      CurveOptions opt;
      opt.kmax = analyze_preset.kmax;
      const ProjPlaneCurve C = equation.empty() ? implicitize(require_preset(analyze_preset)) : curve_from_text(equation, eq_p, eq_k);
      analyze_out.emit(curve_analyze(C, opt));
    } else if (resolve->parsed()) {
      ResolveOptions opt;
      opt.mode = mode == "embedded" ? ResolutionMode::embedded : ResolutionMode::normalization;
      opt.precision = precision;
      std::string dot;
      const Report rep = germ.text.empty() ? resolve_preset(require_preset(resolve_preset_args), opt, resolve_preset_args.kmax, &dot)
                                           : resolve_germ(germ, opt, &dot);
      if (!dot_file.empty()) write_file(dot_file, dot);
      resolve_out.emit(rep);
    } else if (lct->parsed()) {
      lct_out.emit(lct_germ_in.text.empty() ? lct_preset(require_preset(lct_preset_args), lct_preset_args.kmax) : lct_germ(lct_germ_in));
    } else if (verdict->parsed()) {
      verdict_out.emit(verdict_preset(require_preset(verdict_args), verdict_args.kmax));
    } else if (census->parsed()) {
      census_out.emit(surface_census(r));
    } else if (pullback->parsed()) {
      if (!chain.empty()) lin.chain = chain;
      if (!lattice_file.empty()) lin.file_text = read_file(lattice_file);
      pullback_out.emit(lattice_pullback(lin));
    } else if (contract->parsed()) {
      if (use_s1 == !contract_file.empty()) throw usage_error("give exactly one of --file and --s1");
      IntersectionLattice L;
      if (use_s1) {
        L = s1_lattice();
      } else {
        try {
          L = IntersectionLattice::parse(read_file(contract_file));
        } catch (const surface_error& e) {
          throw usage_error(std::string("lattice: ") + e.what());
        }
      }
      contract_out.emit(lattice_contract(L, keep));
    } else if (verify->parsed()) {
      vopt.seed = seed;
      const VerifySummary s = run_manifest(read_file(manifest), vopt);
      verify_out.emit(verify_report(s));
      return s.ok() ? kOk : kFailed;
    }
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const poly_error& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const field_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
