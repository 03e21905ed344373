// arithd: arithmetic-derivative toolkit over integer lattice kernels.
//
// One binary, subcommand style.  Data goes to stdout, diagnostics to stderr,
// and every JSON payload embeds the configuration hash.  Exit codes: 0 on
// success, 1 on verification or internal failure, 2 on usage errors.  Global
// flags can also come from the environment with the ARITHD_ prefix.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "arithd/config.hpp"
#include "arithd/derivation.hpp"
#include "arithd/int.hpp"
#include "arithd/logcmp.hpp"
#include "arithd/scanner.hpp"
#include "arithd/triple.hpp"
#include "arithd/universal.hpp"

namespace {

using namespace arithd;

void emit(const nlohmann::json& j) { std::cout << j.dump() << "\n"; }

int cmd_dmap(const Config& cfg, const std::string& n_str) {
  Int n = int_from_string(n_str);
  nlohmann::json j;
  j["n"] = n.get_str();
  j["d"] = omega_to_json(d_map(n));
  j["config"] = cfg.hash();
  emit(j);
  return 0;
}

int cmd_derive(const Config& cfg, const std::string& psi_path, const std::string& n_str) {
  std::ifstream f(psi_path);
  if (!f) throw std::runtime_error("cannot open derivation file: " + psi_path);
  nlohmann::json pj = nlohmann::json::parse(f);
  Derivation psi = derivation_from_json(pj);
  Int n = int_from_string(n_str);
  nlohmann::json j;
  j["n"] = n.get_str();
  j["psi_norm"] = psi.sup_norm().get_str();
  j["dpsi"] = d_psi(psi, n).get_str();
  j["config"] = cfg.hash();
  emit(j);
  return 0;
}

int cmd_basis(const Config& cfg, const std::string& a_str, const std::string& b_str,
              const std::string& kind_str) {
  TripleContext ctx = build_context(int_from_string(a_str), int_from_string(b_str));
  LatticeKind kind = kind_str == "Tcirc" ? LatticeKind::TCircle : LatticeKind::T;
  LatticeBasis red = reduce_basis(kernel_basis(ctx, kind), cfg.reduce());
  nlohmann::json j;
  j["context"] = context_to_json(ctx);
  j["basis"] = basis_to_json(red);
  j["siegel"] = kind == LatticeKind::T ? siegel_to_json(siegel_check(red)) : nlohmann::json();
  j["config"] = cfg.hash();
  emit(j);
  return 0;
}

int cmd_minpsi(const Config& cfg, const std::string& a_str, const std::string& b_str,
               bool heuristic, const std::string& cap_str) {
  TripleContext ctx = build_context(int_from_string(a_str), int_from_string(b_str));
  Int cap = int_from_string(cap_str);
  if (sign(cap) == 0) cap = cfg.norm_cap;
  if (sign(cap) == 0) {
    // no cap given: the first reduced independent vector bounds the minimum
    LatticeBasis red = reduce_basis(kernel_basis(ctx, LatticeKind::T), cfg.reduce());
    IndependentWitness w = independent_witness(red);
    cap = std::max(w.norm, siegel_check(red).product);
  }
  MinPsiResult res = min_independent(
      ctx, cap, heuristic ? SearchMode::Heuristic : SearchMode::Exact, cfg.minpsi());
  nlohmann::json j = minpsi_to_json(res);
  j["a"] = ctx.a.get_str();
  j["b"] = ctx.b.get_str();
  j["c"] = ctx.c.get_str();
  j["cap"] = cap.get_str();
  j["config"] = cfg.hash();
  emit(j);
  return 0;
}

struct ScanArgs {
  std::uint32_t cmax = 0;
  std::string input;
  bool exclude_1nq = false;
  unsigned min_omega = 0;
  double min_quality = 0;
  bool has_min_quality = false;
  std::string min_indep = "off";
  std::string key_m = "8/5";
};

int cmd_scan(const Config& cfg, const ScanArgs& args) {
  ScanOptions opts = cfg.scan();
  opts.filter.exclude_1nq = args.exclude_1nq;
  opts.filter.min_omega = args.min_omega;
  if (args.has_min_quality) opts.filter.min_quality = args.min_quality;
  if (args.min_indep == "exact")
    opts.min_indep = MinIndepMode::Exact;
  else if (args.min_indep == "heuristic")
    opts.min_indep = MinIndepMode::Heuristic;
  else
    opts.min_indep = MinIndepMode::Off;
  if (args.key_m == "none") {
    opts.key_M.reset();
  } else {
    Rational M = parse_rational(args.key_m);
    if (M.num <= M.den || M.num >= 2 * M.den)
      throw std::domain_error("key lemma exponent must lie strictly between 1 and 2");
    opts.key_M = M;
  }

  nlohmann::json records = nlohmann::json::array();
  const std::string& fmt = cfg.output_format;
  if (fmt == "csv") std::cout << csv_header() << "\n";
  auto sink = [&](const ScanRecord& r) {
    if (fmt == "csv")
      std::cout << csv_line(r) << "\n";
    else if (fmt == "jsonl")
      std::cout << record_to_json(r).dump() << "\n";
    else
      records.push_back(record_to_json(r));
  };

  ScanSummary sum;
  if (!args.input.empty()) {
    ImportResult imported = import_triples_file(args.input);
    for (const auto& issue : imported.issues)
      std::cerr << args.input << ":" << issue.line << ": " << issue.message << "\n";
    sum = scan_imported(imported.triples, opts, sink);
  } else {
    sum = scan(args.cmax, opts, sink);
  }

  nlohmann::json sj = summary_to_json(sum);
  sj["config"] = cfg.hash();
  if (fmt == "json") {
    nlohmann::json j;
    j["records"] = std::move(records);
    j["summary"] = std::move(sj);
    emit(j);
  } else {
    std::cerr << sj.dump() << "\n";
  }
  return 0;
}

int cmd_universal(const Config& cfg, unsigned m, const std::string& alpha_str) {
  FiniteRingSpec spec;
  spec.m = m;
  spec.alpha_image.clear();
  std::stringstream ss(alpha_str);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad image element: " + tok);
    spec.alpha_image.push_back(unsigned(v));
  }
  UniversalModule mod = universal_module(spec);
  AxiomReport rep = check_derivation_axioms(spec, mod);
  if (!rep.pass) throw std::logic_error("computed module violates its own axioms");
  nlohmann::json j = universal_to_json(mod);
  j["axioms_pass"] = rep.pass;
  j["config"] = cfg.hash();
  emit(j);
  return 0;
}

// ---- verification suites ---------------------------------------------------

struct Checker {
  int checks = 0;
  int failures = 0;

  void operator()(const std::string& name, bool ok, const std::string& detail = "") {
    ++checks;
    if (!ok) ++failures;
    std::cerr << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
  }
};

void suite_paper_examples(const Config& cfg, Checker& check) {
  {
    TripleContext ctx = build_context(Int(1), Int(108));
    check("context 1+108: support {2,3,109}",
          ctx.support == std::vector<Int>({Int(2), Int(3), Int(109)}));
    check("context 1+108: additivity row (108,108,-1)",
          ctx.eq_add == std::vector<Int>({Int(108), Int(108), Int(-1)}));
    check("context 1+108: omega 3, radical 654", ctx.omega_abc == 3 && ctx.rad_abc == 654);

    LatticeBasis circ = reduce_basis(kernel_basis(ctx, LatticeKind::TCircle), cfg.reduce());
    check("dependent sublattice 1+108: rank 1", circ.vectors.size() == 1);
    check("dependent sublattice 1+108: generator (1,-1,0)",
          !circ.vectors.empty() &&
              circ.vectors[0] == lattice::Vec<Int>({Int(1), Int(-1), Int(0)}));

    LatticeBasis red = reduce_basis(kernel_basis(ctx, LatticeKind::T), cfg.reduce());
    SiegelReport s = siegel_check(red);
    check("norm product 1+108: within bound", s.pass, "product " + s.product.get_str());
    IndependentWitness w = independent_witness(red);
    check("witness 1+108: abc | W*rad and abc <= |W|*rad", w.divisibility && w.product_bound);

    MinPsiResult res = min_independent(ctx, std::max(w.norm, s.product), SearchMode::Exact,
                                       cfg.minpsi());
    check("minimal independent 1+108: norm 108", res.found && res.norm == 108,
          res.found ? "norm " + res.norm.get_str() : "not found");
    check("minimal independent 1+108: optimal, W nonzero",
          res.found && res.optimal && sign(res.wr) != 0);
    Int pair = 0;
    if (res.found)
      for (std::size_t i = 0; i < ctx.eq_add.size(); ++i) pair += ctx.eq_add[i] * res.vector[i];
    bool additive = res.found && sign(pair) == 0;
    check("minimal independent 1+108: solves the additivity equation", additive);
    check("minimal independent 1+108: eta matches ln(108)/ln(109)",
          res.found && std::abs(res.eta - std::log(108.0) / std::log(109.0)) < 1e-12);
  }

  for (unsigned n : {2u, 3u, 5u, 7u, 13u}) {
    Int b = ipow(Int(2), n) - 1;
    TripleContext ctx = build_context(Int(1), b);
    LatticeBasis red = reduce_basis(kernel_basis(ctx, LatticeKind::T), cfg.reduce());
    std::string tag = "mersenne 1+" + b.get_str();
    check(tag + ": rank 1", red.vectors.size() == 1);
    lattice::Vec<Int> expect = {Int(1), Int(long(n)) * ipow(Int(2), n - 1)};
    check(tag + ": generator (1, n*2^(n-1))",
          !red.vectors.empty() && red.vectors[0] == expect);
    Int norm = expect[1];
    check(tag + ": exact equality 4*norm = (omega/ln 2)*c*ln c",
          cmp_linlog(4 * norm, Int(2), Int(2) * ctx.c, ctx.c) == Order::Equal);
  }

  {
    UniversalModule m4 = universal_module(FiniteRingSpec{4, {1}, 64});
    bool factors_22 = m4.invariant_factors == std::vector<Int>({Int(2), Int(2)});
    check("differential module Z/4: invariant factors (2,2)", factors_22);
    check("differential module Z/4: d(0) = d(1) = 0",
          module_is_zero(m4.d_table[0]) && module_is_zero(m4.d_table[1]));
    check("differential module Z/4: d(2), d(3) distinct of order 2",
          module_element_order(m4, m4.d_table[2]) == 2 &&
              module_element_order(m4, m4.d_table[3]) == 2 &&
              m4.d_table[2] != m4.d_table[3]);
    bool primes_ok = true;
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      UniversalModule mp = universal_module(FiniteRingSpec{p, {1}, 64});
      primes_ok &= mp.invariant_factors.empty() &&
                   check_derivation_axioms(FiniteRingSpec{p, {1}, 64}, mp).pass;
    }
    check("differential module F_p: zero for p in {2,3,5,7}", primes_ok);
  }

  {
    auto [recs, sum] = scan_collect(5, cfg.scan());
    check("scan c<=5: exactly 5 records", recs.size() == 5,
          std::to_string(recs.size()) + " records");
    check("scan c<=5: no bound failures",
          sum.siegel_fail == 0 && sum.abc_fail == 0 && sum.nonzero_fail == 0);
  }
}

void suite_bounds_sweep(const Config& cfg, Checker& check, std::uint32_t cmax) {
  ScanOptions opts = cfg.scan();
  opts.key_M = Rational(8, 5);
  ScanSummary sum = scan(cmax, opts, [](const ScanRecord&) {});
  std::string range = "c<=" + std::to_string(cmax);
  check("sweep " + range + ": records present", sum.records > 0,
        std::to_string(sum.records) + " records");
  check("sweep " + range + ": norm product bound, zero failures", sum.siegel_fail == 0,
        std::to_string(sum.siegel_fail) + " failures");
  check("sweep " + range + ": abc estimate + divisibility, zero failures",
        sum.abc_fail == 0, std::to_string(sum.abc_fail) + " failures");
  check("sweep " + range + ": nontrivial-derivative bound, zero failures",
        sum.nonzero_fail == 0, std::to_string(sum.nonzero_fail) + " failures");
  check("sweep " + range + ": dependent-product lower bound, zero failures",
        sum.key_fail == 0, std::to_string(sum.key_fail) + " failures");
  nlohmann::json sj = summary_to_json(sum);
  sj["config"] = cfg.hash();
  std::cerr << sj.dump() << "\n";
}

void suite_catalan(const Config& cfg, Checker& check, std::uint32_t cmax) {
  ScanOptions opts = cfg.scan();
  std::vector<std::array<Int, 3>> low;
  scan(cmax, opts, [&](const ScanRecord& r) {
    if (r.omega <= 2) low.push_back({r.a, r.b, r.c});
  });
  std::vector<std::array<Int, 3>> expect = catalan_triples(cmax);
  check("catalan c<=" + std::to_string(cmax) + ": omega(abc)<=2 list matches",
        low == expect,
        std::to_string(low.size()) + " found, " + std::to_string(expect.size()) +
            " expected");
}

int cmd_verify(const Config& cfg, const std::string& suite, std::uint32_t cmax) {
  Checker check;
  if (suite == "paper-examples")
    suite_paper_examples(cfg, check);
  else if (suite == "bounds-sweep")
    suite_bounds_sweep(cfg, check, cmax);
  else if (suite == "catalan")
    suite_catalan(cfg, check, cmax);
  nlohmann::json j;
  j["suite"] = suite;
  j["checks"] = check.checks;
  j["failures"] = check.failures;
  j["pass"] = check.failures == 0;
  j["config"] = cfg.hash();
  emit(j);
  return check.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "arithd: arithmetic derivatives, additive-constraint lattices, abc-triple\n"
      "scans, and differential modules of residue rings.  Global flags may be\n"
      "set via ARITHD_* environment variables (e.g. ARITHD_FORMAT=jsonl)."};
  app.require_subcommand(1);

  Config cfg;
  std::string delta_str = "99/100";
  std::string norm_cap_str = "0";
  app.add_option("--delta", delta_str, "LLL delta as p/q, strictly between 1/4 and 1")
      ->envname("ARITHD_DELTA");
  app.add_option("--rank-ceiling", cfg.rank_ceiling,
                 "largest kernel rank exact searches accept")
      ->envname("ARITHD_RANK_CEILING");
  app.add_option("--norm-cap", norm_cap_str, "default search cap (0 = derive per triple)")
      ->envname("ARITHD_NORM_CAP");
  app.add_option("--precision", cfg.precision_bits, "interval comparator starting bits")
      ->envname("ARITHD_PRECISION");
  app.add_option("--budget", cfg.budget, "enumeration node budget per search")
      ->envname("ARITHD_BUDGET");
  app.add_option("--format", cfg.output_format, "output format: csv, jsonl, or json")
      ->envname("ARITHD_FORMAT");
  app.add_option("--threads", cfg.threads, "scan worker threads (0 = hardware)")
      ->envname("ARITHD_THREADS");

  std::string dmap_n;
  CLI::App* dmap = app.add_subcommand("dmap", "image of n under the universal map");
  dmap->add_option("n", dmap_n, "integer to differentiate")->required();

  std::string derive_file, derive_n;
  CLI::App* derive = app.add_subcommand("derive", "apply a derivation file to n");
  derive->add_option("psi-file", derive_file, "JSON object {prime: value}")->required();
  derive->add_option("n", derive_n, "integer to differentiate")->required();

  std::string basis_a, basis_b, basis_kind = "T";
  CLI::App* basis = app.add_subcommand("basis", "context and reduced kernel basis");
  basis->add_option("a", basis_a)->required();
  basis->add_option("b", basis_b)->required();
  basis->add_option("--kind", basis_kind, "T (additivity kernel) or Tcirc (dependent)")
      ->check(CLI::IsMember({"T", "Tcirc"}));

  std::string minpsi_a, minpsi_b, minpsi_cap = "0";
  bool minpsi_exact = false, minpsi_heuristic = false;
  CLI::App* minpsi = app.add_subcommand("minpsi", "minimal independent derivation");
  minpsi->add_option("a", minpsi_a)->required();
  minpsi->add_option("b", minpsi_b)->required();
  minpsi->add_flag("--exact", minpsi_exact, "complete enumeration (default)");
  minpsi->add_flag("--heuristic", minpsi_heuristic, "basis-combination upper bound only");
  minpsi->add_option("--cap", minpsi_cap, "norm cap (0 = derive from the triple)");

  ScanArgs scan_args;
  CLI::App* scan_cmd = app.add_subcommand("scan", "stream per-triple records");
  CLI::Option* scan_cmax = scan_cmd->add_option("--cmax", scan_args.cmax, "scan all c <= N");
  CLI::Option* scan_input =
      scan_cmd->add_option("--input", scan_args.input, "read 'a b c' lines from a file");
  scan_cmax->excludes(scan_input);
  scan_cmd->add_flag("--exclude-1nq", scan_args.exclude_1nq,
                     "skip triples with an entry 1 next to a prime");
  scan_cmd->add_option("--min-omega", scan_args.min_omega, "keep omega(abc) >= N");
  CLI::Option* scan_minq =
      scan_cmd->add_option("--min-quality", scan_args.min_quality, "keep quality >= Q");
  scan_cmd->add_option("--min-indep", scan_args.min_indep,
                       "minimal-derivation search per record")
      ->check(CLI::IsMember({"off", "exact", "heuristic"}));
  scan_cmd->add_option("--key-M", scan_args.key_m,
                       "dependent-product exponent in (1,2), or 'none'");

  unsigned universal_m = 0;
  std::string universal_alpha = "1";
  CLI::App* universal = app.add_subcommand("universal", "differential module of Z/m");
  universal->add_option("m", universal_m, "modulus")->required();
  universal->add_option("--alpha", universal_alpha,
                        "comma-separated distinguished image, default 1");

  std::string verify_suite;
  std::uint32_t verify_cmax = 2000;
  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", verify_suite, "paper-examples, bounds-sweep, or catalan")
      ->required()
      ->check(CLI::IsMember({"paper-examples", "bounds-sweep", "catalan"}));
  verify->add_option("--cmax", verify_cmax, "sweep ceiling for the sweep suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    cfg.lll_delta = parse_rational(delta_str);
    cfg.norm_cap = int_from_string(norm_cap_str);
    cfg.validate();
    ambient_start_prec().store(cfg.precision_bits);

    if (app.got_subcommand(dmap)) return cmd_dmap(cfg, dmap_n);
    if (app.got_subcommand(derive)) return cmd_derive(cfg, derive_file, derive_n);
    if (app.got_subcommand(basis)) return cmd_basis(cfg, basis_a, basis_b, basis_kind);
    if (app.got_subcommand(minpsi)) {
      if (minpsi_exact && minpsi_heuristic)
        throw std::domain_error("choose one of --exact / --heuristic");
      return cmd_minpsi(cfg, minpsi_a, minpsi_b, minpsi_heuristic, minpsi_cap);
    }
    if (app.got_subcommand(scan_cmd)) {
      if (scan_args.input.empty() && scan_cmax->count() == 0)
        throw std::domain_error("scan needs --cmax or --input");
      scan_args.has_min_quality = scan_minq->count() > 0;
      return cmd_scan(cfg, scan_args);
    }
    if (app.got_subcommand(universal)) return cmd_universal(cfg, universal_m, universal_alpha);
    if (app.got_subcommand(verify)) return cmd_verify(cfg, verify_suite, verify_cmax);
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::overflow_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
