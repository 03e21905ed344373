#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "arithd/factor.hpp"
#include "arithd/int.hpp"
#include "arithd/lattice.hpp"
#include "arithd/logcmp.hpp"
#include "arithd/triple.hpp"

namespace arithd {

inline constexpr int kScanSchemaVersion = 1;

/// Smallest-prime-factor sieve.  One shared read-only table serves a whole
/// sweep; per-value factoring is a chain walk, no trial division.
struct FactorTable {
  std::uint32_t limit = 0;
  std::vector<std::uint32_t> spf;

  explicit FactorTable(std::uint32_t n) : limit(n), spf(std::size_t(n) + 1, 0) {
    for (std::uint64_t i = 2; i <= n; ++i) {
      if (spf[i]) continue;
      for (std::uint64_t j = i; j <= n; j += i)
        if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
  }

  bool is_prime(std::uint32_t x) const { return x >= 2 && spf[x] == x; }

  void factor(std::uint32_t x, std::vector<std::pair<std::uint32_t, unsigned>>& out) const {
    out.clear();
    while (x > 1) {
      std::uint32_t p = spf[x];
      unsigned e = 0;
      while (x % p == 0) {
        x /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }

  Factorization factorization(std::uint32_t x) const {
    Factorization f;
    f.value = static_cast<unsigned long>(x);
    std::vector<std::pair<std::uint32_t, unsigned>> fs;
    factor(x, fs);
    for (auto [p, e] : fs) f.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
    return f;
  }
};

// ---- filters and options -----------------------------------------------------

struct TripleFilter {
  bool exclude_1nq = false;
  unsigned min_omega = 0;                  // keep only omega(abc) >= this
  std::optional<double> min_quality;       // keep only quality strictly above
};

enum class MinIndepMode { Off, Exact, Heuristic };

inline const char* min_indep_mode_name(MinIndepMode m) {
  switch (m) {
    case MinIndepMode::Off: return "off";
    case MinIndepMode::Exact: return "exact";
    default: return "heuristic";
  }
}

struct ScanOptions {
  TripleFilter filter;
  // Smallest-independent-derivation search per record.  Off by default: a
  // survey sweep only needs the reduced basis, and exact per-triple
  // enumeration over millions of triples is not a default anyone wants.
  MinIndepMode min_indep = MinIndepMode::Off;
  std::uint64_t min_indep_node_cap = 2'000'000;  // per triple
  std::optional<Rational> key_M = Rational(8, 5);
  ReduceOptions reduce;
  unsigned threads = 1;  // 0 = hardware concurrency
  bool force_bigint = false;  // disable the machine-word fast path (testing)
};

// ---- records -----------------------------------------------------------------

struct ScanRecord {
  Int a, b, c;
  unsigned omega = 0;
  Int rad;
  double quality = 0;  // ln c / ln rad(abc)
  bool excluded_1nq = false;
  std::optional<Int> min_norm;
  std::optional<double> eta;  // ln(min_norm) / ln c
  Int basis_product = 1;
  bool siegel_pass = false;
  bool abc_est_pass = false;
  std::optional<bool> nonzero_pass;
  std::optional<KeyLemmaVerdict> key_lemma;
  bool flag_heuristic = false;   // min_norm is an upper bound, not proven minimal
  bool flag_borderline = false;  // some comparison could not be decided
  bool flag_budget = false;      // enumeration budget ran out
};

inline std::string format_real6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string flags_string(const ScanRecord& r) {
  std::string s;
  auto add = [&](const char* name) {
    if (!s.empty()) s += ';';
    s += name;
  };
  if (r.flag_heuristic) add("heuristic-only");
  if (r.flag_borderline) add("borderline");
  if (r.flag_budget) add("budget-exhausted");
  return s;
}

inline std::string csv_header() {
  return "a,b,c,omega,rad,quality,excluded,min_norm,eta,basis_product,siegel,abc_est,nonzero,"
         "key_lemma,flags";
}

inline std::string csv_line(const ScanRecord& r) {
  std::string s;
  s += r.a.get_str();
  s += ',';
  s += r.b.get_str();
  s += ',';
  s += r.c.get_str();
  s += ',';
  s += std::to_string(r.omega);
  s += ',';
  s += r.rad.get_str();
  s += ',';
  s += format_real6(r.quality);
  s += ',';
  s += r.excluded_1nq ? "true" : "false";
  s += ',';
  if (r.min_norm) s += r.min_norm->get_str();
  s += ',';
  if (r.eta) s += format_real6(*r.eta);
  s += ',';
  s += r.basis_product.get_str();
  s += ',';
  s += r.siegel_pass ? "pass" : "fail";
  s += ',';
  s += r.abc_est_pass ? "pass" : "fail";
  s += ',';
  if (r.nonzero_pass) s += *r.nonzero_pass ? "pass" : "fail";
  s += ',';
  if (r.key_lemma) s += key_lemma_verdict_name(*r.key_lemma);
  s += ',';
  s += flags_string(r);
  return s;
}

inline nlohmann::json record_to_json(const ScanRecord& r) {
  nlohmann::json j;
  j["a"] = r.a.get_str();
  j["b"] = r.b.get_str();
  j["c"] = r.c.get_str();
  j["omega"] = r.omega;
  j["rad"] = r.rad.get_str();
  j["quality"] = r.quality;
  j["excluded"] = r.excluded_1nq;
  j["min_norm"] = r.min_norm ? nlohmann::json(r.min_norm->get_str()) : nlohmann::json();
  j["eta"] = r.eta ? nlohmann::json(*r.eta) : nlohmann::json();
  j["basis_product"] = r.basis_product.get_str();
  j["siegel"] = r.siegel_pass ? "pass" : "fail";
  j["abc_est"] = r.abc_est_pass ? "pass" : "fail";
  j["nonzero"] = r.nonzero_pass ? nlohmann::json(*r.nonzero_pass ? "pass" : "fail")
                                : nlohmann::json();
  j["key_lemma"] =
      r.key_lemma ? nlohmann::json(key_lemma_verdict_name(*r.key_lemma)) : nlohmann::json();
  nlohmann::json flags = nlohmann::json::array();
  if (r.flag_heuristic) flags.push_back("heuristic-only");
  if (r.flag_borderline) flags.push_back("borderline");
  if (r.flag_budget) flags.push_back("budget-exhausted");
  j["flags"] = flags;
  return j;
}

// ---- summary -------------------------------------------------------------------

struct ScanSummary {
  std::uint64_t records = 0;
  double max_quality = 0;
  Int mq_a, mq_b, mq_c;
  bool have_eta = false;  // eta stats cover non-excluded records only
  double max_eta = 0;
  Int me_a, me_b, me_c;
  std::uint64_t siegel_pass = 0, siegel_fail = 0;
  std::uint64_t abc_pass = 0, abc_fail = 0;
  std::uint64_t nonzero_pass = 0, nonzero_fail = 0, nonzero_absent = 0;
  std::uint64_t key_pass = 0, key_fail = 0, key_na = 0, key_absent = 0;
  std::uint64_t flagged_heuristic = 0, flagged_borderline = 0, flagged_budget = 0;
  int schema_version = kScanSchemaVersion;
  std::uint64_t config_hash = 0;

  void absorb(const ScanRecord& r) {
    ++records;
    if (records == 1 || r.quality > max_quality) {
      max_quality = r.quality;
      mq_a = r.a;
      mq_b = r.b;
      mq_c = r.c;
    }
    if (!r.excluded_1nq && r.eta && (!have_eta || *r.eta > max_eta)) {
      have_eta = true;
      max_eta = *r.eta;
      me_a = r.a;
      me_b = r.b;
      me_c = r.c;
    }
    (r.siegel_pass ? siegel_pass : siegel_fail)++;
    (r.abc_est_pass ? abc_pass : abc_fail)++;
    if (!r.nonzero_pass)
      ++nonzero_absent;
    else
      (*r.nonzero_pass ? nonzero_pass : nonzero_fail)++;
    if (!r.key_lemma)
      ++key_absent;
    else if (*r.key_lemma == KeyLemmaVerdict::Pass)
      ++key_pass;
    else if (*r.key_lemma == KeyLemmaVerdict::Fail)
      ++key_fail;
    else
      ++key_na;
    if (r.flag_heuristic) ++flagged_heuristic;
    if (r.flag_borderline) ++flagged_borderline;
    if (r.flag_budget) ++flagged_budget;
  }
};

inline nlohmann::json summary_to_json(const ScanSummary& s) {
  nlohmann::json j;
  j["schema_version"] = s.schema_version;
  j["config_hash"] = fnv1a_hex(s.config_hash);
  j["records"] = s.records;
  if (s.records) {
    j["max_quality"] = {{"value", s.max_quality},
                        {"a", s.mq_a.get_str()},
                        {"b", s.mq_b.get_str()},
                        {"c", s.mq_c.get_str()}};
  } else {
    j["max_quality"] = nullptr;
  }
  if (s.have_eta) {
    j["max_eta"] = {{"value", s.max_eta},
                    {"a", s.me_a.get_str()},
                    {"b", s.me_b.get_str()},
                    {"c", s.me_c.get_str()}};
  } else {
    j["max_eta"] = nullptr;
  }
  j["siegel"] = {{"pass", s.siegel_pass}, {"fail", s.siegel_fail}};
  j["abc_est"] = {{"pass", s.abc_pass}, {"fail", s.abc_fail}};
  j["nonzero"] = {{"pass", s.nonzero_pass}, {"fail", s.nonzero_fail}, {"absent", s.nonzero_absent}};
  j["key_lemma"] = {{"pass", s.key_pass},
                    {"fail", s.key_fail},
                    {"not_applicable", s.key_na},
                    {"absent", s.key_absent}};
  j["flags"] = {{"heuristic_only", s.flagged_heuristic},
                {"borderline", s.flagged_borderline},
                {"budget_exhausted", s.flagged_budget}};
  return j;
}

inline std::uint64_t scan_config_hash(const std::string& range_token, const ScanOptions& o) {
  std::string s = "scan-v" + std::to_string(kScanSchemaVersion);
  s += ";range=" + range_token;
  s += ";x1nq=" + std::to_string(o.filter.exclude_1nq ? 1 : 0);
  s += ";minomega=" + std::to_string(o.filter.min_omega);
  s += ";minq=" + (o.filter.min_quality ? format_real6(*o.filter.min_quality) : "none");
  s += ";mode=" + std::string(min_indep_mode_name(o.min_indep));
  s += ";cap=" + std::to_string(o.min_indep_node_cap);
  s += ";M=" + (o.key_M ? o.key_M->str() : "none");
  s += ";delta=" + std::to_string(o.reduce.delta_num) + "/" + std::to_string(o.reduce.delta_den);
  s += ";passes=" + std::to_string(o.reduce.supnorm_passes);
  s += ";enumcap=" + std::to_string(o.reduce.enum_node_cap);
  return fnv1a(s);
}

// ---- enumeration ----------------------------------------------------------------

namespace detail {

/// Per-triple working data in machine words: support primes, exponents, and
/// the additivity coefficients.  Only valid when c fits the factor table.
struct SmallCtx {
  std::int64_t a = 0, b = 0, c = 0, rad = 0;
  unsigned omega = 0;
  std::uint64_t vp_product = 1;
  std::vector<std::uint32_t> support, vp;
  std::vector<std::int64_t> eq, ca, cb, cc;
};

inline SmallCtx build_small(std::uint32_t a, std::uint32_t b, const FactorTable& table) {
  SmallCtx sc;
  sc.a = a;
  sc.b = b;
  sc.c = std::int64_t(a) + b;
  // side 0=a, 1=b, 2=c; the three supports are pairwise disjoint
  std::vector<std::pair<std::uint32_t, unsigned>> fs;
  std::vector<std::array<std::uint64_t, 3>> merged;  // p, e, side
  for (int side = 0; side < 3; ++side) {
    std::uint32_t n = side == 0 ? a : side == 1 ? b : static_cast<std::uint32_t>(sc.c);
    table.factor(n, fs);
    for (auto [p, e] : fs) merged.push_back({p, e, std::uint64_t(side)});
  }
  std::sort(merged.begin(), merged.end());
  sc.rad = 1;
  for (auto [p, e, side] : merged) {
    std::int64_t n = side == 0 ? sc.a : side == 1 ? sc.b : sc.c;
    std::int64_t contrib = std::int64_t(e) * (n / std::int64_t(p));
    sc.support.push_back(static_cast<std::uint32_t>(p));
    sc.vp.push_back(static_cast<std::uint32_t>(e));
    sc.vp_product *= e;
    sc.ca.push_back(side == 0 ? contrib : 0);
    sc.cb.push_back(side == 1 ? contrib : 0);
    sc.cc.push_back(side == 2 ? contrib : 0);
    sc.eq.push_back(side == 2 ? -contrib : contrib);
    sc.rad *= std::int64_t(p);
  }
  sc.omega = static_cast<unsigned>(sc.support.size());
  return sc;
}

inline TripleContext context_from_small(const SmallCtx& sc, const FactorTable& table) {
  return build_context(Int(static_cast<long>(sc.a)), Int(static_cast<long>(sc.b)),
                       table.factorization(static_cast<std::uint32_t>(sc.a)),
                       table.factorization(static_cast<std::uint32_t>(sc.b)),
                       table.factorization(static_cast<std::uint32_t>(sc.c)));
}

/// Same primitive sign-canonical dependence row as the bigint pipeline.
inline std::vector<std::int64_t> small_dependence(const SmallCtx& sc) {
  std::int64_t rad_ab = 1;
  for (std::size_t i = 0; i < sc.support.size(); ++i)
    if (sc.cc[i] == 0) rad_ab *= sc.support[i];
  std::vector<std::int64_t> dep(sc.support.size(), 0);
  std::int64_t content = 0;
  for (std::size_t i = 0; i < sc.support.size(); ++i) {
    std::int64_t e = sc.vp[i] * (rad_ab / sc.support[i]);
    if (sc.ca[i] != 0)
      dep[i] = e;
    else if (sc.cb[i] != 0)
      dep[i] = -e;
    content = std::gcd(content, dep[i]);
  }
  if (content > 1)
    for (auto& x : dep) x /= content;
  for (auto& x : dep) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : dep) y = -y;
    break;
  }
  return dep;
}

template <class ZT>
lattice::Mat<ZT> reduced_kernel(const std::vector<lattice::Vec<ZT>>& rows,
                                const ReduceOptions& ro) {
  lattice::Mat<ZT> basis = lattice::kernel(rows);
  for (auto& v : basis) lattice::canonicalize_sign(v);
  lattice::sort_by_sup_norm(basis);
  if (basis.size() >= 2) {
    lattice::lll_reduce(basis, ro.delta_num, ro.delta_den);
    lattice::greedy_supnorm_reduce(basis, ro.supnorm_passes);
    for (auto& v : basis) lattice::canonicalize_sign(v);
    lattice::sort_by_sup_norm(basis);
  }
  return basis;
}

inline bool order_ok(Order o) { return o == Order::Less || o == Order::Equal; }

/// Machine-word pipeline for one triple.  Returns false when the bigint
/// pipeline must take over: overflow, a comparison that came back
/// borderline, or a basis that needs enumeration escalation.
template <class ZT>
bool fast_core(const SmallCtx& sc, const ScanOptions& opts, ScanRecord& rec, Int& witness_norm) {
  using lattice::Mat;
  using lattice::Vec;
  try {
    std::size_t n = sc.support.size();
    Vec<ZT> eq(n);
    for (std::size_t i = 0; i < n; ++i) eq[i] = ZT(static_cast<long long>(sc.eq[i]));
    Mat<ZT> basis = reduced_kernel<ZT>({eq}, opts.reduce);

    Int product = 1;
    for (const auto& v : basis) product *= lattice::zt_to_int(lattice::sup_norm(v));
    const Int c(static_cast<long>(sc.c));
    const Int rad(static_cast<long>(sc.rad));
    Order so = cmp_linlog(2 * product, Int(2), Int(sc.omega) * c, c);
    if (!order_ok(so)) return false;  // rare: needs escalation or borderline
    rec.basis_product = product;
    rec.siegel_pass = true;

    // independent witness: first sorted vector with nonvanishing wronskian
    auto dotc = [&](const std::vector<std::int64_t>& contrib, const Vec<ZT>& v) {
      ZT s(0);
      for (std::size_t i = 0; i < contrib.size(); ++i)
        if (contrib[i]) s += ZT(static_cast<long long>(contrib[i])) * v[i];
      return s;
    };
    bool have_witness = false, have_dpair = false;
    for (const auto& v : basis) {
      ZT da = dotc(sc.ca, v), db = dotc(sc.cb, v);
      ZT w = ZT(static_cast<long long>(sc.a)) * db - ZT(static_cast<long long>(sc.b)) * da;
      if (!have_witness && lattice::zt_sgn(w) != 0) {
        have_witness = true;
        witness_norm = lattice::zt_to_int(lattice::sup_norm(v));
        Int wabs = abs(lattice::zt_to_int(w));
        Int abc = Int(static_cast<long>(sc.a)) * Int(static_cast<long>(sc.b)) * c;
        if (!mpz_divisible_p(Int(wabs * rad).get_mpz_t(), abc.get_mpz_t()) || abc > wabs * rad)
          throw std::logic_error("scan invariant violated: wronskian-radical divisibility");
        Order ao = cmp_linlog(c, Int(2), rad * witness_norm, c);
        if (ao == Order::Borderline) return false;
        rec.abc_est_pass = order_ok(ao);
      }
      if (!have_dpair && sc.a > 1 && sc.b > 1 &&
          (lattice::zt_sgn(da) != 0 || lattice::zt_sgn(db) != 0)) {
        have_dpair = true;
        Int nn = lattice::zt_to_int(lattice::sup_norm(v));
        Order no = cmp_linlog(2 * nn * nn, Int(2), Int(sc.omega) * c, c);
        if (no == Order::Borderline) return false;
        rec.nonzero_pass = order_ok(no);
      }
      if (have_witness && (have_dpair || sc.a == 1 || sc.b == 1)) break;
    }
    if (!have_witness) throw std::logic_error("scan invariant violated: no independent vector");
    if (sc.a > 1 && sc.b > 1 && !have_dpair)
      throw std::logic_error("scan invariant violated: no nonzero derivative pair");

    if (opts.key_M) {
      Rational M = *opts.key_M;
      M.normalize();
      unsigned long P = static_cast<unsigned long>(M.num);
      unsigned long Q = static_cast<unsigned long>(M.den);
      bool excluded = rec.excluded_1nq ||
                      (std::min(sc.a, sc.b) == 1 && std::max(sc.a, sc.b) == 8);
      Int vpp(static_cast<unsigned long>(sc.vp_product));
      if (excluded || cmp_pow(c, Q, rad, P) != Order::Less) {
        rec.key_lemma = KeyLemmaVerdict::NotApplicable;
      } else if (Order shortcut = cmp_pow(vpp, 4 * P, c, 2 * Q - P);
                 shortcut == Order::Greater || shortcut == Order::Equal) {
        // norm product >= 1 always, so the exponent product alone suffices
        rec.key_lemma = KeyLemmaVerdict::Pass;
      } else {
        auto dep64 = small_dependence(sc);
        Vec<ZT> dep(n);
        for (std::size_t i = 0; i < n; ++i) dep[i] = ZT(static_cast<long long>(dep64[i]));
        Int prod2 = 1;
        bool got = false;
        if (n == 3) {
          // rank-1 case: the saturated kernel of two independent rows is generated
          // by their cross product over its content, so the reduced norm is direct
          ZT g0 = eq[1] * dep[2] - eq[2] * dep[1];
          ZT g1 = eq[2] * dep[0] - eq[0] * dep[2];
          ZT g2 = eq[0] * dep[1] - eq[1] * dep[0];
          ZT s, t;
          ZT cont = lattice::zt_gcdext(lattice::zt_gcdext(g0, g1, s, t), g2, s, t);
          if (lattice::zt_sgn(cont) != 0) {
            Vec<ZT> g = {g0, g1, g2};
            prod2 = lattice::zt_to_int(lattice::sup_norm(g)) /
                    lattice::zt_to_int(lattice::zt_abs(cont));
            got = true;
          }
        }
        if (!got) {
          Mat<ZT> circ = reduced_kernel<ZT>({eq, dep}, opts.reduce);
          for (const auto& v : circ) prod2 *= lattice::zt_to_int(lattice::sup_norm(v));
        }
        Order ko = cmp_pow(prod2 * vpp, 4 * P, c, 2 * Q - P);
        if (ko == Order::Borderline) return false;
        rec.key_lemma = (ko == Order::Greater || ko == Order::Equal) ? KeyLemmaVerdict::Pass
                                                                     : KeyLemmaVerdict::Fail;
      }
    }
    return true;
  } catch (const lattice::CheckedOverflow&) {
    return false;
  }
}

/// Bigint pipeline: full reduce_basis (with enumeration escalation) plus the
/// report helpers from the lattice module.
inline void big_core(const TripleContext& ctx, const ScanOptions& opts, ScanRecord& rec,
                     Int& witness_norm) {
  LatticeBasis red = reduce_basis(kernel_basis(ctx, LatticeKind::T), opts.reduce);
  SiegelReport s = siegel_check(red);
  rec.basis_product = s.product;
  rec.siegel_pass = s.pass;
  if (s.order == Order::Borderline || red.bound_borderline) rec.flag_borderline = true;

  IndependentWitness w = independent_witness(red);
  witness_norm = w.norm;
  if (!w.divisibility || !w.product_bound)
    throw std::logic_error("scan invariant violated: wronskian-radical divisibility");
  rec.abc_est_pass = order_ok(w.abc_estimate);
  if (w.abc_estimate == Order::Borderline) rec.flag_borderline = true;

  if (ctx.a > 1 && ctx.b > 1) {
    NonzeroResult nz = min_nontrivial(ctx, opts.reduce);
    rec.nonzero_pass = nz.pass;
    if (nz.bound_order == Order::Borderline) rec.flag_borderline = true;
  }

  if (opts.key_M) {
    KeyLemmaReport k = key_lemma_check(ctx, *opts.key_M, opts.reduce);
    rec.key_lemma = k.verdict;
    if (k.verdict != KeyLemmaVerdict::NotApplicable && k.order == Order::Borderline)
      rec.flag_borderline = true;
  }
}

/// Smallest-independent-derivation stage; degrades to heuristic search above
/// the rank ceiling and records budget exhaustion instead of failing.
inline void min_stage(const TripleContext& ctx, const ScanOptions& opts, ScanRecord& rec,
                      const Int& witness_norm) {
  MinPsiOptions mopts;
  mopts.reduce = opts.reduce;
  mopts.node_cap = opts.min_indep_node_cap;
  Int cap = std::max(witness_norm, rec.basis_product);
  MinPsiResult res;
  if (opts.min_indep == MinIndepMode::Heuristic) {
    res = min_independent(ctx, cap, SearchMode::Heuristic, mopts);
  } else {
    try {
      res = min_independent(ctx, cap, SearchMode::Exact, mopts);
    } catch (const std::domain_error&) {  // rank above the exact-search ceiling
      res = min_independent(ctx, cap, SearchMode::Heuristic, mopts);
    }
  }
  if (res.budget_exhausted) rec.flag_budget = true;
  if (!res.found) return;
  if (!res.optimal) rec.flag_heuristic = true;
  rec.min_norm = res.norm;
  rec.eta = res.eta;

  // re-verify the stored minimum before emission
  Int s = 0;
  for (std::size_t i = 0; i < res.vector.size(); ++i) s += ctx.eq_add[i] * res.vector[i];
  if (sign(s) != 0 || sign(res.wr) == 0)
    throw std::logic_error("scan invariant violated: stored minimum not independent");
  if (res.norm < witness_norm) {
    Order o = cmp_linlog(ctx.c, Int(2), ctx.rad_abc * res.norm, ctx.c);
    rec.abc_est_pass = order_ok(o);
    if (o == Order::Borderline) rec.flag_borderline = true;
  }
}

inline void check_exclusion_soundness(const ScanRecord& rec) {
  // When the excluded prime is c itself (a = 1, b >= 2), the radical already
  // exceeds the triple: rad(abc) >= 2c > c.
  if (!rec.excluded_1nq || rec.a != 1 || rec.b < 2) return;
  if (!is_prime(rec.c)) return;
  if (rec.rad < 2 * rec.c)
    throw std::logic_error("scan invariant violated: excluded-form radical bound");
}

/// The degenerate triple (1,1,2): omega 1, empty constraint kernel, no
/// independent derivation at all.  Synthesized without the lattice pipeline.
inline ScanRecord trivial_record(const ScanOptions& opts) {
  ScanRecord rec;
  rec.a = 1;
  rec.b = 1;
  rec.c = 2;
  rec.omega = 1;
  rec.rad = 2;
  rec.quality = 1.0;
  rec.excluded_1nq = true;
  rec.basis_product = 1;
  rec.siegel_pass = true;   // empty product: 1 <= (1/(2 ln 2)) * 2 ln 2
  rec.abc_est_pass = true;  // vacuous: no independent derivation exists
  if (opts.key_M) rec.key_lemma = KeyLemmaVerdict::NotApplicable;
  return rec;
}

template <class WorkFn, class EmitFn>
void run_ordered_blocks(std::uint32_t nblocks, unsigned threads, WorkFn work, EmitFn emit) {
  if (nblocks == 0) return;
  if (threads <= 1) {
    for (std::uint32_t i = 0; i < nblocks; ++i) {
      auto r = work(i);
      emit(i, r);
    }
    return;
  }
  using Result = decltype(work(std::uint32_t(0)));
  std::mutex mu;
  std::condition_variable cv_ready, cv_space;
  std::map<std::uint32_t, Result> done;
  std::atomic<std::uint32_t> next{0};
  std::uint32_t emitted = 0;
  const std::uint32_t window = threads * 4;
  std::exception_ptr err;

  auto worker = [&] {
    while (true) {
      std::uint32_t i = next.fetch_add(1);
      if (i >= nblocks) return;
      try {
        Result r = work(i);
        std::unique_lock lk(mu);
        cv_space.wait(lk, [&] { return i < emitted + window || err; });
        if (err) return;
        done.emplace(i, std::move(r));
        cv_ready.notify_all();
      } catch (...) {
        std::scoped_lock lk(mu);
        if (!err) err = std::current_exception();
        cv_ready.notify_all();
        cv_space.notify_all();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

  {
    std::unique_lock lk(mu);
    while (emitted < nblocks && !err) {
      cv_ready.wait(lk, [&] { return err || done.count(emitted) != 0; });
      if (err) break;
      auto node = done.extract(emitted);
      lk.unlock();
      try {
        emit(emitted, node.mapped());
      } catch (...) {
        lk.lock();
        if (!err) err = std::current_exception();
        cv_space.notify_all();
        break;
      }
      lk.lock();
      ++emitted;
      cv_space.notify_all();
    }
    if (emitted >= nblocks || err) next.store(nblocks);
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail

/// All (a, b, a+b) with 1 <= a <= b, gcd(a,b) = 1, a+b <= c_max, ascending
/// (c, a), filtered.  The visitor may return false to stop early.
inline void enumerate_triples(std::uint32_t c_max, const TripleFilter& filter,
                              const FactorTable& table,
                              const std::function<bool(std::uint32_t, std::uint32_t, std::uint32_t)>& fn) {
  if (c_max < 3) throw std::domain_error("enumerate_triples: c_max must be at least 3");
  if (table.limit < c_max) throw std::domain_error("enumerate_triples: factor table too small");
  std::vector<std::pair<std::uint32_t, unsigned>> fs;
  for (std::uint32_t c = 2; c <= c_max; ++c) {
    for (std::uint32_t a = 1; 2 * a <= c; ++a) {
      std::uint32_t b = c - a;
      if (std::gcd(a, c) != 1) continue;  // gcd(a, a+b) = gcd(a, b)
      if (filter.min_omega > 0 || filter.min_quality || filter.exclude_1nq) {
        unsigned omega = 0;
        std::uint64_t rad = 1;
        for (std::uint32_t n : {a, b, c}) {
          table.factor(n, fs);
          omega += static_cast<unsigned>(fs.size());
          for (auto [p, e] : fs) rad *= p;
        }
        if (omega < filter.min_omega) continue;
        if (filter.min_quality &&
            !(std::log(double(c)) / std::log(double(rad)) > *filter.min_quality))
          continue;
        if (filter.exclude_1nq && a == 1 && (table.is_prime(b) || table.is_prime(c))) continue;
      }
      if (!fn(a, b, c)) return;
    }
  }
}

/// One full record for a table-range triple; nullopt when filtered out.
inline std::optional<ScanRecord> scan_one(std::uint32_t a, std::uint32_t b,
                                          const FactorTable& table, const ScanOptions& opts) {
  if (a == 1 && b == 1) {
    ScanRecord rec = detail::trivial_record(opts);
    if (rec.omega < opts.filter.min_omega) return std::nullopt;
    if (opts.filter.min_quality && !(rec.quality > *opts.filter.min_quality)) return std::nullopt;
    if (opts.filter.exclude_1nq) return std::nullopt;
    return rec;
  }
  detail::SmallCtx sc = detail::build_small(a, b, table);
  std::uint32_t c = static_cast<std::uint32_t>(sc.c);
  if (sc.omega < opts.filter.min_omega) return std::nullopt;
  double quality = std::log(double(sc.c)) / std::log(double(sc.rad));
  if (opts.filter.min_quality && !(quality > *opts.filter.min_quality)) return std::nullopt;
  bool excluded = a == 1 && (table.is_prime(b) || table.is_prime(c));
  if (opts.filter.exclude_1nq && excluded) return std::nullopt;

  ScanRecord rec;
  rec.a = static_cast<unsigned long>(a);
  rec.b = static_cast<unsigned long>(b);
  rec.c = static_cast<unsigned long>(c);
  rec.omega = sc.omega;
  rec.rad = static_cast<unsigned long>(sc.rad);
  rec.quality = quality;
  rec.excluded_1nq = excluded;

  Int witness_norm = 0;
  bool fast_ok =
      !opts.force_bigint && detail::fast_core<lattice::CheckedI128>(sc, opts, rec, witness_norm);
  if (!fast_ok) {
    TripleContext ctx = detail::context_from_small(sc, table);
    detail::big_core(ctx, opts, rec, witness_norm);
    if (opts.min_indep != MinIndepMode::Off) detail::min_stage(ctx, opts, rec, witness_norm);
  } else if (opts.min_indep != MinIndepMode::Off) {
    TripleContext ctx = detail::context_from_small(sc, table);
    detail::min_stage(ctx, opts, rec, witness_norm);
  }
  detail::check_exclusion_soundness(rec);
  return rec;
}

/// Sweep all triples with c <= c_max through the verification pipeline.
/// Records reach the sink in ascending (c, a) order regardless of thread
/// count; the summary is accumulated on the emitting thread.
inline ScanSummary scan(std::uint32_t c_max, const ScanOptions& opts,
                        const std::function<void(const ScanRecord&)>& sink) {
  ScanSummary sum;
  sum.config_hash = scan_config_hash("c<=" + std::to_string(c_max), opts);
  if (c_max < 3) return sum;
  FactorTable table(c_max);
  unsigned threads = opts.threads ? opts.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  std::uint32_t width = std::max<std::uint32_t>(1, c_max / 1024);
  std::uint32_t nblocks = (c_max - 1 + width - 1) / width;

  auto work = [&](std::uint32_t k) {
    std::vector<ScanRecord> out;
    std::uint32_t lo = 2 + k * width;
    std::uint32_t hi = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(std::uint64_t(lo) + width - 1, c_max));
    for (std::uint32_t c = lo; c <= hi; ++c)
      for (std::uint32_t a = 1; 2 * a <= c; ++a) {
        std::uint32_t b = c - a;
        if (std::gcd(a, c) != 1) continue;
        if (auto rec = scan_one(a, b, table, opts)) out.push_back(std::move(*rec));
      }
    return out;
  };
  auto emit = [&](std::uint32_t, std::vector<ScanRecord>& recs) {
    for (const ScanRecord& r : recs) {
      sum.absorb(r);
      sink(r);
    }
  };
  detail::run_ordered_blocks(nblocks, threads, work, emit);
  return sum;
}

inline std::pair<std::vector<ScanRecord>, ScanSummary> scan_collect(std::uint32_t c_max,
                                                                    const ScanOptions& opts = {}) {
  std::vector<ScanRecord> recs;
  ScanSummary sum = scan(c_max, opts, [&](const ScanRecord& r) { recs.push_back(r); });
  return {std::move(recs), sum};
}

// ---- imported triples ------------------------------------------------------------

struct ImportIssue {
  std::size_t line = 0;
  std::string message;
};

struct ImportResult {
  std::vector<std::array<Int, 3>> triples;
  std::vector<ImportIssue> issues;
};

/// Whitespace-separated "a b c" lines; '#' starts a comment.  Invalid lines
/// are collected with their line number and skipped, never fatal.
inline ImportResult import_triples(std::istream& in) {
  ImportResult out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 3) {
      out.issues.push_back({no, "expected three integers"});
      continue;
    }
    std::array<Int, 3> tr;
    try {
      for (int i = 0; i < 3; ++i) tr[i] = int_from_string(tok[i]);
    } catch (const std::exception&) {
      out.issues.push_back({no, "unparsable integer"});
      continue;
    }
    if (tr[0] < 1 || tr[1] < 1 || tr[2] < 2) {
      out.issues.push_back({no, "entries must be positive"});
      continue;
    }
    if (tr[0] > tr[1]) std::swap(tr[0], tr[1]);
    if (tr[0] + tr[1] != tr[2]) {
      out.issues.push_back({no, "a + b != c"});
      continue;
    }
    if (gcd(tr[0], tr[1]) != 1) {
      out.issues.push_back({no, "gcd(a,b) = " + Int(gcd(tr[0], tr[1])).get_str()});
      continue;
    }
    out.triples.push_back(std::move(tr));
  }
  return out;
}

inline ImportResult import_triples_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open triple file: " + path);
  return import_triples(f);
}

/// Imported triples may exceed any factor table, so this path always runs the
/// bigint pipeline.  Records are emitted in input order (each carries its own
/// (c, a) key).
inline ScanSummary scan_imported(const std::vector<std::array<Int, 3>>& triples,
                                 const ScanOptions& opts,
                                 const std::function<void(const ScanRecord&)>& sink) {
  ScanSummary sum;
  sum.config_hash = scan_config_hash("import", opts);
  for (const auto& tr : triples) {
    const Int &a = tr[0], &b = tr[1], &c = tr[2];
    if (a == 1 && b == 1) {
      ScanRecord rec = detail::trivial_record(opts);
      if (rec.omega >= opts.filter.min_omega && !opts.filter.exclude_1nq &&
          (!opts.filter.min_quality || rec.quality > *opts.filter.min_quality)) {
        sum.absorb(rec);
        sink(rec);
      }
      continue;
    }
    TripleContext ctx = build_context(a, b);
    double lnc = std::log(mpz_get_d(ctx.c.get_mpz_t()));
    double quality = lnc / std::log(mpz_get_d(ctx.rad_abc.get_mpz_t()));
    bool excluded = is_1Nq_form(ctx.a, ctx.b, ctx.c);
    if (ctx.omega_abc < opts.filter.min_omega) continue;
    if (opts.filter.min_quality && !(quality > *opts.filter.min_quality)) continue;
    if (opts.filter.exclude_1nq && excluded) continue;

    ScanRecord rec;
    rec.a = ctx.a;
    rec.b = ctx.b;
    rec.c = ctx.c;
    rec.omega = ctx.omega_abc;
    rec.rad = ctx.rad_abc;
    rec.quality = quality;
    rec.excluded_1nq = excluded;
    Int witness_norm = 0;
    detail::big_core(ctx, opts, rec, witness_norm);
    if (opts.min_indep != MinIndepMode::Off) detail::min_stage(ctx, opts, rec, witness_norm);
    detail::check_exclusion_soundness(rec);
    sum.absorb(rec);
    sink(rec);
  }
  return sum;
}

// ---- special families --------------------------------------------------------------

/// The complete list of coprime triples with omega(abc) <= 2 and c <= c_max:
/// (1,1,2), (1,8,9), and the power-of-two-next-to-a-prime shapes.
inline std::vector<std::array<Int, 3>> catalan_triples(std::uint32_t c_max) {
  std::vector<std::array<Int, 3>> out;
  if (c_max >= 2) out.push_back({Int(1), Int(1), Int(2)});
  if (c_max >= 9) out.push_back({Int(1), Int(8), Int(9)});
  for (std::uint64_t pw = 2; pw <= c_max; pw *= 2) {
    if (pw + 1 <= c_max && is_prime_u64(pw + 1))
      out.push_back({Int(1), Int(static_cast<unsigned long>(pw)),
                     Int(static_cast<unsigned long>(pw + 1))});
    if (pw >= 4 && is_prime_u64(pw - 1))
      out.push_back({Int(1), Int(static_cast<unsigned long>(pw - 1)),
                     Int(static_cast<unsigned long>(pw))});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x[2] != y[2]) return x[2] < y[2];
    return x[0] < y[0];
  });
  return out;
}

}  // namespace arithd
