#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arithd/derivation.hpp"
#include "arithd/factor.hpp"
#include "arithd/int.hpp"
#include "arithd/lattice.hpp"
#include "arithd/logcmp.hpp"

namespace arithd {

/// Everything derived from one additive triple a + b = c with gcd(a,b) = 1.
/// All per-prime arrays are aligned with `support` (ascending primes of abc).
/// contrib_x[i] is the coefficient of psi(p_i) in d^psi(x), i.e. v_p(x)*(x/p);
/// eq_add is the linear form whose kernel is the additivity lattice.
struct TripleContext {
  Int a, b, c;
  Factorization fa, fb, fc;
  std::vector<Int> support;
  std::vector<unsigned> vp;  // exponent of support[i] in abc
  std::vector<Int> contrib_a, contrib_b, contrib_c;
  std::vector<Int> eq_add;
  Int rad_abc;
  unsigned omega_abc = 0;
  unsigned r = 0;  // rank of the additivity kernel: omega_abc - 1
};

inline TripleContext build_context(const Int& a, const Int& b, Factorization fa, Factorization fb,
                                   Factorization fc) {
  if (sign(a) <= 0 || sign(b) <= 0) throw std::domain_error("triple entries must be positive");
  if (a == 1 && b == 1) throw std::domain_error("triple (1,1) has no constraint primes on a,b");
  if (gcd(a, b) != 1) throw std::domain_error("triple entries must be coprime");

  TripleContext ctx;
  ctx.a = a;
  ctx.b = b;
  ctx.c = a + b;
  ctx.fa = std::move(fa);
  ctx.fb = std::move(fb);
  ctx.fc = std::move(fc);

  // gcd(a,b) = 1 forces the three supports to be pairwise disjoint.
  struct Entry {
    Int p;
    unsigned e;
    int side;  // 0 = a, 1 = b, 2 = c
  };
  std::vector<Entry> merged;
  for (const auto& [p, e] : ctx.fa.factors) merged.push_back({p, e, 0});
  for (const auto& [p, e] : ctx.fb.factors) merged.push_back({p, e, 1});
  for (const auto& [p, e] : ctx.fc.factors) merged.push_back({p, e, 2});
  std::sort(merged.begin(), merged.end(), [](const Entry& x, const Entry& y) { return x.p < y.p; });

  ctx.rad_abc = 1;
  const Int* vals[3] = {&ctx.a, &ctx.b, &ctx.c};
  for (const Entry& en : merged) {
    ctx.support.push_back(en.p);
    ctx.vp.push_back(en.e);
    ctx.rad_abc *= en.p;
    Int coeff = (*vals[en.side] / en.p) * en.e;
    ctx.contrib_a.push_back(en.side == 0 ? coeff : Int(0));
    ctx.contrib_b.push_back(en.side == 1 ? coeff : Int(0));
    ctx.contrib_c.push_back(en.side == 2 ? coeff : Int(0));
    ctx.eq_add.push_back(en.side == 2 ? Int(-coeff) : coeff);
  }
  ctx.omega_abc = static_cast<unsigned>(ctx.support.size());
  ctx.r = ctx.omega_abc - 1;
  return ctx;
}

inline TripleContext build_context(const Int& a, const Int& b) {
  if (sign(a) <= 0 || sign(b) <= 0) throw std::domain_error("triple entries must be positive");
  return build_context(a, b, factorize(a), factorize(b), factorize(a + b));
}

// ---- values of a coordinate vector --------------------------------------

inline Int apply_contrib(const std::vector<Int>& contrib, const lattice::Vec<Int>& v) {
  Int s = 0;
  for (size_t i = 0; i < contrib.size(); ++i) s += contrib[i] * v[i];
  return s;
}

inline Int deriv_a(const TripleContext& ctx, const lattice::Vec<Int>& v) {
  return apply_contrib(ctx.contrib_a, v);
}
inline Int deriv_b(const TripleContext& ctx, const lattice::Vec<Int>& v) {
  return apply_contrib(ctx.contrib_b, v);
}
inline Int deriv_c(const TripleContext& ctx, const lattice::Vec<Int>& v) {
  return apply_contrib(ctx.contrib_c, v);
}

inline Int wronskian_of_vector(const TripleContext& ctx, const lattice::Vec<Int>& v) {
  return ctx.a * deriv_b(ctx, v) - ctx.b * deriv_a(ctx, v);
}

inline Derivation derivation_from_vector(const TripleContext& ctx, const lattice::Vec<Int>& v) {
  std::map<Int, Int> vals;
  for (size_t i = 0; i < ctx.support.size(); ++i) vals[ctx.support[i]] = v[i];
  return Derivation(std::move(vals));
}

/// Coefficients of the linear form whose vanishing makes a and b dependent
/// (the wronskian divided by ab, cleared to integers by rad(ab)), returned
/// primitive with the first nonzero entry positive.
inline lattice::Vec<Int> dependence_vector(const TripleContext& ctx) {
  Int rad_ab = 1;
  for (const auto& [p, e] : ctx.fa.factors) rad_ab *= p;
  for (const auto& [p, e] : ctx.fb.factors) rad_ab *= p;
  lattice::Vec<Int> v;
  Int content = 0;
  for (size_t i = 0; i < ctx.support.size(); ++i) {
    Int entry = 0;
    if (sign(ctx.contrib_a[i]) != 0) entry = (rad_ab / ctx.support[i]) * ctx.vp[i];
    if (sign(ctx.contrib_b[i]) != 0) entry = -(rad_ab / ctx.support[i]) * ctx.vp[i];
    content = gcd(content, entry);
    v.push_back(entry);
  }
  if (sign(content) > 0)
    for (Int& x : v) x /= content;
  lattice::canonicalize_sign(v);
  return v;
}

// ---- kernel lattices ------------------------------------------------------

enum class LatticeKind { T, TCircle };

inline const char* kind_name(LatticeKind k) { return k == LatticeKind::T ? "T" : "Tcirc"; }

struct LatticeBasis {
  TripleContext ctx;
  LatticeKind kind = LatticeKind::T;
  lattice::Mat<Int> vectors;  // rows aligned with ctx.support
  bool reduced = false;
  bool escalated = false;
  bool bound_borderline = false;
};

/// Saturated basis of the additivity kernel (kind T, rank omega-1) or of its
/// dependence sublattice (kind TCircle, rank omega-2; empty when the rank
/// is zero).  Vectors are sign-canonical and sorted by sup-norm, unreduced.
inline LatticeBasis kernel_basis(const TripleContext& ctx, LatticeKind kind) {
  lattice::Mat<Int> rows{ctx.eq_add};
  if (kind == LatticeKind::TCircle) rows.push_back(dependence_vector(ctx));
  LatticeBasis out;
  out.ctx = ctx;
  out.kind = kind;
  out.vectors = lattice::kernel(rows);
  for (auto& v : out.vectors) lattice::canonicalize_sign(v);
  lattice::sort_by_sup_norm(out.vectors);
  return out;
}

inline Int product_of_norms(const lattice::Mat<Int>& vectors) {
  Int p = 1;
  for (const auto& v : vectors) p *= lattice::sup_norm(v);
  return p;
}

/// Verdict of prod <= (omega/(2 ln 2)) * c * ln(c), decided exactly.
inline Order norm_product_order(const TripleContext& ctx, const Int& product) {
  return cmp_linlog(2 * product, Int(2), Int(ctx.omega_abc) * ctx.c, ctx.c);
}

struct ReduceOptions {
  long delta_num = 99;
  long delta_den = 100;
  int supnorm_passes = 16;
  bool escalate = true;  // kind T: enforce the norm-product bound by search
  std::uint64_t enum_node_cap = 4000000;
};

namespace detail {

/// Replace-longest local search: when the reduced basis misses the product
/// bound, enumerate shorter lattice vectors and swap them in while the
/// lattice stays the same and the product strictly drops.
inline void escalate_product_bound(LatticeBasis& basis, const ReduceOptions& opts) {
  lattice::Mat<Int> rows{basis.ctx.eq_add};
  for (int round = 0; round < 32; ++round) {
    Order o = norm_product_order(basis.ctx, product_of_norms(basis.vectors));
    if (o == Order::Less || o == Order::Equal) return;
    Int radius = lattice::sup_norm(basis.vectors.back()) - 1;
    if (sign(radius) <= 0) break;
    lattice::Mat<Int> cands;
    lattice::EnumBudget budget{opts.enum_node_cap};
    lattice::enumerate_kernel_box(rows, radius, budget, [&](const lattice::Vec<Int>& v) {
      lattice::Vec<Int> w = v;
      lattice::canonicalize_sign(w);
      cands.push_back(std::move(w));
      return cands.size() < 4096;
    });
    std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
      Int nx = lattice::sup_norm(x), ny = lattice::sup_norm(y);
      if (nx != ny) return nx < ny;
      return lattice::lex_less(x, y);
    });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    bool improved = false;
    for (const auto& cand : cands) {
      Int cn = lattice::sup_norm(cand);
      for (size_t j = basis.vectors.size(); j-- > 0 && !improved;) {
        if (cn >= lattice::sup_norm(basis.vectors[j])) break;
        lattice::Mat<Int> trial = basis.vectors;
        trial[j] = cand;
        if (lattice::same_lattice(trial, basis.vectors)) {
          basis.vectors = std::move(trial);
          lattice::sort_by_sup_norm(basis.vectors);
          basis.escalated = true;
          improved = true;
        }
      }
      if (improved) break;
    }
    if (!improved) break;
  }
  basis.bound_borderline = true;
}

}  // namespace detail

/// LLL plus greedy sup-norm polish; same lattice, vectors sign-canonical and
/// sorted by ascending sup-norm.  For kind T the norm-product bound is then
/// enforced by enumeration escalation (bound_borderline flags the honest
/// failure case instead of looping forever).
inline LatticeBasis reduce_basis(const LatticeBasis& in, const ReduceOptions& opts = {}) {
  LatticeBasis out = in;
  out.reduced = true;
  if (out.vectors.size() >= 2) {
    lattice::lll_reduce(out.vectors, opts.delta_num, opts.delta_den);
    lattice::greedy_supnorm_reduce(out.vectors, opts.supnorm_passes);
  }
  for (auto& v : out.vectors) lattice::canonicalize_sign(v);
  lattice::sort_by_sup_norm(out.vectors);
  if (out.kind == LatticeKind::T && opts.escalate && !out.vectors.empty())
    detail::escalate_product_bound(out, opts);
  return out;
}

// ---- reports ---------------------------------------------------------------

struct SiegelReport {
  Int product;
  Order order = Order::Borderline;  // product vs (omega/(2 ln 2)) c ln c
  bool pass = false;
  double bound_approx = 0;
  double ratio = 0;
};

inline SiegelReport siegel_check(const LatticeBasis& basis) {
  if (basis.kind != LatticeKind::T)
    throw std::domain_error("siegel_check expects a basis of the full additivity kernel");
  SiegelReport rep;
  rep.product = product_of_norms(basis.vectors);
  rep.order = norm_product_order(basis.ctx, rep.product);
  rep.pass = rep.order == Order::Less || rep.order == Order::Equal;
  double c = mpz_get_d(basis.ctx.c.get_mpz_t());
  rep.bound_approx = basis.ctx.omega_abc / (2.0 * std::log(2.0)) * c * std::log(c);
  rep.ratio = mpz_get_d(rep.product.get_mpz_t()) / rep.bound_approx;
  return rep;
}

/// True iff some entry of the triple is 1 and another entry is prime.
inline bool is_1Nq_form(const Int& a, const Int& b, const Int& c) {
  const Int* e[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    if (*e[i] != 1) continue;
    for (int j = 0; j < 3; ++j)
      if (j != i && is_prime(*e[j])) return true;
  }
  return false;
}

/// The smallest reduced-basis vector with nonvanishing wronskian, plus every
/// per-derivation bound the triple is expected to satisfy.
struct IndependentWitness {
  Derivation psi;
  lattice::Vec<Int> vector;
  Int norm;
  Int wr;
  Order norm_bound = Order::Borderline;    // ||psi|| vs (omega/(2 ln 2)) c ln c
  Order abc_estimate = Order::Borderline;  // c/ln c vs rad * ||psi|| / ln 2
  bool divisibility = false;               // abc | W * rad
  bool product_bound = false;              // abc <= |W| * rad
};

inline IndependentWitness independent_witness(const LatticeBasis& basis) {
  if (basis.kind != LatticeKind::T || basis.vectors.empty())
    throw std::domain_error("independent witness needs a nonempty additivity-kernel basis");
  const TripleContext& ctx = basis.ctx;
  for (const auto& v : basis.vectors) {
    Int w = wronskian_of_vector(ctx, v);
    if (sign(w) == 0) continue;
    IndependentWitness out;
    out.vector = v;
    out.psi = derivation_from_vector(ctx, v);
    out.norm = lattice::sup_norm(v);
    out.wr = w;
    out.norm_bound = cmp_linlog(2 * out.norm, Int(2), Int(ctx.omega_abc) * ctx.c, ctx.c);
    out.abc_estimate = cmp_linlog(ctx.c, Int(2), ctx.rad_abc * out.norm, ctx.c);
    Int abc = ctx.a * ctx.b * ctx.c;
    Int wr_rad = abs(w) * ctx.rad_abc;
    out.divisibility = mpz_divisible_p(wr_rad.get_mpz_t(), abc.get_mpz_t()) != 0;
    out.product_bound = abc <= wr_rad;
    return out;
  }
  // Unreachable for a full-rank basis: the dependent sublattice has smaller
  // rank, so it cannot contain every basis vector.
  throw std::logic_error("no independent vector in a full additivity-kernel basis");
}

// ---- minimal independent derivation ----------------------------------------

enum class SearchMode { Exact, Heuristic };

struct MinPsiOptions {
  ReduceOptions reduce;
  unsigned rank_ceiling = 10;          // exact mode refuses larger ranks
  std::uint64_t node_cap = 50000000;   // enumeration budget across rounds
  long heuristic_radius = 2;           // coefficient box around the basis
};

struct MinPsiResult {
  bool found = false;
  Derivation psi;
  lattice::Vec<Int> vector;
  Int norm;
  Int wr;
  double eta = 0;  // ln(norm)/ln(c)
  bool optimal = false;
  bool budget_exhausted = false;
};

namespace detail {

struct BestVec {
  bool set = false;
  lattice::Vec<Int> v;
  Int norm;

  void offer(lattice::Vec<Int> cand) {
    lattice::canonicalize_sign(cand);
    Int n = lattice::sup_norm(cand);
    if (!set || n < norm || (n == norm && lattice::lex_less(cand, v))) {
      set = true;
      v = std::move(cand);
      norm = std::move(n);
    }
  }
};

}  // namespace detail

/// Minimum-sup-norm element of the additivity kernel with nonvanishing
/// wronskian, searched up to norm_cap.  Exact mode enumerates boxes of
/// doubling radius (complete, hence optimal unless the node budget dies);
/// heuristic mode scans small combinations of the reduced basis and reports
/// an upper bound only.
inline MinPsiResult min_independent(const TripleContext& ctx, const Int& norm_cap,
                                    SearchMode mode = SearchMode::Exact,
                                    const MinPsiOptions& opts = {}) {
  if (sign(norm_cap) <= 0) throw std::domain_error("norm cap must be positive");
  MinPsiResult res;
  LatticeBasis red = reduce_basis(kernel_basis(ctx, LatticeKind::T), opts.reduce);

  // Smallest independent basis vector: exists because the dependent
  // sublattice has rank one less than the basis size.
  size_t lead = red.vectors.size();
  for (size_t i = 0; i < red.vectors.size(); ++i) {
    if (sign(wronskian_of_vector(ctx, red.vectors[i])) != 0) {
      lead = i;
      break;
    }
  }
  if (lead == red.vectors.size())
    throw std::logic_error("no independent vector in a full additivity-kernel basis");
  Int lead_norm = lattice::sup_norm(red.vectors[lead]);

  auto finish = [&](lattice::Vec<Int> v, bool optimal, bool budget) {
    res.found = true;
    res.vector = std::move(v);
    res.norm = lattice::sup_norm(res.vector);
    res.psi = derivation_from_vector(ctx, res.vector);
    res.wr = wronskian_of_vector(ctx, res.vector);
    res.eta = std::log(mpz_get_d(res.norm.get_mpz_t())) / std::log(mpz_get_d(ctx.c.get_mpz_t()));
    res.optimal = optimal;
    res.budget_exhausted = budget;
    return res;
  };

  if (mode == SearchMode::Heuristic) {
    detail::BestVec best;
    if (lead_norm <= norm_cap) best.offer(red.vectors[lead]);
    size_t r = red.vectors.size(), n = ctx.support.size();
    long h = opts.heuristic_radius;
    std::vector<long> t(r, -h);
    std::uint64_t work = 0;
    bool budget_hit = false;
    while (true) {
      lattice::Vec<Int> v(n, Int(0));
      bool nonzero = false;
      for (size_t i = 0; i < r; ++i) {
        if (t[i] == 0) continue;
        nonzero = true;
        for (size_t j = 0; j < n; ++j) v[j] += t[i] * red.vectors[i][j];
      }
      if (nonzero && lattice::sup_norm(v) <= norm_cap &&
          sign(wronskian_of_vector(ctx, v)) != 0 &&
          (!best.set || lattice::sup_norm(v) <= best.norm))
        best.offer(std::move(v));
      if (++work > opts.node_cap) {
        budget_hit = true;
        break;
      }
      size_t i = 0;
      while (i < r && t[i] == h) t[i++] = -h;
      if (i == r) break;
      ++t[i];
    }
    if (!best.set) {
      res.budget_exhausted = budget_hit;
      return res;
    }
    return finish(best.v, false, budget_hit);
  }

  if (ctx.r > opts.rank_ceiling)
    throw std::domain_error("rank exceeds the exact-search ceiling");

  Int limit = std::min(lead_norm, norm_cap);
  lattice::Mat<Int> rows{ctx.eq_add};
  lattice::EnumBudget budget{opts.node_cap};
  Int radius = 1;
  while (true) {
    Int cur = std::min(radius, limit);
    detail::BestVec best;
    bool complete = lattice::enumerate_kernel_box(rows, cur, budget, [&](const auto& v) {
      if (sign(wronskian_of_vector(ctx, v)) != 0) best.offer(v);
      return true;
    });
    if (best.set) return finish(best.v, complete, !complete);
    if (!complete) {
      // Budget died before any hit: the reduced basis vector is still a
      // valid upper-bound answer when it fits under the cap.
      if (lead_norm <= norm_cap) return finish(red.vectors[lead], false, true);
      res.budget_exhausted = true;
      return res;
    }
    if (cur == limit) return res;  // norm_cap genuinely exhausted
    radius *= 2;
  }
}

// ---- smallest derivation with a nonzero derivative triple ------------------

struct NonzeroResult {
  Derivation psi;
  lattice::Vec<Int> vector;
  Int norm;
  Int da, db, dc;
  Int basis_product;
  Order bound_order = Order::Borderline;  // ||psi||^2 vs (omega/(2 ln 2)) c ln c
  bool pass = false;
};

/// Smallest reduced-basis vector whose derivative triple is nonzero; its
/// norm squared obeys the basis product bound because at least two basis
/// vectors lie outside the joint-vanishing sublattice.  Needs a, b > 1.
inline NonzeroResult min_nontrivial(const TripleContext& ctx, const ReduceOptions& opts = {}) {
  if (ctx.a == 1 || ctx.b == 1)
    throw std::domain_error("nonzero-derivative search requires all triple entries > 1");
  LatticeBasis red = reduce_basis(kernel_basis(ctx, LatticeKind::T), opts);
  for (const auto& v : red.vectors) {
    Int da = deriv_a(ctx, v), db = deriv_b(ctx, v);
    if (sign(da) == 0 && sign(db) == 0) continue;
    NonzeroResult out;
    out.vector = v;
    out.psi = derivation_from_vector(ctx, v);
    out.norm = lattice::sup_norm(v);
    out.da = da;
    out.db = db;
    out.dc = deriv_c(ctx, v);
    out.basis_product = product_of_norms(red.vectors);
    out.bound_order =
        cmp_linlog(2 * out.norm * out.norm, Int(2), Int(ctx.omega_abc) * ctx.c, ctx.c);
    out.pass = out.bound_order == Order::Less || out.bound_order == Order::Equal;
    return out;
  }
  throw std::logic_error("every basis vector killed both derivatives");
}

// ---- dependent-sublattice product lower bound -------------------------------

enum class KeyLemmaVerdict { Pass, Fail, NotApplicable };

inline const char* key_lemma_verdict_name(KeyLemmaVerdict v) {
  switch (v) {
    case KeyLemmaVerdict::Pass: return "pass";
    case KeyLemmaVerdict::Fail: return "fail";
    default: return "not-applicable";
  }
}

struct KeyLemmaReport {
  KeyLemmaVerdict verdict = KeyLemmaVerdict::NotApplicable;
  bool excluded_form = false;      // (1,8,9) or one entry 1 next to a prime
  bool radical_condition = false;  // c < rad(abc)^M
  Int product;                     // norm product of the reduced dependent basis
  Int vp_product;                  // product of all prime exponents in abc
  Order order = Order::Borderline;  // product * vp_product vs c^mu
  double mu = 0;
  Rational threshold;
};

/// Checks product >= c^mu / vp_product with mu = (2-M)/(4M) on the reduced
/// dependent sublattice.  Diagnostic fields are filled even when the triple
/// is excluded or the radical condition fails (verdict NotApplicable).
inline KeyLemmaReport key_lemma_check(const TripleContext& ctx, Rational M,
                                      const ReduceOptions& opts = {}) {
  M.normalize();
  if (M.den <= 0 || M.num <= M.den || M.num >= 2 * M.den)
    throw std::domain_error("exponent threshold must satisfy 1 < M < 2");
  unsigned long P = static_cast<unsigned long>(M.num);
  unsigned long Q = static_cast<unsigned long>(M.den);

  KeyLemmaReport rep;
  rep.threshold = M;
  rep.mu = static_cast<double>(2 * Q - P) / static_cast<double>(4 * P);
  rep.excluded_form = (std::min(ctx.a, ctx.b) == 1 && std::max(ctx.a, ctx.b) == 8) ||
                      is_1Nq_form(ctx.a, ctx.b, ctx.c);
  rep.radical_condition = cmp_pow(ctx.c, Q, ctx.rad_abc, P) == Order::Less;

  LatticeBasis red = reduce_basis(kernel_basis(ctx, LatticeKind::TCircle), opts);
  rep.product = product_of_norms(red.vectors);
  rep.vp_product = 1;
  for (unsigned e : ctx.vp) rep.vp_product *= e;
  rep.order = cmp_pow(rep.product * rep.vp_product, 4 * P, ctx.c, 2 * Q - P);

  if (rep.excluded_form || !rep.radical_condition)
    rep.verdict = KeyLemmaVerdict::NotApplicable;
  else if (rep.order == Order::Greater || rep.order == Order::Equal)
    rep.verdict = KeyLemmaVerdict::Pass;
  else
    rep.verdict = KeyLemmaVerdict::Fail;
  return rep;
}

// ---- JSON -------------------------------------------------------------------

inline nlohmann::json vector_to_json(const lattice::Vec<Int>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Int& x : v) arr.push_back(x.get_str());
  return arr;
}

inline nlohmann::json context_to_json(const TripleContext& ctx) {
  nlohmann::json j;
  j["a"] = ctx.a.get_str();
  j["b"] = ctx.b.get_str();
  j["c"] = ctx.c.get_str();
  j["support"] = vector_to_json(ctx.support);
  j["eq_add"] = vector_to_json(ctx.eq_add);
  j["omega"] = ctx.omega_abc;
  j["rank"] = ctx.r;
  j["rad"] = ctx.rad_abc.get_str();
  return j;
}

inline nlohmann::json basis_to_json(const LatticeBasis& basis) {
  nlohmann::json j;
  j["kind"] = kind_name(basis.kind);
  j["support"] = vector_to_json(basis.ctx.support);
  nlohmann::json vecs = nlohmann::json::array();
  for (const auto& v : basis.vectors) vecs.push_back(vector_to_json(v));
  j["vectors"] = vecs;
  j["reduced"] = basis.reduced;
  if (basis.escalated) j["escalated"] = true;
  if (basis.bound_borderline) j["bound_borderline"] = true;
  return j;
}

inline nlohmann::json siegel_to_json(const SiegelReport& rep) {
  nlohmann::json j;
  j["product"] = rep.product.get_str();
  j["order"] = order_name(rep.order);
  j["pass"] = rep.pass;
  j["bound_approx"] = rep.bound_approx;
  j["ratio"] = rep.ratio;
  return j;
}

inline nlohmann::json minpsi_to_json(const MinPsiResult& res) {
  nlohmann::json j;
  j["found"] = res.found;
  if (res.found) {
    j["psi"] = derivation_to_json(res.psi);
    j["vector"] = vector_to_json(res.vector);
    j["norm"] = res.norm.get_str();
    j["wronskian"] = res.wr.get_str();
    j["eta"] = res.eta;
    j["optimal"] = res.optimal;
  }
  if (res.budget_exhausted) j["budget_exhausted"] = true;
  return j;
}

inline nlohmann::json nonzero_to_json(const NonzeroResult& res) {
  nlohmann::json j;
  j["psi"] = derivation_to_json(res.psi);
  j["vector"] = vector_to_json(res.vector);
  j["norm"] = res.norm.get_str();
  j["da"] = res.da.get_str();
  j["db"] = res.db.get_str();
  j["dc"] = res.dc.get_str();
  j["basis_product"] = res.basis_product.get_str();
  j["order"] = order_name(res.bound_order);
  j["pass"] = res.pass;
  return j;
}

inline nlohmann::json keylemma_to_json(const KeyLemmaReport& rep) {
  nlohmann::json j;
  j["verdict"] = key_lemma_verdict_name(rep.verdict);
  j["excluded_form"] = rep.excluded_form;
  j["radical_condition"] = rep.radical_condition;
  j["product"] = rep.product.get_str();
  j["vp_product"] = rep.vp_product.get_str();
  j["order"] = order_name(rep.order);
  j["mu"] = rep.mu;
  j["threshold"] = rep.threshold.str();
  return j;
}

}  // namespace arithd
