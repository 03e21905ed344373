#pragma once

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <unordered_map>

#include "arithd/int.hpp"

namespace arithd {

/// Verdict of a rigorous comparison.  Borderline means the configured
/// precision ladder could not separate the sides and no exact route applied.
enum class Order { Less, Equal, Greater, Borderline };

inline const char* order_name(Order o) {
  switch (o) {
    case Order::Less: return "less";
    case Order::Equal: return "equal";
    case Order::Greater: return "greater";
    default: return "borderline";
  }
}

struct CmpOptions {
  unsigned start_prec = 128;
  unsigned max_prec = 1024;
  // Exact power fallback engages only if both sides stay below this many bits.
  unsigned long max_exact_bits = 1ul << 22;
  // Decide clearly-separated sides in plain doubles before touching mpfr.
  bool prescreen = true;
};

namespace detail {

struct MpfrVal {
  mpfr_t v;
  explicit MpfrVal(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~MpfrVal() { mpfr_clear(v); }
  MpfrVal(const MpfrVal&) = delete;
  MpfrVal& operator=(const MpfrVal&) = delete;
};

}  // namespace detail

/// Exact comparison of x^p against y^q for nonnegative integer exponents.
inline Order cmp_pow(const Int& x, unsigned long p, const Int& y, unsigned long q) {
  if (sign(x) <= 0 || sign(y) <= 0) throw std::domain_error("cmp_pow requires positive bases");
  // Same screen as cmp_linlog: exact double conversions below 2^53 leave only
  // a few ulp of log error per side, so a 1e-12 relative gap already decides.
  if (fits_u64(x) && fits_u64(y)) {
    std::uint64_t ux = to_u64(x), uy = to_u64(y);
    const std::uint64_t lim = 1ull << 53;
    if (ux < lim && uy < lim && p < lim && q < lim) {
      double lhs = double(p) * std::log(double(ux));
      double rhs = double(q) * std::log(double(uy));
      if (std::abs(lhs - rhs) > 1e-12 * std::max({lhs, rhs, 1.0}))
        return lhs < rhs ? Order::Less : Order::Greater;
    }
  }
  if ((__uint128_t)bit_length(x) * p > (1ul << 26) || (__uint128_t)bit_length(y) * q > (1ul << 26))
    throw std::overflow_error("cmp_pow operands too large");
  Int lhs = ipow(x, p);
  Int rhs = ipow(y, q);
  int c = cmp(lhs, rhs);
  return c < 0 ? Order::Less : (c > 0 ? Order::Greater : Order::Equal);
}

/// Decides the sign of A*ln(x) - B*ln(y) for integers A,B >= 0 and x,y >= 2.
/// Strategy: symbolic cancellation for powers of two and equal bases, then an
/// interval-arithmetic ladder with directed rounding, then exact integer
/// powers when feasible.  Never guesses: unresolved cases come back Borderline.
class LogComparator {
 public:
  explicit LogComparator(CmpOptions opts = {}) : opts_(opts) {}

  Order cmp_linlog(const Int& A, const Int& x, const Int& B, const Int& y) {
    if (x < 2 || y < 2) throw std::domain_error("cmp_linlog requires bases >= 2");
    if (sign(A) < 0 || sign(B) < 0) throw std::domain_error("cmp_linlog requires A,B >= 0");
    int sa = sign(A), sb = sign(B);
    if (sa == 0 && sb == 0) return Order::Equal;
    if (sa == 0) return Order::Less;
    if (sb == 0) return Order::Greater;

    unsigned long j = 0, k = 0;
    if (power_of_2_exponent(x, &j) && power_of_2_exponent(y, &k)) {
      int c = cmp(Int(A * j), Int(B * k));
      return c < 0 ? Order::Less : (c > 0 ? Order::Greater : Order::Equal);
    }
    if (x == y) {
      int c = cmp(A, B);
      return c < 0 ? Order::Less : (c > 0 ? Order::Greater : Order::Equal);
    }

    // Cheap screen: with all operands below 2^53 the double conversions are
    // exact and each side carries at most a few ulp of log/multiply error
    // (< 1e-15 relative), so a 1e-12 relative gap is decisive.
    if (opts_.prescreen && fits_u64(A) && fits_u64(B) && fits_u64(x) && fits_u64(y)) {
      std::uint64_t ua = to_u64(A), ub = to_u64(B), ux = to_u64(x), uy = to_u64(y);
      const std::uint64_t lim = 1ull << 53;
      if (ua < lim && ub < lim && ux < lim && uy < lim) {
        double lhs = (double)ua * std::log((double)ux);
        double rhs = (double)ub * std::log((double)uy);
        if (std::abs(lhs - rhs) > 1e-12 * std::max(lhs, rhs))
          return lhs < rhs ? Order::Less : Order::Greater;
      }
    }

    for (unsigned prec = opts_.start_prec; prec <= opts_.max_prec; prec *= 2) {
      detail::MpfrVal llo(prec), lhi(prec), rlo(prec), rhi(prec);
      term_interval(A, x, prec, llo.v, lhi.v);
      term_interval(B, y, prec, rlo.v, rhi.v);
      if (mpfr_cmp(lhi.v, rlo.v) < 0) return Order::Less;
      if (mpfr_cmp(llo.v, rhi.v) > 0) return Order::Greater;
    }

    // Interval ladder exhausted: the sides are equal or absurdly close.
    if (fits_u64(A) && fits_u64(B)) {
      __uint128_t lb = (__uint128_t)bit_length(x) * to_u64(A);
      __uint128_t rb = (__uint128_t)bit_length(y) * to_u64(B);
      if (lb <= opts_.max_exact_bits && rb <= opts_.max_exact_bits)
        return cmp_pow(x, to_u64(A), y, to_u64(B));
    }
    return Order::Borderline;
  }

 private:
  struct LnEntry {
    std::unique_ptr<detail::MpfrVal> lo, hi;
  };

  CmpOptions opts_;
  std::unordered_map<std::uint64_t, LnEntry> ln_cache_;

  static void ln_interval(const Int& x, unsigned prec, mpfr_t lo, mpfr_t hi) {
    detail::MpfrVal t(prec);
    mpfr_set_z(t.v, x.get_mpz_t(), MPFR_RNDD);
    mpfr_log(lo, t.v, MPFR_RNDD);
    mpfr_set_z(t.v, x.get_mpz_t(), MPFR_RNDU);
    mpfr_log(hi, t.v, MPFR_RNDU);
  }

  // [lo,hi] enclosing A*ln(x); A >= 1, x >= 2, so everything is positive.
  void term_interval(const Int& A, const Int& x, unsigned prec, mpfr_t lo, mpfr_t hi) {
    if (prec == opts_.start_prec && fits_u64(x)) {
      std::uint64_t key = to_u64(x);
      auto it = ln_cache_.find(key);
      if (it == ln_cache_.end()) {
        if (ln_cache_.size() >= (1u << 16)) ln_cache_.clear();
        LnEntry e;
        e.lo = std::make_unique<detail::MpfrVal>(prec);
        e.hi = std::make_unique<detail::MpfrVal>(prec);
        ln_interval(x, prec, e.lo->v, e.hi->v);
        it = ln_cache_.emplace(key, std::move(e)).first;
      }
      mpfr_mul_z(lo, it->second.lo->v, A.get_mpz_t(), MPFR_RNDD);
      mpfr_mul_z(hi, it->second.hi->v, A.get_mpz_t(), MPFR_RNDU);
      return;
    }
    detail::MpfrVal llo(prec), lhi(prec);
    ln_interval(x, prec, llo.v, lhi.v);
    mpfr_mul_z(lo, llo.v, A.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi, lhi.v, A.get_mpz_t(), MPFR_RNDU);
  }
};

/// Starting precision picked up by comparators constructed afterwards; set it
/// before spawning any comparison work.
inline std::atomic<unsigned>& ambient_start_prec() {
  static std::atomic<unsigned> v{128};
  return v;
}

/// Shared thread-local comparator (caches logarithms of small arguments).
inline Order cmp_linlog(const Int& A, const Int& x, const Int& B, const Int& y) {
  thread_local LogComparator cmp([] {
    CmpOptions o;
    o.start_prec = ambient_start_prec().load();
    if (o.max_prec < 8 * o.start_prec) o.max_prec = 8 * o.start_prec;
    return o;
  }());
  return cmp.cmp_linlog(A, x, B, y);
}

}  // namespace arithd
