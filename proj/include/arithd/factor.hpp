#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arithd/int.hpp"
#include "arithd/primes.hpp"

namespace arithd {

/// Factorization of a positive integer: distinct primes in ascending order
/// with their exponents.  Empty list encodes 1.
struct Factorization {
  Int value = 1;
  std::vector<std::pair<Int, unsigned>> factors;

  unsigned omega() const { return static_cast<unsigned>(factors.size()); }

  Int radical() const {
    Int r = 1;
    for (const auto& [p, e] : factors) r *= p;
    return r;
  }

  unsigned exponent_of(const Int& p) const {
    for (const auto& [q, e] : factors)
      if (q == p) return e;
    return 0;
  }
};

struct FactorOptions {
  std::uint32_t trial_bound = detail::kDefaultTrialBound;
  bool use_cache = true;
};

namespace detail {

using CompactFactors = std::vector<std::pair<std::uint64_t, unsigned>>;

inline void factor_u64_rec(std::uint64_t n, std::map<std::uint64_t, unsigned>& acc) {
  if (n == 1) return;
  if (miller_rabin_u64(n)) {
    acc[n] += 1;
    return;
  }
  std::uint64_t d = pollard_brent_u64(n);
  factor_u64_rec(d, acc);
  factor_u64_rec(n / d, acc);
}

inline CompactFactors factor_u64(std::uint64_t n, std::uint32_t trial_bound) {
  CompactFactors out;
  const auto& primes =
      trial_bound == kDefaultTrialBound ? default_trial_primes() : primes_below(trial_bound);
  for (std::uint32_t p : primes) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) {
    if ((__uint128_t)trial_bound * trial_bound >= n || miller_rabin_u64(n)) {
      out.emplace_back(n, 1);
    } else {
      std::map<std::uint64_t, unsigned> acc;
      factor_u64_rec(n, acc);
      for (const auto& [p, e] : acc) out.emplace_back(p, e);
    }
  }
  return out;
}

inline void factor_mpz_rec(const Int& n, std::map<Int, unsigned>& acc, unsigned mult);

inline void factor_mpz_core(const Int& n, std::map<Int, unsigned>& acc, unsigned mult) {
  if (n == 1) return;
  if (fits_u64(n)) {
    std::map<std::uint64_t, unsigned> small;
    factor_u64_rec(to_u64(n), small);
    for (const auto& [p, e] : small) acc[Int(static_cast<unsigned long>(p))] += e * mult;
    return;
  }
  if (miller_rabin_mpz(n)) {
    acc[n] += mult;
    return;
  }
  // A perfect power defeats the rho cycle; peel it first.
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2; k <= bit_length(n); ++k) {
      Int root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        factor_mpz_rec(root, acc, mult * static_cast<unsigned>(k));
        return;
      }
    }
  }
  Int d = pollard_brent_mpz(n);
  factor_mpz_rec(d, acc, mult);
  factor_mpz_rec(n / d, acc, mult);
}

inline void factor_mpz_rec(const Int& n, std::map<Int, unsigned>& acc, unsigned mult) {
  factor_mpz_core(n, acc, mult);
}

struct FactorCache {
  std::mutex mu;
  std::unordered_map<std::uint64_t, CompactFactors> map;
  static constexpr std::size_t kCap = 1u << 18;

  static FactorCache& instance() {
    static FactorCache c;
    return c;
  }
};

}  // namespace detail

/// Complete factorization of n >= 1.  Trial division up to the configured
/// bound, then deterministic Miller-Rabin plus Brent's rho on what remains.
inline Factorization factorize(const Int& n, const FactorOptions& opts = {}) {
  if (sign(n) <= 0) throw std::domain_error("factorize requires n >= 1");
  Factorization out;
  out.value = n;
  if (n == 1) return out;

  if (fits_u64(n)) {
    std::uint64_t v = to_u64(n);
    bool cacheable = opts.use_cache && opts.trial_bound == detail::kDefaultTrialBound;
    if (cacheable) {
      auto& cache = detail::FactorCache::instance();
      std::lock_guard<std::mutex> lock(cache.mu);
      auto it = cache.map.find(v);
      if (it != cache.map.end()) {
        for (const auto& [p, e] : it->second)
          out.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
        return out;
      }
    }
    detail::CompactFactors fs = detail::factor_u64(v, opts.trial_bound);
    if (cacheable) {
      auto& cache = detail::FactorCache::instance();
      std::lock_guard<std::mutex> lock(cache.mu);
      if (cache.map.size() >= detail::FactorCache::kCap) cache.map.clear();
      cache.map.emplace(v, fs);
    }
    for (const auto& [p, e] : fs) out.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
    return out;
  }

  // Big path: strip trial primes, then recurse on the remainder.
  Int m = n;
  const auto& primes = opts.trial_bound == detail::kDefaultTrialBound
                           ? detail::default_trial_primes()
                           : primes_below(opts.trial_bound);
  std::map<Int, unsigned> acc;
  for (std::uint32_t p : primes) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      acc[Int(p)] = e;
      if (m == 1) break;
    }
  }
  if (m > 1) detail::factor_mpz_core(m, acc, 1);
  for (const auto& [p, e] : acc) out.factors.emplace_back(p, e);
  return out;
}

/// p-adic valuation of n (n >= 1, p must be prime).
inline unsigned vp(const Int& n, const Int& p) {
  if (sign(n) <= 0) throw std::domain_error("vp requires n >= 1");
  if (!is_prime(p)) throw std::domain_error("vp requires a prime modulus");
  if (n == 1) return 0;
  Int m = n;
  unsigned e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

inline Int radical(const Int& n) { return factorize(n).radical(); }

inline unsigned omega(const Int& n) { return factorize(n).omega(); }

inline Int divisor_count(const Factorization& f) {
  Int d = 1;
  for (const auto& [p, e] : f.factors) d *= static_cast<unsigned long>(e) + 1;
  return d;
}

}  // namespace arithd
