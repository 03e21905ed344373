#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <vector>

#include "arithd/int.hpp"

namespace arithd {

/// All primes p <= bound, by sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

namespace detail {

inline constexpr std::uint32_t kDefaultTrialBound = 1'000'000;

inline const std::vector<std::uint32_t>& default_trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_below(kDefaultTrialBound);
  return primes;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((__uint128_t)a * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    e >>= 1;
  }
  return r;
}

// Witness set deterministic for every n below 3317044064679887385961981
// (first 13 primes; Sorenson & Webster).
inline constexpr std::uint64_t kMillerRabinWitnesses[] = {2,  3,  5,  7,  11, 13, 17,
                                                          19, 23, 29, 31, 37, 41};

inline const char* kPrimalityLimitStr = "3317044064679887385961981";

inline bool miller_rabin_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kMillerRabinWitnesses) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline bool miller_rabin_mpz(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  Int nm1 = n - 1;
  for (std::uint64_t a : kMillerRabinWitnesses) {
    Int x;
    Int base(static_cast<unsigned long>(a));
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == nm1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

/// Deterministic primality test.  Valid strictly below 3317044064679887385961981
/// (about 3.3e24); beyond that the witness set loses its certificate and the
/// call is rejected instead of silently degrading.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const Int limit = int_from_string(detail::kPrimalityLimitStr);
  if (n >= limit)
    throw std::domain_error("is_prime: argument exceeds deterministic range (>= 3.3e24)");
  if (fits_u64(n)) return detail::miller_rabin_u64(to_u64(n));
  return detail::miller_rabin_mpz(n);
}

inline bool is_prime_u64(std::uint64_t n) { return detail::miller_rabin_u64(n); }

namespace detail {

/// Brent-cycle Pollard rho.  Requires n composite, odd, > 1, and not divisible
/// by tiny primes.  Returns a nontrivial factor.  Deterministic: the additive
/// constant walks 1, 2, 3, ...
inline std::uint64_t pollard_brent_u64(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, g = 1, q = 1, xs = 0;
    std::uint64_t r = 1;
    const std::uint64_t batch = 128;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        xs = y;
        std::uint64_t lim = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        xs = f(xs);
        g = std::gcd(x > xs ? x - xs : xs - x, n);
      }
    }
    if (g != n) return g;
  }
}

inline Int pollard_brent_mpz(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    auto f = [&](const Int& x) { return Int((x * x + c) % n); };
    Int x = 2, y = 2, g = 1, q = 1, xs = 0;
    std::uint64_t r = 1;
    const std::uint64_t batch = 128;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        xs = y;
        std::uint64_t lim = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        xs = f(xs);
        g = gcd(abs(x - xs), n);
      }
    }
    if (g != n) return g;
  }
}

}  // namespace detail

}  // namespace arithd
