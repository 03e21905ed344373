#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arithd {

/// Arbitrary-precision integer used throughout the library.
using Int = mpz_class;

inline int sign(const Int& n) { return mpz_sgn(n.get_mpz_t()); }

inline bool fits_i64(const Int& n) { return n.fits_slong_p(); }

inline std::int64_t to_i64(const Int& n) {
  if (!fits_i64(n)) throw std::overflow_error("value does not fit in 64 bits");
  return mpz_get_si(n.get_mpz_t());
}

inline bool fits_u64(const Int& n) { return sign(n) >= 0 && n.fits_ulong_p(); }

inline std::uint64_t to_u64(const Int& n) {
  if (!fits_u64(n)) throw std::overflow_error("value does not fit in u64");
  return mpz_get_ui(n.get_mpz_t());
}

inline Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Conservative: |n| (not just the magnitude pattern) must fit with headroom.
inline bool fits_i128(const Int& n) {
  return mpz_sizeinbase(n.get_mpz_t(), 2) <= 126;
}

inline __int128 to_i128(const Int& n) {
  if (!fits_i128(n)) throw std::overflow_error("value does not fit in 128 bits");
  unsigned __int128 u = 0;
  size_t limbs = mpz_size(n.get_mpz_t());
  if (limbs > 1) u = (unsigned __int128)mpz_getlimbn(n.get_mpz_t(), 1) << 64;
  if (limbs > 0) u |= mpz_getlimbn(n.get_mpz_t(), 0);
  return sign(n) < 0 ? -(__int128)u : (__int128)u;
}

inline Int int_from_i128(__int128 x) {
  bool neg = x < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)x : (unsigned __int128)x;
  Int r((unsigned long)(u >> 64));
  r <<= 64;
  r += (unsigned long)(u & ~0ull);
  return neg ? Int(-r) : r;
}

/// Number of bits in |n|; bit_length(0) == 0.
inline unsigned long bit_length(const Int& n) {
  if (sign(n) == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

/// floor(log2 n) for n >= 1.
inline unsigned long floor_log2(const Int& n) {
  if (sign(n) <= 0) throw std::domain_error("floor_log2 requires n >= 1");
  return bit_length(n) - 1;
}

/// If |n| is a power of two, stores the exponent and returns true.
inline bool power_of_2_exponent(const Int& n, unsigned long* k) {
  if (sign(n) == 0) return false;
  Int a = abs(n);
  if (mpz_popcount(a.get_mpz_t()) != 1) return false;
  *k = mpz_scan1(a.get_mpz_t(), 0);
  return true;
}

inline Int int_from_string(std::string_view s) {
  Int r;
  if (mpz_set_str(r.get_mpz_t(), std::string(s).c_str(), 10) != 0)
    throw std::invalid_argument("not a decimal integer: " + std::string(s));
  return r;
}

/// Exact rational with machine-word components.  Covers the two places a
/// non-integer parameter appears: the LLL quality factor and the exponent
/// threshold of the key-lemma check.
struct Rational {
  long num = 0;
  long den = 1;

  Rational() = default;
  Rational(long n, long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Accepts "p/q", "n", or a decimal like "1.6" (converted exactly).
inline Rational parse_rational(std::string_view s) {
  auto parse_long = [](std::string_view t) {
    if (t.empty()) throw std::invalid_argument("empty number");
    size_t pos = 0;
    long v = std::stol(std::string(t), &pos);
    if (pos != t.size()) throw std::invalid_argument("trailing junk in number");
    return v;
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(parse_long(s.substr(0, slash)), parse_long(s.substr(slash + 1)));
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    size_t frac_len = s.size() - dot - 1;
    if (frac_len > 17) throw std::invalid_argument("decimal too long");
    long den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(parse_long(digits), den);
  }
  return Rational(parse_long(s), 1);
}

/// 64-bit FNV-1a over a byte string; used to fingerprint configurations.
inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fnv1a_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace arithd
