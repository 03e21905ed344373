#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arithd/factor.hpp"
#include "arithd/primes.hpp"
#include "oracles.hpp"

using arithd::Factorization;
using arithd::Int;

namespace {

Int reconstruct(const Factorization& f) {
  Int n = 1;
  for (const auto& [p, e] : f.factors) n *= arithd::ipow(p, e);
  return n;
}

}  // namespace

TEST(CoreArith, FactorizeKnownValues) {
  auto f = arithd::factorize(10403);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, 101);
  EXPECT_EQ(f.factors[0].second, 1u);
  EXPECT_EQ(f.factors[1].first, 103);
  EXPECT_EQ(f.factors[1].second, 1u);
  // Agree with the naive oracle before trusting the value above.
  auto ref = oracle::trial_factor(10403);
  ASSERT_EQ(ref.size(), 2u);
  EXPECT_EQ(ref[0].first, 101u);
  EXPECT_EQ(ref[1].first, 103u);

  EXPECT_TRUE(arithd::factorize(1).factors.empty());
  auto g = arithd::factorize(Int(108));
  ASSERT_EQ(g.factors.size(), 2u);
  EXPECT_EQ(g.factors[0], (std::pair<Int, unsigned>(2, 2)));
  EXPECT_EQ(g.factors[1], (std::pair<Int, unsigned>(3, 3)));
  EXPECT_EQ(g.radical(), 6);
  EXPECT_EQ(g.omega(), 2u);
  EXPECT_EQ(arithd::divisor_count(g), 12);

  EXPECT_THROW(arithd::factorize(0), std::domain_error);
  EXPECT_THROW(arithd::factorize(-12), std::domain_error);
}

TEST(CoreArith, Valuation) {
  EXPECT_EQ(arithd::vp(arithd::ipow(2, 10) * 5, 2), 10u);
  EXPECT_EQ(arithd::vp(arithd::ipow(3, 100), 3), 100u);
  EXPECT_EQ(arithd::vp(10, 3), 0u);
  EXPECT_EQ(arithd::vp(1, 7), 0u);
  EXPECT_THROW(arithd::vp(12, 4), std::domain_error);
  EXPECT_THROW(arithd::vp(0, 2), std::domain_error);
}

TEST(CoreArith, IsPrimeSmallAgainstOracle) {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    EXPECT_EQ(arithd::is_prime_u64(n), oracle::trial_is_prime(n)) << n;
  }
}

TEST(CoreArith, IsPrimeKnownCases) {
  EXPECT_FALSE(arithd::is_prime(2047));  // 23 * 89, strong pseudoprime base 2
  EXPECT_TRUE(arithd::is_prime((Int(1) << 61) - 1));
  EXPECT_FALSE(arithd::is_prime((Int(1) << 67) - 1));  // 193707721 * 761838257287
  EXPECT_TRUE(arithd::is_prime(Int("1000000000000000003")));
  EXPECT_FALSE(arithd::is_prime(1));
  EXPECT_FALSE(arithd::is_prime(0));
  EXPECT_FALSE(arithd::is_prime(-7));
}

TEST(CoreArith, IsPrimeRangeLimit) {
  Int limit("3317044064679887385961981");
  EXPECT_THROW(arithd::is_prime(limit), std::domain_error);
  EXPECT_THROW(arithd::is_prime(limit + 12345), std::domain_error);
  EXPECT_NO_THROW(arithd::is_prime(limit - 1));
}

TEST(CoreArith, ExhaustiveReconstructionToMillion) {
  int omega_exceptions = 0;
  for (std::uint64_t n = 1; n <= 1000000; ++n) {
    Factorization f = arithd::factorize(n);
    ASSERT_EQ(reconstruct(f), n) << n;
    for (size_t i = 0; i + 1 < f.factors.size(); ++i)
      ASSERT_LT(f.factors[i].first, f.factors[i + 1].first) << n;
    // Distinct-prime count stays below ln n for n >= 3, except exactly n = 6.
    if (n >= 3) {
      bool holds = f.omega() < std::log(static_cast<double>(n));
      if (!holds) {
        ++omega_exceptions;
        EXPECT_EQ(n, 6u);
      }
    }
  }
  EXPECT_EQ(omega_exceptions, 1);
}

TEST(CoreArith, PrimeFactorsArePrime) {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<std::uint64_t> dist(2, 1000000000000ull);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t n = dist(rng);
    Factorization f = arithd::factorize(n);
    ASSERT_EQ(reconstruct(f), n);
    for (const auto& [p, e] : f.factors) {
      ASSERT_TRUE(arithd::is_prime(p)) << n << " " << p;
      ASSERT_GE(e, 1u);
    }
  }
}

TEST(CoreArith, RandomAgainstTrialOracle) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> dist(2, 100000000);
  for (int i = 0; i < 3000; ++i) {
    std::uint64_t n = dist(rng);
    auto ref = oracle::trial_factor(n);
    Factorization f = arithd::factorize(n);
    ASSERT_EQ(f.factors.size(), ref.size()) << n;
    for (size_t k = 0; k < ref.size(); ++k) {
      ASSERT_EQ(f.factors[k].first, ref[k].first) << n;
      ASSERT_EQ(f.factors[k].second, ref[k].second) << n;
    }
  }
}

TEST(CoreArith, SemiprimesBeyondTrialRange) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(100000000, 4000000000ull);
  auto next_prime = [](std::uint64_t n) {
    while (!arithd::is_prime_u64(n)) ++n;
    return n;
  };
  for (int i = 0; i < 100; ++i) {
    std::uint64_t p = next_prime(dist(rng));
    std::uint64_t q = next_prime(dist(rng));
    Int n = Int(static_cast<unsigned long>(p)) * Int(static_cast<unsigned long>(q));
    Factorization f = arithd::factorize(n);
    ASSERT_EQ(reconstruct(f), n);
    if (p == q) {
      ASSERT_EQ(f.factors.size(), 1u);
      EXPECT_EQ(f.factors[0].second, 2u);
    } else {
      ASSERT_EQ(f.factors.size(), 2u);
      EXPECT_EQ(f.factors[0].second, 1u);
      EXPECT_EQ(f.factors[1].second, 1u);
    }
  }
}

TEST(CoreArith, WideValuesUseBigPath) {
  Int m61 = (Int(1) << 61) - 1;
  Factorization sq = arithd::factorize(m61 * m61);
  ASSERT_EQ(sq.factors.size(), 1u);
  EXPECT_EQ(sq.factors[0].first, m61);
  EXPECT_EQ(sq.factors[0].second, 2u);

  Int big = m61 * Int("1000000007");
  Factorization f = arithd::factorize(big);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, Int("1000000007"));
  EXPECT_EQ(f.factors[1].first, m61);

  Factorization pw = arithd::factorize(arithd::ipow(2, 200) * 243);
  ASSERT_EQ(pw.factors.size(), 2u);
  EXPECT_EQ(pw.factors[0], (std::pair<Int, unsigned>(2, 200)));
  EXPECT_EQ(pw.factors[1], (std::pair<Int, unsigned>(3, 5)));
}

TEST(CoreArith, CacheDoesNotChangeResults) {
  arithd::FactorOptions no_cache;
  no_cache.use_cache = false;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> dist(2, 10000000000ull);
  for (int i = 0; i < 500; ++i) {
    Int n(static_cast<unsigned long>(dist(rng)));
    auto a = arithd::factorize(n);
    auto b = arithd::factorize(n, no_cache);
    auto c = arithd::factorize(n);  // cache hit
    ASSERT_EQ(a.factors, b.factors);
    ASSERT_EQ(a.factors, c.factors);
  }
}
