#include "arithd/logcmp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arithd/int.hpp"

using arithd::cmp_linlog;
using arithd::cmp_pow;
using arithd::Int;
using arithd::ipow;
using arithd::LogComparator;
using arithd::Order;

TEST(LogCmp, ZeroCoefficients) {
  EXPECT_EQ(cmp_linlog(0, 2, 0, 3), Order::Equal);
  EXPECT_EQ(cmp_linlog(0, 5, 7, 3), Order::Less);
  EXPECT_EQ(cmp_linlog(3, 17, 0, 2), Order::Greater);
}

TEST(LogCmp, DomainErrors) {
  EXPECT_THROW(cmp_linlog(1, 1, 1, 2), std::domain_error);
  EXPECT_THROW(cmp_linlog(1, 2, 1, 0), std::domain_error);
  EXPECT_THROW(cmp_linlog(-1, 2, 1, 2), std::domain_error);
  EXPECT_THROW(cmp_linlog(1, 2, -3, 2), std::domain_error);
}

TEST(LogCmp, PowersOfTwoAreSymbolic) {
  EXPECT_EQ(cmp_linlog(3, 4, 2, 8), Order::Equal);    // 6 ln2 == 6 ln2
  EXPECT_EQ(cmp_linlog(1, 2, 1, 4), Order::Less);
  EXPECT_EQ(cmp_linlog(5, 8, 7, 2), Order::Greater);  // 15 vs 7
  // Huge coefficients must still be exact, not float-approximate.
  Int big = Int(10) * ipow(Int(10), 49);
  EXPECT_EQ(cmp_linlog(big, 2, big / 10, 1024), Order::Equal);
  EXPECT_EQ(cmp_linlog(big, 2, big / 10 + 1, 1024), Order::Less);
  EXPECT_EQ(cmp_linlog(big + 1, 2, big / 10, 1024), Order::Greater);
}

TEST(LogCmp, EqualBases) {
  EXPECT_EQ(cmp_linlog(5, 10, 5, 10), Order::Equal);
  EXPECT_EQ(cmp_linlog(4, 10, 5, 10), Order::Less);
  Int big("987654321098765432109876543210");
  EXPECT_EQ(cmp_linlog(big, 6, big - 1, 6), Order::Greater);
}

// n*2^(n+1)*ln2 == 2*2^n*ln(2^n) exactly, for every n: the two-power channel
// must report Equal, never Borderline, no matter how large n gets.
TEST(LogCmp, TwoPowerEqualityChannel) {
  for (unsigned n : {2u, 3u, 5u, 7u, 13u, 17u, 31u, 61u, 127u}) {
    Int c = ipow(Int(2), n);
    Int norm = Int(n) * (c / 2);                    // n * 2^(n-1)
    EXPECT_EQ(cmp_linlog(4 * norm, 2, 2 * c, c), Order::Equal) << n;
    EXPECT_EQ(cmp_linlog(4 * norm + 1, 2, 2 * c, c), Order::Greater) << n;
    EXPECT_EQ(cmp_linlog(4 * norm - 1, 2, 2 * c, c), Order::Less) << n;
  }
}

TEST(LogCmp, IntervalSeparation) {
  EXPECT_EQ(cmp_linlog(1, 3, 1, 2), Order::Greater);
  EXPECT_EQ(cmp_linlog(100, 2, 69, 3), Order::Less);
  // Successive continued-fraction convergents of ln3/ln2 alternate sides.
  EXPECT_EQ(cmp_linlog(485, 2, 306, 3), Order::Greater);
  EXPECT_EQ(cmp_linlog(1054, 2, 665, 3), Order::Less);
  EXPECT_EQ(cmp_linlog(24727, 2, 15601, 3), Order::Greater);
  EXPECT_EQ(cmp_linlog(50508, 2, 31867, 3), Order::Less);
}

TEST(LogCmp, AgreesWithDoubleWhenFarApart) {
  for (long a = 1; a <= 40; ++a) {
    for (long x = 2; x <= 12; ++x) {
      for (long b = 1; b <= 40; ++b) {
        for (long y = 2; y <= 12; ++y) {
          double lhs = a * std::log((double)x), rhs = b * std::log((double)y);
          if (std::abs(lhs - rhs) < 1e-6) continue;  // too close to trust double
          Order want = lhs < rhs ? Order::Less : Order::Greater;
          EXPECT_EQ(cmp_linlog(a, x, b, y), want) << a << " " << x << " " << b << " " << y;
        }
      }
    }
  }
}

// The double prescreen must never change an answer, only speed it up.
TEST(LogCmp, PrescreenAgreesWithLadder) {
  arithd::CmpOptions off;
  off.prescreen = false;
  LogComparator slow(off), fast;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(1, 2000000), base(2, 2000000);
  for (int iter = 0; iter < 4000; ++iter) {
    Int a(coef(rng)), x(base(rng)), b(coef(rng)), y(base(rng));
    EXPECT_EQ(fast.cmp_linlog(a, x, b, y), slow.cmp_linlog(a, x, b, y))
        << a << " " << x << " " << b << " " << y;
  }
  // Near-tie where the prescreen margin must refuse to decide: both paths
  // still agree because the ladder takes over.
  EXPECT_EQ(fast.cmp_linlog(485, 2, 306, 3), slow.cmp_linlog(485, 2, 306, 3));
  EXPECT_EQ(fast.cmp_linlog(2, 3, 1, 9), Order::Equal);
}

TEST(LogCmp, ExactPowerFallbackFindsEquality) {
  EXPECT_EQ(cmp_linlog(2, 3, 1, 9), Order::Equal);
  EXPECT_EQ(cmp_linlog(2, 27, 3, 9), Order::Equal);    // 6 ln3 both sides
  EXPECT_EQ(cmp_linlog(6, 10, 3, 100), Order::Equal);
  EXPECT_EQ(cmp_linlog(2, 3, 1, 10), Order::Less);
  EXPECT_EQ(cmp_linlog(15, 12, 5, 1728), Order::Equal);
}

TEST(LogCmp, BorderlineWhenExactWouldBeHuge) {
  // 3000000*ln3 == 1500000*ln9 is a true equality, but certifying it needs
  // ~6M-bit powers, beyond the default exact budget.
  arithd::CmpOptions tight;
  tight.max_exact_bits = 1u << 20;
  LogComparator small(tight);
  EXPECT_EQ(small.cmp_linlog(3000000, 3, 1500000, 9), Order::Borderline);

  arithd::CmpOptions roomy;
  roomy.max_exact_bits = 1ul << 24;
  LogComparator large(roomy);
  EXPECT_EQ(large.cmp_linlog(3000000, 3, 1500000, 9), Order::Equal);
}

TEST(LogCmp, CoefficientsBeyondUint64) {
  Int big("123456789012345678901234567890123456789");
  EXPECT_EQ(cmp_linlog(big, 3, 1, 2), Order::Greater);
  EXPECT_EQ(cmp_linlog(1, 3, big, 5), Order::Less);
  // Truly equal sides with word-overflowing coefficients cannot be certified
  // exactly, so the honest answer is Borderline rather than a guess.
  EXPECT_EQ(cmp_linlog(2 * big, 3, big, 9), Order::Borderline);
}

TEST(LogCmp, CmpPowBasics) {
  EXPECT_EQ(cmp_pow(2, 10, 3, 6), Order::Greater);  // 1024 vs 729
  EXPECT_EQ(cmp_pow(2, 2, 4, 1), Order::Equal);
  EXPECT_EQ(cmp_pow(31, 2, 10, 3), Order::Less);
  EXPECT_EQ(cmp_pow(7, 0, 1, 5), Order::Equal);     // 1 vs 1
  EXPECT_THROW(cmp_pow(0, 2, 3, 1), std::domain_error);
  EXPECT_THROW(cmp_pow(-2, 2, 3, 1), std::domain_error);
  EXPECT_THROW(cmp_pow(3, 1ul << 60, 2, 1), std::overflow_error);
}
