#include <gtest/gtest.h>

#include "support.hpp"
#include "twzhu/scalar.hpp"

using namespace twzhu;
using twzhu::testing::Gen;

TEST(Scalar, CanonicalForm) {
  EXPECT_EQ(Scalar(6, -4).toString(), "-3/2");
  EXPECT_EQ(Scalar(4, 2).toString(), "2");
  EXPECT_EQ(Scalar::parse("-10/4"), Scalar(-5, 2));
  EXPECT_EQ(Scalar::parse("7"), Scalar(7));
  EXPECT_TRUE(Scalar::parse("0/5").isZero());
}

TEST(Scalar, ParseRejectsMalformed) {
  for (const char* bad : {"", "1/", "/2", "1/0", "1.5", "a", "--1", "1/2/3", "1 /2"})
    EXPECT_THROW(Scalar::parse(bad), std::invalid_argument) << bad;
}

TEST(Scalar, DivisionByZero) { EXPECT_THROW(Scalar(1) / Scalar(0), std::domain_error); }

TEST(Scalar, Floor) {
  EXPECT_EQ(Scalar(-3, 2).floor(), -2);
  EXPECT_EQ(Scalar(3, 2).floor(), 1);
  EXPECT_EQ(Scalar(4).floor(), 4);
}

TEST(Scalar, StringRoundTripProperty) {
  Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    Scalar s = gen.rational(1000, 97) * gen.rational(1000, 89);
    EXPECT_EQ(Scalar::parse(s.toString()), s);
  }
}

TEST(Scalar, FieldAxiomsProperty) {
  Gen gen(12);
  for (int i = 0; i < 300; ++i) {
    Scalar a = gen.rational(), b = gen.rational(), c = gen.nonzeroRational();
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ((a / c) * c, a);
    EXPECT_EQ(a - a, Scalar(0));
    EXPECT_EQ(-(-a), a);
  }
}

TEST(Binomial, Examples) {
  Gen gen(13);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(binomial(gen.rational(), 0), Scalar(1));
  EXPECT_EQ(binomial(Scalar(5), 2), Scalar(10));
  EXPECT_EQ(binomial(Scalar(1, 2), 2), Scalar(-1, 8));
  EXPECT_EQ(binomial(Scalar(-1), 3), Scalar(-1));
  EXPECT_EQ(binomial(Mode::fromScaled(3, 2), 2), Scalar(3, 8));
}

TEST(Binomial, PascalProperty) {
  Gen gen(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Scalar q = gen.rational(40, 9);
    for (int i = 1; i <= 12; ++i) EXPECT_EQ(binomial(q, i), binomial(q - 1, i) + binomial(q - 1, i - 1));
  }
}

TEST(Binomial, VanishesBelowIntegerTop) {
  for (int n = 0; n < 10; ++n)
    for (int i = n + 1; i < 14; ++i) EXPECT_TRUE(binomial(Scalar(n), i).isZero());
}

TEST(Binomial, MatchesFactorialsOnIntegers) {
  // C(n, i) = n! / (i! (n-i)!) for 0 <= i <= n.
  for (long n = 0; n <= 15; ++n) {
    std::vector<Scalar> f{Scalar(1)};
    for (long k = 1; k <= n; ++k) f.push_back(f.back() * Scalar(k));
    for (int i = 0; i <= n; ++i) EXPECT_EQ(binomial(Scalar(n), i), f[n] / (f[i] * f[n - i]));
  }
}

TEST(Mode, FloorAndBar) {
  EXPECT_EQ(floorPart(Mode::fromScaled(3, 2)), 1);
  EXPECT_EQ(floorPart(Mode::integer(2, 2)), 2);
  EXPECT_EQ(floorPart(Mode::integer(0, 2)), 0);
  EXPECT_EQ(floorPart(Mode::fromScaled(-1, 2)), -1);
  EXPECT_EQ(barPart(Mode::fromScaled(5, 2)), 1);
  EXPECT_EQ(barPart(Mode::integer(2, 2)), 0);
  EXPECT_EQ(barPart(Mode::fromScaled(4, 3)), 1);
}

TEST(Mode, FloorBarProperty) {
  Gen gen(15);
  for (int order : {1, 2, 3, 4, 6}) {
    for (int i = 0; i < 200; ++i) {
      const Mode n = gen.natural(order, 60);
      const int bar = barPart(n);
      EXPECT_GE(bar, 0);
      EXPECT_LT(bar, order);
      EXPECT_EQ(Scalar(bar) + Scalar(order) * Scalar(floorPart(n)), Scalar(order) * n.value());
    }
  }
}

TEST(Mode, ParseAndErrors) {
  EXPECT_EQ(Mode::parse("-3/2", 2).scaled(), -3);
  EXPECT_EQ(Mode::parse("2", 2).scaled(), 4);
  EXPECT_THROW(Mode::parse("1/3", 2), std::invalid_argument);
  EXPECT_THROW(Mode::integer(1, 0), std::invalid_argument);
  EXPECT_THROW(Mode::fromScaled(1, 2).toInteger(), std::logic_error);
}

TEST(Mode, MixedOrderComparison) {
  EXPECT_EQ(Mode::fromScaled(2, 2), Mode::integer(1, 1));
  EXPECT_LT(Mode::fromScaled(1, 2), Mode::integer(1, 1));
  EXPECT_EQ(Mode::fromScaled(1, 2).toString(), "1/2");
}

TEST(Mode, ArithmeticProperty) {
  Gen gen(16);
  for (int i = 0; i < 300; ++i) {
    const Mode a = gen.mode(2, 40), b = gen.mode(2, 40);
    EXPECT_EQ((a + b).value(), a.value() + b.value());
    EXPECT_EQ((a - b).value(), a.value() - b.value());
    EXPECT_EQ((a + 3).value(), a.value() + Scalar(3));
    EXPECT_EQ(Mode::parse(a.toString(), 2), a);
  }
}

TEST(DeltaIndicator, Examples) {
  EXPECT_EQ(deltaIndicator(1, 1, 2), 1);
  EXPECT_EQ(deltaIndicator(0, 1, 2), 0);
  EXPECT_EQ(deltaIndicator(0, 2, 2), 0);
  EXPECT_EQ(deltaIndicator(1, 2, 2), 0);
  EXPECT_EQ(deltaIndicator(0, 0, 1), 1);
}

TEST(DeltaIndicator, Table) {
  for (int T = 1; T <= 5; ++T)
    for (int i = 0; i < T; ++i)
      for (int r = 0; r <= T; ++r) EXPECT_EQ(deltaIndicator(i, r, T), (r <= i && r < T) ? 1 : 0);
}

TEST(DeltaIndicator, RangeErrors) {
  EXPECT_THROW(deltaIndicator(2, 0, 2), std::out_of_range);
  EXPECT_THROW(deltaIndicator(-1, 0, 2), std::out_of_range);
  EXPECT_THROW(deltaIndicator(0, 3, 2), std::out_of_range);
  EXPECT_THROW(deltaIndicator(0, -1, 2), std::out_of_range);
}

TEST(SignPower, Parity) {
  EXPECT_EQ(signPower(0), 1);
  EXPECT_EQ(signPower(3), -1);
  EXPECT_EQ(signPower(-3), -1);
  EXPECT_EQ(signPower(-4), 1);
}
