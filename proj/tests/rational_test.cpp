// Copyright 2026 The Acquihire Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "acquihire/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <stdexcept>

namespace acquihire {
namespace {

TEST(ParseRational, DecimalsAreExact) {
  EXPECT_EQ(ParseRational("0.9"), Rational(9, 10));
  EXPECT_EQ(ParseRational("-2.50"), Rational(-5, 2));
  EXPECT_EQ(ParseRational(".5"), Rational(1, 2));
  EXPECT_EQ(ParseRational("3."), Rational(3));
  EXPECT_EQ(ParseRational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(ParseRational("2.5E2"), Rational(250));
  EXPECT_EQ(ParseRational("  7 "), Rational(7));
  EXPECT_EQ(ParseRational("09.10"), Rational(91, 10));
  EXPECT_EQ(ParseRational("010/08"), Rational(5, 4));
}

TEST(ParseRational, Fractions) {
  EXPECT_EQ(ParseRational("49/45"), Rational(49, 45));
  EXPECT_EQ(ParseRational("-6/4"), Rational(-3, 2));
  EXPECT_THROW(ParseRational("1/0"), std::invalid_argument);
}

TEST(ParseRational, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1..2", "1/2/3", "--1", "1e", "0x10",
                          "nan", "inf", "1/-2", "."}) {
    EXPECT_THROW(ParseRational(bad), std::invalid_argument) << bad;
  }
}

TEST(FormatSig, SixDigits) {
  EXPECT_EQ(FormatSig(Rational(17, 48)), "0.354167");
  EXPECT_EQ(FormatSig(Rational(5, 2)), "2.5");
  EXPECT_EQ(FormatSig(Rational(256, 90)), "2.84444");
  EXPECT_EQ(FormatSig(Rational(0)), "0");
  EXPECT_EQ(FormatSig(-0.0), "0");
  EXPECT_EQ(FormatSig(1e-7), "1e-07");
}

TEST(FromDouble, ExactAndFiniteOnly) {
  EXPECT_EQ(FromDouble(0.5), Rational(1, 2));
  EXPECT_THROW(FromDouble(std::numeric_limits<double>::quiet_NaN()),
               std::invalid_argument);
}

TEST(Pow, SmallExponents) {
  EXPECT_EQ(Pow(Rational(9, 10), 2), Rational(81, 100));
  EXPECT_EQ(Pow(Rational(3), 0), Rational(1));
}

TEST(ToDouble, NearestDouble) {
  EXPECT_EQ(ToDouble(ParseRational("0.9")), 0.9);
  EXPECT_EQ(ToDouble(ParseRational("-0.1")), -0.1);
  EXPECT_EQ(ToDouble(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(ToDouble(Rational(49, 45)), 49.0 / 45.0);
  EXPECT_EQ(ToDouble(Rational(0)), 0.0);
  EXPECT_EQ(ToDouble(Rational(1, 1 << 30)), std::ldexp(1.0, -30));
  // Halfway between 1 and the next double rounds to even.
  const Rational half = 1 + Rational(1) / (mpz_class(1) << 53);
  EXPECT_EQ(ToDouble(half), 1.0);
  for (long k = 1; k < 2000; k += 7) {
    const double want = static_cast<double>(k) / 997.0;
    EXPECT_EQ(ToDouble(Rational(k, 997)), want) << k;
  }
}

}  // namespace
}  // namespace acquihire
