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

#ifndef ACQUIHIRE_RATIONAL_HPP_
#define ACQUIHIRE_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace acquihire {

// All payoff, surplus and probability arithmetic is exact.
using Rational = mpq_class;

// Accepts "3", "-2/7", "0.354167", "1e-3", "2.5e2". Decimal input is read
// exactly, so "0.9" is 9/10 and not the nearest double. Throws
// std::invalid_argument on malformed text.
Rational ParseRational(std::string_view text);

// Exact value of a finite double. Throws std::invalid_argument on NaN/inf.
Rational FromDouble(double x);

double ToDouble(const Rational& q);

// "p/q" or "p" in lowest terms.
std::string ToExactString(const Rational& q);

// Six significant digits, %g style, locale independent.
std::string FormatSig(double x, int digits = 6);
std::string FormatSig(const Rational& q, int digits = 6);

Rational Pow(const Rational& base, unsigned exponent);

// num/den in lowest terms. mpq_class(num, den) does not canonicalize.
inline Rational Frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace acquihire

#endif  // ACQUIHIRE_RATIONAL_HPP_
