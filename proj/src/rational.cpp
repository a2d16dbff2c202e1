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

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace acquihire {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational PowerOfTen(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(
                                      exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  return Rational(mpz_class(1), p);
}

[[noreturn]] void Malformed(std::string_view text) {
  throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  if (s.empty()) Malformed(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) Malformed(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" +
                                            std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view ex = s.substr(e + 1);
      bool ex_negative = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        ex_negative = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!AllDigits(ex) || ex.size() > 6) Malformed(text);
      exponent = std::stol(std::string(ex));
      if (ex_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) Malformed(text);
    if (!int_part.empty() && !AllDigits(int_part)) Malformed(text);
    if (!frac_part.empty() && !AllDigits(frac_part)) Malformed(text);
    std::string digits = std::string(int_part) + std::string(frac_part);
    value = Rational(mpz_class(digits, 10));
    value *= PowerOfTen(exponent - static_cast<long>(frac_part.size()));
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

Rational FromDouble(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rational(x);
}

// Nearest double, ties to even. mpq_get_d truncates, which prints 9/10 as
// 0.8999999999999999.
double ToDouble(const Rational& q) {
  if (q == 0) return 0.0;
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  // Scale so that 2^53 <= num / den < 2^54, keeping one guard bit.
  long shift = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 54;
  if (shift > 0) {
    den <<= shift;
  } else if (shift < 0) {
    num <<= -shift;
  }
  while (num >= (den << 54)) {
    den <<= 1;
    ++shift;
  }
  while (num < (den << 53)) {
    num <<= 1;
    --shift;
  }
  mpz_class quot, rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // quot has 54 bits; drop the guard bit with round half to even.
  const bool guard = mpz_tstbit(quot.get_mpz_t(), 0);
  quot >>= 1;
  ++shift;
  if (guard && (rem != 0 || mpz_tstbit(quot.get_mpz_t(), 0))) quot += 1;
  const double mag = std::ldexp(quot.get_d(), static_cast<int>(shift));
  return q < 0 ? -mag : mag;
}

std::string ToExactString(const Rational& q) { return q.get_str(); }

std::string FormatSig(double x, int digits) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::string FormatSig(const Rational& q, int digits) {
  return FormatSig(ToDouble(q), digits);
}

Rational Pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace acquihire
