// Copyright 2026 The mpstruct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpstruct/rational.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <system_error>

namespace mpstruct {

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  // [sign] digits [. digits] [e|E [sign] digits]
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t mantissa = 0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max() / 10;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == '.') {
      if (seen_point) break;
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') break;
    if (mantissa > kMax) {
      throw std::invalid_argument("rational '" + std::string(whole) + "' overflows");
    }
    mantissa = mantissa * 10 + (ch - '0');
    any_digit = true;
    if (seen_point) --scale;
  }
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    scale += static_cast<int>(parse_integer(text.substr(pos + 1), whole));
    pos = text.size();
  }
  if (!any_digit || pos != text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  Rational result(negative ? -mantissa : mantissa);
  for (; scale > 0; --scale) result *= 10;
  for (; scale < 0; ++scale) result /= 10;
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_integer(trim(text.substr(0, slash)), whole);
    const auto den = parse_integer(trim(text.substr(slash + 1)), whole);
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    }
    return Rational(num, den);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) {
    return parse_decimal(text, whole);
  }
  return Rational(parse_integer(text, whole));
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite cost factor");
  }
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw std::invalid_argument("cannot format cost factor");
  }
  const std::string_view text(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
  return parse_decimal(text, text);
}

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) {
    return std::to_string(value.numerator());
  }
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

}  // namespace mpstruct
