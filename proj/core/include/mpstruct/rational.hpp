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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace mpstruct {

/// Exact rational used for every cost factor and every derived cost.
using Rational = boost::rational<std::int64_t>;

/// Parses "7", "-3", "3/4" or a plain decimal such as "1.25".
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Converts a binary double to the rational of its shortest round-trip
/// decimal spelling, so 1.5 -> 3/2 and 0.1 -> 1/10.
Rational rational_from_double(double value);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace mpstruct
