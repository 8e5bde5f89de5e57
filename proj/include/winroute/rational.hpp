// Copyright 2026 The winroute Authors
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

namespace winroute {

using Rational = boost::rational<std::int64_t>;

// Parses "p/q" or "p". Throws InputError on anything else, including q == 0.
Rational ParseRational(std::string_view text);

// Always "p/q", also for integers ("2/1").
std::string FormatRational(const Rational& r);

// floor(r * n) for n >= 0, computed without leaving integer arithmetic.
inline std::int64_t FloorTimes(const Rational& r, std::int64_t n) {
  const std::int64_t num = r.numerator() * n;
  const std::int64_t den = r.denominator();
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

// value <= r * n, exactly.
inline bool AtMostTimes(std::int64_t value, const Rational& r, std::int64_t n) {
  return value * r.denominator() <= r.numerator() * n;
}

}  // namespace winroute
