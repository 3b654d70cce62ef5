// Copyright 2026 The census authors
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

#include <boost/multiprecision/cpp_int.hpp>

namespace census {

// Arbitrary-precision count. Counting routines never round.
using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Natural logarithm of a positive big integer. Throws std::domain_error for
// arguments <= 0.
double log_big(const BigCount& value);

// A probability as an exact ratio of two counts. `value` is the reduced
// rational numerator/denominator.
struct ExactProbability {
  BigCount numerator;
  BigCount denominator;
  BigRational value;

  // Requires denominator > 0 and 0 <= numerator <= denominator.
  static ExactProbability make(BigCount num, BigCount den);
};

}  // namespace census
