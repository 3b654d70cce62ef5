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

#include "census/bigint.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace census {

double log_big(const BigCount& value) {
  if (value <= 0) {
    throw std::domain_error("log_big: argument must be positive");
  }
  unsigned top_bit = boost::multiprecision::msb(value);
  if (top_bit < 63) {
    return std::log(static_cast<double>(value.convert_to<uint64_t>()));
  }
  // Keep the top 62 bits and account for the discarded shift in log space.
  unsigned shift = top_bit - 61;
  BigCount head = value >> shift;
  return std::log(static_cast<double>(head.convert_to<uint64_t>())) +
         static_cast<double>(shift) * std::log(2.0);
}

ExactProbability ExactProbability::make(BigCount num, BigCount den) {
  if (den <= 0) {
    throw std::domain_error("ExactProbability: denominator must be positive");
  }
  if (num < 0 || num > den) {
    throw std::domain_error("ExactProbability: numerator outside [0, den]");
  }
  ExactProbability p;
  p.value = BigRational(num, den);
  p.numerator = std::move(num);
  p.denominator = std::move(den);
  return p;
}

}  // namespace census
