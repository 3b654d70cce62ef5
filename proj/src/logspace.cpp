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

#include "census/logspace.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace census {

namespace {

// 20! is the largest factorial fitting in 64 bits.
uint64_t exact_factorial(long long n) {
  uint64_t f = 1;
  for (long long i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
  return f;
}

uint64_t exact_binomial(long long n, long long k) {
  if (k > n - k) k = n - k;
  uint64_t c = 1;
  for (long long i = 0; i < k; ++i) {
    c = c * static_cast<uint64_t>(n - i) / static_cast<uint64_t>(i + 1);
  }
  return c;
}

}  // namespace

double log_factorial(long long n) {
  if (n < 0) {
    throw std::invalid_argument("log_factorial: negative argument");
  }
  if (n <= 20) {
    return std::log(static_cast<double>(exact_factorial(n)));
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(long long n, long long k) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("log_binomial: requires 0 <= k <= n");
  }
  if (n <= 20) {
    return std::log(static_cast<double>(exact_binomial(n, k)));
  }
  double nd = static_cast<double>(n), kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
         std::lgamma(nd - kd + 1.0);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0;
    for (double v : values) acc += v;
    return acc;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace census
