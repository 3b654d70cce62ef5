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

#include <span>

namespace census {

// log(n!). Exact integer factorial followed by log for n <= 20, lgamma above.
double log_factorial(long long n);

// log C(n, k). Requires 0 <= k <= n; exact route for n <= 20, lgamma above.
double log_binomial(long long n, long long k);

// Tree-shaped summation; keeps cancellation error small for the centered
// moment sums used by the statistics bundle.
double pairwise_sum(std::span<const double> values);

}  // namespace census
