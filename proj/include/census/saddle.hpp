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

#include <stdexcept>
#include <string>
#include <vector>

#include "census/instance.hpp"

namespace census {

// Stationary point of the counting integrand. With r = sqrt(lambda/(1-lambda))
// the per-row and per-column activities are
//   q_j = r*(1+a_j)/(1-r^2*a_j),   r_k = r*(1+b_k)/(1-r^2*b_k),
// and the cell occupation probabilities are
//   lambda_jk = q_j*r_k/(1+q_j*r_k) = lambda*(1+a_j)*(1+b_k)/(1+r^2*a_j*b_k).
// z_mat stores Z_jk = a_j*b_k*(1-r^2-r^2*a_j-r^2*b_k)/(1+r^2*a_j*b_k);
// cell-wise, lambda_jk/lambda == 1 + a_j + b_k + Z_jk exactly. Scaling q by
// c and the column activities by 1/c leaves
// every lambda_jk unchanged; that freedom is pinned by the balance
// condition sum_j (n-x_j)*a_j = sum_k (m-y_k)*b_k.
struct SaddlePoint {
  int m = 0, n = 0;
  double lambda = 0;
  double r = 0;
  std::vector<double> a, b;
  std::vector<double> q, rr;
  std::vector<std::vector<double>> lambda_mat;
  std::vector<std::vector<double>> z_mat;
  int iterations = 0;
  bool converged = false;
};

// Defect of the margin equations at a candidate point:
//   row_residuals[j] = sum over allowed k of lambda_jk  -  s_j
//   col_residuals[k] = sum over allowed j of lambda_jk  -  t_k
// balance_residual is the defect of the scaling gauge that pins the one
// free parameter: sum_j (n-x_j)*a_j - sum_k (m-y_k)*b_k. max_abs is the
// largest magnitude over rows, columns, and the balance defect.
struct SaddleResiduals {
  std::vector<double> row_residuals, col_residuals;
  double balance_residual = 0;
  double max_abs = 0;
};

struct SaddleOptions {
  double tol = 1e-12;     // convergence threshold on max |update|
  int max_iter = 10000;
};

// A row or column activity left the open unit box where the change of
// variables is defined.
class SaddleBoundaryError : public std::runtime_error {
 public:
  SaddleBoundaryError(const std::string& what, int row, int col)
      : std::runtime_error(what), row_index(row), col_index(col) {}
  int row_index;  // -1 when not a row failure
  int col_index;  // -1 when not a column failure
};

class SaddleDivergenceError : public std::runtime_error {
 public:
  SaddleDivergenceError(const std::string& what, std::vector<double> trace)
      : std::runtime_error(what), residual_trace(std::move(trace)) {}
  // max-residual value after each sweep, for diagnosis
  std::vector<double> residual_trace;
};

// Solves the margin equations by damped fixed-point sweeps starting from
// a = b = 0. Requires 0 < lambda < 1. A regular instance with no forbidden
// cells converges immediately. Exhausting max_iter while the change still
// shrinks returns converged == false; a growing change raises
// SaddleDivergenceError.
SaddlePoint solve_saddle(const BipartiteInstance& inst,
                         const SaddleOptions& opts = {});

// Rebuilds the dependent fields (q, rr, lambda_mat, z_mat) from given offset
// vectors without iterating. Entries must satisfy r^2*a_j*b_k > -1 and keep
// every activity positive.
SaddlePoint saddle_from_ab(const BipartiteInstance& inst,
                           const std::vector<double>& a,
                           const std::vector<double>& b);

SaddleResiduals saddle_residuals(const BipartiteInstance& inst,
                                 const SaddlePoint& sp);

// Occupation probability q*r/(1+q*r) for one cell given raw activities.
double lambda_from_qr(double q, double r);

}  // namespace census
