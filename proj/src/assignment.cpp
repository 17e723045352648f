// Copyright 2026 The trackfuse Authors
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

#include "trackfuse/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trackfuse {

namespace {

// Shortest augmenting path Hungarian method with row/column potentials.
// Requires rows <= cols; returns the column chosen for each row.
std::vector<std::size_t> hungarian(const CostMatrix& c) {
  const std::size_t n = c.rows();
  const std::size_t m = c.cols();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Index 0 is a virtual column used as the root of each search.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> row_of(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t col = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[col] = true;
      const std::size_t r = row_of[col];
      double delta = kInf;
      std::size_t next = kNone;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double reduced = c(r - 1, j - 1) - u[r] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = col;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col = next;
    } while (row_of[col] != 0);
    do {
      const std::size_t prev = way[col];
      row_of[col] = row_of[prev];
      col = prev;
    } while (col != 0);
  }

  std::vector<std::size_t> col_of_row(n, kNone);
  for (std::size_t j = 1; j <= m; ++j) {
    if (row_of[j] != 0) col_of_row[row_of[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

Assignment solve_assignment(const CostMatrix& cost) {
  if (cost.empty()) return {};
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (double x : cost.row(r)) {
      if (!std::isfinite(x)) throw std::invalid_argument("assignment costs must be finite");
    }
  }

  Assignment out;
  if (cost.rows() <= cost.cols()) {
    const auto cols = hungarian(cost);
    for (std::size_t r = 0; r < cols.size(); ++r) out.emplace_back(r, cols[r]);
  } else {
    CostMatrix t(cost.cols(), cost.rows());
    for (std::size_t r = 0; r < cost.rows(); ++r) {
      for (std::size_t c = 0; c < cost.cols(); ++c) t(c, r) = cost(r, c);
    }
    const auto rows = hungarian(t);
    for (std::size_t c = 0; c < rows.size(); ++c) out.emplace_back(rows[c], c);
    std::sort(out.begin(), out.end());
  }
  return out;
}

double assignment_cost(const CostMatrix& cost, const Assignment& a) {
  double total = 0.0;
  for (auto [r, c] : a) total += cost(r, c);
  return total;
}

}  // namespace trackfuse
