// Copyright 2026 The qatsp authors
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

// Test-only oracles, written independently of the library code paths they
// check: a separate transcription of the TSPLIB GEO reference formula and a
// Held-Karp dynamic program for exact optima up to n = 14.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace testoracle {

// Independent transcription of the TSPLIB GEO reference distance.
inline int geo_reference(double lat1, double lon1, double lat2, double lon2) {
  constexpr double PI = 3.141592;
  constexpr double RRR = 6378.388;
  auto rad = [](double x) {
    int deg = static_cast<int>(x);
    double min = x - deg;
    return PI * (deg + 5.0 * min / 3.0) / 180.0;
  };
  const double la1 = rad(lat1), lo1 = rad(lon1);
  const double la2 = rad(lat2), lo2 = rad(lon2);
  const double q1 = std::cos(lo1 - lo2);
  const double q2 = std::cos(la1 - la2);
  const double q3 = std::cos(la1 + la2);
  return static_cast<int>(
      RRR * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

// Exact TSP optimum (cyclic, symmetric) by Held-Karp over subsets.
// Returns the optimal length and fills `order` with one optimal tour.
inline long long held_karp(const std::vector<std::vector<int>>& d,
                           std::vector<int>* order = nullptr) {
  const int n = static_cast<int>(d.size());
  const int m = n - 1;  // cities 1..n-1; city 0 is the anchor
  const std::size_t full = std::size_t{1} << m;
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<std::vector<long long>> dp(full,
                                         std::vector<long long>(m, kInf));
  std::vector<std::vector<int>> parent(full, std::vector<int>(m, -1));
  for (int j = 0; j < m; ++j) dp[std::size_t{1} << j][j] = d[0][j + 1];
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (int j = 0; j < m; ++j) {
      if (!((mask >> j) & 1) || dp[mask][j] >= kInf) continue;
      const long long cur = dp[mask][j];
      for (int k = 0; k < m; ++k) {
        if ((mask >> k) & 1) continue;
        const std::size_t nm = mask | (std::size_t{1} << k);
        const long long cand = cur + d[j + 1][k + 1];
        if (cand < dp[nm][k]) {
          dp[nm][k] = cand;
          parent[nm][k] = j;
        }
      }
    }
  }
  long long best = kInf;
  int best_j = -1;
  for (int j = 0; j < m; ++j) {
    const long long cand = dp[full - 1][j] + d[j + 1][0];
    if (cand < best) {
      best = cand;
      best_j = j;
    }
  }
  if (order) {
    order->clear();
    std::size_t mask = full - 1;
    int j = best_j;
    while (j >= 0) {
      order->push_back(j + 1);
      const int pj = parent[mask][j];
      mask &= ~(std::size_t{1} << j);
      j = pj;
    }
    order->push_back(0);
    std::reverse(order->begin(), order->end());
  }
  return best;
}

}  // namespace testoracle
