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

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "qatsp/rng.hpp"
#include "qatsp/tsp.hpp"

namespace testutil {

inline const qatsp::Instance& burma14() {
  static const qatsp::Instance inst =
      qatsp::load_tsplib(std::string(QATSP_DATA_DIR) + "/burma14.tsp");
  return inst;
}

// First-k sub-instance, the toolkit's default working convention.
inline qatsp::Instance burma(int k) {
  std::vector<int> nodes(k);
  std::iota(nodes.begin(), nodes.end(), 0);
  return qatsp::subset(burma14(), nodes);
}

// Random symmetric matrix in [0, 1] with unit max off-diagonal entry and
// zero diagonal, shaped like a normalized distance matrix.
inline std::vector<std::vector<double>> random_dist_norm(int n,
                                                         std::uint64_t seed) {
  qatsp::Rng rng(seed);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  double dmax = 0.0;
  int bi = 0, bj = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.05 + 0.95 * rng.uniform01();
      d[i][j] = d[j][i] = v;
      if (v > dmax) {
        dmax = v;
        bi = i;
        bj = j;
      }
    }
  }
  (void)bi;
  (void)bj;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) d[i][j] /= dmax;
    }
  }
  return d;
}

}  // namespace testutil
