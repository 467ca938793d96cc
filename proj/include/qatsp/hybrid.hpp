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

#include <vector>

#include "qatsp/sweep.hpp"
#include "qatsp/tsp.hpp"

namespace qatsp {

/// Partition of the node set into contiguous segments of a
/// nearest-neighbor seed tour; segment sizes differ by at most one.
struct Decomposition {
  std::vector<std::vector<int>> subsets;
  int max_size = 0;
};

Decomposition decompose(const Instance& instance, int max_size);

struct SubSolve {
  std::vector<int> nodes;        // global node ids of the sub-instance
  std::vector<int> tour;         // best cyclic sub-tour, global ids
  long long length = 0;          // within the sub-instance
  long long feasible_reads = 0;
  bool fallback = false;         // brute-force used (no feasible read)
};

struct HybridRun {
  Tour tour;  // full instance, cyclic
  std::vector<SubSolve> subs;
};

/// Per-sub pipeline solve (best feasible decoded tour; exact fallback when
/// no read decodes feasible), then sequential cheapest-reconnection merge
/// of the closed sub-tours. Always returns a valid full tour.
HybridRun solve_hybrid(const Instance& instance, const PipelineConfig& config,
                       int max_size);

}  // namespace qatsp
