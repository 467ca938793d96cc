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

#include <optional>
#include <vector>

#include "qatsp/qubo.hpp"
#include "qatsp/tsp.hpp"

namespace qatsp {

/// One extreme state of an exhaustive scan. `sequence` assigns a city to
/// each position; `b_coeff` is (energy - constraint stratum) / B, the
/// Table-style coefficient on B.
struct ExtremeRecord {
  double energy = 0.0;
  double b_coeff = 0.0;
  double constraint_energy = 0.0;  // stratum: -2nA feasible, -(2n-2)A best infeasible
  std::vector<int> sequence;
};

/// Ground truth from full enumeration of the n! position-assignment
/// sequences. For the heuristic QUBO the non-penalized extremes are also
/// tracked; they are absent when no tour avoids E_p.
struct LandscapeSummary {
  long long n_feasible = 0;
  long long n_nonpenalized = 0;
  long long n_penalized = 0;
  ExtremeRecord best_feasible;
  ExtremeRecord worst_feasible;
  std::optional<ExtremeRecord> best_nonpenalized;
  std::optional<ExtremeRecord> worst_nonpenalized;
  std::optional<ExtremeRecord> best_infeasible;        // see enumerate_column_functions
  std::vector<std::vector<int>> optimal_tours;         // min-energy sequences
};

/// Row of the optional exhaustive energy dump.
struct EnergyRow {
  std::vector<int> sequence;
  double energy = 0.0;
  enum class Class { feasible, penalized, infeasible } cls = Class::feasible;
};

/// Evaluates the QUBO on all n! sequences (raw, not modulo rotation).
/// Budget: n <= 10. Deterministic regardless of worker count. When `dump`
/// is non-null every evaluated sequence is appended to it.
LandscapeSummary enumerate_tours(const Instance& instance, const Qubo& qubo,
                                 int jobs = 0,
                                 std::vector<EnergyRow>* dump = nullptr);

/// Evaluates the QUBO over all n^n states with exactly one city per
/// position column and returns the minimum-energy non-permutation state.
/// Within this space the best infeasible state realizes the -(2n-2)A
/// constraint stratum for the parameter grids used here. Budget: n^n <= 1e8.
ExtremeRecord enumerate_column_functions(const Instance& instance,
                                         const Qubo& qubo, int jobs = 0,
                                         std::vector<EnergyRow>* dump = nullptr);

/// Exact minimum-length cyclic tour via (n-1)! search with city 0 fixed.
/// Budget: n <= 12. Ties resolved toward the lexicographically smallest
/// order.
Tour brute_optimum(const Instance& instance, int jobs = 0);

}  // namespace qatsp
