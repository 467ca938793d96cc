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

#include <cstdint>
#include <vector>

#include "qatsp/qubo.hpp"

namespace qatsp {

/// Geometric inverse-temperature ramp. beta at sweep t interpolates from
/// beta_hot to beta_cold on a log scale.
struct Schedule {
  double beta_hot = 0.0;
  double beta_cold = 0.0;
  int sweeps = 1000;
};

/// beta_hot = ln 2 / dE_max and beta_cold = ln 100 / dE_min, with dE bounds
/// 2(|h_i| + sum_j |J_ij|) per spin (zero-bound spins excluded). 1000
/// sweeps.
Schedule default_schedule(const IsingModel& m);

struct SampleRecord {
  std::vector<std::int8_t> state;  // spins, aligned with model sites
  double energy = 0.0;             // reported (offset excluded)
  long long occurrences = 0;
  double chain_break_fraction = 0.0;  // mean over merged reads
};

/// Aggregated outcome of `num_reads` independent anneals. Records are
/// keyed by final state and sorted by (energy, state); occurrences sum to
/// num_reads.
struct SampleSet {
  std::vector<SampleRecord> records;
  long long num_reads = 0;
  std::uint64_t seed = 0;
};

/// Final state of every read, in read order. Read r draws all randomness
/// from substream (seed, r), so output is identical for any worker count.
std::vector<std::vector<std::int8_t>> sample_reads(const IsingModel& m,
                                                   int num_reads,
                                                   const Schedule& schedule,
                                                   std::uint64_t seed,
                                                   int jobs = 0);

/// Metropolis single-spin simulated annealing: independent restarts,
/// uniform random init, random-permutation sweep order.
SampleSet sample(const IsingModel& m, int num_reads, const Schedule& schedule,
                 std::uint64_t seed, int jobs = 0);

/// Folds per-read states (with optional per-read chain-break fractions)
/// into an aggregated SampleSet against `m` for energies.
SampleSet aggregate_reads(const IsingModel& m,
                          const std::vector<std::vector<std::int8_t>>& reads,
                          const std::vector<double>& chain_breaks,
                          std::uint64_t seed);

}  // namespace qatsp
