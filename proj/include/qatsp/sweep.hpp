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
#include <optional>
#include <string>
#include <vector>

#include "qatsp/annealer.hpp"
#include "qatsp/embedding.hpp"
#include "qatsp/qubo.hpp"
#include "qatsp/tsp.hpp"

namespace qatsp {

/// B axis for one A value: {0.001 + k*dB : k = 0..4}, dB = (A/2 - 0.001)/4.
std::vector<double> grid_b_values(double A);

/// chain_strength axis for one A value: {A + k*dC : k = 0..4},
/// dC = (1 - A)/4.
std::vector<double> grid_chain_values(double A);

/// The paper grid's A axis.
std::vector<double> default_a_values();

struct GridSpec {
  std::vector<double> A_values = default_a_values();
  std::vector<QuboType> qubo_types = {QuboType::reference,
                                      QuboType::heuristic};
  int num_reads = 2000;
  int sweeps = 1000;
  std::uint64_t seed = 1;
};

struct GridCell {
  QuboType qubo_type = QuboType::reference;
  double A = 0.0, B = 0.0, chain_strength = 0.0;
  int cell_index = 0;  // within one qubo type; shared seed stream across types
};

/// Full cross product, 5x5x|A| cells per qubo type.
std::vector<GridCell> build_grid(const GridSpec& spec);

/// One model-to-metrics execution: embedding disabled when chimera_m < 0,
/// automatic minimal grid when chimera_m == 0.
struct PipelineConfig {
  QuboType qubo_type = QuboType::reference;
  double A = 0.0, B = 0.0, chain_strength = 1.0;
  int num_reads = 2000;
  int sweeps = 1000;
  int chimera_m = 0;
  std::uint64_t seed = 1;
  int jobs = 0;
};

struct RunRecord {
  QuboType qubo_type = QuboType::reference;
  double A = 0.0, B = 0.0, chain_strength = 0.0;
  double A_real = 0.0, B_real = 0.0, cs_real = 0.0, scale = 1.0;
  long long num_reads = 0;
  long long n_feasible = 0, n_optimum = 0, n_nonpenalized = 0;
  double feasible_ratio = 0.0, optimum_ratio = 0.0;
  double optimum_by_feasible = 0.0;  // NaN when n_feasible == 0
  double min_energy = 0.0;
  double mean_chain_break = 0.0;
  std::uint64_t seed = 0;
  std::string error;  // non-empty marks a failed cell
};

/// Pipeline for a single configuration: build -> ising -> embed ->
/// auto-scale -> sample -> unembed -> decode -> metrics. `optimum_length`
/// defines the optimum classification (decoded cyclic length equality).
/// The decoded logical SampleSet is returned through `samples_out` when
/// non-null.
RunRecord run_cell(const Instance& instance, const PipelineConfig& config,
                   long long optimum_length, SampleSet* samples_out = nullptr);

struct SweepResult {
  std::vector<RunRecord> records;
  long long optimum_length = 0;
  long long cells_total = 0, cells_failed = 0;
  long long distinct_real_configs = 0;  // post-scaling dedup, 4-decimal key
};

/// Executes the whole grid. Cells with the same (A, B, chain_strength)
/// index share one seed stream across qubo types, making the r/h
/// comparison seed-controlled. Failed cells are recorded, not dropped.
SweepResult run_sweep(const Instance& instance, const GridSpec& spec,
                      int chimera_m = 0, int jobs = 0,
                      std::optional<long long> optimum = std::nullopt);

enum class Metric { feasible_ratio, optimum_ratio, optimum_by_feasible };

Metric metric_from_string(const std::string& s);

struct LandscapeFilter {
  std::optional<QuboType> qubo_type;
  double min_cs_real = 0.0;
};

/// Binned means over the observed (A_real, B_real) rectangle. Bins without
/// records hold NaN.
struct LandscapeGrid {
  std::vector<double> a_edges;  // size rows + 1
  std::vector<double> b_edges;  // size cols + 1
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<long long>> count;
  bool empty = true;
};

LandscapeGrid landscape_grid(const std::vector<RunRecord>& records,
                             Metric metric, const LandscapeFilter& filter,
                             int bins = 20);

/// Occurrence histogram split by decoded class. Class counts sum to
/// num_reads.
struct Histogram {
  std::vector<double> edges;  // size bins + 1
  std::vector<long long> feasible;   // non-penalized
  std::vector<long long> penalized;  // feasible but using an E_p edge
  std::vector<long long> infeasible;
};

Histogram energy_histogram(const SampleSet& samples, const ModelMeta& meta,
                           int bins);

}  // namespace qatsp
