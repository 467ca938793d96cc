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

#include "qatsp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "qatsp/oracle.hpp"
#include "qatsp/parallel.hpp"
#include "qatsp/rng.hpp"

namespace qatsp {

std::vector<double> grid_b_values(double A) {
  if (!(A > 0.0) || A > 1.0) {
    throw std::invalid_argument("grid A must be in (0, 1]");
  }
  const double delta = (A / 2.0 - 0.001) / 4.0;
  std::vector<double> out(5);
  for (int k = 0; k < 5; ++k) out[k] = 0.001 + k * delta;
  return out;
}

std::vector<double> grid_chain_values(double A) {
  if (!(A > 0.0) || A > 1.0) {
    throw std::invalid_argument("grid A must be in (0, 1]");
  }
  const double delta = (1.0 - A) / 4.0;
  std::vector<double> out(5);
  for (int k = 0; k < 5; ++k) out[k] = A + k * delta;
  return out;
}

std::vector<double> default_a_values() {
  return {0.4, 0.55, 0.7, 0.85, 1.0};
}

std::vector<GridCell> build_grid(const GridSpec& spec) {
  std::vector<GridCell> cells;
  for (QuboType type : spec.qubo_types) {
    int index = 0;
    for (double A : spec.A_values) {
      const auto bs = grid_b_values(A);
      const auto cs = grid_chain_values(A);
      for (double B : bs) {
        for (double c : cs) {
          cells.push_back({type, A, B, c, index++});
        }
      }
    }
  }
  return cells;
}

RunRecord run_cell(const Instance& instance, const PipelineConfig& config,
                   long long optimum_length, SampleSet* samples_out) {
  RunRecord rec;
  rec.qubo_type = config.qubo_type;
  rec.A = config.A;
  rec.B = config.B;
  rec.chain_strength = config.chain_strength;
  rec.num_reads = config.num_reads;
  rec.seed = config.seed;

  const Qubo qubo =
      build_qubo(instance.dist_norm, config.qubo_type, config.A, config.B);
  const IsingModel logical = qubo_to_ising(qubo);

  SampleSet samples;
  ScaledParams params;
  if (config.chimera_m < 0) {
    // Unembedded: sample the logical model directly.
    auto [scaled, p] = auto_scale(logical, config.chain_strength);
    params = p;
    Schedule schedule = default_schedule(scaled);
    schedule.sweeps = config.sweeps;
    samples = sample(scaled, config.num_reads, schedule, config.seed,
                     config.jobs);
  } else {
    const int m = config.chimera_m == 0 ? min_chimera_m(logical.num_sites())
                                        : config.chimera_m;
    const ChimeraGraph graph = chimera_graph(m);
    const Embedding emb = clique_embedding(logical.num_sites(), graph);
    EmbeddedIsing embedded =
        embed_ising(logical, emb, graph, config.chain_strength);
    auto [scaled_phys, p] = auto_scale(embedded.physical,
                                       config.chain_strength);
    params = p;
    embedded.physical = std::move(scaled_phys);
    embedded.chain_strength = p.cs_real;
    // Decoded energies live in the logical frame divided by the physical
    // scale, matching A_real/B_real.
    IsingModel logical_frame = logical;
    if (params.scale > 1.0) {
      for (double& v : logical_frame.h) v /= params.scale;
      for (auto& t : logical_frame.couplings) t.value /= params.scale;
      logical_frame.offset /= params.scale;
    }
    Schedule schedule = default_schedule(embedded.physical);
    schedule.sweeps = config.sweeps;
    auto reads = sample_reads(embedded.physical, config.num_reads, schedule,
                              config.seed, config.jobs);
    samples = unembed_reads(reads, embedded, logical_frame, config.seed);
  }
  rec.A_real = params.A_real;
  rec.B_real = params.B_real;
  rec.cs_real = params.cs_real;
  rec.scale = params.scale;

  // Shift reported energies into the scaled QUBO frame: feasible states sit
  // at -2n*A_real + B_real * (normalized tour length), matching the oracle
  // strata.
  const double frame_shift = (logical.offset - qubo.offset) / params.scale;
  for (auto& r : samples.records) r.energy += frame_shift;

  double min_energy = std::numeric_limits<double>::infinity();
  double cbf_weighted = 0.0;
  for (const auto& r : samples.records) {
    min_energy = std::min(min_energy, r.energy);
    cbf_weighted += r.chain_break_fraction * static_cast<double>(r.occurrences);
    const auto bits = spins_to_bits(r.state);
    const TourDecode decode = decode_state(bits, qubo.meta);
    if (!decode.feasible) continue;
    rec.n_feasible += r.occurrences;
    if (!decode.penalized) rec.n_nonpenalized += r.occurrences;
    const long long len = tour_length(instance, decode.order);
    if (len == optimum_length) rec.n_optimum += r.occurrences;
  }
  rec.min_energy = min_energy;
  rec.mean_chain_break = cbf_weighted / static_cast<double>(rec.num_reads);
  rec.feasible_ratio = static_cast<double>(rec.n_feasible) /
                       static_cast<double>(rec.num_reads);
  rec.optimum_ratio = static_cast<double>(rec.n_optimum) /
                      static_cast<double>(rec.num_reads);
  rec.optimum_by_feasible =
      rec.n_feasible > 0 ? static_cast<double>(rec.n_optimum) /
                               static_cast<double>(rec.n_feasible)
                         : std::numeric_limits<double>::quiet_NaN();
  if (samples_out) *samples_out = std::move(samples);
  return rec;
}

SweepResult run_sweep(const Instance& instance, const GridSpec& spec,
                      int chimera_m, int jobs,
                      std::optional<long long> optimum) {
  SweepResult result;
  result.optimum_length =
      optimum ? *optimum : brute_optimum(instance, jobs).length;

  const std::vector<GridCell> cells = build_grid(spec);
  result.cells_total = static_cast<long long>(cells.size());
  result.records.resize(cells.size());

  // Cells run sequentially; reads inside a cell parallelize. Seeds depend
  // only on the master seed and the cell index within one qubo type, so the
  // r/h comparison is seed-controlled.
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const GridCell& cell = cells[i];
    PipelineConfig config;
    config.qubo_type = cell.qubo_type;
    config.A = cell.A;
    config.B = cell.B;
    config.chain_strength = cell.chain_strength;
    config.num_reads = spec.num_reads;
    config.sweeps = spec.sweeps;
    config.chimera_m = chimera_m;
    config.jobs = jobs;
    config.seed = substream_seed(spec.seed, cell.cell_index,
                                 rng_tag::kSweepCell);
    RunRecord& rec = result.records[i];
    try {
      rec = run_cell(instance, config, result.optimum_length);
    } catch (const std::exception& ex) {
      rec.qubo_type = cell.qubo_type;
      rec.A = cell.A;
      rec.B = cell.B;
      rec.chain_strength = cell.chain_strength;
      rec.num_reads = spec.num_reads;
      rec.seed = config.seed;
      rec.error = ex.what();
      ++result.cells_failed;
    }
  }

  std::set<std::string> dedup;
  char key[128];
  for (const auto& rec : result.records) {
    if (!rec.error.empty()) continue;
    std::snprintf(key, sizeof key, "%s|%.4f|%.4f|%.4f",
                  to_string(rec.qubo_type).c_str(), rec.A_real, rec.B_real,
                  rec.cs_real);
    dedup.insert(key);
  }
  result.distinct_real_configs = static_cast<long long>(dedup.size());
  return result;
}

Metric metric_from_string(const std::string& s) {
  if (s == "feasible_ratio") return Metric::feasible_ratio;
  if (s == "optimum_ratio") return Metric::optimum_ratio;
  if (s == "optimum_by_feasible") return Metric::optimum_by_feasible;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

namespace {

double metric_value(const RunRecord& r, Metric m) {
  switch (m) {
    case Metric::feasible_ratio:
      return r.feasible_ratio;
    case Metric::optimum_ratio:
      return r.optimum_ratio;
    case Metric::optimum_by_feasible:
      return r.optimum_by_feasible;
  }
  return 0.0;
}

}  // namespace

LandscapeGrid landscape_grid(const std::vector<RunRecord>& records,
                             Metric metric, const LandscapeFilter& filter,
                             int bins) {
  if (bins < 1) {
    throw std::invalid_argument("landscape bins must be >= 1");
  }
  std::vector<const RunRecord*> kept;
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    if (filter.qubo_type && r.qubo_type != *filter.qubo_type) continue;
    if (filter.min_cs_real > 0.0 && !(r.cs_real > filter.min_cs_real)) continue;
    if (std::isnan(metric_value(r, metric))) continue;
    kept.push_back(&r);
  }
  LandscapeGrid grid;
  if (kept.empty()) return grid;
  grid.empty = false;

  double a_lo = kept[0]->A_real, a_hi = kept[0]->A_real;
  double b_lo = kept[0]->B_real, b_hi = kept[0]->B_real;
  for (const auto* r : kept) {
    a_lo = std::min(a_lo, r->A_real);
    a_hi = std::max(a_hi, r->A_real);
    b_lo = std::min(b_lo, r->B_real);
    b_hi = std::max(b_hi, r->B_real);
  }
  const int a_bins = (a_hi - a_lo) > 0.0 ? bins : 1;
  const int b_bins = (b_hi - b_lo) > 0.0 ? bins : 1;
  grid.a_edges.resize(a_bins + 1);
  grid.b_edges.resize(b_bins + 1);
  for (int i = 0; i <= a_bins; ++i) {
    grid.a_edges[i] = a_lo + (a_hi - a_lo) * i / a_bins;
  }
  for (int i = 0; i <= b_bins; ++i) {
    grid.b_edges[i] = b_lo + (b_hi - b_lo) * i / b_bins;
  }
  grid.mean.assign(a_bins, std::vector<double>(b_bins, 0.0));
  grid.count.assign(a_bins, std::vector<long long>(b_bins, 0));
  auto bin_of = [](double v, double lo, double hi, int nb) {
    if (hi <= lo) return 0;
    int b = static_cast<int>((v - lo) / (hi - lo) * nb);
    return std::clamp(b, 0, nb - 1);
  };
  for (const auto* r : kept) {
    const int ia = bin_of(r->A_real, a_lo, a_hi, a_bins);
    const int ib = bin_of(r->B_real, b_lo, b_hi, b_bins);
    grid.mean[ia][ib] += metric_value(*r, metric);
    grid.count[ia][ib] += 1;
  }
  for (int ia = 0; ia < a_bins; ++ia) {
    for (int ib = 0; ib < b_bins; ++ib) {
      grid.mean[ia][ib] =
          grid.count[ia][ib] > 0
              ? grid.mean[ia][ib] / static_cast<double>(grid.count[ia][ib])
              : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return grid;
}

Histogram energy_histogram(const SampleSet& samples, const ModelMeta& meta,
                           int bins) {
  if (bins < 2) {
    throw std::invalid_argument("histogram needs at least 2 bins");
  }
  Histogram h;
  h.edges.resize(bins + 1);
  h.feasible.assign(bins, 0);
  h.penalized.assign(bins, 0);
  h.infeasible.assign(bins, 0);
  if (samples.records.empty()) {
    for (int i = 0; i <= bins; ++i) h.edges[i] = i;
    return h;
  }
  double lo = samples.records.front().energy;
  double hi = lo;
  for (const auto& r : samples.records) {
    lo = std::min(lo, r.energy);
    hi = std::max(hi, r.energy);
  }
  if (hi <= lo) hi = lo + 1.0;  // single energy value
  for (int i = 0; i <= bins; ++i) {
    h.edges[i] = lo + (hi - lo) * i / bins;
  }
  for (const auto& r : samples.records) {
    int b = static_cast<int>((r.energy - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    const auto bits = spins_to_bits(r.state);
    const TourDecode decode = decode_state(bits, meta);
    if (!decode.feasible) {
      h.infeasible[b] += r.occurrences;
    } else if (decode.penalized) {
      h.penalized[b] += r.occurrences;
    } else {
      h.feasible[b] += r.occurrences;
    }
  }
  return h;
}

}  // namespace qatsp
