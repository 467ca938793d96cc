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

#include "qatsp/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qatsp/parallel.hpp"
#include "qatsp/rng.hpp"

namespace qatsp {

namespace {

// Neighbor lists for O(degree) single-flip energy deltas.
struct Adjacency {
  std::vector<std::vector<std::pair<int, double>>> at;

  explicit Adjacency(const IsingModel& m) : at(m.sites.size()) {
    for (const auto& t : m.couplings) {
      at[t.u].emplace_back(t.v, t.value);
      at[t.v].emplace_back(t.u, t.value);
    }
  }
};

}  // namespace

Schedule default_schedule(const IsingModel& m) {
  if (m.sites.empty()) {
    throw std::invalid_argument("default_schedule: empty model");
  }
  const Adjacency adj(m);
  // dE_max: largest possible flip, bounded per spin by 2(|h_i| + sum|J_ij|).
  // dE_min: smallest nonzero flip magnitude, estimated by the smallest
  // nonzero single term 2|h_i| or 2|J_ij| (every such quantum respects the
  // same per-spin bound). The cold end must freeze the finest energy scale,
  // not the per-spin aggregate; distance terms are orders of magnitude
  // smaller than the constraint terms in these models.
  double de_max = 0.0;
  double de_min = 0.0;
  bool any = false;
  auto feed_min = [&](double quantum) {
    if (quantum <= 0.0) return;
    de_min = any ? std::min(de_min, quantum) : quantum;
    any = true;
  };
  for (std::size_t i = 0; i < m.sites.size(); ++i) {
    double bound = std::abs(m.h[i]);
    for (const auto& [j, v] : adj.at[i]) {
      (void)j;
      bound += std::abs(v);
    }
    de_max = std::max(de_max, 2.0 * bound);
    feed_min(2.0 * std::abs(m.h[i]));
  }
  for (const auto& t : m.couplings) feed_min(2.0 * std::abs(t.value));
  if (!any) {
    throw std::invalid_argument(
        "default_schedule: degenerate all-zero model");
  }
  Schedule s;
  s.beta_hot = std::log(2.0) / de_max;
  s.beta_cold = std::log(100.0) / de_min;
  s.sweeps = 1000;
  return s;
}

std::vector<std::vector<std::int8_t>> sample_reads(const IsingModel& m,
                                                   int num_reads,
                                                   const Schedule& schedule,
                                                   std::uint64_t seed,
                                                   int jobs) {
  if (num_reads < 1) {
    throw std::invalid_argument("num_reads must be >= 1");
  }
  if (!(schedule.beta_hot > 0.0) || !(schedule.beta_cold > schedule.beta_hot) ||
      schedule.sweeps < 1) {
    throw std::invalid_argument("invalid schedule");
  }
  const int ns = m.num_sites();
  const Adjacency adj(m);

  // Per-sweep betas precomputed once; geometric interpolation.
  std::vector<double> betas(schedule.sweeps);
  if (schedule.sweeps == 1) {
    betas[0] = schedule.beta_cold;
  } else {
    const double ratio = schedule.beta_cold / schedule.beta_hot;
    for (int t = 0; t < schedule.sweeps; ++t) {
      betas[t] = schedule.beta_hot *
                 std::pow(ratio, static_cast<double>(t) /
                                     static_cast<double>(schedule.sweeps - 1));
    }
  }

  std::vector<std::vector<std::int8_t>> reads(num_reads);
  parallel_for(num_reads, jobs, [&](std::int64_t r) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(r),
                           rng_tag::kAnnealRead));
    std::vector<std::int8_t> spins(ns);
    for (int i = 0; i < ns; ++i) spins[i] = static_cast<std::int8_t>(rng.spin());
    std::vector<int> visit(ns);
    for (int i = 0; i < ns; ++i) visit[i] = i;
    for (int t = 0; t < schedule.sweeps; ++t) {
      const double beta = betas[t];
      rng.shuffle(visit);
      for (int i : visit) {
        double field = m.h[i];
        for (const auto& [j, v] : adj.at[i]) field += v * spins[j];
        const double delta = -2.0 * spins[i] * field;
        // exp underflows to 0 well before 50; skip the call.
        if (delta <= 0.0 ||
            (beta * delta < 50.0 &&
             rng.uniform01() < std::exp(-beta * delta))) {
          spins[i] = -spins[i];
        }
      }
    }
    reads[r] = std::move(spins);
  });
  return reads;
}

SampleSet aggregate_reads(const IsingModel& m,
                          const std::vector<std::vector<std::int8_t>>& reads,
                          const std::vector<double>& chain_breaks,
                          std::uint64_t seed) {
  struct Acc {
    long long occurrences = 0;
    double cbf_sum = 0.0;
  };
  std::map<std::vector<std::int8_t>, Acc> acc;
  for (std::size_t r = 0; r < reads.size(); ++r) {
    Acc& a = acc[reads[r]];
    a.occurrences += 1;
    a.cbf_sum += chain_breaks.empty() ? 0.0 : chain_breaks[r];
  }
  SampleSet out;
  out.num_reads = static_cast<long long>(reads.size());
  out.seed = seed;
  out.records.reserve(acc.size());
  for (const auto& [state, a] : acc) {
    SampleRecord rec;
    rec.state = state;
    rec.energy = m.energy(rec.state);
    rec.occurrences = a.occurrences;
    rec.chain_break_fraction = a.cbf_sum / static_cast<double>(a.occurrences);
    out.records.push_back(std::move(rec));
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const SampleRecord& a, const SampleRecord& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.state < b.state;
            });
  return out;
}

SampleSet sample(const IsingModel& m, int num_reads, const Schedule& schedule,
                 std::uint64_t seed, int jobs) {
  auto reads = sample_reads(m, num_reads, schedule, seed, jobs);
  return aggregate_reads(m, reads, {}, seed);
}

}  // namespace qatsp
