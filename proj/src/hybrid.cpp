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

#include "qatsp/hybrid.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "qatsp/oracle.hpp"
#include "qatsp/rng.hpp"

namespace qatsp {

namespace {

// Greedy nearest-neighbor tour from node 0, lowest id on ties.
std::vector<int> seed_tour(const Instance& instance) {
  const int n = instance.n;
  std::vector<int> tour{0};
  std::vector<bool> used(n, false);
  used[0] = true;
  while (static_cast<int>(tour.size()) < n) {
    const int cur = tour.back();
    int best = -1;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      if (best < 0 || instance.dist[cur][c] < instance.dist[cur][best]) {
        best = c;
      }
    }
    used[best] = true;
    tour.push_back(best);
  }
  return tour;
}

// Cheapest 2-cycle reconnection of closed cycles `merged` and `next`:
// drop one edge from each, splice `next` in either orientation.
std::vector<int> merge_cycles(const Instance& instance,
                              const std::vector<int>& merged,
                              const std::vector<int>& next) {
  const auto& d = instance.dist;
  const int nm = static_cast<int>(merged.size());
  const int ns = static_cast<int>(next.size());
  long long best_delta = std::numeric_limits<long long>::max();
  int best_i = 0, best_j = 0;
  bool best_reverse = false;
  for (int i = 0; i < nm; ++i) {
    const int a = merged[i];
    const int b = merged[(i + 1) % nm];
    for (int j = 0; j < ns; ++j) {
      const int c = next[j];
      const int e = next[(j + 1) % ns];
      const long long removed = d[a][b] + d[c][e];
      const long long forward = d[a][e] + d[c][b] - removed;
      if (forward < best_delta) {
        best_delta = forward;
        best_i = i;
        best_j = j;
        best_reverse = false;
      }
      const long long reverse = d[a][c] + d[e][b] - removed;
      if (reverse < best_delta) {
        best_delta = reverse;
        best_i = i;
        best_j = j;
        best_reverse = true;
      }
    }
  }
  std::vector<int> out;
  out.reserve(nm + ns);
  for (int i = 0; i <= best_i; ++i) out.push_back(merged[i]);
  if (!best_reverse) {
    // a -> next[j+1] ... next[j] -> b
    for (int k = 1; k <= ns; ++k) out.push_back(next[(best_j + k) % ns]);
  } else {
    // a -> next[j] ... next[j+1] -> b
    for (int k = 0; k < ns; ++k) {
      out.push_back(next[(best_j - k + ns) % ns]);
    }
  }
  for (int i = best_i + 1; i < nm; ++i) out.push_back(merged[i]);
  return out;
}

}  // namespace

Decomposition decompose(const Instance& instance, int max_size) {
  if (max_size < 3) {
    throw std::invalid_argument("decompose: max_size must be >= 3");
  }
  const int n = instance.n;
  const int k = (n + max_size - 1) / max_size;
  const int base = n / k;
  const int extra = n % k;  // first `extra` segments take one more node
  if (base < 3) {
    throw std::invalid_argument(
        "decompose: cannot split " + std::to_string(n) +
        " nodes into segments of >= 3 and <= " + std::to_string(max_size));
  }
  const std::vector<int> tour = seed_tour(instance);
  Decomposition dec;
  dec.max_size = max_size;
  int at = 0;
  for (int s = 0; s < k; ++s) {
    const int size = base + (s < extra ? 1 : 0);
    dec.subsets.emplace_back(tour.begin() + at, tour.begin() + at + size);
    at += size;
  }
  return dec;
}

HybridRun solve_hybrid(const Instance& instance, const PipelineConfig& config,
                       int max_size) {
  const Decomposition dec = decompose(instance, max_size);
  HybridRun run;
  run.subs.resize(dec.subsets.size());

  for (std::size_t s = 0; s < dec.subsets.size(); ++s) {
    SubSolve& sub = run.subs[s];
    sub.nodes = dec.subsets[s];
    const Instance local = subset(instance, sub.nodes);

    PipelineConfig sub_config = config;
    sub_config.seed = substream_seed(config.seed, s, rng_tag::kHybridRun);
    SampleSet samples;
    // Optimum classification is irrelevant here; -1 never matches.
    const RunRecord rec = run_cell(local, sub_config, -1, &samples);
    sub.feasible_reads = rec.n_feasible;
    const ModelMeta meta =
        build_qubo(local.dist_norm, config.qubo_type, config.A, config.B).meta;

    std::vector<int> best_order;
    long long best_len = -1;
    for (const auto& r : samples.records) {
      const auto bits = spins_to_bits(r.state);
      const TourDecode decode = decode_state(bits, meta);
      if (!decode.feasible) continue;
      const long long len = tour_length(local, decode.order);
      if (best_len < 0 || len < best_len) {
        best_len = len;
        best_order = decode.order;
      }
    }
    if (best_len < 0) {
      const Tour exact = brute_optimum(local, config.jobs);
      best_order = exact.order;
      best_len = exact.length;
      sub.fallback = true;
    }
    sub.length = best_len;
    sub.tour.reserve(best_order.size());
    for (int local_id : best_order) sub.tour.push_back(sub.nodes[local_id]);
  }

  std::vector<int> merged = run.subs[0].tour;
  for (std::size_t s = 1; s < run.subs.size(); ++s) {
    merged = merge_cycles(instance, merged, run.subs[s].tour);
  }
  run.tour.order = merged;
  run.tour.length = tour_length(instance, merged);
  return run;
}

}  // namespace qatsp
