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
#include <span>
#include <utility>
#include <vector>

#include "qatsp/annealer.hpp"
#include "qatsp/qubo.hpp"

namespace qatsp {

/// C(m): an m x m grid of K_{4,4} cells. Node (row, col, side, k) has id
/// 8(row*m + col) + 4*side + k; side-0 qubits link vertically between
/// adjacent rows, side-1 horizontally between adjacent columns.
struct ChimeraGraph {
  int m = 0;
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // sorted, a < b

  static int node_id(int row, int col, int side, int k, int m) {
    return 8 * (row * m + col) + 4 * side + k;
  }
  bool has_edge(int a, int b) const;
};

ChimeraGraph chimera_graph(int m);

/// Smallest m such that K_{num_logical} embeds: 4m >= num_logical.
int min_chimera_m(int num_logical);

struct Embedding {
  std::vector<std::vector<int>> chains;  // logical var -> physical qubits
};

/// Deterministic triangle clique embedding of K_{4m} restricted to the
/// first num_logical chains; every chain has length m + 1 (one horizontal
/// and one vertical run joined inside the diagonal cell).
Embedding clique_embedding(int num_logical, const ChimeraGraph& g);

/// Throws EmbeddingError unless chains are pairwise disjoint, each induces
/// a connected subgraph, and (when require_all_pairs) every chain pair is
/// joined by at least one physical coupler.
void verify_embedding(const Embedding& e, const ChimeraGraph& g,
                      bool require_all_pairs);

/// How one physical coupler's value was assembled.
struct CouplerShare {
  enum class Kind { logical_share, chain_bond };
  int a = 0, b = 0;  // physical qubit ids, a < b
  Kind kind = Kind::logical_share;
  int logical_u = -1, logical_v = -1;  // for logical_share
  double value = 0.0;
};

struct EmbeddedIsing {
  IsingModel physical;  // sites are the chained physical qubit ids
  double chain_strength = 0.0;
  Embedding embedding;
  std::vector<CouplerShare> provenance;
  long long chain_bond_count = 0;
};

/// Logical bias split equally over chain members; logical coupling split
/// equally over all physical couplers between the two chains; every
/// in-chain coupler gets -chain_strength. The physical offset absorbs the
/// -chain_strength * bonds shift so intact-chain states keep the logical
/// full energy.
EmbeddedIsing embed_ising(const IsingModel& logical, const Embedding& e,
                          const ChimeraGraph& g, double chain_strength);

struct UnembedResult {
  std::vector<std::int8_t> logical;
  double chain_break_fraction = 0.0;
};

/// Majority vote per chain; ties broken by a seeded draw.
UnembedResult unembed(std::span<const std::int8_t> physical_state,
                      const EmbeddedIsing& e, std::uint64_t seed);

/// Unembeds every read (tie stream keyed by read index) and aggregates the
/// logical states against `logical` for energies.
SampleSet unembed_reads(const std::vector<std::vector<std::int8_t>>& reads,
                        const EmbeddedIsing& e, const IsingModel& logical,
                        std::uint64_t seed);

}  // namespace qatsp
