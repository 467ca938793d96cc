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

#include "qatsp/embedding.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "qatsp/errors.hpp"
#include "qatsp/rng.hpp"

namespace qatsp {

bool ChimeraGraph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

ChimeraGraph chimera_graph(int m) {
  if (m < 1) {
    throw std::invalid_argument("chimera_graph: m must be >= 1");
  }
  ChimeraGraph g;
  g.m = m;
  g.num_nodes = 8 * m * m;
  for (int row = 0; row < m; ++row) {
    for (int col = 0; col < m; ++col) {
      // Intra-cell K_{4,4}.
      for (int k0 = 0; k0 < 4; ++k0) {
        for (int k1 = 0; k1 < 4; ++k1) {
          g.edges.emplace_back(ChimeraGraph::node_id(row, col, 0, k0, m),
                               ChimeraGraph::node_id(row, col, 1, k1, m));
        }
      }
      // Inter-cell: side 0 vertical, side 1 horizontal, same k.
      for (int k = 0; k < 4; ++k) {
        if (row + 1 < m) {
          g.edges.emplace_back(ChimeraGraph::node_id(row, col, 0, k, m),
                               ChimeraGraph::node_id(row + 1, col, 0, k, m));
        }
        if (col + 1 < m) {
          g.edges.emplace_back(ChimeraGraph::node_id(row, col, 1, k, m),
                               ChimeraGraph::node_id(row, col + 1, 1, k, m));
        }
      }
    }
  }
  for (auto& [a, b] : g.edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

int min_chimera_m(int num_logical) {
  if (num_logical < 1) {
    throw std::invalid_argument("min_chimera_m: need at least one variable");
  }
  return (num_logical + 3) / 4;
}

Embedding clique_embedding(int num_logical, const ChimeraGraph& g) {
  if (num_logical < 1) {
    throw std::invalid_argument("clique_embedding: need at least one chain");
  }
  if (num_logical > 4 * g.m) {
    throw std::invalid_argument(
        "clique_embedding: " + std::to_string(num_logical) +
        " logical variables exceed capacity 4m = " + std::to_string(4 * g.m));
  }
  const int m = g.m;
  Embedding e;
  e.chains.resize(num_logical);
  for (int t = 0; t < num_logical; ++t) {
    const int cell = t / 4;  // diagonal cell index
    const int k = t % 4;
    auto& chain = e.chains[t];
    // Vertical run down column `cell`, rows 0..cell (side 0), then the
    // horizontal run along row `cell`, columns cell..m-1 (side 1). The two
    // runs meet inside cell (cell, cell) through an intra-cell coupler.
    for (int row = 0; row <= cell; ++row) {
      chain.push_back(ChimeraGraph::node_id(row, cell, 0, k, m));
    }
    for (int col = cell; col < m; ++col) {
      chain.push_back(ChimeraGraph::node_id(cell, col, 1, k, m));
    }
  }
  return e;
}

void verify_embedding(const Embedding& e, const ChimeraGraph& g,
                      bool require_all_pairs) {
  std::unordered_map<int, int> owner;
  for (std::size_t v = 0; v < e.chains.size(); ++v) {
    const auto& chain = e.chains[v];
    if (chain.empty()) {
      throw EmbeddingError("chain " + std::to_string(v) + " is empty");
    }
    for (int q : chain) {
      if (q < 0 || q >= g.num_nodes) {
        throw EmbeddingError("chain " + std::to_string(v) +
                             " uses invalid qubit " + std::to_string(q));
      }
      auto [it, inserted] = owner.emplace(q, static_cast<int>(v));
      if (!inserted) {
        throw EmbeddingError("qubit " + std::to_string(q) +
                             " shared by chains " + std::to_string(it->second) +
                             " and " + std::to_string(v));
      }
    }
    // Connectivity of the induced subgraph by traversal.
    std::vector<int> stack{chain[0]};
    std::vector<bool> seen(chain.size(), false);
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!seen[i] && g.has_edge(cur, chain[i])) {
          seen[i] = true;
          ++reached;
          stack.push_back(chain[i]);
        }
      }
    }
    if (reached != static_cast<int>(chain.size())) {
      throw EmbeddingError("chain " + std::to_string(v) + " is disconnected");
    }
  }
  if (require_all_pairs) {
    for (std::size_t u = 0; u < e.chains.size(); ++u) {
      for (std::size_t v = u + 1; v < e.chains.size(); ++v) {
        bool linked = false;
        for (int a : e.chains[u]) {
          for (int b : e.chains[v]) {
            if (g.has_edge(a, b)) {
              linked = true;
              break;
            }
          }
          if (linked) break;
        }
        if (!linked) {
          throw EmbeddingError("no coupler between chains " +
                               std::to_string(u) + " and " +
                               std::to_string(v));
        }
      }
    }
  }
}

EmbeddedIsing embed_ising(const IsingModel& logical, const Embedding& e,
                          const ChimeraGraph& g, double chain_strength) {
  if (!(chain_strength > 0.0)) {
    throw std::invalid_argument("chain_strength must be positive");
  }
  if (e.chains.size() < logical.sites.size()) {
    throw std::invalid_argument("embedding has fewer chains than variables");
  }
  EmbeddedIsing out;
  out.chain_strength = chain_strength;
  out.embedding = e;
  out.embedding.chains.resize(logical.sites.size());

  // Physical sites: all chained qubits, sorted.
  std::vector<int> sites;
  for (const auto& chain : out.embedding.chains) {
    sites.insert(sites.end(), chain.begin(), chain.end());
  }
  std::sort(sites.begin(), sites.end());
  std::unordered_map<int, int> pos;
  pos.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) pos[sites[i]] = static_cast<int>(i);

  IsingModel& phys = out.physical;
  phys.sites = sites;
  phys.h.assign(sites.size(), 0.0);
  phys.meta = logical.meta;

  // Biases split equally over chain members.
  for (std::size_t lv = 0; lv < logical.sites.size(); ++lv) {
    const auto& chain = out.embedding.chains[lv];
    const double share = logical.h[lv] / static_cast<double>(chain.size());
    for (int q : chain) phys.h[pos.at(q)] += share;
  }

  std::map<std::pair<int, int>, double> couplings;  // by physical qubit id
  auto add = [&](int a, int b, double value) {
    if (a > b) std::swap(a, b);
    couplings[{a, b}] += value;
  };

  // Logical couplings split equally over all available physical couplers.
  for (const auto& t : logical.couplings) {
    const auto& cu = out.embedding.chains[t.u];
    const auto& cv = out.embedding.chains[t.v];
    std::vector<std::pair<int, int>> links;
    for (int a : cu) {
      for (int b : cv) {
        if (g.has_edge(a, b)) links.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    if (links.empty()) {
      throw EmbeddingError("no physical coupler for logical edge (" +
                           std::to_string(t.u) + ", " + std::to_string(t.v) +
                           ")");
    }
    std::sort(links.begin(), links.end());
    const double share = t.value / static_cast<double>(links.size());
    for (const auto& [a, b] : links) {
      add(a, b, share);
      out.provenance.push_back(
          {a, b, CouplerShare::Kind::logical_share, t.u, t.v, share});
    }
  }

  // Ferromagnetic chain bonds on every in-chain coupler.
  for (std::size_t lv = 0; lv < out.embedding.chains.size(); ++lv) {
    const auto& chain = out.embedding.chains[lv];
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = i + 1; j < chain.size(); ++j) {
        if (g.has_edge(chain[i], chain[j])) {
          int a = std::min(chain[i], chain[j]);
          int b = std::max(chain[i], chain[j]);
          add(a, b, -chain_strength);
          out.provenance.push_back({a, b, CouplerShare::Kind::chain_bond,
                                    static_cast<int>(lv), static_cast<int>(lv),
                                    -chain_strength});
          ++out.chain_bond_count;
        }
      }
    }
  }

  phys.couplings.reserve(couplings.size());
  for (const auto& [key, value] : couplings) {
    phys.couplings.push_back({pos.at(key.first), pos.at(key.second), value});
  }
  // Intact-chain states: every bond contributes -chain_strength, so adding
  // chain_strength * bonds to the offset preserves full logical energies.
  phys.offset = logical.offset +
                chain_strength * static_cast<double>(out.chain_bond_count);
  return out;
}

UnembedResult unembed(std::span<const std::int8_t> physical_state,
                      const EmbeddedIsing& e, std::uint64_t seed) {
  if (physical_state.size() != e.physical.sites.size()) {
    throw std::invalid_argument("physical state length mismatch");
  }
  std::unordered_map<int, int> pos;
  pos.reserve(e.physical.sites.size());
  for (std::size_t i = 0; i < e.physical.sites.size(); ++i) {
    pos[e.physical.sites[i]] = static_cast<int>(i);
  }
  Rng rng(substream_seed(seed, 0, rng_tag::kUnembed));
  UnembedResult out;
  out.logical.resize(e.embedding.chains.size());
  long long broken = 0;
  for (std::size_t lv = 0; lv < e.embedding.chains.size(); ++lv) {
    int up = 0, down = 0;
    for (int q : e.embedding.chains[lv]) {
      (physical_state[pos.at(q)] > 0 ? up : down) += 1;
    }
    if (up != 0 && down != 0) ++broken;
    if (up > down) {
      out.logical[lv] = 1;
    } else if (down > up) {
      out.logical[lv] = -1;
    } else {
      out.logical[lv] = rng.coin() ? 1 : -1;
    }
  }
  out.chain_break_fraction =
      static_cast<double>(broken) /
      static_cast<double>(e.embedding.chains.size());
  return out;
}

SampleSet unembed_reads(const std::vector<std::vector<std::int8_t>>& reads,
                        const EmbeddedIsing& e, const IsingModel& logical,
                        std::uint64_t seed) {
  std::vector<std::vector<std::int8_t>> logical_reads(reads.size());
  std::vector<double> cbf(reads.size());
  for (std::size_t r = 0; r < reads.size(); ++r) {
    auto res = unembed(reads[r], e,
                       substream_seed(seed, r, rng_tag::kUnembed));
    logical_reads[r] = std::move(res.logical);
    cbf[r] = res.chain_break_fraction;
  }
  return aggregate_reads(logical, logical_reads, cbf, seed);
}

}  // namespace qatsp
