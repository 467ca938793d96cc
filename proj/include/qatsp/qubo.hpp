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
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qatsp {

enum class QuboType { reference, heuristic };

std::string to_string(QuboType t);
QuboType qubo_type_from_string(const std::string& s);

/// Provenance carried from builder through Ising conversion, scaling and
/// embedding. `penalized` is the directed edge set E_p of the heuristic
/// builder (empty for the reference type).
struct ModelMeta {
  QuboType qubo_type = QuboType::reference;
  int n = 0;  // cities; variable layout v(city, pos) = city * n + pos
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;  // 2A/B for heuristic, 0 otherwise
  std::vector<std::pair<int, int>> penalized;  // sorted (from, to) city pairs

  bool is_penalized(int from, int to) const;
};

struct QuadTerm {
  int u = 0;  // u < v
  int v = 0;
  double value = 0.0;
};

/// Binary-quadratic objective over x in {0,1}. `offset` holds constants
/// dropped from reported energies; for both TSP builders it equals 2nA, so
/// every permutation state reports constraint energy exactly -2nA.
struct Qubo {
  int n_vars = 0;
  std::vector<double> linear;         // indexed by variable
  std::vector<QuadTerm> quadratic;    // sorted by (u, v), coalesced
  double offset = 0.0;
  ModelMeta meta;

  /// Reported energy (offset excluded) of an n_vars-long 0/1 state.
  double energy(std::span<const std::uint8_t> bits) const;
};

/// Same objective over spins s in {-1,+1}. Sites are explicit so embedded
/// models can live on sparse physical qubit ids; h/couplings index into
/// `sites` positions.
struct IsingModel {
  std::vector<int> sites;
  std::vector<double> h;
  std::vector<QuadTerm> couplings;  // positions into sites, u < v
  double offset = 0.0;
  ModelMeta meta;

  int num_sites() const { return static_cast<int>(sites.size()); }
  double energy(std::span<const std::int8_t> spins) const;
  double max_abs_h() const;
  double max_abs_coupling() const;
};

/// Post-auto-scale bookkeeping: original penalty parameters divided by the
/// common scale factor.
struct ScaledParams {
  double scale = 1.0;
  double A_real = 0.0;
  double B_real = 0.0;
  double cs_real = 0.0;
};

struct TourDecode {
  enum class Violation { none, row, column };

  bool feasible = false;
  std::vector<int> order;  // filled when feasible
  Violation violation = Violation::none;
  int violation_index = -1;  // city (row) or position (column)
  bool penalized = false;    // heuristic only: tour uses an edge of E_p
};

/// Reference TSP QUBO: one-hot row/column constraints weighted by A plus
/// cyclic tour distance weighted by B over the normalized matrix.
Qubo build_r_qubo(const std::vector<std::vector<double>>& dist_norm, double A,
                  double B);

/// Heuristic variant: distances above the per-row median are replaced by
/// C = 2A/B, so a penalized step costs exactly 2A. The penalized directed
/// edge set is recorded in meta for decoding.
Qubo build_h_qubo(const std::vector<std::vector<double>>& dist_norm, double A,
                  double B);

Qubo build_qubo(const std::vector<std::vector<double>>& dist_norm,
                QuboType type, double A, double B);

/// x = (1+s)/2 substitution. Full energies (reported + offset) agree on
/// every state.
IsingModel qubo_to_ising(const Qubo& q);

/// Uniform division by s = max(1, max|h|/2, max|J|) so that |h| <= 2 and
/// |J| <= 1. chain_strength participates in ScaledParams bookkeeping only;
/// chain bonds already present in the model are scaled like any coupler.
std::pair<IsingModel, ScaledParams> auto_scale(const IsingModel& m,
                                               double chain_strength);

/// Classifies an n*n bit state: feasible iff it is a permutation matrix
/// (first violated row, then column, reported otherwise).
TourDecode decode_state(std::span<const std::uint8_t> bits,
                        const ModelMeta& meta);

/// Spin state to bits via x = (1+s)/2.
std::vector<std::uint8_t> spins_to_bits(std::span<const std::int8_t> spins);

inline int var_index(int city, int pos, int n) { return city * n + pos; }

/// Per-row median of off-diagonal entries (midpoint of the two middle order
/// statistics when the count is even).
std::vector<double> row_medians(const std::vector<std::vector<double>>& d);

}  // namespace qatsp
