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

#include "qatsp/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qatsp {

namespace {

void check_square(const std::vector<std::vector<double>>& d) {
  const std::size_t n = d.size();
  if (n < 3) {
    throw std::invalid_argument("distance matrix needs at least 3 rows");
  }
  for (const auto& row : d) {
    if (row.size() != n) {
      throw std::invalid_argument("distance matrix is not square");
    }
  }
}

Qubo assemble(const std::vector<std::vector<double>>& weights, int n, double A,
              ModelMeta meta) {
  Qubo q;
  q.meta = std::move(meta);
  q.n_vars = n * n;
  q.linear.assign(q.n_vars, 0.0);
  std::map<std::pair<int, int>, double> quad;
  auto add_quad = [&](int a, int b, double value) {
    if (a > b) std::swap(a, b);
    quad[{a, b}] += value;
  };

  // Row (city) and column (position) one-hot constraints A(1 - sum x)^2:
  // -A per member, +2A per in-row / in-column pair, +A to the offset.
  for (int c = 0; c < 2 * n; ++c) {
    q.offset += A;
    for (int a = 0; a < n; ++a) {
      int va = (c < n) ? var_index(c, a, n) : var_index(a, c - n, n);
      q.linear[va] -= A;
      for (int b = a + 1; b < n; ++b) {
        int vb = (c < n) ? var_index(c, b, n) : var_index(b, c - n, n);
        add_quad(va, vb, 2.0 * A);
      }
    }
  }

  // Tour term: ordered city pairs (u, i), u != i, with the cyclic successor
  // position. `weights` already carries B (and the exact 2A penalty for
  // heuristic edges), so coinciding pairs just accumulate.
  for (int u = 0; u < n; ++u) {
    for (int i = 0; i < n; ++i) {
      if (u == i) continue;
      for (int j = 0; j < n; ++j) {
        add_quad(var_index(u, j, n), var_index(i, (j + 1) % n, n),
                 weights[u][i]);
      }
    }
  }

  q.quadratic.reserve(quad.size());
  for (const auto& [key, value] : quad) {
    q.quadratic.push_back({key.first, key.second, value});
  }
  return q;
}

}  // namespace

std::string to_string(QuboType t) {
  return t == QuboType::reference ? "reference" : "heuristic";
}

QuboType qubo_type_from_string(const std::string& s) {
  if (s == "reference" || s == "r") return QuboType::reference;
  if (s == "heuristic" || s == "h") return QuboType::heuristic;
  throw std::invalid_argument("unknown qubo type '" + s + "'");
}

bool ModelMeta::is_penalized(int from, int to) const {
  return std::binary_search(penalized.begin(), penalized.end(),
                            std::make_pair(from, to));
}

std::vector<double> row_medians(const std::vector<std::vector<double>>& d) {
  const int n = static_cast<int>(d.size());
  std::vector<double> medians(n, 0.0);
  std::vector<double> row;
  for (int u = 0; u < n; ++u) {
    row.clear();
    for (int i = 0; i < n; ++i)
      if (i != u) row.push_back(d[u][i]);
    std::sort(row.begin(), row.end());
    const std::size_t k = row.size();
    medians[u] = (k % 2 == 1) ? row[k / 2]
                              : 0.5 * (row[k / 2 - 1] + row[k / 2]);
  }
  return medians;
}

Qubo build_r_qubo(const std::vector<std::vector<double>>& dist_norm, double A,
                  double B) {
  check_square(dist_norm);
  if (!(A > 0.0) || !(B > 0.0)) {
    throw std::invalid_argument("penalty parameters must be positive");
  }
  const int n = static_cast<int>(dist_norm.size());
  std::vector<std::vector<double>> weights(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < n; ++i)
      if (u != i) weights[u][i] = B * dist_norm[u][i];
  ModelMeta meta;
  meta.qubo_type = QuboType::reference;
  meta.n = n;
  meta.A = A;
  meta.B = B;
  return assemble(weights, n, A, std::move(meta));
}

Qubo build_h_qubo(const std::vector<std::vector<double>>& dist_norm, double A,
                  double B) {
  check_square(dist_norm);
  if (!(A > 0.0) || !(B > 0.0)) {
    throw std::invalid_argument("penalty parameters must be positive");
  }
  const double C = 2.0 * A / B;
  if (!std::isfinite(C)) {
    throw std::invalid_argument("B too small: C = 2A/B not representable");
  }
  const int n = static_cast<int>(dist_norm.size());
  const std::vector<double> medians = row_medians(dist_norm);

  ModelMeta meta;
  meta.qubo_type = QuboType::heuristic;
  meta.n = n;
  meta.A = A;
  meta.B = B;
  meta.C = C;

  // Penalized steps carry exactly B*C = 2A; storing 2A directly keeps the
  // identity exact in floating point.
  std::vector<std::vector<double>> weights(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) {
    for (int i = 0; i < n; ++i) {
      if (u == i) continue;
      if (dist_norm[u][i] > medians[u]) {
        weights[u][i] = 2.0 * A;
        meta.penalized.emplace_back(u, i);
      } else {
        weights[u][i] = B * dist_norm[u][i];
      }
    }
  }
  std::sort(meta.penalized.begin(), meta.penalized.end());
  return assemble(weights, n, A, std::move(meta));
}

Qubo build_qubo(const std::vector<std::vector<double>>& dist_norm,
                QuboType type, double A, double B) {
  return type == QuboType::reference ? build_r_qubo(dist_norm, A, B)
                                     : build_h_qubo(dist_norm, A, B);
}

double Qubo::energy(std::span<const std::uint8_t> bits) const {
  if (static_cast<int>(bits.size()) != n_vars) {
    throw std::invalid_argument("state length != n_vars");
  }
  double e = 0.0;
  for (int i = 0; i < n_vars; ++i)
    if (bits[i]) e += linear[i];
  for (const auto& t : quadratic)
    if (bits[t.u] && bits[t.v]) e += t.value;
  return e;
}

double IsingModel::energy(std::span<const std::int8_t> spins) const {
  if (spins.size() != sites.size()) {
    throw std::invalid_argument("state length != number of sites");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) e += h[i] * spins[i];
  for (const auto& t : couplings) e += t.value * spins[t.u] * spins[t.v];
  return e;
}

double IsingModel::max_abs_h() const {
  double m = 0.0;
  for (double v : h) m = std::max(m, std::abs(v));
  return m;
}

double IsingModel::max_abs_coupling() const {
  double m = 0.0;
  for (const auto& t : couplings) m = std::max(m, std::abs(t.value));
  return m;
}

IsingModel qubo_to_ising(const Qubo& q) {
  IsingModel m;
  m.meta = q.meta;
  m.sites.resize(q.n_vars);
  for (int i = 0; i < q.n_vars; ++i) m.sites[i] = i;
  m.h.assign(q.n_vars, 0.0);
  m.offset = q.offset;
  for (int i = 0; i < q.n_vars; ++i) {
    m.h[i] += q.linear[i] / 2.0;
    m.offset += q.linear[i] / 2.0;
  }
  m.couplings.reserve(q.quadratic.size());
  for (const auto& t : q.quadratic) {
    m.couplings.push_back({t.u, t.v, t.value / 4.0});
    m.h[t.u] += t.value / 4.0;
    m.h[t.v] += t.value / 4.0;
    m.offset += t.value / 4.0;
  }
  return m;
}

std::pair<IsingModel, ScaledParams> auto_scale(const IsingModel& m,
                                               double chain_strength) {
  if (m.sites.empty()) {
    throw std::invalid_argument("auto_scale: empty model");
  }
  const double s =
      std::max({1.0, m.max_abs_h() / 2.0, m.max_abs_coupling() / 1.0});
  IsingModel scaled = m;
  if (s > 1.0) {
    for (double& v : scaled.h) v /= s;
    for (auto& t : scaled.couplings) t.value /= s;
    scaled.offset /= s;
  }
  ScaledParams p;
  p.scale = s;
  p.A_real = m.meta.A / s;
  p.B_real = m.meta.B / s;
  p.cs_real = chain_strength / s;
  return {std::move(scaled), p};
}

TourDecode decode_state(std::span<const std::uint8_t> bits,
                        const ModelMeta& meta) {
  const int n = meta.n;
  if (static_cast<int>(bits.size()) != n * n) {
    throw std::invalid_argument("state length != n^2");
  }
  TourDecode out;
  for (int city = 0; city < n; ++city) {
    int sum = 0;
    for (int pos = 0; pos < n; ++pos) sum += bits[var_index(city, pos, n)];
    if (sum != 1) {
      out.feasible = false;
      out.violation = TourDecode::Violation::row;
      out.violation_index = city;
      return out;
    }
  }
  std::vector<int> order(n, -1);
  for (int pos = 0; pos < n; ++pos) {
    int sum = 0;
    for (int city = 0; city < n; ++city) {
      if (bits[var_index(city, pos, n)]) {
        sum += 1;
        order[pos] = city;
      }
    }
    if (sum != 1) {
      out.feasible = false;
      out.violation = TourDecode::Violation::column;
      out.violation_index = pos;
      return out;
    }
  }
  out.feasible = true;
  out.order = std::move(order);
  if (meta.qubo_type == QuboType::heuristic) {
    for (int j = 0; j < n; ++j) {
      if (meta.is_penalized(out.order[j], out.order[(j + 1) % n])) {
        out.penalized = true;
        break;
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> spins_to_bits(std::span<const std::int8_t> spins) {
  std::vector<std::uint8_t> bits(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) bits[i] = spins[i] > 0;
  return bits;
}

}  // namespace qatsp
