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

#include "qatsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "qatsp/errors.hpp"
#include "qatsp/parallel.hpp"

namespace qatsp {

namespace {

constexpr double kTieWindow = 1e-9;

// Dense triangular view for O(n + n^2/2)-lookup evaluation of states with
// one variable set per position column.
struct DenseQubo {
  int n_vars;
  std::vector<double> diag;
  std::vector<double> upper;  // upper[u * n_vars + v], u < v

  explicit DenseQubo(const Qubo& q)
      : n_vars(q.n_vars),
        diag(q.linear),
        upper(static_cast<std::size_t>(q.n_vars) * q.n_vars, 0.0) {
    for (const auto& t : q.quadratic) {
      upper[static_cast<std::size_t>(t.u) * n_vars + t.v] = t.value;
    }
  }

  // seq[j] = city at position j; the active variables are v(seq[j], j).
  double energy(const std::vector<int>& vars) const {
    double e = 0.0;
    const int k = static_cast<int>(vars.size());
    for (int a = 0; a < k; ++a) {
      e += diag[vars[a]];
      const double* row = upper.data() + static_cast<std::size_t>(vars[a]) * n_vars;
      for (int b = a + 1; b < k; ++b) {
        int u = vars[a], v = vars[b];
        e += (u < v) ? row[v]
                     : upper[static_cast<std::size_t>(v) * n_vars + u];
      }
    }
    return e;
  }
};

struct Extremes {
  double best = 0.0, worst = 0.0;
  std::vector<int> best_seq, worst_seq;
  bool any = false;

  void feed(double e, const std::vector<int>& seq) {
    if (!any) {
      best = worst = e;
      best_seq = worst_seq = seq;
      any = true;
      return;
    }
    if (e < best) {
      best = e;
      best_seq = seq;
    }
    if (e > worst) {
      worst = e;
      worst_seq = seq;
    }
  }

  // Sequences enumerate in lexicographic order per branch and branches
  // merge in order, so strict comparisons keep the lex-smallest extreme.
  void merge(const Extremes& o) {
    if (!o.any) return;
    if (!any) {
      *this = o;
      return;
    }
    if (o.best < best) {
      best = o.best;
      best_seq = o.best_seq;
    }
    if (o.worst > worst) {
      worst = o.worst;
      worst_seq = o.worst_seq;
    }
  }
};

int count_penalized_steps(const ModelMeta& meta, const std::vector<int>& seq) {
  if (meta.qubo_type != QuboType::heuristic) return 0;
  const int n = static_cast<int>(seq.size());
  int k = 0;
  for (int j = 0; j < n; ++j) {
    if (meta.is_penalized(seq[j], seq[(j + 1) % n])) ++k;
  }
  return k;
}

ExtremeRecord make_record(const Qubo& qubo, double energy,
                          std::vector<int> seq, double constraint_energy) {
  ExtremeRecord r;
  r.energy = energy;
  r.constraint_energy = constraint_energy;
  r.b_coeff = (energy - constraint_energy) / qubo.meta.B;
  r.sequence = std::move(seq);
  return r;
}

}  // namespace

LandscapeSummary enumerate_tours(const Instance& instance, const Qubo& qubo,
                                 int jobs, std::vector<EnergyRow>* dump) {
  const int n = instance.n;
  if (n > 10) {
    throw BudgetError("enumerate_tours: n = " + std::to_string(n) +
                      " exceeds the n! budget (max 10)");
  }
  if (qubo.meta.n != n) {
    throw std::invalid_argument("qubo does not match instance size");
  }
  const DenseQubo dense(qubo);
  const double stratum = -2.0 * n * qubo.meta.A;

  struct Branch {
    Extremes all, nonpen;
    long long count = 0, count_nonpen = 0;
    double opt_min = 0.0;
    std::vector<std::vector<int>> opt_seqs;
    std::vector<EnergyRow> rows;
  };
  std::vector<Branch> branches(n);

  parallel_for(n, jobs, [&](std::int64_t first) {
    Branch& br = branches[first];
    std::vector<int> rest;
    for (int c = 0; c < n; ++c)
      if (c != static_cast<int>(first)) rest.push_back(c);
    std::vector<int> seq(n), vars(n);
    seq[0] = static_cast<int>(first);
    do {
      for (int j = 1; j < n; ++j) seq[j] = rest[j - 1];
      for (int j = 0; j < n; ++j) vars[j] = var_index(seq[j], j, n);
      const double e = dense.energy(vars);
      const int pen = count_penalized_steps(qubo.meta, seq);
      ++br.count;
      br.all.feed(e, seq);
      if (pen == 0) {
        ++br.count_nonpen;
        br.nonpen.feed(e, seq);
      }
      if (br.opt_seqs.empty() || e < br.opt_min - kTieWindow) {
        br.opt_min = e;
        br.opt_seqs.clear();
        br.opt_seqs.push_back(seq);
      } else if (e <= br.opt_min + kTieWindow) {
        br.opt_seqs.push_back(seq);
        if (e < br.opt_min) br.opt_min = e;
      }
      if (dump) {
        br.rows.push_back({seq, e,
                           pen ? EnergyRow::Class::penalized
                               : EnergyRow::Class::feasible});
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  LandscapeSummary out;
  Extremes all, nonpen;
  double opt_min = 0.0;
  bool opt_any = false;
  for (const auto& br : branches) {
    out.n_feasible += br.count;
    out.n_nonpenalized += br.count_nonpen;
    all.merge(br.all);
    nonpen.merge(br.nonpen);
    if (!br.opt_seqs.empty() && (!opt_any || br.opt_min < opt_min)) {
      opt_min = br.opt_min;
      opt_any = true;
    }
    if (dump) {
      dump->insert(dump->end(), br.rows.begin(), br.rows.end());
    }
  }
  out.n_penalized = out.n_feasible - out.n_nonpenalized;
  out.best_feasible = make_record(qubo, all.best, all.best_seq, stratum);
  out.worst_feasible = make_record(qubo, all.worst, all.worst_seq, stratum);
  if (nonpen.any) {
    out.best_nonpenalized =
        make_record(qubo, nonpen.best, nonpen.best_seq, stratum);
    out.worst_nonpenalized =
        make_record(qubo, nonpen.worst, nonpen.worst_seq, stratum);
  }
  for (const auto& br : branches) {
    for (const auto& s : br.opt_seqs) {
      // Branch windows can be wider than the global one; re-filter.
      std::vector<int> vars(n);
      for (int j = 0; j < n; ++j) vars[j] = var_index(s[j], j, n);
      if (dense.energy(vars) <= opt_min + kTieWindow) {
        out.optimal_tours.push_back(s);
      }
    }
  }
  std::sort(out.optimal_tours.begin(), out.optimal_tours.end());
  return out;
}

ExtremeRecord enumerate_column_functions(const Instance& instance,
                                         const Qubo& qubo, int jobs,
                                         std::vector<EnergyRow>* dump) {
  const int n = instance.n;
  double space = std::pow(static_cast<double>(n), n);
  if (space > 1e8) {
    throw BudgetError("enumerate_column_functions: n^n exceeds 1e8 budget");
  }
  if (qubo.meta.n != n) {
    throw std::invalid_argument("qubo does not match instance size");
  }
  const DenseQubo dense(qubo);

  struct Branch {
    Extremes best;  // only .best used
    std::vector<EnergyRow> rows;
  };
  std::vector<Branch> branches(n);

  parallel_for(n, jobs, [&](std::int64_t first) {
    Branch& br = branches[first];
    std::vector<int> seq(n, 0), vars(n), counts(n, 0);
    seq[0] = static_cast<int>(first);
    while (true) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int j = 0; j < n; ++j) ++counts[seq[j]];
      bool perm = true;
      for (int c : counts)
        if (c != 1) {
          perm = false;
          break;
        }
      if (!perm) {
        for (int j = 0; j < n; ++j) vars[j] = var_index(seq[j], j, n);
        const double e = dense.energy(vars);
        br.best.feed(e, seq);
        if (dump) br.rows.push_back({seq, e, EnergyRow::Class::infeasible});
      }
      // Odometer over positions 1..n-1 (position 0 pinned to the branch).
      int j = n - 1;
      while (j >= 1 && seq[j] == n - 1) {
        seq[j] = 0;
        --j;
      }
      if (j < 1) break;
      ++seq[j];
    }
  });

  Extremes best;
  for (const auto& br : branches) best.merge(br.best);
  if (dump) {
    for (const auto& br : branches)
      dump->insert(dump->end(), br.rows.begin(), br.rows.end());
  }

  // Constraint stratum from the winner's city multiplicities.
  std::vector<int> counts(n, 0);
  for (int c : best.best_seq) ++counts[c];
  double rowpart = 0.0;
  for (int c : counts) rowpart += (1.0 - c) * (1.0 - c);
  const double stratum = qubo.meta.A * rowpart - 2.0 * n * qubo.meta.A;
  return make_record(qubo, best.best, best.best_seq, stratum);
}

Tour brute_optimum(const Instance& instance, int jobs) {
  const int n = instance.n;
  if (n > 12) {
    throw BudgetError("brute_optimum: n = " + std::to_string(n) +
                      " exceeds the (n-1)! budget (max 12)");
  }
  struct Branch {
    long long best = -1;
    std::vector<int> order;
  };
  std::vector<Branch> branches(n - 1);

  // order[0] = 0; order[1] = branch city; remaining cities permuted.
  parallel_for(n - 1, jobs, [&](std::int64_t bi) {
    Branch& br = branches[bi];
    const int second = static_cast<int>(bi) + 1;
    std::vector<int> rest;
    for (int c = 1; c < n; ++c)
      if (c != second) rest.push_back(c);
    std::vector<int> order(n);
    order[0] = 0;
    order[1] = second;
    do {
      for (int j = 2; j < n; ++j) order[j] = rest[j - 2];
      long long len = 0;
      for (int j = 0; j < n; ++j) {
        len += instance.dist[order[j]][order[(j + 1) % n]];
      }
      if (br.best < 0 || len < br.best) {
        br.best = len;
        br.order = order;
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  Tour best;
  best.length = -1;
  for (const auto& br : branches) {
    if (best.length < 0 || br.best < best.length) {
      best.length = br.best;
      best.order = br.order;
    }
  }
  return best;
}

}  // namespace qatsp
