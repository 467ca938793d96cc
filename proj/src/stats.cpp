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

#include "qatsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qatsp {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::no_significance:
      return "no-significance";
    case Verdict::first_better:
      return "first-better";
    case Verdict::second_better:
      return "second-better";
  }
  return "no-significance";
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("aggregate: empty input");
  }
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  Aggregate a;
  a.mean = mean;
  a.sigma = std::sqrt(ss / n);
  a.sigma_sample = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return a;
}

ComparisonResult wilcoxon_rank_sum(std::span<const double> xs,
                                   std::span<const double> ys) {
  constexpr double kAlpha = 0.05;
  if (xs.size() < 3 || ys.size() < 3) {
    throw std::invalid_argument("wilcoxon_rank_sum: need >= 3 per sample");
  }
  const std::size_t n1 = xs.size(), n2 = ys.size();
  const std::size_t N = n1 + n2;

  struct Entry {
    double value;
    bool first;
  };
  std::vector<Entry> pool;
  pool.reserve(N);
  for (double v : xs) pool.push_back({v, true});
  for (double v : ys) pool.push_back({v, false});
  std::sort(pool.begin(), pool.end(),
            [](const Entry& a, const Entry& b) { return a.value < b.value; });

  // Midranks and the tie term sum(t^3 - t).
  double rank_sum_first = 0.0;
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < N) {
    std::size_t j = i;
    while (j < N && pool[j].value == pool[i].value) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = (static_cast<double>(i + 1) +
                            static_cast<double>(j)) /
                           2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pool[k].first) rank_sum_first += midrank;
    }
    tie_term += t * t * t - t;
    i = j;
  }

  ComparisonResult r;
  const Aggregate a1 = aggregate(xs);
  const Aggregate a2 = aggregate(ys);
  r.mean_first = a1.mean;
  r.sigma_first = a1.sigma;
  r.mean_second = a2.mean;
  r.sigma_second = a2.sigma;

  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dN = static_cast<double>(N);
  const double mu = dn1 * (dN + 1.0) / 2.0;
  const double var = dn1 * dn2 / 12.0 *
                     ((dN + 1.0) - tie_term / (dN * (dN - 1.0)));
  if (var <= 0.0) {
    // Every value identical across both samples.
    r.z = 0.0;
    r.p_two_sided = 1.0;
    r.verdict = Verdict::no_significance;
    return r;
  }
  r.z = (rank_sum_first - mu) / std::sqrt(var);
  r.p_two_sided = std::erfc(std::abs(r.z) / std::sqrt(2.0));
  if (r.p_two_sided >= kAlpha) {
    r.verdict = Verdict::no_significance;
  } else {
    r.verdict = r.z < 0.0 ? Verdict::first_better : Verdict::second_better;
  }
  return r;
}

}  // namespace qatsp
