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

#include <span>
#include <string>

namespace qatsp {

enum class Verdict { no_significance, first_better, second_better };

std::string to_string(Verdict v);

/// Two-sided Wilcoxon rank-sum outcome at alpha = 0.05; "better" means
/// stochastically smaller (minimization context).
struct ComparisonResult {
  double z = 0.0;
  double p_two_sided = 1.0;
  Verdict verdict = Verdict::no_significance;
  double mean_first = 0.0, sigma_first = 0.0;
  double mean_second = 0.0, sigma_second = 0.0;
};

/// Normal approximation with midranks and tie-corrected variance;
/// z = (W - mu_W) / sigma_W for the first sample's rank sum. Both samples
/// need at least 3 values. All-identical input degenerates to z = 0.
ComparisonResult wilcoxon_rank_sum(std::span<const double> xs,
                                   std::span<const double> ys);

struct Aggregate {
  double mean = 0.0;
  double sigma = 0.0;         // population, 1/n
  double sigma_sample = 0.0;  // 1/(n-1), zero for n == 1
};

Aggregate aggregate(std::span<const double> values);

}  // namespace qatsp
