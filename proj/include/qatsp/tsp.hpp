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

#include <array>
#include <span>
#include <string>
#include <vector>

namespace qatsp {

/// A TSP case: coordinates, integer distance matrix (km) and the matrix
/// normalized by its maximum off-diagonal entry. Immutable after
/// construction; safe to share across threads.
struct Instance {
  std::string name;
  int n = 0;
  std::vector<std::array<double, 2>> coords;  // (lat, lon), TSPLIB DD.MM
  std::vector<std::vector<int>> dist;
  std::vector<std::vector<double>> dist_norm;
  int max_dist = 0;  // normalization denominator, max over i != j
};

struct Tour {
  std::vector<int> order;  // permutation of {0..n-1}, cyclic
  long long length = 0;    // integer km
};

/// TSPLIB GEO arc distance between two DD.MM coordinates, in integer km.
int geo_distance(double lat1, double lon1, double lat2, double lon2);

/// Builds an instance from coordinates; distances via the GEO formula.
/// Requires at least 3 nodes.
Instance make_instance(const std::string& name,
                       const std::vector<std::array<double, 2>>& coords);

/// Parses a TSPLIB file body. Only EDGE_WEIGHT_TYPE GEO is supported.
Instance parse_tsplib(const std::string& text);

Instance load_tsplib(const std::string& path);

/// Restriction to the given nodes, distances recomputed from coordinates
/// and re-normalized over the subset. Node ids must be distinct and valid,
/// at least 3 of them.
Instance subset(const Instance& instance, std::span<const int> nodes);

/// Cyclic tour length in integer km. `order` must be a permutation of the
/// instance's nodes.
long long tour_length(const Instance& instance, std::span<const int> order);

}  // namespace qatsp
