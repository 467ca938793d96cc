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

#include "qatsp/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qatsp/errors.hpp"

namespace qatsp {

namespace {

// TSPLIB GEO: DD.MM input, truncated degrees plus minutes as decimals.
constexpr double kPi = 3.141592;
constexpr double kEarthRadius = 6378.388;  // RRR

double ddmm_to_radians(double x) {
  double deg = std::trunc(x);
  double min = x - deg;
  return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

int geo_distance(double lat1, double lon1, double lat2, double lon2) {
  double la1 = ddmm_to_radians(lat1);
  double lo1 = ddmm_to_radians(lon1);
  double la2 = ddmm_to_radians(lat2);
  double lo2 = ddmm_to_radians(lon2);
  double q1 = std::cos(lo1 - lo2);
  double q2 = std::cos(la1 - la2);
  double q3 = std::cos(la1 + la2);
  double arg = 0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3);
  arg = std::clamp(arg, -1.0, 1.0);
  return static_cast<int>(kEarthRadius * std::acos(arg) + 1.0);
}

Instance make_instance(const std::string& name,
                       const std::vector<std::array<double, 2>>& coords) {
  const int n = static_cast<int>(coords.size());
  if (n < 3) {
    throw std::invalid_argument("instance needs at least 3 nodes, got " +
                                std::to_string(n));
  }
  Instance inst;
  inst.name = name;
  inst.n = n;
  inst.coords = coords;
  inst.dist.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int d = 0;
      if (coords[i] != coords[j]) {
        d = geo_distance(coords[i][0], coords[i][1], coords[j][0],
                         coords[j][1]);
      }
      inst.dist[i][j] = d;
      inst.dist[j][i] = d;
    }
  }
  int dmax = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) dmax = std::max(dmax, inst.dist[i][j]);
  if (dmax == 0) {
    throw std::invalid_argument("degenerate instance: all distances zero");
  }
  inst.max_dist = dmax;
  inst.dist_norm.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inst.dist_norm[i][j] =
          static_cast<double>(inst.dist[i][j]) / static_cast<double>(dmax);
  return inst;
}

Instance parse_tsplib(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int dimension = -1;
  std::string name = "unnamed";
  std::string weight_type;
  bool in_coords = false;
  std::vector<std::array<double, 2>> coords;
  std::vector<bool> seen;

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;
    if (!in_coords) {
      auto colon = t.find(':');
      std::string key = trim(colon == std::string::npos ? t : t.substr(0, colon));
      std::string value = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
      if (key == "NAME") {
        name = value;
      } else if (key == "DIMENSION") {
        try {
          dimension = std::stoi(value);
        } catch (const std::exception&) {
          throw ParseError("invalid DIMENSION value '" + value + "'", lineno);
        }
      } else if (key == "EDGE_WEIGHT_TYPE") {
        weight_type = value;
      } else if (key == "NODE_COORD_SECTION") {
        if (weight_type.empty()) {
          throw ParseError("NODE_COORD_SECTION before EDGE_WEIGHT_TYPE",
                           lineno);
        }
        if (weight_type != "GEO") {
          throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE '" +
                                       weight_type + "' (only GEO)");
        }
        if (dimension < 3) {
          throw ParseError("DIMENSION missing or < 3", lineno);
        }
        coords.assign(dimension, {0.0, 0.0});
        seen.assign(dimension, false);
        in_coords = true;
      }
      // Unknown header keys (TYPE, COMMENT, ...) are ignored.
    } else {
      std::istringstream ls(t);
      int id;
      double lat, lon;
      if (!(ls >> id >> lat >> lon)) {
        throw ParseError("malformed coordinate line '" + t + "'", lineno);
      }
      if (id < 1 || id > dimension) {
        throw ParseError("node id " + std::to_string(id) + " out of range",
                         lineno);
      }
      if (seen[id - 1]) {
        throw ParseError("duplicate node id " + std::to_string(id), lineno);
      }
      seen[id - 1] = true;
      coords[id - 1] = {lat, lon};
    }
  }
  if (!in_coords) {
    throw ParseError("missing NODE_COORD_SECTION", lineno);
  }
  for (int i = 0; i < dimension; ++i) {
    if (!seen[i]) {
      throw ParseError("missing coordinates for node " + std::to_string(i + 1),
                       lineno);
    }
  }
  return make_instance(name, coords);
}

Instance load_tsplib(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_tsplib(buf.str());
}

Instance subset(const Instance& instance, std::span<const int> nodes) {
  if (nodes.size() < 3) {
    throw std::invalid_argument("subset needs at least 3 nodes");
  }
  std::vector<bool> used(instance.n, false);
  std::vector<std::array<double, 2>> coords;
  coords.reserve(nodes.size());
  for (int id : nodes) {
    if (id < 0 || id >= instance.n) {
      throw std::invalid_argument("subset node id " + std::to_string(id) +
                                  " out of range");
    }
    if (used[id]) {
      throw std::invalid_argument("duplicate subset node id " +
                                  std::to_string(id));
    }
    used[id] = true;
    coords.push_back(instance.coords[id]);
  }
  std::string name =
      instance.name + "'" + std::to_string(nodes.size());
  return make_instance(name, coords);
}

long long tour_length(const Instance& instance, std::span<const int> order) {
  if (static_cast<int>(order.size()) != instance.n) {
    throw std::invalid_argument("order length " +
                                std::to_string(order.size()) +
                                " != instance size " +
                                std::to_string(instance.n));
  }
  std::vector<bool> used(instance.n, false);
  for (int v : order) {
    if (v < 0 || v >= instance.n || used[v]) {
      throw std::invalid_argument("order is not a permutation");
    }
    used[v] = true;
  }
  long long total = 0;
  for (int j = 0; j < instance.n; ++j) {
    total += instance.dist[order[j]][order[(j + 1) % instance.n]];
  }
  return total;
}

}  // namespace qatsp
