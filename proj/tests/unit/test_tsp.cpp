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

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "qatsp/errors.hpp"
#include "qatsp/rng.hpp"
#include "qatsp/tsp.hpp"
#include "reference_oracles.hpp"
#include "test_util.hpp"

using namespace qatsp;

TEST_SUITE("tsp") {

TEST_CASE("burma14 parses with documented matrix properties") {
  const Instance& b = testutil::burma14();
  CHECK(b.name == "burma14");
  CHECK(b.n == 14);
  for (int i = 0; i < b.n; ++i) {
    CHECK(b.dist[i][i] == 0);
    for (int j = 0; j < b.n; ++j) {
      CHECK(b.dist[i][j] == b.dist[j][i]);
      CHECK(b.dist[i][j] ==
            testoracle::geo_reference(b.coords[i][0], b.coords[i][1],
                                      b.coords[j][0], b.coords[j][1]) *
                (i != j));
    }
  }
}

TEST_CASE("burma14 optimum matches the published value") {
  // Independent Held-Karp over the parsed matrix; the TSPLIB-documented
  // optimum for burma14 is 3323.
  const Instance& b = testutil::burma14();
  std::vector<int> order;
  const long long opt = testoracle::held_karp(b.dist, &order);
  CHECK(opt == 3323);
  CHECK(tour_length(b, order) == 3323);
}

TEST_CASE("identical coordinates give zero distance") {
  const std::vector<std::array<double, 2>> coords = {
      {16.47, 96.10}, {16.47, 96.10}, {20.09, 92.54}};
  const Instance inst = make_instance("twin", coords);
  CHECK(inst.dist[0][1] == 0);
  CHECK(inst.dist[0][2] == inst.dist[1][2]);
}

TEST_CASE("normalization hits exactly 1 and stays in [0,1]") {
  for (int k : {5, 7, 14}) {
    const Instance inst = testutil::burma(k);
    double top = 0.0;
    for (int i = 0; i < inst.n; ++i) {
      for (int j = 0; j < inst.n; ++j) {
        CHECK(inst.dist_norm[i][j] >= 0.0);
        CHECK(inst.dist_norm[i][j] <= 1.0);
        if (i != j) top = std::max(top, inst.dist_norm[i][j]);
      }
    }
    CHECK(top == 1.0);
  }
}

TEST_CASE("subset of all nodes is the identity") {
  const Instance& b = testutil::burma14();
  std::vector<int> all(b.n);
  std::iota(all.begin(), all.end(), 0);
  const Instance same = subset(b, all);
  CHECK(same.dist == b.dist);
  CHECK(same.dist_norm == b.dist_norm);
}

TEST_CASE("subset renormalizes over the subset") {
  const Instance b7 = testutil::burma(7);
  CHECK(b7.n == 7);
  CHECK(b7.max_dist == 997);
  CHECK(b7.dist[0] ==
        std::vector<int>{0, 153, 510, 706, 966, 581, 455});
}

TEST_CASE("subset composition equals combined subset") {
  const Instance& b = testutil::burma14();
  const std::vector<int> first = {0, 2, 4, 6, 8, 10, 12};
  const std::vector<int> second = {1, 2, 4, 5};  // indices into `first`
  const Instance once = subset(b, first);
  const Instance twice = subset(once, second);
  std::vector<int> combined;
  for (int i : second) combined.push_back(first[i]);
  const Instance direct = subset(b, combined);
  CHECK(twice.dist == direct.dist);
  CHECK(twice.dist_norm == direct.dist_norm);
}

TEST_CASE("subset rejects bad ids") {
  const Instance& b = testutil::burma14();
  CHECK_THROWS_AS(subset(b, std::vector<int>{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(subset(b, std::vector<int>{0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(subset(b, std::vector<int>{0, 1, 14}),
                  std::invalid_argument);
}

TEST_CASE("tour_length: triangle, reversal and rotation invariance") {
  const Instance tri = testutil::burma(3);
  const long long all_edges =
      tri.dist[0][1] + tri.dist[1][2] + tri.dist[2][0];
  CHECK(tour_length(tri, std::vector<int>{0, 1, 2}) == all_edges);
  CHECK(tour_length(tri, std::vector<int>{2, 1, 0}) == all_edges);

  const Instance b7 = testutil::burma(7);
  Rng rng(42);
  std::vector<int> order(7);
  std::iota(order.begin(), order.end(), 0);
  for (int trial = 0; trial < 25; ++trial) {
    rng.shuffle(order);
    const long long len = tour_length(b7, order);
    std::vector<int> rotated(order.begin() + 1, order.end());
    rotated.push_back(order[0]);
    CHECK(tour_length(b7, rotated) == len);
    std::vector<int> reversed(order.rbegin(), order.rend());
    CHECK(tour_length(b7, reversed) == len);
  }
}

TEST_CASE("tour_length rejects non-permutations") {
  const Instance tri = testutil::burma(3);
  CHECK_THROWS_AS(tour_length(tri, std::vector<int>{0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tour_length(tri, std::vector<int>{0, 1}),
                  std::invalid_argument);
}

TEST_CASE("parse errors name the offending line") {
  try {
    parse_tsplib("NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\n"
                 "NODE_COORD_SECTION\n1 16.47 96.10\nbogus line\nEOF\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("unsupported weight type is its own failure") {
  CHECK_THROWS_AS(
      parse_tsplib("NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
                   "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n"),
      UnsupportedFormatError);
}

TEST_CASE("missing coordinates are rejected") {
  CHECK_THROWS_AS(
      parse_tsplib("DIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\n"
                   "NODE_COORD_SECTION\n1 16.47 96.10\n2 16.47 94.44\nEOF\n"),
      ParseError);
}

}  // TEST_SUITE
