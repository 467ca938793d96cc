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
#include <random>
#include <vector>

namespace qatsp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Substream derivation: every consumer of randomness seeds its own stream
// from (master seed, stream index, domain tag), so results do not depend on
// scheduling or worker count.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t tag = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(tag)) ^ stream);
}

// mt19937_64 with hand-rolled draw helpers. std::*_distribution is
// implementation-defined; these are not, keeping streams portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  // Random spin, +1 or -1.
  int spin() { return (gen_() & 1) ? 1 : -1; }

  bool coin() { return (gen_() & 1) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Domain tags for substream separation.
namespace rng_tag {
inline constexpr std::uint64_t kAnnealRead = 0x5a5a01;
inline constexpr std::uint64_t kUnembed = 0x5a5a02;
inline constexpr std::uint64_t kSweepCell = 0x5a5a03;
inline constexpr std::uint64_t kHybridRun = 0x5a5a04;
}  // namespace rng_tag

}  // namespace qatsp
