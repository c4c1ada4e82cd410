// Copyright 2026 The agentmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "agentmap/rng.hpp"

#include <stdexcept>

namespace agentmap {

namespace {

std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state = a ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  return splitmix64(state);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(mix_seed(seed, stream)) {
  std::uint64_t state = key_;
  for (auto &word : s_) {
    word = splitmix64(state);
  }
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("Rng::below requires a positive bound");
  }
  // Reject the low tail so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    std::uint64_t r = (*this)();
    if (r >= threshold) {
      return r % n;
    }
  }
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(key_, stream);
}

}  // namespace agentmap
