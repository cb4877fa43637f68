// Copyright 2026 The segrobust Authors.
//
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

// Test-only reference implementations and generators. Nothing here shares
// code with the library paths they check.

#ifndef SEGROBUST_TESTS_ORACLES_H_
#define SEGROBUST_TESTS_ORACLES_H_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "segrobust/text.h"

namespace segrobust::testing {

// Plain exponential recursion over the three edit moves. No memoization.
inline size_t BruteForceEditDistance(const std::vector<std::string>& a,
                                     size_t i,
                                     const std::vector<std::string>& b,
                                     size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const size_t sub = BruteForceEditDistance(a, i + 1, b, j + 1) +
                     (a[i] == b[j] ? 0 : 1);
  const size_t del = BruteForceEditDistance(a, i + 1, b, j) + 1;
  const size_t ins = BruteForceEditDistance(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

inline size_t BruteForceEditDistance(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  return BruteForceEditDistance(a, 0, b, 0);
}

// The same recursion with its results cached per (i, j). Top-down, so it
// shares nothing with the library's bottom-up table.
inline size_t MemoizedEditDistance(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::vector<std::vector<std::optional<size_t>>> memo(
      a.size() + 1, std::vector<std::optional<size_t>>(b.size() + 1));
  std::function<size_t(size_t, size_t)> rec = [&](size_t i, size_t j) -> size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    auto& slot = memo[i][j];
    if (!slot) {
      slot = std::min({rec(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1),
                       rec(i + 1, j) + 1, rec(i, j + 1) + 1});
    }
    return *slot;
  };
  return rec(0, 0);
}

// Every sequence over `alphabet` with length 0..max_len.
inline std::vector<std::vector<std::string>> AllSequences(
    const std::vector<std::string>& alphabet, size_t max_len) {
  std::vector<std::vector<std::string>> out{{}};
  std::vector<std::vector<std::string>> frontier{{}};
  for (size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : frontier) {
      for (const auto& sym : alphabet) {
        auto s = prefix;
        s.push_back(sym);
        next.push_back(std::move(s));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline std::vector<Token> RandomTokens(std::mt19937_64& gen, size_t n,
                                       size_t vocab_size) {
  std::uniform_int_distribution<size_t> pick(0, vocab_size - 1);
  std::vector<Token> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(pick(gen)));
  return out;
}

// Random document with `n_tokens` tokens cut at random places.
inline SegmentedDocument RandomDocument(std::mt19937_64& gen, size_t n_tokens,
                                        size_t vocab_size,
                                        double boundary_prob = 0.2) {
  auto tokens = RandomTokens(gen, n_tokens, vocab_size);
  std::bernoulli_distribution cut(boundary_prob);
  std::vector<size_t> positions;
  for (size_t k = 0; k + 1 < n_tokens; ++k) {
    if (cut(gen)) positions.push_back(k);
  }
  return Rebuild(std::move(tokens), std::move(positions), "rand");
}

}  // namespace segrobust::testing

#endif  // SEGROBUST_TESTS_ORACLES_H_
