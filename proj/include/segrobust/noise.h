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

// Synthetic ASR-like corruption of clean documents: token substitutions,
// deletions and insertions, and merged or fragmented sentences.

#ifndef SEGROBUST_NOISE_H_
#define SEGROBUST_NOISE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "segrobust/errors.h"
#include "segrobust/random.h"
#include "segrobust/text.h"

namespace segrobust {

struct NoiseConfig {
  double substitution_rate = 0.0;
  double deletion_rate = 0.0;
  double insertion_rate = 0.0;
  double boundary_merge_rate = 0.0;
  double boundary_split_rate = 0.0;
  std::vector<Token> vocabulary;
  uint64_t seed = 0;

  void Validate() const {
    auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (!in_unit(substitution_rate) || !in_unit(deletion_rate) ||
        !in_unit(insertion_rate) || !in_unit(boundary_merge_rate) ||
        !in_unit(boundary_split_rate)) {
      throw ConfigError("noise rates must lie in [0, 1]");
    }
    if (substitution_rate + deletion_rate > 1.0) {
      throw ConfigError("substitution + deletion rate exceeds 1");
    }
    if ((substitution_rate > 0.0 || insertion_rate > 0.0) &&
        vocabulary.empty()) {
      throw ConfigError("substitutions/insertions need a vocabulary");
    }
    for (const auto& t : vocabulary) {
      if (!IsValidToken(t)) throw ConfigError("invalid vocabulary token");
    }
  }
};

namespace internal {

inline const Token& SubstituteFor(const Token& original,
                                  const std::vector<Token>& vocabulary,
                                  Rng& rng) {
  std::vector<size_t> others;
  others.reserve(vocabulary.size());
  for (size_t i = 0; i < vocabulary.size(); ++i) {
    if (vocabulary[i] != original) others.push_back(i);
  }
  if (others.empty()) return vocabulary[rng.NextBelow(vocabulary.size())];
  return vocabulary[others[rng.NextBelow(others.size())]];
}

}  // namespace internal

// Per token: substitute with substitution_rate, delete with deletion_rate,
// otherwise keep; then insert a random vocabulary token after the position
// with insertion_rate. Segments keep their surviving tokens; a segment that
// loses all of them disappears. Seeded by (cfg.seed, doc_id).
inline SegmentedDocument CorruptTokens(const SegmentedDocument& doc,
                                       const NoiseConfig& cfg) {
  cfg.Validate();
  Rng rng(DeriveSeed(cfg.seed, doc.doc_id()));
  std::vector<Segment> segments;
  segments.reserve(doc.size());
  for (const auto& segment : doc.segments()) {
    Segment out;
    for (const auto& token : segment) {
      const double u = rng.NextDouble();
      if (u < cfg.substitution_rate) {
        out.push_back(internal::SubstituteFor(token, cfg.vocabulary, rng));
      } else if (u >= cfg.substitution_rate + cfg.deletion_rate) {
        out.push_back(token);
      }
      if (rng.Bernoulli(cfg.insertion_rate)) {
        out.push_back(cfg.vocabulary[rng.NextBelow(cfg.vocabulary.size())]);
      }
    }
    if (!out.empty()) segments.push_back(std::move(out));
  }
  return SegmentedDocument(std::move(segments), doc.doc_id());
}

// Drops each internal boundary with boundary_merge_rate and adds a boundary
// at each other token gap with boundary_split_rate. Tokens are untouched and
// the final boundary stays. Uses a stream independent of CorruptTokens().
inline SegmentedDocument CorruptBoundaries(const SegmentedDocument& doc,
                                           const NoiseConfig& cfg) {
  cfg.Validate();
  Rng rng(DeriveSeed(DeriveSeed(cfg.seed, doc.doc_id()), uint64_t{1}));
  FlatDocument flat = Flatten(doc);
  const size_t n = flat.tokens.size();
  std::vector<size_t> positions;
  for (size_t k = 0; k + 1 < n; ++k) {
    const bool boundary = flat.boundaries.contains(k);
    const double u = rng.NextDouble();
    if (boundary ? !(u < cfg.boundary_merge_rate)
                 : u < cfg.boundary_split_rate) {
      positions.push_back(k);
    }
  }
  return Rebuild(std::move(flat.tokens), std::move(positions), doc.doc_id());
}

}  // namespace segrobust

#endif  // SEGROBUST_NOISE_H_
