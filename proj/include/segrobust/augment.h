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

// Cross-boundary training data augmentation and corpus mixing.
//
// Two adjacent sentence pairs (S1, T1), (S2, T2) are merged into one
// example that starts somewhere inside S1 and runs a little way into S2:
//
//   p  ~ Uniform(0, p_max)                       (one draw per pair)
//   source = S1[ceil(p*|S1|):] ++ S2[:ceil(p*|S2|)]
//   target = T1[ceil(p*|T1|):] ++ T2[:ceil(p*|T2|)]
//
// so the model sees sentences with a missing start and a spurious tail, as
// produced by a bad segmenter. The mixture sampler then draws training
// examples from several corpora, each blended from original and augmented
// pairs.

#ifndef SEGROBUST_AUGMENT_H_
#define SEGROBUST_AUGMENT_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segrobust/errors.h"
#include "segrobust/random.h"
#include "segrobust/text.h"

namespace segrobust {

struct BitextPair {
  Segment source;
  Segment target;
  std::string origin;

  friend bool operator==(const BitextPair&, const BitextPair&) = default;
};

struct AugmentationConfig {
  double p_max = 0.3;
  uint64_t seed = 0;

  void Validate() const {
    if (!(p_max > 0.0 && p_max <= 1.0)) {
      throw ConfigError("p_max must be in (0, 1]");
    }
  }
};

// ceil(p * length), clamped to length. Products within 1e-9 of an integer
// are snapped to it first so that e.g. 0.7 * 10 gives 7 rather than 8.
inline size_t TruncationCount(double p, size_t length) {
  const double x = p * static_cast<double>(length);
  const double nearest = std::round(x);
  const double snapped = std::abs(x - nearest) < 1e-9 ? nearest : x;
  const auto count = static_cast<size_t>(std::ceil(snapped));
  return std::min(count, length);
}

// Merges `first` and `second` with truncation fraction p (0 <= p <= 1).
// Returns nullopt when the merged source or target would be empty; such
// pairs are skipped, not errors.
inline std::optional<BitextPair> AugmentPair(const BitextPair& first,
                                             const BitextPair& second,
                                             double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("truncation fraction must be in [0, 1]");
  }
  auto merge = [p](const Segment& head, const Segment& tail) {
    const size_t drop = TruncationCount(p, head.size());
    const size_t keep = TruncationCount(p, tail.size());
    Segment out(head.begin() + static_cast<std::ptrdiff_t>(drop), head.end());
    out.insert(out.end(), tail.begin(),
               tail.begin() + static_cast<std::ptrdiff_t>(keep));
    return out;
  };
  BitextPair out{merge(first.source, second.source),
                 merge(first.target, second.target), first.origin};
  if (out.source.empty() || out.target.empty()) return std::nullopt;
  return out;
}

struct AugmentationResult {
  std::vector<BitextPair> pairs;
  // Merges rejected because one side came out empty.
  size_t skipped = 0;
  // Unpaired final sentence copied through unchanged (odd-length input).
  size_t passthrough = 0;
};

// Merges consecutive disjoint pairs (0,1), (2,3), ... in corpus order. Pair
// k draws its p from a generator seeded with DeriveSeed(cfg.seed, k), so the
// result does not depend on processing order.
inline AugmentationResult AugmentCorpus(const std::vector<BitextPair>& pairs,
                                        const AugmentationConfig& cfg) {
  cfg.Validate();
  AugmentationResult result;
  result.pairs.reserve(pairs.size() / 2 + 1);
  for (size_t i = 0; i + 1 < pairs.size(); i += 2) {
    Rng rng(DeriveSeed(cfg.seed, static_cast<uint64_t>(i / 2)));
    const double p = rng.Uniform(0.0, cfg.p_max);
    if (auto merged = AugmentPair(pairs[i], pairs[i + 1], p)) {
      result.pairs.push_back(std::move(*merged));
    } else {
      ++result.skipped;
    }
  }
  if (pairs.size() % 2 == 1) {
    result.pairs.push_back(pairs.back());
    result.passthrough = 1;
  }
  return result;
}

struct CorpusPools {
  std::vector<BitextPair> originals;
  std::vector<BitextPair> augmented;
};

struct MixtureSpec {
  // Probability of drawing from each corpus; must sum to 1.
  std::map<std::string, double> corpus_weights;
  // Share of draws taken from the augmented pool, per corpus. Corpora not
  // listed use default_augmented_fraction.
  std::map<std::string, double> augmented_fraction;
  double default_augmented_fraction = 0.2;
  uint64_t seed = 0;

  double AugmentedFractionFor(const std::string& label) const {
    auto it = augmented_fraction.find(label);
    return it == augmented_fraction.end() ? default_augmented_fraction
                                          : it->second;
  }

  void Validate() const {
    if (corpus_weights.empty()) throw ConfigError("no corpus weights given");
    double sum = 0.0;
    for (const auto& [label, w] : corpus_weights) {
      if (!(w >= 0.0)) throw ConfigError("negative weight for " + label);
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError("corpus weights sum to " + std::to_string(sum) +
                        ", expected 1");
    }
    auto check_fraction = [](double f, const std::string& what) {
      if (!(f >= 0.0 && f <= 1.0)) {
        throw ConfigError("augmented fraction for " + what +
                          " must be in [0, 1]");
      }
    };
    check_fraction(default_augmented_fraction, "default");
    for (const auto& [label, f] : augmented_fraction) {
      if (!corpus_weights.contains(label)) {
        throw ConfigError("augmented fraction given for unweighted corpus " +
                          label);
      }
      check_fraction(f, label);
    }
  }
};

// Where a mixture draw came from.
struct MixtureDraw {
  std::string corpus;
  bool augmented = false;
  size_t index = 0;
};

// Draws `total` examples. Each draw picks a corpus by weight (corpora in
// label order), then the augmented pool with probability augmented_fraction,
// then an element uniformly with replacement. Consumes exactly three
// generator outputs per draw, except when rejection sampling retries.
inline std::vector<MixtureDraw> SampleMixture(
    const std::map<std::string, CorpusPools>& corpora, const MixtureSpec& spec,
    size_t total) {
  spec.Validate();
  struct Entry {
    const std::string* label;
    double cumulative;
    double augmented_fraction;
    size_t originals;
    size_t augmented;
  };
  std::vector<Entry> entries;
  double cumulative = 0.0;
  for (const auto& [label, weight] : spec.corpus_weights) {
    auto it = corpora.find(label);
    if (it == corpora.end()) {
      throw ConfigError("mixture names unknown corpus " + label);
    }
    const double fraction = spec.AugmentedFractionFor(label);
    const size_t n_orig = it->second.originals.size();
    const size_t n_aug = it->second.augmented.size();
    if (weight > 0.0 && ((fraction < 1.0 && n_orig == 0) ||
                         (fraction > 0.0 && n_aug == 0))) {
      throw ConfigError("corpus " + label + " has an empty pool");
    }
    cumulative += weight;
    entries.push_back({&label, cumulative, fraction, n_orig, n_aug});
  }

  Rng rng(spec.seed);
  std::vector<MixtureDraw> draws;
  draws.reserve(total);
  for (size_t k = 0; k < total; ++k) {
    const double u = rng.NextDouble() * cumulative;
    // First corpus whose cumulative weight exceeds u. Zero-weight corpora
    // repeat the previous cumulative value and can never be picked.
    size_t c = 0;
    while (c + 1 < entries.size() && !(u < entries[c].cumulative)) ++c;
    const Entry& e = entries[c];
    const bool augmented = rng.NextDouble() < e.augmented_fraction;
    const size_t pool = augmented ? e.augmented : e.originals;
    draws.push_back({*e.label, augmented, static_cast<size_t>(rng.NextBelow(pool))});
  }
  return draws;
}

// SampleMixture() materialized into pairs. Each pair's origin is its corpus
// label.
inline std::vector<BitextPair> BuildTrainingMixture(
    const std::map<std::string, CorpusPools>& corpora, const MixtureSpec& spec,
    size_t total) {
  std::vector<BitextPair> out;
  out.reserve(total);
  for (const auto& draw : SampleMixture(corpora, spec, total)) {
    const auto& pools = corpora.at(draw.corpus);
    BitextPair pair = draw.augmented ? pools.augmented[draw.index]
                                     : pools.originals[draw.index];
    pair.origin = draw.corpus;
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace segrobust

#endif  // SEGROBUST_AUGMENT_H_
