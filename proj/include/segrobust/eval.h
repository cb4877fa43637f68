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

// BLEU scoring for long-form translation output.
//
// Hypothesis documents rarely share the reference's segmentation, so
// reference boundaries are first projected onto the hypothesis token stream
// (see align.h) and the corpus is scored segment by segment afterwards.
// The same projection isolates recognition errors from segmentation errors:
// gold boundaries on system tokens, and system boundaries on gold tokens.

#ifndef SEGROBUST_EVAL_H_
#define SEGROBUST_EVAL_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "segrobust/align.h"
#include "segrobust/errors.h"
#include "segrobust/text.h"

namespace segrobust {

enum class Smoothing {
  kNone,
  // (matches + 1) / (total + 1) for every order above 1.
  kAddOneAboveUnigram,
};

struct BleuConfig {
  int max_ngram_order = 4;
  bool case_sensitive = true;
  Smoothing smoothing = Smoothing::kNone;

  // Settings for per-sentence scores.
  static BleuConfig SentenceLevel() {
    BleuConfig cfg;
    cfg.smoothing = Smoothing::kAddOneAboveUnigram;
    return cfg;
  }

  void Validate() const {
    if (max_ngram_order < 1) {
      throw ConfigError("max n-gram order must be at least 1");
    }
  }
};

// Sufficient statistics: clipped matches and hypothesis n-gram totals per
// order, plus lengths. Sums over segments give corpus statistics.
struct NgramStats {
  std::vector<size_t> matches;
  std::vector<size_t> totals;
  size_t hyp_len = 0;
  size_t ref_len = 0;

  explicit NgramStats(int max_order = 4)
      : matches(static_cast<size_t>(max_order), 0),
        totals(static_cast<size_t>(max_order), 0) {}

  NgramStats& operator+=(const NgramStats& other) {
    for (size_t n = 0; n < matches.size(); ++n) {
      matches[n] += other.matches[n];
      totals[n] += other.totals[n];
    }
    hyp_len += other.hyp_len;
    ref_len += other.ref_len;
    return *this;
  }
};

struct BleuReport {
  double score = 0.0;  // 0..100
  std::vector<double> ngram_precisions;
  double brevity_penalty = 0.0;
  size_t hyp_len = 0;
  size_t ref_len = 0;
  // Orders that entered the geometric mean. Without smoothing, orders for
  // which the hypothesis has no n-grams at all are left out.
  int effective_order = 0;
};

namespace internal {

inline std::unordered_map<std::string, size_t> CountNgrams(
    const std::vector<std::string>& tokens, size_t order) {
  std::unordered_map<std::string, size_t> counts;
  if (tokens.size() < order) return counts;
  for (size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (size_t k = 1; k < order; ++k) {
      key.push_back(' ');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

inline std::vector<std::string> ScoringForm(std::span<const Token> tokens,
                                            bool case_sensitive) {
  std::vector<std::string> out(tokens.begin(), tokens.end());
  if (!case_sensitive) {
    const NormalizationPolicy lower{false, true, false};
    for (auto& t : out) t = NormalizeToken(t, lower);
  }
  return out;
}

}  // namespace internal

// Clipped n-gram statistics of one hypothesis segment against its reference.
inline NgramStats CollectNgramStats(std::span<const Token> hypothesis,
                                    std::span<const Token> reference,
                                    const BleuConfig& cfg = {}) {
  cfg.Validate();
  const auto hyp = internal::ScoringForm(hypothesis, cfg.case_sensitive);
  const auto ref = internal::ScoringForm(reference, cfg.case_sensitive);
  NgramStats stats(cfg.max_ngram_order);
  stats.hyp_len = hyp.size();
  stats.ref_len = ref.size();
  for (size_t order = 1; order <= static_cast<size_t>(cfg.max_ngram_order);
       ++order) {
    const auto hyp_counts = internal::CountNgrams(hyp, order);
    const auto ref_counts = internal::CountNgrams(ref, order);
    size_t matched = 0;
    for (const auto& [gram, count] : hyp_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    stats.matches[order - 1] = matched;
    stats.totals[order - 1] = hyp.size() >= order ? hyp.size() - order + 1 : 0;
  }
  return stats;
}

// BLEU from accumulated statistics.
inline BleuReport ScoreFromStats(const NgramStats& stats,
                                 const BleuConfig& cfg = {}) {
  BleuReport report;
  report.hyp_len = stats.hyp_len;
  report.ref_len = stats.ref_len;
  report.ngram_precisions.assign(stats.matches.size(), 0.0);
  if (stats.hyp_len == 0) return report;  // BP -> 0 in the limit.

  report.brevity_penalty =
      stats.hyp_len < stats.ref_len
          ? std::exp(1.0 - static_cast<double>(stats.ref_len) /
                               static_cast<double>(stats.hyp_len))
          : 1.0;

  double log_sum = 0.0;
  bool any_zero = false;
  for (size_t n = 0; n < stats.matches.size(); ++n) {
    const double m = static_cast<double>(stats.matches[n]);
    const double t = static_cast<double>(stats.totals[n]);
    double precision;
    if (cfg.smoothing == Smoothing::kAddOneAboveUnigram && n > 0) {
      precision = (m + 1.0) / (t + 1.0);
    } else if (stats.totals[n] > 0) {
      precision = m / t;
    } else {
      continue;
    }
    report.ngram_precisions[n] = precision;
    ++report.effective_order;
    if (precision == 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(precision);
    }
  }
  if (any_zero || report.effective_order == 0) return report;
  report.score = 100.0 * report.brevity_penalty *
                 std::exp(log_sum / report.effective_order);
  return report;
}

// Corpus BLEU over aligned segment lists (single reference per segment).
// Throws InputError if the lists differ in length or every reference is
// empty.
inline BleuReport CorpusBleu(std::span<const Segment> hypotheses,
                             std::span<const Segment> references,
                             const BleuConfig& cfg = {}) {
  cfg.Validate();
  if (hypotheses.size() != references.size()) {
    throw InputError("hypothesis and reference counts differ (" +
                     std::to_string(hypotheses.size()) + " vs " +
                     std::to_string(references.size()) + ")");
  }
  NgramStats total(cfg.max_ngram_order);
  for (size_t i = 0; i < hypotheses.size(); ++i) {
    total += CollectNgramStats(hypotheses[i], references[i], cfg);
  }
  if (total.ref_len == 0) throw InputError("all references are empty");
  return ScoreFromStats(total, cfg);
}

inline double SentenceBleu(std::span<const Token> hypothesis,
                           std::span<const Token> reference,
                           const BleuConfig& cfg = BleuConfig::SentenceLevel()) {
  return ScoreFromStats(CollectNgramStats(hypothesis, reference, cfg), cfg)
      .score;
}

// Splits the hypothesis token stream into one segment per reference segment
// by projecting the reference boundaries onto it. Reference segments whose
// boundaries collapse get an empty hypothesis segment at their index.
inline std::vector<Segment> ResegmentHypothesis(
    const SegmentedDocument& hyp_doc, const SegmentedDocument& ref_doc,
    const AlignmentConfig& align_cfg = {}) {
  const auto hyp_tokens = Flatten(hyp_doc).tokens;
  const auto ends = ProjectSegmentEnds(ref_doc, hyp_tokens, align_cfg);
  std::vector<Segment> out;
  out.reserve(ends.size());
  size_t begin = 0;
  for (size_t end : ends) {
    out.emplace_back(hyp_tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                     hyp_tokens.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  return out;
}

// Hypothesis/reference segment lists ready for CorpusBleu, built from any
// number of document pairs.
struct ResegmentedCorpus {
  std::vector<Segment> hypotheses;
  std::vector<Segment> references;
};

inline ResegmentedCorpus Resegment(std::span<const SegmentedDocument> hyp_docs,
                                   std::span<const SegmentedDocument> ref_docs,
                                   const AlignmentConfig& align_cfg = {}) {
  if (hyp_docs.size() != ref_docs.size()) {
    throw InputError("hypothesis and reference document counts differ (" +
                     std::to_string(hyp_docs.size()) + " vs " +
                     std::to_string(ref_docs.size()) + ")");
  }
  ResegmentedCorpus corpus;
  for (size_t d = 0; d < hyp_docs.size(); ++d) {
    auto hyps = ResegmentHypothesis(hyp_docs[d], ref_docs[d], align_cfg);
    for (size_t i = 0; i < hyps.size(); ++i) {
      corpus.hypotheses.push_back(std::move(hyps[i]));
      corpus.references.push_back(ref_docs[d].segment(i));
    }
  }
  return corpus;
}

// Corpus BLEU after projecting reference boundaries onto the hypothesis.
// Alignment ignores case and punctuation; scoring follows cfg.
inline BleuReport ResegmentAndScore(std::span<const SegmentedDocument> hyp_docs,
                                    std::span<const SegmentedDocument> ref_docs,
                                    const BleuConfig& cfg = {},
                                    const AlignmentConfig& align_cfg = {}) {
  const auto corpus = Resegment(hyp_docs, ref_docs, align_cfg);
  if (corpus.references.empty()) {
    BleuReport empty;
    empty.ngram_precisions.assign(static_cast<size_t>(cfg.max_ngram_order), 0.0);
    return empty;
  }
  return CorpusBleu(corpus.hypotheses, corpus.references, cfg);
}

inline BleuReport ResegmentAndScore(const SegmentedDocument& hyp_doc,
                                    const SegmentedDocument& ref_doc,
                                    const BleuConfig& cfg = {},
                                    const AlignmentConfig& align_cfg = {}) {
  return ResegmentAndScore(std::span(&hyp_doc, 1), std::span(&ref_doc, 1), cfg,
                           align_cfg);
}

// The four evaluation inputs of the error analysis.
struct ErrorVariantSet {
  SegmentedDocument gold;
  SegmentedDocument system;
  // System tokens, gold boundaries.
  SegmentedDocument recognition_errors;
  // Gold tokens, system boundaries.
  SegmentedDocument segmentation_errors;
};

inline ErrorVariantSet MakeErrorVariants(const SegmentedDocument& gold,
                                         const SegmentedDocument& system,
                                         const AlignmentConfig& align_cfg = {}) {
  if (gold.empty() || system.empty()) {
    throw InputError("error variants need non-empty gold and system documents");
  }
  ErrorVariantSet set{gold, system, {}, {}};
  set.recognition_errors =
      ProjectBoundaries(gold, Flatten(system).tokens, align_cfg);
  set.segmentation_errors =
      ProjectBoundaries(system, Flatten(gold).tokens, align_cfg);
  return set;
}

struct LengthBucket {
  size_t lower = 0;  // inclusive
  size_t upper = 0;  // exclusive
  double mean_score = 0.0;
  size_t count = 0;
};

struct LengthBucketReport {
  std::vector<LengthBucket> buckets;
};

using BucketBounds = std::vector<std::pair<size_t, size_t>>;

inline BucketBounds DefaultBucketBounds() { return {{0, 20}, {20, 40}, {40, 60}}; }

inline void ValidateBucketBounds(const BucketBounds& bounds) {
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i].first >= bounds[i].second) {
      throw ConfigError("bucket " + std::to_string(i) + " is empty or inverted");
    }
    if (i > 0 && bounds[i].first < bounds[i - 1].second) {
      throw ConfigError("buckets overlap or are out of order at " +
                        std::to_string(i));
    }
  }
}

// Mean sentence BLEU per reference-length bucket over paired segments.
// Pairs whose reference length falls outside every bucket are ignored.
inline LengthBucketReport BucketScores(std::span<const Segment> hypotheses,
                                       std::span<const Segment> references,
                                       const BucketBounds& bounds,
                                       const BleuConfig& cfg =
                                           BleuConfig::SentenceLevel()) {
  ValidateBucketBounds(bounds);
  if (hypotheses.size() != references.size()) {
    throw InputError("hypothesis and reference counts differ");
  }
  LengthBucketReport report;
  std::vector<double> sums(bounds.size(), 0.0);
  for (const auto& [lo, hi] : bounds) report.buckets.push_back({lo, hi, 0.0, 0});
  for (size_t i = 0; i < references.size(); ++i) {
    const size_t len = references[i].size();
    for (size_t b = 0; b < bounds.size(); ++b) {
      if (len >= bounds[b].first && len < bounds[b].second) {
        sums[b] += SentenceBleu(hypotheses[i], references[i], cfg);
        ++report.buckets[b].count;
        break;
      }
    }
  }
  for (size_t b = 0; b < bounds.size(); ++b) {
    if (report.buckets[b].count > 0) {
      report.buckets[b].mean_score =
          sums[b] / static_cast<double>(report.buckets[b].count);
    }
  }
  return report;
}

// Resegments, then buckets by reference segment length.
inline LengthBucketReport BucketReport(
    std::span<const SegmentedDocument> hyp_docs,
    std::span<const SegmentedDocument> ref_docs,
    const BucketBounds& bounds = DefaultBucketBounds(),
    const BleuConfig& cfg = BleuConfig::SentenceLevel(),
    const AlignmentConfig& align_cfg = {}) {
  const auto corpus = Resegment(hyp_docs, ref_docs, align_cfg);
  return BucketScores(corpus.hypotheses, corpus.references, bounds, cfg);
}

inline LengthBucketReport BucketReport(
    const SegmentedDocument& hyp_doc, const SegmentedDocument& ref_doc,
    const BucketBounds& bounds = DefaultBucketBounds(),
    const BleuConfig& cfg = BleuConfig::SentenceLevel(),
    const AlignmentConfig& align_cfg = {}) {
  return BucketReport(std::span(&hyp_doc, 1), std::span(&ref_doc, 1), bounds,
                      cfg, align_cfg);
}

}  // namespace segrobust

#endif  // SEGROBUST_EVAL_H_
