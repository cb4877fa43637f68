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

// Token-level Levenshtein alignment and boundary projection.
//
// Two transcripts of the same audio (e.g. a human "gold" transcript and an
// ASR "system" transcript) are aligned as flat token streams, ignoring their
// segment boundaries. The boundaries of one side can then be carried over to
// the other: a boundary after source token k lands after whichever target
// token k was aligned to.

#ifndef SEGROBUST_ALIGN_H_
#define SEGROBUST_ALIGN_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "segrobust/errors.h"
#include "segrobust/text.h"

namespace segrobust {

enum class EditKind : uint8_t { kMatch, kSubstitute, kDelete, kInsert };

inline const char* EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kMatch:
      return "match";
    case EditKind::kSubstitute:
      return "substitute";
    case EditKind::kDelete:
      return "delete";
    case EditKind::kInsert:
      return "insert";
  }
  return "?";
}

// One step of an edit script turning sequence A into sequence B. Match and
// Substitute carry both indices, Delete only a_index, Insert only b_index.
struct EditOp {
  EditKind kind;
  std::optional<size_t> a_index;
  std::optional<size_t> b_index;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  size_t a_len = 0;
  size_t b_len = 0;

  // Number of non-Match operations.
  size_t distance() const {
    return static_cast<size_t>(std::count_if(
        ops.begin(), ops.end(),
        [](const EditOp& op) { return op.kind != EditKind::kMatch; }));
  }

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

struct AlignmentConfig {
  // Applied to both sides before tokens are compared. Only the comparison
  // keys are normalized; indices still refer to the original tokens.
  NormalizationPolicy normalization{/*strip_punctuation=*/true,
                                    /*lowercase=*/true,
                                    /*strip_symbols=*/false};
  // Half-width of a diagonal band restricting the DP. Unset means the full
  // table, which is always optimal. A banded alignment may be suboptimal.
  std::optional<size_t> band_width;

  // Compares tokens byte for byte.
  static AlignmentConfig Exact() {
    AlignmentConfig cfg;
    cfg.normalization = NormalizationPolicy::Punctuated();
    return cfg;
  }
};

namespace internal {

// Maps tokens of both sequences to dense ids of their normalized forms so
// the DP compares integers.
struct InternedPair {
  std::vector<uint32_t> a;
  std::vector<uint32_t> b;
};

inline InternedPair Intern(std::span<const Token> a, std::span<const Token> b,
                           const NormalizationPolicy& policy) {
  const bool identity = policy == NormalizationPolicy::Punctuated();
  std::unordered_map<std::string, uint32_t> ids;
  auto id_of = [&](const Token& token) {
    auto key = identity ? token : NormalizeToken(token, policy);
    auto [it, inserted] =
        ids.try_emplace(std::move(key), static_cast<uint32_t>(ids.size()));
    return it->second;
  };
  InternedPair out;
  out.a.reserve(a.size());
  out.b.reserve(b.size());
  for (const auto& t : a) out.a.push_back(id_of(t));
  for (const auto& t : b) out.b.push_back(id_of(t));
  return out;
}

// Column range [lo, hi] of DP row i (0..n) over columns 0..m.
class Band {
 public:
  Band(size_t n, size_t m, std::optional<size_t> width) : n_(n), m_(m) {
    if (width.has_value() && n > 0) {
      // Consecutive rows must overlap or (n, m) becomes unreachable.
      const size_t step = (m + n - 1) / n;
      half_ = std::max<size_t>({*width, step, 1});
      banded_ = true;
    }
  }

  size_t lo(size_t i) const {
    if (!banded_) return 0;
    const size_t c = center(i);
    return c > half_ ? c - half_ : 0;
  }
  size_t hi(size_t i) const {
    if (!banded_) return m_;
    return std::min(m_, center(i) + half_);
  }

 private:
  size_t center(size_t i) const {
    return static_cast<size_t>((static_cast<unsigned __int128>(i) * m_) / n_);
  }

  size_t n_;
  size_t m_;
  size_t half_ = 0;
  bool banded_ = false;
};

using Cost = uint32_t;
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max() / 2;

// Bits recording which predecessor moves reach a cell at optimal cost.
inline constexpr uint8_t kFromDiagonal = 1;
inline constexpr uint8_t kFromAbove = 2;  // delete a[i-1]
inline constexpr uint8_t kFromLeft = 4;   // insert b[j-1]

inline size_t DistanceOnIds(const std::vector<uint32_t>& a,
                            const std::vector<uint32_t>& b,
                            std::optional<size_t> band_width) {
  const size_t n = a.size();
  const size_t m = b.size();
  Band band(n, m, band_width);
  std::vector<Cost> prev(m + 1, kInfinity);
  std::vector<Cost> cur(m + 1, kInfinity);
  for (size_t j = band.lo(0); j <= band.hi(0); ++j) {
    prev[j] = static_cast<Cost>(j);
  }
  for (size_t i = 1; i <= n; ++i) {
    std::fill(cur.begin(), cur.end(), kInfinity);
    const size_t lo = band.lo(i);
    const size_t hi = band.hi(i);
    for (size_t j = lo; j <= hi; ++j) {
      Cost best = prev[j] + 1;
      if (j > 0) {
        best = std::min(best, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1));
        best = std::min(best, cur[j - 1] + 1);
      }
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace internal

// Minimum unit-cost edit script from `a` to `b`. When several scripts are
// optimal, the backtrace from the end prefers Match, then Substitute, then
// Delete, then Insert, so the result is fully deterministic.
//
// Memory is one byte per DP cell (about 100 MB for two 10k-token sequences).
inline Alignment LevenshteinAlign(std::span<const Token> a,
                                  std::span<const Token> b,
                                  const AlignmentConfig& cfg = {}) {
  using internal::kFromAbove;
  using internal::kFromDiagonal;
  using internal::kFromLeft;
  using internal::kInfinity;
  using Cost = internal::Cost;

  const auto ids = internal::Intern(a, b, cfg.normalization);
  const size_t n = a.size();
  const size_t m = b.size();
  const internal::Band band(n, m, cfg.band_width);

  std::vector<size_t> row_offset(n + 2, 0);
  for (size_t i = 0; i <= n; ++i) {
    row_offset[i + 1] = row_offset[i] + (band.hi(i) - band.lo(i) + 1);
  }
  std::vector<uint8_t> moves(row_offset[n + 1], 0);
  auto cell = [&](size_t i, size_t j) -> uint8_t& {
    return moves[row_offset[i] + (j - band.lo(i))];
  };

  std::vector<Cost> prev(m + 1, kInfinity);
  std::vector<Cost> cur(m + 1, kInfinity);
  for (size_t j = band.lo(0); j <= band.hi(0); ++j) {
    prev[j] = static_cast<Cost>(j);
    if (j > 0) cell(0, j) = kFromLeft;
  }
  for (size_t i = 1; i <= n; ++i) {
    std::fill(cur.begin(), cur.end(), kInfinity);
    const size_t lo = band.lo(i);
    const size_t hi = band.hi(i);
    for (size_t j = lo; j <= hi; ++j) {
      const Cost up = prev[j] + 1;
      Cost diag = kInfinity;
      Cost left = kInfinity;
      if (j > 0) {
        diag = prev[j - 1] + (ids.a[i - 1] == ids.b[j - 1] ? 0 : 1);
        left = cur[j - 1] + 1;
      }
      const Cost best = std::min({up, diag, left});
      uint8_t bits = 0;
      if (diag == best) bits |= kFromDiagonal;
      if (up == best) bits |= kFromAbove;
      if (left == best) bits |= kFromLeft;
      cur[j] = best;
      cell(i, j) = bits;
    }
    std::swap(prev, cur);
  }

  Alignment out;
  out.a_len = n;
  out.b_len = m;
  out.ops.reserve(n + m);
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    const uint8_t bits = cell(i, j);
    if (i > 0 && j > 0 && (bits & kFromDiagonal)) {
      const bool same = ids.a[i - 1] == ids.b[j - 1];
      out.ops.push_back({same ? EditKind::kMatch : EditKind::kSubstitute,
                         i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && (bits & kFromAbove)) {
      out.ops.push_back({EditKind::kDelete, i - 1, std::nullopt});
      --i;
    } else if (j > 0 && (bits & kFromLeft)) {
      out.ops.push_back({EditKind::kInsert, std::nullopt, j - 1});
      --j;
    } else {
      throw InvariantError("alignment backtrace left the band");
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

// Minimum number of substitutions, deletions and insertions. Same value as
// LevenshteinAlign(a, b, cfg).distance() but in O(m) memory.
inline size_t EditDistance(std::span<const Token> a, std::span<const Token> b,
                           const AlignmentConfig& cfg = {}) {
  const auto ids = internal::Intern(a, b, cfg.normalization);
  return internal::DistanceOnIds(ids.a, ids.b, cfg.band_width);
}

// Raw counts behind a word error rate, so corpora can be aggregated.
struct WerStats {
  size_t edits = 0;
  size_t reference_length = 0;

  double rate() const {
    if (reference_length == 0) {
      throw UndefinedRateError("WER is undefined for an empty reference");
    }
    return static_cast<double>(edits) / static_cast<double>(reference_length);
  }

  WerStats& operator+=(const WerStats& other) {
    edits += other.edits;
    reference_length += other.reference_length;
    return *this;
  }
};

// Edit counts after stripping case, punctuation and symbols from both sides.
inline WerStats ComputeWerStats(std::span<const Token> reference,
                                std::span<const Token> hypothesis) {
  const auto policy = NormalizationPolicy::Stripped();
  const Segment ref = Normalize(Segment(reference.begin(), reference.end()),
                                policy);
  const Segment hyp = Normalize(Segment(hypothesis.begin(), hypothesis.end()),
                                policy);
  return {EditDistance(ref, hyp, AlignmentConfig::Exact()), ref.size()};
}

// Word error rate, ignoring case and punctuation. Throws UndefinedRateError
// if the reference is empty after normalization.
inline double Wer(std::span<const Token> reference,
                  std::span<const Token> hypothesis) {
  return ComputeWerStats(reference, hypothesis).rate();
}

// For each segment of `source`, the exclusive end offset of its projection
// into `target`. Ends are non-decreasing and the last one is always
// target.size(). Equal consecutive ends denote segments that projected to
// nothing.
//
// A source segment ending on a token without a target counterpart (deleted
// in the alignment) ends after the target token aligned to the nearest
// preceding source token that has one, or at 0 if there is none.
inline std::vector<size_t> ProjectSegmentEnds(const SegmentedDocument& source,
                                              std::span<const Token> target,
                                              const AlignmentConfig& cfg = {}) {
  const FlatDocument flat = Flatten(source);
  const Alignment alignment = LevenshteinAlign(flat.tokens, target, cfg);

  // end_after[k]: target end offset for a boundary after source token k.
  std::vector<size_t> end_after(flat.tokens.size(), 0);
  for (const auto& op : alignment.ops) {
    if (op.a_index && op.b_index) end_after[*op.a_index] = *op.b_index + 1;
  }
  for (size_t k = 1; k < end_after.size(); ++k) {
    end_after[k] = std::max(end_after[k], end_after[k - 1]);
  }

  std::vector<size_t> ends;
  ends.reserve(source.size());
  for (size_t k : flat.boundaries.positions()) ends.push_back(end_after[k]);
  if (!ends.empty()) ends.back() = target.size();
  return ends;
}

// Re-segments `target` using the boundaries of `source`. The target token
// sequence is unchanged; boundaries that collapse onto the same position are
// merged so no segment is empty. The result keeps source's doc_id.
inline SegmentedDocument ProjectBoundaries(const SegmentedDocument& source,
                                           std::span<const Token> target,
                                           const AlignmentConfig& cfg = {}) {
  std::vector<size_t> positions;
  for (size_t end : ProjectSegmentEnds(source, target, cfg)) {
    if (end > 0) positions.push_back(end - 1);
  }
  std::vector<Token> tokens(target.begin(), target.end());
  return Rebuild(std::move(tokens), std::move(positions), source.doc_id());
}

}  // namespace segrobust

#endif  // SEGROBUST_ALIGN_H_
