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

// Text data model shared by every pipeline stage.
//
// A document is a flat token stream partitioned into non-empty segments
// ("sentences"). Most algorithms work on the flat stream plus a set of
// boundary positions, so Flatten()/Rebuild() convert between the two views.
// Tokens are UTF-8 strings without whitespace; input is assumed to be
// pre-tokenized and only whitespace splitting is done here.

#ifndef SEGROBUST_TEXT_H_
#define SEGROBUST_TEXT_H_

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "segrobust/errors.h"

namespace segrobust {

using Token = std::string;
using Segment = std::vector<Token>;

namespace internal {

// Calls fn(code_point, bytes) for each code point of `text`. Ill-formed
// UTF-8 is reported byte by byte with code_point < 0.
template <typename Fn>
void ForEachCodePoint(std::string_view text, Fn&& fn) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    fn(c, text.substr(static_cast<size_t>(start),
                      static_cast<size_t>(i - start)));
  }
}

inline void AppendCodePoint(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, c);
  out.append(buf, static_cast<size_t>(n));
}

inline bool IsWhitespace(UChar32 c) { return c >= 0 && u_isUWhiteSpace(c); }

}  // namespace internal

// True if `token` is non-empty and contains no Unicode whitespace.
inline bool IsValidToken(std::string_view token) {
  if (token.empty()) return false;
  bool ok = true;
  internal::ForEachCodePoint(token, [&](UChar32 c, std::string_view) {
    if (internal::IsWhitespace(c)) ok = false;
  });
  return ok;
}

// Splits on runs of Unicode whitespace.
inline Segment Tokenize(std::string_view text) {
  Segment out;
  std::string current;
  internal::ForEachCodePoint(text, [&](UChar32 c, std::string_view bytes) {
    if (internal::IsWhitespace(c)) {
      if (!current.empty()) out.push_back(std::exchange(current, {}));
    } else {
      current.append(bytes);
    }
  });
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

// Joins tokens with single spaces. Tokenize(Detokenize(s)) == s for valid
// tokens.
inline std::string Detokenize(const Segment& segment) {
  std::string out;
  for (const auto& token : segment) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

struct NormalizationPolicy {
  bool strip_punctuation = false;
  bool lowercase = false;
  bool strip_symbols = false;

  // Train_s: source stripped of punctuation, capitalization and symbols.
  static constexpr NormalizationPolicy Stripped() { return {true, true, true}; }
  // Train_p: source left untouched.
  static constexpr NormalizationPolicy Punctuated() {
    return {false, false, false};
  }

  friend bool operator==(const NormalizationPolicy&,
                         const NormalizationPolicy&) = default;
};

// Applies `policy` to a single token. Punctuation (Unicode P*) and symbols
// (S*) are removed in place, so "don't" becomes "dont". May return an empty
// string.
inline std::string NormalizeToken(std::string_view token,
                                  const NormalizationPolicy& policy) {
  std::string out;
  out.reserve(token.size());
  internal::ForEachCodePoint(token, [&](UChar32 c, std::string_view bytes) {
    if (c < 0) {
      out.append(bytes);
      return;
    }
    const uint32_t mask = U_GET_GC_MASK(c);
    if (policy.strip_punctuation && (mask & U_GC_P_MASK)) return;
    if (policy.strip_symbols && (mask & U_GC_S_MASK)) return;
    if (policy.lowercase) {
      internal::AppendCodePoint(out, u_tolower(c));
    } else {
      out.append(bytes);
    }
  });
  return out;
}

// Normalizes every token and drops the ones that end up empty.
inline Segment Normalize(const Segment& segment,
                         const NormalizationPolicy& policy) {
  Segment out;
  out.reserve(segment.size());
  for (const auto& token : segment) {
    auto normalized = NormalizeToken(token, policy);
    if (!normalized.empty()) out.push_back(std::move(normalized));
  }
  return out;
}

// Ordered, non-empty segments plus a label.
class SegmentedDocument {
 public:
  SegmentedDocument() = default;

  // Throws InputError if a segment is empty or holds an invalid token.
  explicit SegmentedDocument(std::vector<Segment> segments,
                             std::string doc_id = {})
      : segments_(std::move(segments)), doc_id_(std::move(doc_id)) {
    for (size_t i = 0; i < segments_.size(); ++i) {
      if (segments_[i].empty()) {
        throw InputError("segment " + std::to_string(i) + " is empty");
      }
      for (const auto& token : segments_[i]) {
        if (!IsValidToken(token)) {
          throw InputError("segment " + std::to_string(i) +
                           " holds an empty or whitespace-bearing token");
        }
      }
    }
  }

  SegmentedDocument(std::initializer_list<Segment> segments,
                    std::string doc_id = {})
      : SegmentedDocument(std::vector<Segment>(segments), std::move(doc_id)) {}

  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& segment(size_t i) const { return segments_.at(i); }
  const std::string& doc_id() const { return doc_id_; }
  void set_doc_id(std::string id) { doc_id_ = std::move(id); }

  size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }

  size_t token_count() const {
    size_t n = 0;
    for (const auto& s : segments_) n += s.size();
    return n;
  }

  friend bool operator==(const SegmentedDocument&,
                         const SegmentedDocument&) = default;

 private:
  std::vector<Segment> segments_;
  std::string doc_id_;
};

// Boundary positions into a flat token sequence. Position k means "a
// boundary after token k". Always strictly increasing and in range.
class BoundarySet {
 public:
  BoundarySet() = default;

  // Sorts and removes duplicates. Throws InputError for a position that is
  // not below `total_tokens`.
  BoundarySet(std::vector<size_t> positions, size_t total_tokens)
      : positions_(std::move(positions)), total_tokens_(total_tokens) {
    std::sort(positions_.begin(), positions_.end());
    positions_.erase(std::unique(positions_.begin(), positions_.end()),
                     positions_.end());
    if (!positions_.empty() && positions_.back() >= total_tokens_) {
      throw InputError("boundary position " +
                       std::to_string(positions_.back()) +
                       " out of range for " + std::to_string(total_tokens_) +
                       " tokens");
    }
  }

  const std::vector<size_t>& positions() const { return positions_; }
  size_t total_tokens() const { return total_tokens_; }
  size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  bool contains(size_t k) const {
    return std::binary_search(positions_.begin(), positions_.end(), k);
  }

  friend bool operator==(const BoundarySet&, const BoundarySet&) = default;

 private:
  std::vector<size_t> positions_;
  size_t total_tokens_ = 0;
};

struct FlatDocument {
  std::vector<Token> tokens;
  BoundarySet boundaries;
};

// Concatenates the segments; every segment end (including the last) becomes
// a boundary.
inline FlatDocument Flatten(const SegmentedDocument& doc) {
  FlatDocument flat;
  std::vector<size_t> ends;
  ends.reserve(doc.size());
  for (const auto& segment : doc.segments()) {
    flat.tokens.insert(flat.tokens.end(), segment.begin(), segment.end());
    ends.push_back(flat.tokens.size() - 1);
  }
  flat.boundaries = BoundarySet(std::move(ends), flat.tokens.size());
  return flat;
}

// Inverse of Flatten. The final token always closes a segment, so no
// boundary set ever yields an empty segment.
inline SegmentedDocument Rebuild(std::vector<Token> tokens,
                                 const BoundarySet& boundaries,
                                 std::string doc_id = {}) {
  if (boundaries.total_tokens() != tokens.size()) {
    throw InputError("boundary set covers " +
                     std::to_string(boundaries.total_tokens()) +
                     " tokens but " + std::to_string(tokens.size()) +
                     " were given");
  }
  std::vector<Segment> segments;
  segments.reserve(boundaries.size() + 1);
  Segment current;
  size_t next = 0;
  const auto& positions = boundaries.positions();
  for (size_t i = 0; i < tokens.size(); ++i) {
    current.push_back(std::move(tokens[i]));
    const bool at_boundary = next < positions.size() && positions[next] == i;
    if (at_boundary) ++next;
    if (at_boundary || i + 1 == tokens.size()) {
      segments.push_back(std::exchange(current, {}));
    }
  }
  return SegmentedDocument(std::move(segments), std::move(doc_id));
}

// Convenience overload accepting raw, possibly unsorted positions.
inline SegmentedDocument Rebuild(std::vector<Token> tokens,
                                 std::vector<size_t> positions,
                                 std::string doc_id = {}) {
  BoundarySet boundaries(std::move(positions), tokens.size());
  return Rebuild(std::move(tokens), boundaries, std::move(doc_id));
}

// Applies Normalize() segment by segment; segments emptied by stripping are
// dropped.
inline SegmentedDocument NormalizeDocument(const SegmentedDocument& doc,
                                           const NormalizationPolicy& policy) {
  std::vector<Segment> segments;
  segments.reserve(doc.size());
  for (const auto& segment : doc.segments()) {
    auto normalized = Normalize(segment, policy);
    if (!normalized.empty()) segments.push_back(std::move(normalized));
  }
  return SegmentedDocument(std::move(segments), doc.doc_id());
}

}  // namespace segrobust

#endif  // SEGROBUST_TEXT_H_
