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

// Segmentation strategies for long-form transcripts: punctuation-driven
// sentence breaking, speaker-pause splitting with a length cap, and
// fixed-length chunking. All of them only insert boundaries; the flat token
// stream is never modified.

#ifndef SEGROBUST_SEGMENT_H_
#define SEGROBUST_SEGMENT_H_

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "segrobust/errors.h"
#include "segrobust/text.h"

namespace segrobust {

inline const std::set<std::string>& DefaultAbbreviations() {
  static const std::set<std::string> kAbbreviations = {"Mr.", "Mrs.", "Dr.",
                                                        "St.", "No.", "U.S."};
  return kAbbreviations;
}

namespace internal {

// Closing quotes and brackets that may trail a sentence-final mark.
inline bool IsClosingMark(UChar32 c) {
  if (c == '"' || c == '\'') return true;
  const uint32_t mask = U_GET_GC_MASK(c);
  return (mask & (U_GC_PE_MASK | U_GC_PF_MASK)) != 0;
}

inline bool EndsSentence(std::string_view token) {
  const auto* s = reinterpret_cast<const uint8_t*>(token.data());
  auto i = static_cast<int32_t>(token.size());
  while (i > 0) {
    UChar32 c;
    U8_PREV(s, 0, i, c);
    if (c == '.' || c == '!' || c == '?') return true;
    if (c < 0 || !IsClosingMark(c)) return false;
  }
  return false;
}

inline SegmentedDocument FromEnds(std::span<const Token> tokens,
                                  const std::vector<size_t>& positions,
                                  std::string doc_id) {
  return Rebuild(std::vector<Token>(tokens.begin(), tokens.end()),
                 BoundarySet(positions, tokens.size()), std::move(doc_id));
}

}  // namespace internal

// Breaks after every token whose last character, ignoring trailing closing
// quotes/brackets, is '.', '!' or '?', unless the token is listed in
// `abbreviations`.
inline SegmentedDocument BreakOnPunctuation(
    std::span<const Token> tokens,
    const std::set<std::string>& abbreviations = DefaultAbbreviations(),
    std::string doc_id = {}) {
  std::vector<size_t> positions;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (internal::EndsSentence(tokens[i]) && !abbreviations.contains(tokens[i])) {
      positions.push_back(i);
    }
  }
  return internal::FromEnds(tokens, positions, std::move(doc_id));
}

// Left-to-right chunks of exactly `n` tokens; the last chunk holds the
// remainder.
inline SegmentedDocument SplitFixedLength(std::span<const Token> tokens,
                                          size_t n, std::string doc_id = {}) {
  if (n == 0) throw InputError("fixed segment length must be at least 1");
  std::vector<size_t> positions;
  for (size_t end = n; end <= tokens.size(); end += n) {
    positions.push_back(end - 1);
  }
  return internal::FromEnds(tokens, positions, std::move(doc_id));
}

struct TimedWord {
  Token text;
  double start_sec = 0.0;
  double end_sec = 0.0;

  friend bool operator==(const TimedWord&, const TimedWord&) = default;
};

struct TimedTranscript {
  std::vector<TimedWord> words;
  std::string doc_id;

  std::vector<Token> tokens() const {
    std::vector<Token> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(w.text);
    return out;
  }

  // Throws InputError unless every word is a valid token with
  // 0 <= start <= end and start times never decrease.
  void Validate() const {
    for (size_t i = 0; i < words.size(); ++i) {
      const auto& w = words[i];
      const std::string where = "word " + std::to_string(i);
      if (!IsValidToken(w.text)) throw InputError(where + ": invalid token");
      if (!(w.start_sec >= 0.0)) {
        throw InputError(where + ": negative start time");
      }
      if (!(w.end_sec >= w.start_sec)) {
        throw InputError(where + ": end precedes start");
      }
      if (i > 0 && w.start_sec < words[i - 1].start_sec) {
        throw InputError(where + ": start time decreases");
      }
    }
  }
};

struct PauseSplitConfig {
  double pause_threshold_sec = 1.0;
  size_t max_tokens = 50;

  void Validate() const {
    if (!(pause_threshold_sec > 0.0)) {
      throw ConfigError("pause threshold must be positive");
    }
    if (max_tokens == 0) throw ConfigError("max_tokens must be at least 1");
  }
};

// Silence between word i and word i+1, clamped at zero.
inline double PauseAfter(const TimedTranscript& t, size_t i) {
  return std::max(0.0, t.words[i + 1].start_sec - t.words[i].end_sec);
}

// Breaks wherever the pause between consecutive words reaches the threshold,
// then chops every segment longer than max_tokens greedily into chunks of
// max_tokens.
inline SegmentedDocument SplitOnPauses(const TimedTranscript& transcript,
                                       const PauseSplitConfig& cfg = {}) {
  cfg.Validate();
  transcript.Validate();
  const size_t n = transcript.words.size();
  std::vector<size_t> positions;
  size_t segment_start = 0;
  for (size_t i = 0; i < n; ++i) {
    const bool pause =
        i + 1 < n && PauseAfter(transcript, i) >= cfg.pause_threshold_sec;
    if (!pause && i + 1 < n) continue;
    for (size_t end = segment_start + cfg.max_tokens; end <= i; end += cfg.max_tokens) {
      positions.push_back(end - 1);
    }
    positions.push_back(i);
    segment_start = i + 1;
  }
  const auto tokens = transcript.tokens();
  return internal::FromEnds(tokens, positions, transcript.doc_id);
}

}  // namespace segrobust

#endif  // SEGROBUST_SEGMENT_H_
