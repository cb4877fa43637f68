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

// Readers and writers for the on-disk formats.
//
// Documents: UTF-8, one segment per line, tokens separated by whitespace.
//   A blank line ends a document; each further blank line adds an empty
//   document. One trailing blank line at end of file is ignored.
// Bitext: "source<TAB>target" per line, same blank-line document rule.
//   Columns after the second are ignored on input.
// Timed transcripts: JSON Lines, one document per line:
//   {"doc_id": "talk1", "words": [{"text": "the", "start": 0.0, "end": 0.3}]}
//   doc_id is optional; start/end are seconds.
//
// All parse failures throw InputError prefixed with "<name>:<line>: ".

#ifndef SEGROBUST_IO_H_
#define SEGROBUST_IO_H_

#include <unicode/utf8.h>

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "segrobust/augment.h"
#include "segrobust/errors.h"
#include "segrobust/eval.h"
#include "segrobust/segment.h"
#include "segrobust/text.h"

namespace segrobust {

namespace internal {

inline std::string Where(std::string_view name, size_t line) {
  return std::string(name) + ":" + std::to_string(line) + ": ";
}

inline bool IsBlank(std::string_view line) { return Tokenize(line).empty(); }

inline void CheckUtf8(std::string_view line, std::string_view name,
                      size_t line_no) {
  const auto* s = reinterpret_cast<const uint8_t*>(line.data());
  const auto length = static_cast<int32_t>(line.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw InputError(Where(name, line_no) + "invalid UTF-8 at byte " +
                       std::to_string(i - 1));
    }
  }
}

// Splits the stream into blank-line separated groups of (line number, text).
inline std::vector<std::vector<std::pair<size_t, std::string>>> ReadGroups(
    std::istream& in, std::string_view name) {
  std::vector<std::vector<std::pair<size_t, std::string>>> groups;
  std::vector<std::pair<size_t, std::string>> current;
  std::string line;
  size_t line_no = 0;
  bool any_line = false;
  bool last_blank = false;
  while (std::getline(in, line)) {
    ++line_no;
    any_line = true;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CheckUtf8(line, name, line_no);
    last_blank = IsBlank(line);
    if (last_blank) {
      groups.push_back(std::exchange(current, {}));
    } else {
      current.emplace_back(line_no, line);
    }
  }
  if (!any_line) return groups;
  if (!(last_blank && current.empty())) groups.push_back(std::move(current));
  return groups;
}

inline std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open for reading");
  return in;
}

}  // namespace internal

inline std::vector<SegmentedDocument> ReadDocuments(std::istream& in,
                                                    std::string_view name =
                                                        "<input>") {
  std::vector<SegmentedDocument> docs;
  for (auto& group : internal::ReadGroups(in, name)) {
    std::vector<Segment> segments;
    segments.reserve(group.size());
    for (const auto& [line_no, text] : group) segments.push_back(Tokenize(text));
    docs.emplace_back(std::move(segments), "doc" + std::to_string(docs.size()));
  }
  return docs;
}

inline std::vector<SegmentedDocument> ReadDocumentsFile(const std::string& path) {
  auto in = internal::OpenInput(path);
  return ReadDocuments(in, path);
}

inline void WriteDocuments(std::ostream& out,
                           const std::vector<SegmentedDocument>& docs) {
  for (size_t d = 0; d < docs.size(); ++d) {
    if (d > 0) out << '\n';
    for (const auto& segment : docs[d].segments()) {
      out << Detokenize(segment) << '\n';
    }
  }
}

using BitextDocument = std::vector<BitextPair>;

inline std::vector<BitextDocument> ReadBitext(std::istream& in,
                                              std::string_view name = "<input>",
                                              const std::string& origin = {}) {
  std::vector<BitextDocument> docs;
  for (auto& group : internal::ReadGroups(in, name)) {
    BitextDocument doc;
    doc.reserve(group.size());
    for (const auto& [line_no, text] : group) {
      const auto tab = text.find('\t');
      if (tab == std::string::npos) {
        throw InputError(internal::Where(name, line_no) +
                         "expected source<TAB>target");
      }
      const auto tab2 = text.find('\t', tab + 1);
      BitextPair pair{Tokenize(std::string_view(text).substr(0, tab)),
                      Tokenize(std::string_view(text).substr(
                          tab + 1, tab2 == std::string::npos
                                       ? std::string::npos
                                       : tab2 - tab - 1)),
                      origin};
      if (pair.source.empty() || pair.target.empty()) {
        throw InputError(internal::Where(name, line_no) +
                         "source and target must both be non-empty");
      }
      doc.push_back(std::move(pair));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

inline std::vector<BitextDocument> ReadBitextFile(const std::string& path,
                                                  const std::string& origin = {}) {
  auto in = internal::OpenInput(path);
  return ReadBitext(in, path, origin);
}

inline void WriteBitextPair(std::ostream& out, const BitextPair& pair) {
  out << Detokenize(pair.source) << '\t' << Detokenize(pair.target) << '\n';
}

inline void WriteBitext(std::ostream& out,
                        const std::vector<BitextDocument>& docs) {
  for (size_t d = 0; d < docs.size(); ++d) {
    if (d > 0) out << '\n';
    for (const auto& pair : docs[d]) WriteBitextPair(out, pair);
  }
}

inline std::vector<TimedTranscript> ReadTimedTranscripts(
    std::istream& in, std::string_view name = "<input>") {
  using nlohmann::json;
  std::vector<TimedTranscript> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    const std::string where = internal::Where(name, line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where + "invalid JSON: " + e.what());
    }
    try {
      TimedTranscript t;
      t.doc_id = record.contains("doc_id") ? record.at("doc_id").get<std::string>()
                                           : "doc" + std::to_string(out.size());
      for (const auto& w : record.at("words")) {
        t.words.push_back({w.at("text").get<std::string>(),
                           w.at("start").get<double>(),
                           w.at("end").get<double>()});
      }
      t.Validate();
      out.push_back(std::move(t));
    } catch (const json::exception& e) {
      throw InputError(where + "malformed transcript record: " + e.what());
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
  }
  return out;
}

inline std::vector<TimedTranscript> ReadTimedTranscriptsFile(
    const std::string& path) {
  auto in = internal::OpenInput(path);
  return ReadTimedTranscripts(in, path);
}

inline void WriteTimedTranscripts(std::ostream& out,
                                  const std::vector<TimedTranscript>& docs) {
  for (const auto& t : docs) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& w : t.words) {
      words.push_back({{"text", w.text}, {"start", w.start_sec}, {"end", w.end_sec}});
    }
    out << nlohmann::json{{"doc_id", t.doc_id}, {"words", words}}.dump() << '\n';
  }
}

inline nlohmann::json ToJson(const BleuReport& r) {
  return {{"type", "bleu"},
          {"score", r.score},
          {"ngram_precisions", r.ngram_precisions},
          {"brevity_penalty", r.brevity_penalty},
          {"hyp_len", r.hyp_len},
          {"ref_len", r.ref_len},
          {"effective_order", r.effective_order}};
}

inline nlohmann::json ToJson(const LengthBucket& b) {
  return {{"type", "bucket"},
          {"lower", b.lower},
          {"upper", b.upper},
          {"mean_score", b.mean_score},
          {"count", b.count}};
}

}  // namespace segrobust

#endif  // SEGROBUST_IO_H_
