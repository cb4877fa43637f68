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

#include "segrobust/text.h"

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace segrobust {
namespace {

TEST(TokenizeTest, SplitsOnWhitespaceRuns) {
  EXPECT_EQ(Tokenize("the weather today"),
            (Segment{"the", "weather", "today"}));
  EXPECT_EQ(Tokenize("  a\tb  "), (Segment{"a", "b"}));
  EXPECT_EQ(Tokenize("x\r\ny"), (Segment{"x", "y"}));
}

TEST(TokenizeTest, EmptyInputGivesEmptySegment) {
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize(" \t ").empty());
}

TEST(TokenizeTest, UnicodeSpacesSeparateTokens) {
  // U+00A0 no-break space and U+3000 ideographic space.
  EXPECT_EQ(Tokenize("a\xC2\xA0" "b\xE3\x80\x80" "c"), (Segment{"a", "b", "c"}));
}

TEST(TokenizeTest, DetokenizeRoundTrip) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Segment s = testing::RandomTokens(gen, trial % 17, 9);
    EXPECT_EQ(Tokenize(Detokenize(s)), s);
  }
}

TEST(NormalizeTest, StrippedPolicy) {
  const auto policy = NormalizationPolicy::Stripped();
  EXPECT_EQ(Normalize({"Hello,,", "World!"}, policy),
            (Segment{"hello", "world"}));
  EXPECT_EQ(Normalize({"hello", "world"}, policy),
            (Segment{"hello", "world"}));
  // "—" is U+2014 EM DASH (Pd).
  EXPECT_TRUE(Normalize({"...", "\xE2\x80\x94"}, policy).empty());
}

TEST(NormalizeTest, StripsInsideTokens) {
  EXPECT_EQ(Normalize({"don't"}, NormalizationPolicy::Stripped()),
            (Segment{"dont"}));
}

TEST(NormalizeTest, NonAsciiPunctuationAndCase) {
  // „Über“ with German quotes, and a euro sign (Sc).
  const Segment in = {"\xE2\x80\x9E\xC3\x9C" "ber\xE2\x80\x9C", "5\xE2\x82\xAC"};
  EXPECT_EQ(Normalize(in, NormalizationPolicy::Stripped()),
            (Segment{"\xC3\xBC" "ber", "5"}));
  NormalizationPolicy punct_only{true, false, false};
  EXPECT_EQ(Normalize(in, punct_only),
            (Segment{"\xC3\x9C" "ber", "5\xE2\x82\xAC"}));
}

TEST(NormalizeTest, PunctuatedPolicyIsIdentity) {
  const Segment in = {"Hello,", "World!", "\xE2\x80\x94"};
  EXPECT_EQ(Normalize(in, NormalizationPolicy::Punctuated()), in);
}

TEST(NormalizeTest, IdempotentAndNeverGrows) {
  const std::vector<std::string> pieces = {
      "A", "b", ",", ".", "'", "\xE2\x80\x94", "\xC3\x84", "$", "x", "-", "\"",
      "\xE2\x80\x9E"};
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(1, 4);
  for (int trial = 0; trial < 2000; ++trial) {
    Segment s;
    for (int t = 0; t < 6; ++t) {
      std::string token;
      for (int c = len(gen); c > 0; --c) token += pieces[pick(gen)];
      s.push_back(token);
    }
    for (const auto& policy :
         {NormalizationPolicy::Stripped(), NormalizationPolicy::Punctuated(),
          NormalizationPolicy{true, false, false},
          NormalizationPolicy{false, true, true}}) {
      const Segment once = Normalize(s, policy);
      EXPECT_EQ(Normalize(once, policy), once);
      EXPECT_LE(once.size(), s.size());
    }
  }
}

TEST(FlattenTest, Examples) {
  const SegmentedDocument doc(std::vector<Segment>{{"a", "b"}, {"c"}});
  const auto flat = Flatten(doc);
  EXPECT_EQ(flat.tokens, (std::vector<Token>{"a", "b", "c"}));
  EXPECT_EQ(flat.boundaries.positions(), (std::vector<size_t>{1, 2}));

  const auto empty = Flatten(SegmentedDocument());
  EXPECT_TRUE(empty.tokens.empty());
  EXPECT_TRUE(empty.boundaries.empty());

  const auto single = Flatten(SegmentedDocument(std::vector<Segment>{{"a"}}));
  EXPECT_EQ(single.boundaries.positions(), (std::vector<size_t>{0}));
}

TEST(RebuildTest, Examples) {
  EXPECT_EQ(Rebuild({"a", "b", "c"}, std::vector<size_t>{1, 2}),
            SegmentedDocument(std::vector<Segment>{{"a", "b"}, {"c"}}));
  EXPECT_EQ(Rebuild({"a", "b"}, std::vector<size_t>{}),
            SegmentedDocument(std::vector<Segment>{{"a", "b"}}));
  EXPECT_EQ(Rebuild({"a", "b"}, std::vector<size_t>{0, 0}),
            SegmentedDocument(std::vector<Segment>{{"a"}, {"b"}}));
  EXPECT_EQ(Rebuild({"a", "b", "c"}, std::vector<size_t>{2, 0, 0}),
            SegmentedDocument({{"a"}, {"b", "c"}}));
  EXPECT_TRUE(Rebuild({}, std::vector<size_t>{}).empty());
}

TEST(RebuildTest, RejectsOutOfRangeBoundary) {
  EXPECT_THROW(Rebuild({"a", "b"}, std::vector<size_t>{2}), InputError);
  EXPECT_THROW(Rebuild({}, std::vector<size_t>{0}), InputError);
  EXPECT_THROW(Rebuild({"a"}, BoundarySet({0}, 2)), InputError);
}

TEST(RebuildTest, RoundTripsFlatten) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto doc = testing::RandomDocument(gen, trial % 40, 5, 0.3);
    auto flat = Flatten(doc);
    EXPECT_EQ(flat.tokens.size(), doc.token_count());
    EXPECT_EQ(Rebuild(flat.tokens, flat.boundaries, doc.doc_id()), doc);
  }
}

TEST(SegmentedDocumentTest, RejectsEmptySegmentsAndBadTokens) {
  EXPECT_THROW(SegmentedDocument({{"a"}, {}}), InputError);
  EXPECT_THROW(SegmentedDocument({{"a b"}}), InputError);
  EXPECT_THROW(SegmentedDocument({{""}}), InputError);
  EXPECT_NO_THROW(SegmentedDocument(std::vector<Segment>{{"a"}}));
}

TEST(NormalizeDocumentTest, DropsSegmentsStrippedToNothing) {
  const SegmentedDocument doc({{"Hi", "!"}, {"..."}, {"Bye."}}, "d");
  EXPECT_EQ(NormalizeDocument(doc, NormalizationPolicy::Stripped()),
            SegmentedDocument({{"hi"}, {"bye"}}, "d"));
}

}  // namespace
}  // namespace segrobust
