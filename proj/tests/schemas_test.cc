// Copyright 2026 The dner Authors.
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


#include "dner/schemas.h"

#include <gtest/gtest.h>

#include <set>

#include "dner/error.h"
#include "dner/synthetic.h"
#include "test_util.h"

namespace dner {
namespace {

using testing::MakeSentence;

std::set<std::string> Keys(const std::vector<Mention> &ms) {
  std::set<std::string> out;
  for (const Mention &m : ms) out.insert(m.type + "@" + FormatMention(m));
  return out;
}

bool Subset(const std::vector<Mention> &a, const std::vector<Mention> &b) {
  const auto ka = Keys(a), kb = Keys(b);
  return std::includes(kb.begin(), kb.end(), ka.begin(), ka.end());
}

TEST(TagTest, TextRoundTrip) {
  const std::string line = "O B-X I-X BH-ADR IH-ADR BD-ADR ID-ADR B";
  EXPECT_EQ(FormatTags(ParseTags(line)), line);
  EXPECT_THROW(Tag::Parse("Q-X"), Error);
}

TEST(BioTest, Examples) {
  const Sentence s = MakeSentence("muscle pain and fatigue", "0,2 ADR");
  EXPECT_EQ(FormatTags(EncodeBio(s)), "B-ADR I-ADR O O");
  EXPECT_EQ(FormatTags(EncodeBio(MakeSentence("a b", ""))), "O O");
  EXPECT_THROW(EncodeBio(testing::MusclePain()), Error);
  EXPECT_THROW(EncodeBio(MakeSentence("a b c", "0,1;2,3 X")), Error);
  EXPECT_TRUE(DecodeBio(ParseTags("O O O")).empty());
  const auto m = DecodeBio(ParseTags("B I I"));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].length(), 3);
}

TEST(BioTest, OrphanInsideStartsMention) {
  const auto m = DecodeBio(ParseTags("O I-X I-X B-Y I-Z"));
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(FormatMention(m[0]), "1,3 X");
}

TEST(BioTest, RoundTripOnFlatCorpus) {
  const Corpus c = GenerateFlat(1000, 5);
  for (const Sentence &s : c.sentences) {
    EXPECT_EQ(DecodeBio(EncodeBio(s)), s.mentions);
  }
}

TEST(BioTest, FuzzDecodes) {
  Rng rng(9);
  const std::vector<std::string> alphabet = {"O", "B-X", "I-X", "B-Y", "I-Y"};
  for (int trial = 0; trial < 1000; ++trial) {
    TagSequence tags;
    const int n = static_cast<int>(rng.Index(8));
    for (int i = 0; i < n; ++i) tags.push_back(Tag::Parse(rng.Pick(alphabet)));
    const auto m = DecodeBio(tags);
    for (const Mention &x : m) EXPECT_FALSE(x.discontinuous());
  }
}

TEST(BiohdTest, PaperGoldSequence) {
  EXPECT_EQ(FormatTags(EncodeBiohd(testing::MusclePain())),
            "BH-ADR I-ADR O BD-ADR");
  EXPECT_EQ(FormatTags(EncodeBiohd(MakeSentence("a b", "0,2 X"))), "B-X I-X");
  EXPECT_THROW(EncodeBiohd(MakeSentence("a b c", "0,3 X|1,2 X")), Error);
}

TEST(BiohdTest, HeuristicDecode) {
  const auto m = DecodeBiohd(ParseTags("BH I O BD"));
  EXPECT_EQ(Keys(m), (std::set<std::string>{"@0,1;3,4 ", "@0,2 "}));
  EXPECT_EQ(DecodeBiohd(ParseTags("B I O O")).size(), 1u);
  EXPECT_TRUE(DecodeBiohd(ParseTags("O O")).empty());
}

TEST(BiohdTest, LeftOverlapRoundTripContainsGold) {
  StructureOptions opt;
  opt.continuous = false;
  opt.disc_single = false;
  opt.right_overlap = false;
  opt.max_components = 2;
  const Corpus c = GenerateStructured(1000, 31, opt);
  for (const Sentence &s : c.sentences) {
    EXPECT_TRUE(Subset(s.mentions, DecodeBiohd(EncodeBiohd(s))))
        << WriteInline(Corpus{{s}, ""});
  }
}

TEST(WitnessTest, PaperAmbiguity) {
  const TagSequence t = ParseTags("BH I O BD");
  const auto w = AmbiguityWitnesses(t);
  ASSERT_GE(w.size(), 2u);
  std::set<std::set<std::string>> sets;
  for (const auto &ms : w) sets.insert(Keys(ms));
  EXPECT_EQ(sets.size(), w.size());
  EXPECT_TRUE(sets.count({"@0,1;3,4 ", "@0,2 "}));
  EXPECT_TRUE(sets.count({"@0,1 ", "@0,1;3,4 ", "@0,2 "}));
  for (const auto &ms : w) {
    EXPECT_EQ(EncodeBiohd(4, ms, true), t);
  }
}

TEST(WitnessTest, FlatSequencesAreUnambiguous) {
  EXPECT_EQ(AmbiguityWitnesses(ParseTags("B I")).size(), 1u);
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const Sentence s = GenerateFlat(1, rng.Next()).sentences[0];
    const auto w = AmbiguityWitnesses(EncodeBio(s), -1);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0], s.mentions);
  }
}

TEST(WitnessTest, GoldIsAmongWitnesses) {
  StructureOptions opt;
  opt.max_components = 2;
  opt.max_mentions = 3;
  const Corpus c = GenerateStructured(300, 13, opt);
  for (const Sentence &s : c.sentences) {
    const TagSequence t = EncodeBiohd(s);
    const auto w = AmbiguityWitnesses(t, -1);
    bool found = false;
    std::set<std::set<std::string>> sets;
    for (const auto &ms : w) {
      found = found || Keys(ms) == Keys(s.mentions);
      sets.insert(Keys(ms));
      EXPECT_EQ(EncodeBiohd(s.size(), ms, true), t);
    }
    EXPECT_EQ(sets.size(), w.size());
    EXPECT_TRUE(found) << WriteInline(Corpus{{s}, ""}) << FormatTags(t);
  }
}

TEST(WitnessTest, LimitIsRespected) {
  const auto w = AmbiguityWitnesses(ParseTags("BH I O BD"), 1);
  EXPECT_EQ(w.size(), 1u);
}

TEST(ConllTest, RoundTrip) {
  const Sentence s = testing::MusclePain();
  const TagSequence t = EncodeBiohd(s);
  const std::string text = FormatConll(s.tokens, t) + FormatConll(s.tokens, t);
  const auto parsed = ParseConll(text);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[1].tokens, s.tokens);
  EXPECT_EQ(parsed[1].tags, t);
  EXPECT_THROW(ParseConll("a\n"), Error);
}

}  // namespace
}  // namespace dner
