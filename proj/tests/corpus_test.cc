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


#include "dner/corpus.h"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "dner/error.h"
#include "dner/synthetic.h"
#include "test_util.h"

namespace dner {
namespace {

using testing::MakeSentence;

std::vector<Fragment> F(std::vector<std::pair<int, int>> xs) {
  std::vector<Fragment> out;
  for (auto [s, e] : xs) out.push_back({s, e});
  return out;
}

TEST(CanonicalizeTest, SortsAndMerges) {
  EXPECT_EQ(Canonicalize(F({{3, 5}, {0, 2}})), F({{0, 2}, {3, 5}}));
  EXPECT_EQ(Canonicalize(F({{0, 2}, {2, 4}})), F({{0, 4}}));
  EXPECT_THROW(Canonicalize(F({{0, 3}, {2, 5}})), Error);
}

TEST(CanonicalizeTest, Idempotent) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Fragment> f;
    int pos = 0;
    const int k = 1 + static_cast<int>(rng.Index(4));
    for (int i = 0; i < k; ++i) {
      pos += static_cast<int>(rng.Index(2));
      const int len = 1 + static_cast<int>(rng.Index(3));
      f.push_back({pos, pos + len});
      pos += len;
    }
    rng.Shuffle(f);
    const auto once = Canonicalize(f);
    EXPECT_EQ(Canonicalize(once), once);
    for (size_t i = 1; i < once.size(); ++i) {
      EXPECT_LT(once[i - 1].end, once[i].start);
    }
  }
}

TEST(InlineTest, ParsesFigureOneSentence) {
  const Corpus c = ParseInline("muscle pain and fatigue\n0,2 ADR|0,1;3,4 ADR\n\n");
  ASSERT_EQ(c.size(), 1u);
  const Sentence &s = c.sentences[0];
  EXPECT_EQ(s.size(), 4);
  ASSERT_EQ(s.mentions.size(), 2u);
  EXPECT_TRUE(s.HasDiscontinuous());
}

TEST(InlineTest, EmptyInputs) {
  EXPECT_TRUE(ParseInline("").empty());
  EXPECT_EQ(WriteInline(Corpus{}), "");
  Corpus one;
  one.sentences.push_back(MakeSentence("a b", ""));
  EXPECT_EQ(WriteInline(one), "a b\n\n\n");
}

TEST(InlineTest, ErrorsCarryLineNumbers) {
  try {
    ParseInline("a b\n0,2 X\n\nc d\n0,5 X\n\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 5);
  }
  EXPECT_THROW(ParseInline("a b c\n0,2;1,3 X\n\n"), Error);
  EXPECT_THROW(ParseInline("a b\n0,1 X|0,1 X\n\n"), Error);
  EXPECT_THROW(ParseInline("a b\n0-1 X\n\n"), Error);
}

TEST(InlineTest, CanonicalizesAdjacentFragments) {
  const Corpus c = ParseInline("a b c\n2,3;0,1;1,2 X\n\n");
  EXPECT_EQ(WriteInline(c), "a b c\n0,3 X\n\n");
}

TEST(InlineTest, SyntheticRoundTripIsByteExact) {
  const Corpus c = GenerateStructured(50, 17, StructureOptions{});
  const std::string text = WriteInline(c);
  EXPECT_EQ(WriteInline(ParseInline(text)), text);
}

TEST(StandoffTest, MapsCharacterOffsets) {
  const std::string text = "muscle pain and fatigue";
  const StandoffResult r = ParseStandoff(
      text, "T1\tADR 0 6;16 23\tmuscle fatigue\nT2\tADR 7 11\tpain\n", {});
  ASSERT_EQ(r.corpus.size(), 1u);
  const auto &m = r.corpus.sentences[0].mentions;
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].fragments, F({{0, 1}, {3, 4}}));
  EXPECT_EQ(m[1].fragments, F({{1, 2}}));
  EXPECT_TRUE(r.warnings.empty());
}

TEST(StandoffTest, NoEntitiesAndBadOffsets) {
  const std::string text = "muscle pain and fatigue";
  const StandoffResult none = ParseStandoff(text, "#1\tNote T1\tx\n", {});
  ASSERT_EQ(none.corpus.size(), 1u);
  EXPECT_TRUE(none.corpus.sentences[0].mentions.empty());
  const StandoffResult bad = ParseStandoff(text, "T1\tADR 1 6\tuscle\n", {});
  EXPECT_TRUE(bad.corpus.sentences[0].mentions.empty());
  EXPECT_EQ(bad.warnings.size(), 1u);
  EXPECT_THROW(ParseStandoff(text, "T1\tADR zero six\tx\n", {}), Error);
}

TEST(StandoffTest, CrossSentenceMentionIsSkipped) {
  const std::string text = "muscle pain\nand fatigue\n";
  const StandoffResult r =
      ParseStandoff(text, "T1\tADR 0 6;16 23\tmuscle fatigue\n",
                    LineBoundaries(text));
  ASSERT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(StandoffTest, PunctuationIsSplit) {
  const auto toks = Tokenize("pain, fatigue.");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[1].text, ",");
}

TEST(StandoffTest, WriterRoundTrip) {
  const Corpus c = GenerateStructured(30, 2, StructureOptions{});
  const StandoffDocument doc = WriteStandoff(c);
  const StandoffResult r =
      ParseStandoff(doc.text, doc.ann, LineBoundaries(doc.text));
  EXPECT_TRUE(r.warnings.empty());
  ASSERT_EQ(r.corpus.size(), c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(r.corpus.sentences[i].mentions, c.sentences[i].mentions);
  }
}

TEST(OverlapTest, PaperExamples) {
  const Sentence mp = testing::MusclePain();
  const Mention muscle_fatigue = Mention::Make("ADR", F({{0, 1}, {3, 4}}));
  EXPECT_EQ(ClassifyOverlap(muscle_fatigue, {Mention::Make("ADR", F({{0, 2}}))}),
            OverlapCategory::kLeftOverlap);
  const Sentence la =
      MakeSentence("left atrium is mildly dilated", "0,2;4,5 ADR");
  EXPECT_EQ(ClassifyOverlap(la.mentions[0], {}), OverlapCategory::kNoOverlap);
  const Sentence jm = testing::JointMuscle();
  const Mention joint_pain = Mention::Make("ADR", F({{0, 1}, {3, 4}}));
  std::vector<Mention> others;
  for (const Mention &m : jm.mentions) {
    if (!(m == joint_pain)) others.push_back(m);
  }
  EXPECT_EQ(ClassifyOverlap(joint_pain, others),
            OverlapCategory::kMultiOverlap);
  EXPECT_THROW(ClassifyOverlap(mp.mentions[0].discontinuous() ? mp.mentions[1] : mp.mentions[0], {}), Error);
}

TEST(OverlapTest, RightOverlap) {
  const Sentence s = MakeSentence("abdominal and chest pain",
                                  "0,1;3,4 ADR|2,4 ADR");
  EXPECT_EQ(ClassifyOverlapAt(s.mentions, 0), OverlapCategory::kRightOverlap);
}

TEST(OverlapTest, MatchesReferenceOnRandomSentences) {
  StructureOptions opt;
  opt.crossing = true;
  const Corpus c = GenerateStructured(500, 21, opt);
  for (const Sentence &s : c.sentences) {
    for (size_t i = 0; i < s.mentions.size(); ++i) {
      if (!s.mentions[i].discontinuous()) continue;
      EXPECT_EQ(static_cast<int>(ClassifyOverlapAt(s.mentions, i)),
                testing::RecountCategory(s.mentions[i], s.mentions));
    }
  }
}

TEST(StatsTest, LengthAndInterval) {
  const Mention d = Mention::Make("X", F({{0, 1}, {3, 4}}));
  EXPECT_EQ(d.length(), 2);
  EXPECT_EQ(d.interval_length(), 2);
  const Mention c = Mention::Make("X", F({{0, 3}}));
  EXPECT_EQ(c.length(), 3);
  EXPECT_EQ(c.interval_length(), 0);
}

TEST(StatsTest, MatchesRecount) {
  StructureOptions opt;
  opt.crossing = true;
  const Corpus c = GenerateStructured(20, 8, opt);
  const StatsReport r = ComputeStats(c);
  int64_t mentions = 0, disc = 0, len = 0, disc_len = 0, interval = 0;
  std::vector<int64_t> comps(3, 0), cats(4, 0);
  int64_t cont_overlap = 0;
  for (const Sentence &s : c.sentences) {
    for (const Mention &m : s.mentions) {
      ++mentions;
      std::set<int> toks;
      for (const Fragment &f : m.fragments) {
        for (int t = f.start; t < f.end; ++t) toks.insert(t);
      }
      len += static_cast<int64_t>(toks.size());
      if (m.fragments.size() < 2) {
        for (const Mention &o : s.mentions) {
          if (o == m) continue;
          bool shares = false;
          for (int t : o.tokens()) shares = shares || toks.count(t);
          if (shares) {
            ++cont_overlap;
            break;
          }
        }
        continue;
      }
      ++disc;
      disc_len += static_cast<int64_t>(toks.size());
      for (int t = *toks.begin(); t <= *toks.rbegin(); ++t) {
        if (!toks.count(t)) ++interval;
      }
      ++comps[std::min<size_t>(m.fragments.size() - 2, 2)];
      ++cats[testing::RecountCategory(m, s.mentions)];
    }
  }
  EXPECT_EQ(r.mentions, mentions);
  EXPECT_EQ(r.disc_mentions, disc);
  EXPECT_DOUBLE_EQ(r.avg_mention_length, double(len) / mentions);
  EXPECT_DOUBLE_EQ(r.avg_disc_mention_length, double(disc_len) / disc);
  EXPECT_DOUBLE_EQ(r.avg_interval_length, double(interval) / disc);
  EXPECT_NEAR(r.disc_percentage, 100.0 * disc / mentions, 1e-9);
  EXPECT_EQ(r.component_histogram, comps);
  EXPECT_EQ(r.overlap_histogram, cats);
  EXPECT_EQ(r.continuous_overlap, cont_overlap);
  int64_t sum = 0;
  for (int64_t v : r.overlap_histogram) sum += v;
  EXPECT_EQ(sum, r.disc_mentions);
  EXPECT_FALSE(FormatStatsText(r).empty());
  EXPECT_FALSE(FormatStatsJsonLines(r).empty());
}

bool HasOverlapOrDisc(const Corpus &c) {
  for (const Sentence &s : c.sentences) {
    for (size_t i = 0; i < s.mentions.size(); ++i) {
      if (s.mentions[i].discontinuous()) return true;
      for (size_t j = i + 1; j < s.mentions.size(); ++j) {
        if (s.mentions[i].Overlaps(s.mentions[j])) return true;
      }
    }
  }
  return false;
}

TEST(FlattenTest, PaperExample) {
  const Corpus c = FlattenForFlatModel(Corpus{{testing::MusclePain()}, ""});
  ASSERT_EQ(c.sentences[0].mentions.size(), 1u);
  EXPECT_EQ(c.sentences[0].mentions[0].fragments, F({{0, 4}}));
}

TEST(FlattenTest, FixedPointOnFlatCorpus) {
  const Corpus c = GenerateFlat(50, 4);
  EXPECT_EQ(WriteInline(FlattenForFlatModel(c)), WriteInline(c));
}

TEST(FlattenTest, ChainAndMajorityType) {
  const Sentence s =
      MakeSentence("a b c d e f", "0,2 X|1,3 Y|2,4 Y|5,6 Z");
  const Corpus c = FlattenForFlatModel(Corpus{{s}, ""});
  const auto &m = c.sentences[0].mentions;
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], Mention::Make("Y", F({{0, 4}})));
  const Sentence tie = MakeSentence("a b c", "1,3 Y|0,2 X");
  EXPECT_EQ(FlattenForFlatModel(Corpus{{tie}, ""}).sentences[0].mentions[0].type,
            "X");
}

TEST(FlattenTest, PropertiesOnRandomCorpora) {
  StructureOptions opt;
  opt.crossing = true;
  const Corpus c = GenerateStructured(500, 12, opt);
  const Corpus once = FlattenForFlatModel(c);
  EXPECT_FALSE(HasOverlapOrDisc(once));
  EXPECT_EQ(WriteInline(FlattenForFlatModel(once)), WriteInline(once));
}

Corpus DiscMix(int disc, int plain) {
  Corpus c;
  for (int i = 0; i < disc; ++i) c.sentences.push_back(testing::MusclePain());
  for (int i = 0; i < plain; ++i) {
    c.sentences.push_back(MakeSentence("pain", "0,1 ADR"));
  }
  return c;
}

int CountDisc(const Corpus &c) {
  int n = 0;
  for (const Sentence &s : c.sentences) n += s.HasDiscontinuous();
  return n;
}

TEST(ResampleTest, Counts) {
  const Corpus c = DiscMix(2, 8);
  const Corpus under = Resample(c, ResampleMode::kUnderSample, 1);
  EXPECT_EQ(under.size(), 4u);
  EXPECT_EQ(CountDisc(under), 2);
  const Corpus over = Resample(c, ResampleMode::kOverSample, 1);
  EXPECT_EQ(over.size(), 16u);
  EXPECT_EQ(CountDisc(over), 8);
  const Corpus only = Resample(c, ResampleMode::kDiscOnly, 1);
  EXPECT_EQ(only.size(), 2u);
  const Corpus all_disc = DiscMix(3, 0);
  EXPECT_EQ(WriteInline(Resample(all_disc, ResampleMode::kDiscOnly, 5)),
            WriteInline(all_disc));
  EXPECT_THROW(Resample(DiscMix(0, 3), ResampleMode::kUnderSample, 1), Error);
  EXPECT_THROW(Resample(DiscMix(0, 3), ResampleMode::kOverSample, 1), Error);
}

TEST(ResampleTest, DeterministicGivenSeed) {
  const Corpus c = GenerateStructured(200, 6, StructureOptions{});
  EXPECT_EQ(WriteInline(Resample(c, ResampleMode::kUnderSample, 4)),
            WriteInline(Resample(c, ResampleMode::kUnderSample, 4)));
}

std::set<std::string> Docs(const Corpus &c) {
  std::set<std::string> d;
  for (const Sentence &s : c.sentences) d.insert(s.doc_id);
  return d;
}

TEST(SplitTest, DocumentFractions) {
  const Corpus c = GenerateStructured(300, 9, StructureOptions{}, 3);
  const CorpusSplit sp = Split(c, 0.7, 0.15, 1);
  EXPECT_EQ(Docs(sp.train).size(), 70u);
  EXPECT_EQ(Docs(sp.dev).size(), 15u);
  EXPECT_EQ(Docs(sp.test).size(), 15u);
  EXPECT_EQ(sp.train.size() + sp.dev.size() + sp.test.size(), c.size());
}

TEST(SplitTest, PartitionForManySeeds) {
  const Corpus c = GenerateStructured(97, 3, StructureOptions{}, 4);
  const std::set<std::string> all = Docs(c);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const CorpusSplit sp = Split(c, 0.6, 0.2, seed);
    std::map<std::string, int> seen;
    for (const Corpus *part : {&sp.train, &sp.dev, &sp.test}) {
      for (const std::string &d : Docs(*part)) ++seen[d];
    }
    EXPECT_EQ(seen.size(), all.size());
    for (const auto &[d, n] : seen) EXPECT_EQ(n, 1) << d;
    const CorpusSplit again = Split(c, 0.6, 0.2, seed);
    EXPECT_EQ(WriteInline(again.train), WriteInline(sp.train));
  }
  EXPECT_THROW(Split(GenerateStructured(2, 1, StructureOptions{}, 1), 0.5, 0.2, 1),
               Error);
  EXPECT_THROW(Split(c, 0.8, 0.3, 1), Error);
}

}  // namespace
}  // namespace dner
