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


#include "dner/eval.h"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "dner/error.h"
#include "test_util.h"

namespace dner {
namespace {

Mention M(const std::string &text) { return ParseMention(text, 100); }

TEST(StrictPrfTest, Examples) {
  const MentionSets gold = {{M("0,1 X"), M("1,2 X"), M("0,1;3,4 X")}};
  Prf p = StrictPrf(gold, gold);
  EXPECT_DOUBLE_EQ(p.f1, 1.0);
  p = StrictPrf(gold, {{}});
  EXPECT_EQ(p.precision, 0.0);
  EXPECT_EQ(p.recall, 0.0);
  EXPECT_EQ(p.f1, 0.0);
  p = StrictPrf(gold, {{M("0,1 X"), M("2,3 X")}});
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
  EXPECT_DOUBLE_EQ(p.recall, 1.0 / 3);
  EXPECT_DOUBLE_EQ(p.f1, 0.4);
  EXPECT_THROW(StrictPrf(gold, {}), Error);
}

TEST(StrictPrfTest, TypeMustMatch) {
  const Prf p = StrictPrf({{M("0,1 X")}}, {{M("0,1 Y")}});
  EXPECT_EQ(p.correct, 0);
}

TEST(DiscSentencesTest, Examples) {
  const MentionSets flat = {{M("0,1 X")}};
  EXPECT_TRUE(EvalDiscSentences(flat, flat).empty);
  const MentionSets all_disc = {{M("0,1;2,3 X"), M("0,1 X")}};
  const MentionSets pred = {{M("0,1 X")}};
  const SubsetPrf s = EvalDiscSentences(all_disc, pred);
  EXPECT_FALSE(s.empty);
  EXPECT_DOUBLE_EQ(s.prf.f1, StrictPrf(all_disc, pred).f1);
  // Sentence 0 has no discontinuous gold and is excluded.
  const MentionSets gold2 = {{M("0,1 X")}, {M("0,1;2,3 X"), M("4,5 X")}};
  const MentionSets pred2 = {{M("0,1 X")}, {M("4,5 X"), M("2,3 X")}};
  const SubsetPrf s2 = EvalDiscSentences(gold2, pred2);
  EXPECT_EQ(s2.sentences, 1);
  EXPECT_EQ(s2.prf.correct, 1);
  EXPECT_EQ(s2.prf.predicted, 2);
  EXPECT_EQ(s2.prf.gold, 2);
}

TEST(DiscOnlyTest, Examples) {
  const MentionSets gold = {{M("0,2 X"), M("0,1;3,4 X")}};
  EXPECT_EQ(EvalDiscOnly(gold, {{M("0,2 X")}}).f1, 0.0);
  EXPECT_DOUBLE_EQ(EvalDiscOnly(gold, gold).f1, 1.0);
  DiscOnlyOptions opt;
  opt.count_continuous_predictions = true;
  const Prf p = EvalDiscOnly(gold, gold, opt);
  EXPECT_EQ(p.predicted, 2);
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
}

TEST(CategoryTest, MissedMultiOverlap) {
  const Sentence s = testing::JointMuscle();
  const auto rows = EvalByCategory({s.mentions}, {{}});
  EXPECT_EQ(rows[3].prf.gold, 3);
  EXPECT_EQ(rows[3].prf.f1, 0.0);
}

TEST(CategoryTest, SingleCategoryMatchesDiscOnly) {
  const MentionSets gold = {{M("0,1;3,4 X")}, {M("0,1;2,3 X"), M("5,6 X")}};
  const MentionSets pred = {{M("0,1;3,4 X")}, {M("0,1;4,5 X")}};
  const auto rows = EvalByCategory(gold, pred);
  const Prf d = EvalDiscOnly(gold, pred);
  EXPECT_DOUBLE_EQ(rows[0].prf.f1, d.f1);
  EXPECT_EQ(rows[0].prf.gold, d.gold);
}

TEST(LengthTest, PerfectAndEmpty) {
  const MentionSets gold = {{M("0,1 X"), M("0,1;3,4 X"), M("5,11 X")}};
  const LengthBreakdown perfect = RecallByLength(gold, gold);
  for (const auto &b : perfect.by_length) {
    if (b.gold > 0) EXPECT_EQ(b.recall, 1.0);
  }
  const LengthBreakdown none = RecallByLength(gold, {{}});
  for (const auto &b : none.by_interval) EXPECT_EQ(b.recall, 0.0);
  EXPECT_EQ(none.by_length[4].gold, 1);
  EXPECT_EQ(none.by_interval[0].gold, 2);
  EXPECT_EQ(none.by_interval[2].gold, 1);
}

TEST(RecountTest, RandomPairsMatchExactly) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    auto [gold, pred] = testing::RandomEvalPair(rng, 1 + rng.Index(5));
    const testing::Counts all = testing::RecountStrict(gold, pred, false);
    const Prf p = StrictPrf(gold, pred);
    EXPECT_EQ(p.correct, all.correct);
    EXPECT_EQ(p.predicted, all.predicted);
    EXPECT_EQ(p.gold, all.gold);

    const testing::Counts disc = testing::RecountStrict(gold, pred, true);
    const Prf d = EvalDiscOnly(gold, pred);
    EXPECT_EQ(d.correct, disc.correct);
    EXPECT_EQ(d.predicted, disc.predicted);
    EXPECT_EQ(d.gold, disc.gold);

    const auto cats = testing::RecountByCategory(gold, pred);
    const auto rows = EvalByCategory(gold, pred);
    for (int c = 0; c < 4; ++c) {
      EXPECT_EQ(rows[c].prf.gold, cats[c].gold);
      EXPECT_EQ(rows[c].prf.predicted, cats[c].predicted);
      const double r = cats[c].gold ? double(cats[c].found) / cats[c].gold : 0;
      EXPECT_DOUBLE_EQ(rows[c].prf.recall, r);
    }

    const auto lens = testing::RecountByLength(gold, pred);
    const LengthBreakdown b = RecallByLength(gold, pred);
    for (int k = 0; k < 5; ++k) {
      EXPECT_EQ(b.by_length[k].gold, lens[k].first);
      EXPECT_EQ(b.by_length[k].found, lens[k].second);
      EXPECT_EQ(b.by_interval[k].gold, lens[5 + k].first);
      EXPECT_EQ(b.by_interval[k].found, lens[5 + k].second);
    }
  }
}

TEST(ReportTest, JsonKeysAndCorpusAlignment) {
  Corpus gold{{testing::MusclePain()}, ""};
  const EvalReport r = Evaluate(gold, gold);
  const auto j = nlohmann::json::parse(FormatReportJson(r));
  for (const char *k :
       {"overall", "disc_sentences", "disc_only", "by_category", "by_length"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_FALSE(FormatReportText(r).empty());
  Corpus other{{testing::MakeSentence("x y z w", "")}, ""};
  EXPECT_THROW(Evaluate(gold, other), Error);
}

}  // namespace
}  // namespace dner
