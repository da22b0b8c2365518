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


#include "dner/neural/trainer.h"

#include <gtest/gtest.h>

#include "dner/error.h"
#include "dner/eval.h"
#include "dner/neural/checkpoint.h"
#include "test_util.h"

namespace dner {
namespace {

ScorerConfig Tiny() {
  ScorerConfig c;
  c.word_dim = 8;
  c.char_dim = 4;
  c.char_filters = 6;
  c.hidden_dim = 8;
  c.stack_dim = 12;
  c.action_dim = 6;
  c.epochs = 3;
  return c;
}

TEST(PrepareTest, CountsUncoveredAndNested) {
  Corpus c{{testing::MusclePain(), testing::JointMuscle(),
            testing::MakeSentence("a b c", "0,2 X|0,1 X")},
           ""};
  const TrainingData d = PrepareTraining(c);
  EXPECT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(d.nested_sentences, 1);
  EXPECT_EQ(d.uncovered_mentions, 1);
}

TEST(TrainTest, EmptyCorpusIsAnError) {
  Corpus empty;
  TrainInputs in;
  in.train = &empty;
  EXPECT_THROW(Train(in, Tiny()), Error);
}

TEST(TrainTest, StepLowersLossOnRepeatedSentence) {
  const Corpus c = testing::OverfitCorpus();
  Model m = InitModel(Tiny(), Vocab::Build(c), CollectTypes(c), 1);
  const Sentence &s = c.sentences[0];
  const auto gold = Oracle(s).actions;
  const double first = TrainStep(m, s, gold);
  double last = first;
  for (int i = 0; i < 20; ++i) last = TrainStep(m, s, gold);
  EXPECT_LT(last, first);
}

TEST(TrainTest, SameSeedSameModel) {
  const Corpus c = testing::OverfitCorpus();
  TrainInputs in;
  in.train = &c;
  in.dev = &c;
  const TrainResult a = Train(in, Tiny());
  const TrainResult b = Train(in, Tiny());
  EXPECT_EQ(SerializeModel(a.best), SerializeModel(b.best));
  EXPECT_EQ(SerializeModel(a.last), SerializeModel(b.last));
  ASSERT_EQ(a.log.size(), 3u);
  for (size_t i = 0; i < a.log.size(); ++i) {
    EXPECT_EQ(a.log[i].loss, b.log[i].loss);
    EXPECT_TRUE(a.log[i].has_dev);
  }
  ScorerConfig other = Tiny();
  other.seed = 2;
  EXPECT_NE(SerializeModel(Train(in, other).last), SerializeModel(a.last));
}

TEST(TrainTest, OverfitsSmallCorpus) {
  const Corpus c = testing::OverfitCorpus();
  ScorerConfig config = Tiny();
  config.epochs = 200;
  TrainInputs in;
  in.train = &c;
  int reached = 0;
  in.on_epoch = [&](const EpochLog &log, const Model &m) {
    if (reached == 0 && Evaluate(c, PredictCorpus(m, c)).overall.f1 == 1.0) {
      reached = log.epoch;
    }
  };
  Train(in, config);
  EXPECT_GT(reached, 0);
  EXPECT_LE(reached, 200);
}

}  // namespace
}  // namespace dner
