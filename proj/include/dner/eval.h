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

// Strict-match micro scoring and breakdowns by overlap category, mention
// length and interval length.

#ifndef DNER_EVAL_H_
#define DNER_EVAL_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dner/corpus.h"

namespace dner {

// Mentions of each sentence. Duplicates inside one sentence are ignored.
using MentionSets = std::vector<std::vector<Mention>>;

struct Prf {
  int64_t correct = 0;
  int64_t predicted = 0;
  int64_t gold = 0;
  double precision = 0;  // 0 when nothing is predicted
  double recall = 0;     // 0 when there is no gold mention
  double f1 = 0;

  static Prf FromCounts(int64_t correct, int64_t predicted, int64_t gold);
};

MentionSets GoldSets(const Corpus &corpus);

// A predicted mention is correct when the same sentence has a gold mention
// with the same type and fragments. Throws Error when the sentence counts
// differ.
Prf StrictPrf(const MentionSets &gold, const MentionSets &pred);

struct SubsetPrf {
  bool empty = true;  // no sentence qualified
  int64_t sentences = 0;
  Prf prf;
};

// Restricted to sentences whose gold set has a discontinuous mention.
SubsetPrf EvalDiscSentences(const MentionSets &gold, const MentionSets &pred);

struct DiscOnlyOptions {
  // When set, continuous predictions stay in the precision denominator.
  bool count_continuous_predictions = false;
};

// Gold and (by default) predicted sets filtered to discontinuous mentions.
Prf EvalDiscOnly(const MentionSets &gold, const MentionSets &pred,
                 const DiscOnlyOptions &options = {});

struct CategoryRow {
  OverlapCategory category = OverlapCategory::kNoOverlap;
  Prf prf;  // prf.gold is the bucket's gold count
};

// Gold discontinuous mentions are bucketed by their category among the gold
// mentions; predicted discontinuous mentions by their category among the
// predicted mentions. Recall counts found gold mentions of the bucket,
// precision counts correct predicted mentions of the bucket.
std::array<CategoryRow, kNumOverlapCategories> EvalByCategory(
    const MentionSets &gold, const MentionSets &pred);

struct RecallBucket {
  std::string label;
  int64_t gold = 0;
  int64_t found = 0;
  double recall = 0;
};

struct LengthBreakdown {
  std::vector<RecallBucket> by_length;    // 1, 2, 3, 4, 5+
  std::vector<RecallBucket> by_interval;  // 0, 1, 2, 3, 4+
};

LengthBreakdown RecallByLength(const MentionSets &gold,
                               const MentionSets &pred);

struct EvalReport {
  Prf overall;
  SubsetPrf disc_sentences;
  Prf disc_only;
  std::array<CategoryRow, kNumOverlapCategories> by_category;
  LengthBreakdown by_length;
};

EvalReport Evaluate(const MentionSets &gold, const MentionSets &pred,
                    const DiscOnlyOptions &options = {});
// Sentences are aligned by position; tokens must agree.
EvalReport Evaluate(const Corpus &gold, const Corpus &pred,
                    const DiscOnlyOptions &options = {});

std::string FormatReportText(const EvalReport &report);
// Keys: overall, disc_sentences, disc_only, by_category, by_length.
std::string FormatReportJson(const EvalReport &report);

}  // namespace dner

#endif  // DNER_EVAL_H_
