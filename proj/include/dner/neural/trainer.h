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

#ifndef DNER_NEURAL_TRAINER_H_
#define DNER_NEURAL_TRAINER_H_

#include <functional>
#include <vector>

#include "dner/corpus.h"
#include "dner/neural/scorer.h"

namespace dner {

// Oracle action sequences for a training corpus.
struct TrainingData {
  std::vector<const Sentence *> sentences;
  std::vector<const Mat *> external;  // null when unused
  std::vector<std::vector<Action>> actions;
  int uncovered_mentions = 0;  // gold mentions the oracle cannot derive
  int nested_sentences = 0;    // skipped
};

TrainingData PrepareTraining(const Corpus &corpus,
                             const ExternalVectors *external = nullptr);

struct EpochLog {
  int epoch = 0;  // 1-based
  double loss = 0;
  bool has_dev = false;
  double dev_f1 = 0;
};

struct TrainResult {
  Model best;  // highest dev F1 (earliest on ties); the last model without dev
  Model last;
  int best_epoch = 0;
  std::vector<EpochLog> log;
  int uncovered_mentions = 0;
  int nested_sentences = 0;
};

struct TrainInputs {
  const Corpus *train = nullptr;
  const Corpus *dev = nullptr;  // optional
  const ExternalVectors *train_external = nullptr;
  const ExternalVectors *dev_external = nullptr;
  // Called after every epoch with the current model.
  std::function<void(const EpochLog &, const Model &)> on_epoch;
};

// Shuffled teacher-forced SGD, one update per sentence. The vocabulary and
// label set come from the training corpus. Throws Error on an empty corpus
// or a non-finite gradient.
TrainResult Train(const TrainInputs &inputs, const ScorerConfig &config);

// One update on a single sentence; returns the loss before the update.
double TrainStep(Model &model, const Sentence &sentence,
                 const std::vector<Action> &gold, const Mat *external = nullptr);

}  // namespace dner

#endif  // DNER_NEURAL_TRAINER_H_
