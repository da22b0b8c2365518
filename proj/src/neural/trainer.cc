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

#include <numeric>

#include "dner/error.h"
#include "dner/eval.h"
#include "dner/rng.h"

namespace dner {

TrainingData PrepareTraining(const Corpus &corpus,
                             const ExternalVectors *external) {
  TrainingData data;
  size_t k = 0;
  for (const Sentence &s : corpus.sentences) {
    const Mat *ext = nullptr;
    if (external != nullptr && s.size() > 0) ext = &(*external)[k++];
    OracleResult oracle;
    try {
      oracle = Oracle(s);
    } catch (const Error &) {
      ++data.nested_sentences;
      continue;
    }
    data.uncovered_mentions += static_cast<int>(oracle.uncovered.size());
    data.sentences.push_back(&s);
    data.external.push_back(ext);
    data.actions.push_back(std::move(oracle.actions));
  }
  return data;
}

double TrainStep(Model &model, const Sentence &sentence,
                 const std::vector<Action> &gold, const Mat *external) {
  LossResult r = SentenceLoss(model, sentence, gold, external);
  Gradients g = r.tape.Backward(r.root);
  if (!g.AllFinite()) {
    throw Error("non-finite gradient on sentence \"" +
                [&] {
                  std::string t;
                  for (const std::string &w : sentence.tokens) t += w + " ";
                  return t;
                }() +
                "\" (loss " + std::to_string(r.loss) + ")");
  }
  const double clip = model.config.clip_norm;
  if (clip > 0) {
    const double norm = g.Norm();
    if (norm > clip) g.Scale(clip / norm);
  }
  SgdStep(model.params, g, model.config.learning_rate);
  return r.loss;
}

TrainResult Train(const TrainInputs &in, const ScorerConfig &config) {
  if (in.train == nullptr || in.train->empty()) {
    throw Error("empty training corpus");
  }
  config.Validate();
  if (config.external_vec_dim > 0) {
    if (in.train_external == nullptr) throw Error("training external vectors required");
    CheckExternalVectors(*in.train_external, *in.train, config.external_vec_dim);
    if (in.dev != nullptr) {
      if (in.dev_external == nullptr) throw Error("dev external vectors required");
      CheckExternalVectors(*in.dev_external, *in.dev, config.external_vec_dim);
    }
  }
  const TrainingData data = PrepareTraining(
      *in.train, config.external_vec_dim > 0 ? in.train_external : nullptr);
  if (data.sentences.empty()) throw Error("no usable training sentence");

  Rng rng(config.seed);
  TrainResult result;
  result.uncovered_mentions = data.uncovered_mentions;
  result.nested_sentences = data.nested_sentences;
  Model model = InitModel(config, Vocab::Build(*in.train),
                          CollectTypes(*in.train), rng.Next());
  result.best = model;
  double best_f1 = -1;

  std::vector<size_t> order(data.sentences.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss = 0;
    for (size_t i : order) {
      loss += TrainStep(model, *data.sentences[i], data.actions[i],
                        data.external[i]);
    }
    EpochLog log;
    log.epoch = epoch;
    log.loss = loss;
    if (in.dev != nullptr) {
      const ExternalVectors *ext =
          config.external_vec_dim > 0 ? in.dev_external : nullptr;
      const Corpus pred = PredictCorpus(model, *in.dev, ext);
      log.has_dev = true;
      log.dev_f1 = StrictPrf(GoldSets(*in.dev), GoldSets(pred)).f1;
      if (log.dev_f1 > best_f1) {
        best_f1 = log.dev_f1;
        result.best = model;
        result.best_epoch = epoch;
      }
    }
    result.log.push_back(log);
    if (in.on_epoch) in.on_epoch(log, model);
  }
  if (in.dev == nullptr) {
    result.best = model;
    result.best_epoch = config.epochs;
  }
  result.last = std::move(model);
  return result;
}

}  // namespace dner
