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

// The action scorer. Tokens are encoded by word embeddings, a character CNN
// and a BiLSTM, optionally concatenated with precomputed external vectors.
// Stack spans are encoded by a Stack-LSTM, reduced spans by an affine
// composition of the top two span states, and each of the top three spans
// attends over the buffer. The parser state feature feeds a linear layer and
// a softmax restricted to the valid actions.

#ifndef DNER_NEURAL_SCORER_H_
#define DNER_NEURAL_SCORER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dner/corpus.h"
#include "dner/neural/params.h"
#include "dner/neural/tape.h"
#include "dner/transitions.h"

namespace dner {

struct ScorerConfig {
  int word_dim = 24;
  int char_dim = 8;
  int char_cnn_window = 3;
  int char_filters = 16;
  int hidden_dim = 24;  // per BiLSTM direction
  int stack_dim = 32;
  int action_dim = 16;
  bool attention = true;
  // Adds the first buffer token (or a learned empty vector) to the parser
  // state feature.
  bool buffer_front = true;
  int external_vec_dim = 0;
  double learning_rate = 0.05;
  double clip_norm = 5.0;  // global gradient norm clip, 0 = off
  int epochs = 30;
  uint64_t seed = 1;
  int budget_multiplier = 8;

  // Throws Error for non-positive sizes or an even window.
  void Validate() const;

  int rep_dim() const { return 2 * hidden_dim + external_vec_dim; }
  int feature_dim() const {
    return 3 * stack_dim + 3 * rep_dim() + action_dim +
           (buffer_front ? rep_dim() : 0);
  }
  int Budget(int sentence_len) const { return budget_multiplier * sentence_len; }
};

// Word vocabulary; index 0 is the unknown word.
class Vocab {
 public:
  static constexpr int kUnk = 0;
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocab();
  explicit Vocab(const std::vector<std::string> &words);
  // Words of the corpus in first-seen order.
  static Vocab Build(const Corpus &corpus);

  int size() const { return static_cast<int>(words_.size()); }
  int Index(const std::string &word) const;
  const std::vector<std::string> &words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

// Entity types seen in a corpus, sorted.
std::vector<std::string> CollectTypes(const Corpus &corpus);

// Parameter handles into Params.
struct ParamIds {
  ParamId word_emb, char_emb, cnn_w, cnn_b;
  ParamId fwd_wx, fwd_wh, fwd_b, bwd_wx, bwd_wh, bwd_b;
  ParamId stack_wx, stack_wh, stack_b;
  ParamId compose_w, compose_b;
  ParamId att_w[3];
  ParamId act_emb, act_wx, act_wh, act_b;
  ParamId out_w, out_b;
  ParamId s_empty, a_empty;
  ParamId b_empty = -1;  // buffer_front only
};

struct Model {
  ScorerConfig config;
  Vocab vocab;
  std::vector<std::string> types;
  Params params;
  ParamIds ids;

  ActionInventory inventory() const { return ActionInventory(types); }
};

// Uniform initialization in [-r, r], r = sqrt(6 / (fan_in + fan_out)), with
// rows as fan-out and columns as fan-in.
Model InitModel(const ScorerConfig &config, Vocab vocab,
                std::vector<std::string> types, uint64_t seed);

// Rebinds handles after params were loaded; throws Error when a tensor is
// missing or has the wrong shape.
ParamIds BindParams(const ScorerConfig &config, const Params &params,
                    int vocab_size, int num_actions);

// Per-token external vectors, one N x external_vec_dim matrix per sentence.
using ExternalVectors = std::vector<Mat>;

// One line of space separated floats per token, blank line between
// sentences.
ExternalVectors ParseExternalVectors(std::string_view text);
// Throws Error when counts or dimensions disagree with the corpus.
void CheckExternalVectors(const ExternalVectors &vectors, const Corpus &corpus,
                          int dim);

// Builds network pieces on a tape.
class Network {
 public:
  Network(const Model &model, Tape &tape);

  const Model &model() const { return *model_; }
  Tape &tape() { return *tape_; }

  // Word embedding plus max-pooled character CNN.
  NodeId TokenInput(const std::string &token);
  // Contextual token vectors c_i. external may be null; otherwise it must
  // have one row per token.
  std::vector<NodeId> TokenReps(const Sentence &sentence, const Mat *external);

  NodeId Compose(NodeId s0, NodeId s1);
  // which selects the attention matrix of stack position 0, 1 or 2.
  NodeId Attend(NodeId s, const std::vector<NodeId> &buffer, int which);
  NodeId Logits(NodeId feature);

  NodeId ZeroState(int hidden) { return tape_->Input(Vec::Zero(2 * hidden)); }
  NodeId Hidden(NodeId state, int hidden) {
    return tape_->Slice(state, 0, hidden);
  }

 private:
  const Model *model_;
  Tape *tape_;
};

// LSTM over a stack of inputs. Pop restores the previous state exactly.
class StackLstm {
 public:
  StackLstm(Network &net, ParamId wx, ParamId wh, ParamId b, int hidden);

  void Push(NodeId input);
  void Pop();
  int depth() const { return static_cast<int>(inputs_.size()); }

  // Hidden state after pushing element k counted from the top (0 = top).
  NodeId HiddenAt(int k) const { return hidden_[hidden_.size() - 1 - k]; }
  NodeId InputAt(int k) const { return inputs_[inputs_.size() - 1 - k]; }
  NodeId StateAt(int k) const { return states_[states_.size() - 1 - k]; }
  // [h; c] node at the top, the zero state when empty.
  NodeId top_state() const { return states_.back(); }

 private:
  Network *net_;
  ParamId wx_, wh_, b_;
  int hidden_dim_;
  std::vector<NodeId> states_;  // states_[0] is the empty-stack state
  std::vector<NodeId> hidden_;
  std::vector<NodeId> inputs_;
};

// A parser rollout over one sentence with the network state that mirrors
// the transition state.
class Episode {
 public:
  Episode(Network &net, const Sentence &sentence, const Mat *external);

  const ParserState &state() const { return state_; }
  int sentence_len() const { return n_; }
  int budget() const { return budget_; }
  bool terminal() const { return IsTerminal(state_, n_); }
  std::vector<bool> ValidMask() const;
  const std::vector<NodeId> &token_reps() const { return reps_; }
  const StackLstm &stack() const { return stack_; }

  // [s0, s1, s2, att0, att1, att2, a, (b0)].
  NodeId Feature();
  void Step(const Action &action);

 private:
  Network *net_;
  int n_;
  int budget_;
  ActionInventory inventory_;
  std::vector<NodeId> reps_;
  ParserState state_;
  StackLstm stack_;
  NodeId action_state_ = -1;  // -1 until the first action
};

struct LossResult {
  Tape tape;
  NodeId root = -1;
  double loss = 0;
  int steps = 0;
};

// Teacher-forced negative log likelihood of gold_actions. Throws Error when
// a gold action is invalid at its step or the sequence does not end in a
// terminal state.
LossResult SentenceLoss(const Model &model, const Sentence &sentence,
                        const std::vector<Action> &gold_actions,
                        const Mat *external = nullptr);

// Greedy rollout: the most probable valid action at every step, ties broken
// by the smallest inventory index.
std::vector<Action> PredictActions(const Model &model, const Sentence &sentence,
                                   const Mat *external = nullptr);
std::vector<Mention> Predict(const Model &model, const Sentence &sentence,
                             const Mat *external = nullptr);
Corpus PredictCorpus(const Model &model, const Corpus &corpus,
                     const ExternalVectors *external = nullptr);

}  // namespace dner

#endif  // DNER_NEURAL_SCORER_H_
