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

#include "dner/neural/scorer.h"

#include <cmath>
#include <cstdlib>
#include <set>

#include "dner/error.h"
#include "dner/rng.h"
#include "dner/text.h"

namespace dner {

void ScorerConfig::Validate() const {
  auto positive = [](int v, const char *name) {
    if (v <= 0) throw Error(std::string(name) + " must be positive");
  };
  positive(word_dim, "word_dim");
  positive(char_dim, "char_dim");
  positive(char_cnn_window, "char_cnn_window");
  positive(char_filters, "char_filters");
  positive(hidden_dim, "hidden_dim");
  positive(stack_dim, "stack_dim");
  positive(action_dim, "action_dim");
  positive(budget_multiplier, "budget_multiplier");
  if (char_cnn_window % 2 == 0) throw Error("char_cnn_window must be odd");
  if (external_vec_dim < 0) throw Error("external_vec_dim must be >= 0");
  if (epochs < 0) throw Error("epochs must be >= 0");
  if (!(learning_rate > 0)) throw Error("learning_rate must be positive");
  if (clip_norm < 0) throw Error("clip_norm must be >= 0");
}

// ---------------------------------------------------------------------------
// Vocabulary.

Vocab::Vocab() : Vocab(std::vector<std::string>{}) {}

Vocab::Vocab(const std::vector<std::string> &words) {
  words_.emplace_back(kUnkToken);
  index_.emplace(std::string(kUnkToken), kUnk);
  for (const std::string &w : words) {
    if (index_.count(w)) continue;
    index_.emplace(w, static_cast<int>(words_.size()));
    words_.push_back(w);
  }
}

Vocab Vocab::Build(const Corpus &corpus) {
  std::vector<std::string> words;
  for (const Sentence &s : corpus.sentences) {
    words.insert(words.end(), s.tokens.begin(), s.tokens.end());
  }
  return Vocab(words);
}

int Vocab::Index(const std::string &word) const {
  auto it = index_.find(word);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<std::string> CollectTypes(const Corpus &corpus) {
  std::set<std::string> types;
  for (const Sentence &s : corpus.sentences) {
    for (const Mention &m : s.mentions) types.insert(m.type);
  }
  return {types.begin(), types.end()};
}

// ---------------------------------------------------------------------------
// Parameters.

namespace {

constexpr int kCharVocab = 256;

struct Shape {
  const char *name;
  int rows;
  int cols;
};

std::vector<Shape> Shapes(const ScorerConfig &c, int vocab_size,
                          int num_actions) {
  const int t = c.word_dim + c.char_filters;
  const int h = c.hidden_dim, s = c.stack_dim, r = c.rep_dim();
  const int a = c.action_dim;
  std::vector<Shape> shapes = {
      {"word_emb", c.word_dim, vocab_size},
      {"char_emb", c.char_dim, kCharVocab},
      {"cnn_w", c.char_filters, c.char_cnn_window * c.char_dim},
      {"cnn_b", c.char_filters, 1},
      {"fwd_wx", 4 * h, t},
      {"fwd_wh", 4 * h, h},
      {"fwd_b", 4 * h, 1},
      {"bwd_wx", 4 * h, t},
      {"bwd_wh", 4 * h, h},
      {"bwd_b", 4 * h, 1},
      {"stack_wx", 4 * s, r},
      {"stack_wh", 4 * s, s},
      {"stack_b", 4 * s, 1},
      {"compose_w", r, 2 * s},
      {"compose_b", r, 1},
      {"att_w0", s, r},
      {"att_w1", s, r},
      {"att_w2", s, r},
      {"act_emb", a, num_actions},
      {"act_wx", 4 * a, a},
      {"act_wh", 4 * a, a},
      {"act_b", 4 * a, 1},
      {"out_w", num_actions, c.feature_dim()},
      {"out_b", num_actions, 1},
      {"s_empty", s, 1},
      {"a_empty", a, 1},
  };
  if (c.buffer_front) shapes.push_back({"b_empty", r, 1});
  return shapes;
}

}  // namespace

ParamIds BindParams(const ScorerConfig &config, const Params &params,
                    int vocab_size, int num_actions) {
  std::vector<ParamId> found;
  for (const Shape &s : Shapes(config, vocab_size, num_actions)) {
    const ParamId id = params.Find(s.name);
    if (id < 0) throw Error(std::string("missing parameter ") + s.name);
    if (params[id].rows() != s.rows || params[id].cols() != s.cols) {
      throw Error(std::string("parameter ") + s.name + " has shape " +
                  std::to_string(params[id].rows()) + "x" +
                  std::to_string(params[id].cols()) + ", expected " +
                  std::to_string(s.rows) + "x" + std::to_string(s.cols));
    }
    found.push_back(id);
  }
  ParamIds ids;
  int k = 0;
  for (ParamId *slot :
       {&ids.word_emb, &ids.char_emb, &ids.cnn_w, &ids.cnn_b, &ids.fwd_wx,
        &ids.fwd_wh, &ids.fwd_b, &ids.bwd_wx, &ids.bwd_wh, &ids.bwd_b,
        &ids.stack_wx, &ids.stack_wh, &ids.stack_b, &ids.compose_w,
        &ids.compose_b, &ids.att_w[0], &ids.att_w[1], &ids.att_w[2],
        &ids.act_emb, &ids.act_wx, &ids.act_wh, &ids.act_b, &ids.out_w,
        &ids.out_b, &ids.s_empty, &ids.a_empty}) {
    *slot = found[k++];
  }
  if (config.buffer_front) ids.b_empty = found[k++];
  return ids;
}

Model InitModel(const ScorerConfig &config, Vocab vocab,
                std::vector<std::string> types, uint64_t seed) {
  config.Validate();
  if (vocab.size() == 0) throw Error("empty vocabulary");
  Model m;
  m.config = config;
  m.vocab = std::move(vocab);
  m.types = std::move(types);
  const int num_actions = m.inventory().size();
  Rng rng(seed);
  for (const Shape &s : Shapes(config, m.vocab.size(), num_actions)) {
    const ParamId id = m.params.Add(s.name, s.rows, s.cols);
    const double r = std::sqrt(6.0 / (s.rows + s.cols));
    Mat &t = m.params[id];
    for (int j = 0; j < t.cols(); ++j) {
      for (int i = 0; i < t.rows(); ++i) t(i, j) = rng.Uniform(-r, r);
    }
  }
  m.ids = BindParams(config, m.params, m.vocab.size(), num_actions);
  return m;
}

// ---------------------------------------------------------------------------
// External vectors.

ExternalVectors ParseExternalVectors(std::string_view text) {
  ExternalVectors out;
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  auto flush = [&] {
    if (rows.empty()) return;
    Mat m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    out.push_back(std::move(m));
    rows.clear();
  };
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    line = Trim(line);
    if (line.empty()) {
      flush();
      continue;
    }
    std::vector<double> row;
    for (std::string_view item : SplitView(line, ' ')) {
      if (item.empty()) continue;
      const std::string s(item);
      char *end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw ParseError("bad number '" + s + "'", line_no);
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows[0].size()) {
      throw ParseError("vector dimension changes within a sentence", line_no);
    }
    rows.push_back(std::move(row));
  }
  flush();
  return out;
}

void CheckExternalVectors(const ExternalVectors &vectors, const Corpus &corpus,
                          int dim) {
  // Empty sentences have no block in the file.
  size_t k = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const int n = corpus.sentences[i].size();
    if (n == 0) continue;
    if (k >= vectors.size()) {
      throw Error("external vectors end before sentence " +
                  std::to_string(i + 1));
    }
    if (vectors[k].rows() != n || vectors[k].cols() != dim) {
      throw Error("external vectors for sentence " + std::to_string(i + 1) +
                  " are " + std::to_string(vectors[k].rows()) + "x" +
                  std::to_string(vectors[k].cols()) + ", expected " +
                  std::to_string(n) + "x" + std::to_string(dim));
    }
    ++k;
  }
  if (k != vectors.size()) throw Error("more external vector blocks than sentences");
}

// ---------------------------------------------------------------------------
// Network.

Network::Network(const Model &model, Tape &tape) : model_(&model), tape_(&tape) {}

NodeId Network::TokenInput(const std::string &token) {
  const ScorerConfig &c = model_->config;
  const ParamIds &p = model_->ids;
  const int pad = c.char_cnn_window / 2;
  const NodeId zero = tape_->Input(Vec::Zero(c.char_dim));
  std::vector<NodeId> chars;
  for (int i = 0; i < pad; ++i) chars.push_back(zero);
  for (unsigned char ch : token) chars.push_back(tape_->Lookup(p.char_emb, ch));
  if (token.empty()) chars.push_back(zero);
  for (int i = 0; i < pad; ++i) chars.push_back(zero);
  std::vector<NodeId> conv;
  for (size_t start = 0; start + c.char_cnn_window <= chars.size(); ++start) {
    std::vector<NodeId> window(chars.begin() + start,
                               chars.begin() + start + c.char_cnn_window);
    conv.push_back(tape_->Affine(p.cnn_w, tape_->Concat(window), p.cnn_b));
  }
  const NodeId word = tape_->Lookup(p.word_emb, model_->vocab.Index(token));
  return tape_->Concat({word, tape_->MaxPool(conv)});
}

std::vector<NodeId> Network::TokenReps(const Sentence &sentence,
                                       const Mat *external) {
  const ScorerConfig &c = model_->config;
  const ParamIds &p = model_->ids;
  const int n = sentence.size();
  if (c.external_vec_dim > 0) {
    if (external == nullptr && n > 0) throw Error("external vectors required");
    if (n > 0 && (external->rows() != n || external->cols() != c.external_vec_dim)) {
      throw Error("external vectors have shape " +
                  std::to_string(external->rows()) + "x" +
                  std::to_string(external->cols()) + ", expected " +
                  std::to_string(n) + "x" + std::to_string(c.external_vec_dim));
    }
  }
  std::vector<NodeId> t(n);
  for (int i = 0; i < n; ++i) t[i] = TokenInput(sentence.tokens[i]);
  const int h = c.hidden_dim;
  std::vector<NodeId> fwd(n), bwd(n);
  NodeId state = ZeroState(h);
  for (int i = 0; i < n; ++i) {
    state = tape_->LstmStep(p.fwd_wx, p.fwd_wh, p.fwd_b, t[i], state);
    fwd[i] = Hidden(state, h);
  }
  state = ZeroState(h);
  for (int i = n - 1; i >= 0; --i) {
    state = tape_->LstmStep(p.bwd_wx, p.bwd_wh, p.bwd_b, t[i], state);
    bwd[i] = Hidden(state, h);
  }
  std::vector<NodeId> reps(n);
  for (int i = 0; i < n; ++i) {
    std::vector<NodeId> parts = {fwd[i], bwd[i]};
    if (c.external_vec_dim > 0) {
      parts.push_back(tape_->Input(external->row(i).transpose()));
    }
    reps[i] = tape_->Concat(parts);
  }
  return reps;
}

NodeId Network::Compose(NodeId s0, NodeId s1) {
  const ParamIds &p = model_->ids;
  return tape_->Affine(p.compose_w, tape_->Concat({s0, s1}), p.compose_b);
}

NodeId Network::Attend(NodeId s, const std::vector<NodeId> &buffer, int which) {
  return tape_->Attention(s, model_->ids.att_w[which], buffer);
}

NodeId Network::Logits(NodeId feature) {
  const ParamIds &p = model_->ids;
  return tape_->Affine(p.out_w, feature, p.out_b);
}

// ---------------------------------------------------------------------------
// Stack-LSTM.

StackLstm::StackLstm(Network &net, ParamId wx, ParamId wh, ParamId b,
                     int hidden)
    : net_(&net), wx_(wx), wh_(wh), b_(b), hidden_dim_(hidden) {
  states_.push_back(net.ZeroState(hidden));
}

void StackLstm::Push(NodeId input) {
  const NodeId state =
      net_->tape().LstmStep(wx_, wh_, b_, input, states_.back());
  states_.push_back(state);
  hidden_.push_back(net_->Hidden(state, hidden_dim_));
  inputs_.push_back(input);
}

void StackLstm::Pop() {
  if (inputs_.empty()) throw Error("pop on an empty stack");
  states_.pop_back();
  hidden_.pop_back();
  inputs_.pop_back();
}

// ---------------------------------------------------------------------------
// Episode.

Episode::Episode(Network &net, const Sentence &sentence, const Mat *external)
    : net_(&net),
      n_(sentence.size()),
      budget_(net.model().config.Budget(sentence.size())),
      inventory_(net.model().types),
      reps_(net.TokenReps(sentence, external)),
      state_(InitialState(sentence.size())),
      stack_(net, net.model().ids.stack_wx, net.model().ids.stack_wh,
             net.model().ids.stack_b, net.model().config.stack_dim) {}

std::vector<bool> Episode::ValidMask() const {
  return dner::ValidMask(state_, n_, inventory_, budget_);
}

NodeId Episode::Feature() {
  const ScorerConfig &c = net_->model().config;
  const ParamIds &p = net_->model().ids;
  Tape &tape = net_->tape();
  std::vector<NodeId> buffer(reps_.begin() + state_.buffer_pos, reps_.end());
  std::vector<NodeId> parts;
  std::vector<NodeId> attended;
  NodeId zero_rep = -1;
  for (int k = 0; k < 3; ++k) {
    const bool present = stack_.depth() > k;
    const NodeId s = present ? stack_.HiddenAt(k) : tape.Param(p.s_empty);
    parts.push_back(s);
    if (c.attention && present) {
      attended.push_back(net_->Attend(s, buffer, k));
    } else {
      if (zero_rep < 0) zero_rep = tape.Input(Vec::Zero(c.rep_dim()));
      attended.push_back(zero_rep);
    }
  }
  parts.insert(parts.end(), attended.begin(), attended.end());
  parts.push_back(action_state_ >= 0 ? net_->Hidden(action_state_, c.action_dim)
                                     : tape.Param(p.a_empty));
  if (c.buffer_front) {
    parts.push_back(state_.buffer_pos < n_ ? reps_[state_.buffer_pos]
                                           : tape.Param(p.b_empty));
  }
  return tape.Concat(parts);
}

void Episode::Step(const Action &action) {
  const ParamIds &p = net_->model().ids;
  const int index = inventory_.Index(action);
  ParserState next = Apply(state_, action, n_, budget_);
  switch (action.kind) {
    case ActionKind::kShift:
      stack_.Push(reps_[state_.buffer_pos]);
      break;
    case ActionKind::kOut:
      break;
    case ActionKind::kComplete:
      stack_.Pop();
      break;
    case ActionKind::kReduce: {
      const NodeId span = net_->Compose(stack_.HiddenAt(0), stack_.HiddenAt(1));
      stack_.Pop();
      stack_.Pop();
      stack_.Push(span);
      break;
    }
    case ActionKind::kLeftReduce: {
      const NodeId span = net_->Compose(stack_.HiddenAt(0), stack_.HiddenAt(1));
      stack_.Pop();
      stack_.Push(span);
      break;
    }
    case ActionKind::kRightReduce: {
      const NodeId span = net_->Compose(stack_.HiddenAt(0), stack_.HiddenAt(1));
      const NodeId kept = stack_.InputAt(0);
      stack_.Pop();
      stack_.Pop();
      stack_.Push(kept);
      stack_.Push(span);
      break;
    }
  }
  state_ = std::move(next);
  Tape &tape = net_->tape();
  const NodeId prev = action_state_ >= 0
                          ? action_state_
                          : net_->ZeroState(net_->model().config.action_dim);
  action_state_ = tape.LstmStep(p.act_wx, p.act_wh, p.act_b,
                                tape.Lookup(p.act_emb, index), prev);
}

// ---------------------------------------------------------------------------
// Loss and prediction.

LossResult SentenceLoss(const Model &model, const Sentence &sentence,
                        const std::vector<Action> &gold_actions,
                        const Mat *external) {
  LossResult r{Tape(model.params), -1, 0, 0};
  Network net(model, r.tape);
  Episode ep(net, sentence, external);
  const ActionInventory inventory = model.inventory();
  std::vector<NodeId> terms;
  for (size_t k = 0; k < gold_actions.size(); ++k) {
    const Action &a = gold_actions[k];
    const std::vector<bool> mask = ep.ValidMask();
    const int index = inventory.Index(a);
    if (!mask[index]) {
      throw Error("gold action " + a.ToString() + " is invalid at step " +
                  std::to_string(k));
    }
    const NodeId logits = net.Logits(ep.Feature());
    terms.push_back(r.tape.MaskedNll(logits, mask, index));
    ep.Step(a);
  }
  if (!ep.terminal()) throw Error("gold actions end in a non-terminal state");
  r.root = r.tape.Sum(terms);
  r.loss = r.tape.scalar(r.root);
  r.steps = static_cast<int>(gold_actions.size());
  return r;
}

std::vector<Action> PredictActions(const Model &model, const Sentence &sentence,
                                   const Mat *external) {
  Tape tape(model.params);
  Network net(model, tape);
  Episode ep(net, sentence, external);
  const ActionInventory inventory = model.inventory();
  std::vector<Action> actions;
  while (!ep.terminal()) {
    const std::vector<bool> mask = ep.ValidMask();
    const Vec &logits = tape.value(net.Logits(ep.Feature()));
    int best = -1;
    for (int k = 0; k < static_cast<int>(mask.size()); ++k) {
      if (mask[k] && (best < 0 || logits(k) > logits(best))) best = k;
    }
    if (best < 0) throw Error("no valid action in a non-terminal state");
    const Action a = inventory.At(best);
    actions.push_back(a);
    ep.Step(a);
  }
  return actions;
}

std::vector<Mention> Predict(const Model &model, const Sentence &sentence,
                             const Mat *external) {
  return Decode(PredictActions(model, sentence, external), sentence.size(),
                model.config.Budget(sentence.size()));
}

Corpus PredictCorpus(const Model &model, const Corpus &corpus,
                     const ExternalVectors *external) {
  Corpus out;
  out.split_name = corpus.split_name;
  size_t k = 0;
  for (const Sentence &s : corpus.sentences) {
    const Mat *ext = nullptr;
    if (external != nullptr && s.size() > 0) ext = &(*external)[k++];
    Sentence p = s;
    p.mentions = Predict(model, s, ext);
    out.sentences.push_back(std::move(p));
  }
  return out;
}

}  // namespace dner
