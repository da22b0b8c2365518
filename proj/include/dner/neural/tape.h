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

// Reverse-mode differentiation over double vectors. Nodes are appended in
// evaluation order, so the node list is already topologically sorted and
// Backward walks it once from the end.

#ifndef DNER_NEURAL_TAPE_H_
#define DNER_NEURAL_TAPE_H_

#include <vector>

#include "dner/neural/params.h"

namespace dner {

using NodeId = int;

class Tape {
 public:
  explicit Tape(const Params &params) : params_(&params) {}

  const Params &params() const { return *params_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  const Vec &value(NodeId id) const { return nodes_[id].value; }
  double scalar(NodeId id) const { return nodes_[id].value(0); }
  int dim(NodeId id) const { return static_cast<int>(nodes_[id].value.size()); }

  // Constant; receives no gradient.
  NodeId Input(Vec value);
  // A one-column parameter used as a vector.
  NodeId Param(ParamId p);
  // Column col of a parameter matrix.
  NodeId Lookup(ParamId table, int col);
  // W x (+ b when b >= 0).
  NodeId Affine(ParamId w, NodeId x, ParamId b = -1);

  NodeId Add(NodeId a, NodeId b);
  NodeId Mul(NodeId a, NodeId b);
  NodeId Tanh(NodeId x);
  NodeId Sigmoid(NodeId x);
  NodeId Concat(const std::vector<NodeId> &parts);
  NodeId Slice(NodeId x, int offset, int length);
  // Elementwise maximum over equally sized inputs.
  NodeId MaxPool(const std::vector<NodeId> &xs);

  // One LSTM step. state holds [h; c]; the result is [h'; c']. Gate order in
  // the stacked weights is input, forget, output, candidate.
  NodeId LstmStep(ParamId wx, ParamId wh, ParamId b, NodeId x, NodeId state);

  // u = W^T s, weights = softmax_j(u . rows_j), result = sum_j weights_j
  // rows_j. An empty row list gives a zero vector of length W.cols().
  NodeId Attention(NodeId s, ParamId w, const std::vector<NodeId> &rows);
  // Attention weights of an Attention node.
  const Vec &attention_weights(NodeId id) const { return nodes_[id].aux; }

  // -log softmax(logits)[gold] with the softmax restricted to valid entries.
  NodeId MaskedNll(NodeId logits, const std::vector<bool> &valid, int gold);

  // Sum of scalar nodes; an empty list gives 0.
  NodeId Sum(const std::vector<NodeId> &scalars);

  // Gradients of the scalar node root with respect to every parameter.
  Gradients Backward(NodeId root) const;

 private:
  enum class Op {
    kInput,
    kParam,
    kLookup,
    kAffine,
    kAdd,
    kMul,
    kTanh,
    kSigmoid,
    kConcat,
    kSlice,
    kMaxPool,
    kLstm,
    kAttention,
    kMaskedNll,
    kSum,
  };

  struct Node {
    Op op = Op::kInput;
    std::vector<NodeId> in;
    ParamId p0 = -1, p1 = -1, p2 = -1;
    int k0 = 0, k1 = 0;
    Vec value;
    Vec aux;
    std::vector<int> idx;
  };

  NodeId Push(Node node);

  const Params *params_;
  std::vector<Node> nodes_;
};

// Masked softmax over logits; invalid entries get probability exactly 0.
Vec MaskedSoftmax(const Vec &logits, const std::vector<bool> &valid);

}  // namespace dner

#endif  // DNER_NEURAL_TAPE_H_
