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

#include "dner/neural/tape.h"

#include <cmath>
#include <limits>

#include "dner/error.h"

namespace dner {

namespace {

Vec SigmoidOf(const Vec &x) {
  return x.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

}  // namespace

Vec MaskedSoftmax(const Vec &logits, const std::vector<bool> &valid) {
  double top = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < logits.size(); ++k) {
    if (valid[k]) top = std::max(top, logits(k));
  }
  Vec p = Vec::Zero(logits.size());
  double z = 0;
  for (int k = 0; k < logits.size(); ++k) {
    if (valid[k]) {
      p(k) = std::exp(logits(k) - top);
      z += p(k);
    }
  }
  if (z > 0) p /= z;
  return p;
}

NodeId Tape::Push(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId Tape::Input(Vec value) {
  Node n;
  n.op = Op::kInput;
  n.value = std::move(value);
  return Push(std::move(n));
}

NodeId Tape::Param(ParamId p) {
  Node n;
  n.op = Op::kParam;
  n.p0 = p;
  n.value = (*params_)[p].col(0);
  return Push(std::move(n));
}

NodeId Tape::Lookup(ParamId table, int col) {
  Node n;
  n.op = Op::kLookup;
  n.p0 = table;
  n.k0 = col;
  n.value = (*params_)[table].col(col);
  return Push(std::move(n));
}

NodeId Tape::Affine(ParamId w, NodeId x, ParamId b) {
  Node n;
  n.op = Op::kAffine;
  n.in = {x};
  n.p0 = w;
  n.p1 = b;
  n.value = (*params_)[w] * nodes_[x].value;
  if (b >= 0) n.value += (*params_)[b].col(0);
  return Push(std::move(n));
}

NodeId Tape::Add(NodeId a, NodeId b) {
  Node n;
  n.op = Op::kAdd;
  n.in = {a, b};
  n.value = nodes_[a].value + nodes_[b].value;
  return Push(std::move(n));
}

NodeId Tape::Mul(NodeId a, NodeId b) {
  Node n;
  n.op = Op::kMul;
  n.in = {a, b};
  n.value = nodes_[a].value.cwiseProduct(nodes_[b].value);
  return Push(std::move(n));
}

NodeId Tape::Tanh(NodeId x) {
  Node n;
  n.op = Op::kTanh;
  n.in = {x};
  n.value = nodes_[x].value.array().tanh();
  return Push(std::move(n));
}

NodeId Tape::Sigmoid(NodeId x) {
  Node n;
  n.op = Op::kSigmoid;
  n.in = {x};
  n.value = SigmoidOf(nodes_[x].value);
  return Push(std::move(n));
}

NodeId Tape::Concat(const std::vector<NodeId> &parts) {
  Node n;
  n.op = Op::kConcat;
  n.in = parts;
  int total = 0;
  for (NodeId p : parts) total += dim(p);
  n.value.resize(total);
  int off = 0;
  for (NodeId p : parts) {
    n.value.segment(off, dim(p)) = nodes_[p].value;
    off += dim(p);
  }
  return Push(std::move(n));
}

NodeId Tape::Slice(NodeId x, int offset, int length) {
  Node n;
  n.op = Op::kSlice;
  n.in = {x};
  n.k0 = offset;
  n.k1 = length;
  n.value = nodes_[x].value.segment(offset, length);
  return Push(std::move(n));
}

NodeId Tape::MaxPool(const std::vector<NodeId> &xs) {
  if (xs.empty()) throw Error("max pool over no inputs");
  Node n;
  n.op = Op::kMaxPool;
  n.in = xs;
  const int d = dim(xs[0]);
  n.value = nodes_[xs[0]].value;
  n.idx.assign(d, 0);
  for (size_t k = 1; k < xs.size(); ++k) {
    const Vec &v = nodes_[xs[k]].value;
    for (int i = 0; i < d; ++i) {
      if (v(i) > n.value(i)) {
        n.value(i) = v(i);
        n.idx[i] = static_cast<int>(k);
      }
    }
  }
  return Push(std::move(n));
}

NodeId Tape::LstmStep(ParamId wx, ParamId wh, ParamId b, NodeId x,
                      NodeId state) {
  const Mat &Wx = (*params_)[wx];
  const Mat &Wh = (*params_)[wh];
  const int h = static_cast<int>(Wh.cols());
  const Vec &hc = nodes_[state].value;
  Node n;
  n.op = Op::kLstm;
  n.in = {x, state};
  n.p0 = wx;
  n.p1 = wh;
  n.p2 = b;
  Vec z = Wx * nodes_[x].value + Wh * hc.head(h) + (*params_)[b].col(0);
  // aux = [i; f; o; g; tanh(c')]
  n.aux.resize(5 * h);
  n.aux.head(3 * h) = SigmoidOf(z.head(3 * h));
  n.aux.segment(3 * h, h) = z.segment(3 * h, h).array().tanh();
  const auto i = n.aux.segment(0, h);
  const auto f = n.aux.segment(h, h);
  const auto o = n.aux.segment(2 * h, h);
  const auto g = n.aux.segment(3 * h, h);
  Vec c = f.cwiseProduct(hc.tail(h)) + i.cwiseProduct(g);
  n.aux.tail(h) = c.array().tanh();
  n.value.resize(2 * h);
  n.value.head(h) = o.cwiseProduct(n.aux.tail(h));
  n.value.tail(h) = c;
  return Push(std::move(n));
}

NodeId Tape::Attention(NodeId s, ParamId w, const std::vector<NodeId> &rows) {
  const Mat &W = (*params_)[w];
  Node n;
  n.op = Op::kAttention;
  n.in = {s};
  n.in.insert(n.in.end(), rows.begin(), rows.end());
  n.p0 = w;
  n.value = Vec::Zero(W.cols());
  if (rows.empty()) return Push(std::move(n));
  const Vec u = W.transpose() * nodes_[s].value;
  Vec scores(rows.size());
  for (size_t j = 0; j < rows.size(); ++j) {
    scores(j) = u.dot(nodes_[rows[j]].value);
  }
  n.aux = MaskedSoftmax(scores, std::vector<bool>(rows.size(), true));
  for (size_t j = 0; j < rows.size(); ++j) {
    n.value += n.aux(j) * nodes_[rows[j]].value;
  }
  return Push(std::move(n));
}

NodeId Tape::MaskedNll(NodeId logits, const std::vector<bool> &valid,
                       int gold) {
  const Vec &z = nodes_[logits].value;
  if (static_cast<int>(valid.size()) != z.size() || gold < 0 ||
      gold >= z.size() || !valid[gold]) {
    throw Error("gold action is not valid");
  }
  Node n;
  n.op = Op::kMaskedNll;
  n.in = {logits};
  n.k0 = gold;
  n.aux = MaskedSoftmax(z, valid);
  n.idx.assign(valid.begin(), valid.end());
  // log-sum-exp over valid entries for accuracy.
  double top = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < z.size(); ++k) {
    if (valid[k]) top = std::max(top, z(k));
  }
  double sum = 0;
  for (int k = 0; k < z.size(); ++k) {
    if (valid[k]) sum += std::exp(z(k) - top);
  }
  n.value = Vec::Constant(1, top + std::log(sum) - z(gold));
  return Push(std::move(n));
}

NodeId Tape::Sum(const std::vector<NodeId> &scalars) {
  Node n;
  n.op = Op::kSum;
  n.in = scalars;
  double total = 0;
  for (NodeId s : scalars) total += nodes_[s].value(0);
  n.value = Vec::Constant(1, total);
  return Push(std::move(n));
}

Gradients Tape::Backward(NodeId root) const {
  Gradients grads(*params_);
  std::vector<Vec> adj(nodes_.size());
  adj[root] = Vec::Ones(1);
  auto acc = [&](NodeId id, const Vec &g) {
    if (adj[id].size() == 0) {
      adj[id] = g;
    } else {
      adj[id] += g;
    }
  };

  for (NodeId id = root; id >= 0; --id) {
    if (adj[id].size() == 0) continue;
    const Node &n = nodes_[id];
    const Vec &d = adj[id];
    switch (n.op) {
      case Op::kInput:
        break;
      case Op::kParam:
        grads[n.p0].col(0) += d;
        break;
      case Op::kLookup:
        grads[n.p0].col(n.k0) += d;
        break;
      case Op::kAffine: {
        const Vec &x = nodes_[n.in[0]].value;
        grads[n.p0].noalias() += d * x.transpose();
        if (n.p1 >= 0) grads[n.p1].col(0) += d;
        acc(n.in[0], (*params_)[n.p0].transpose() * d);
        break;
      }
      case Op::kAdd:
        acc(n.in[0], d);
        acc(n.in[1], d);
        break;
      case Op::kMul:
        acc(n.in[0], d.cwiseProduct(nodes_[n.in[1]].value));
        acc(n.in[1], d.cwiseProduct(nodes_[n.in[0]].value));
        break;
      case Op::kTanh:
        acc(n.in[0],
            d.cwiseProduct((1.0 - n.value.array().square()).matrix()));
        break;
      case Op::kSigmoid:
        acc(n.in[0], d.cwiseProduct(
                         (n.value.array() * (1.0 - n.value.array())).matrix()));
        break;
      case Op::kConcat: {
        int off = 0;
        for (NodeId p : n.in) {
          acc(p, d.segment(off, dim(p)));
          off += dim(p);
        }
        break;
      }
      case Op::kSlice: {
        Vec g = Vec::Zero(dim(n.in[0]));
        g.segment(n.k0, n.k1) = d;
        acc(n.in[0], g);
        break;
      }
      case Op::kMaxPool: {
        std::vector<Vec> parts(n.in.size());
        for (int i = 0; i < d.size(); ++i) {
          Vec &g = parts[n.idx[i]];
          if (g.size() == 0) g = Vec::Zero(d.size());
          g(i) += d(i);
        }
        for (size_t k = 0; k < n.in.size(); ++k) {
          if (parts[k].size() > 0) acc(n.in[k], parts[k]);
        }
        break;
      }
      case Op::kLstm: {
        const Mat &Wx = (*params_)[n.p0];
        const Mat &Wh = (*params_)[n.p1];
        const int h = static_cast<int>(Wh.cols());
        const Vec &hc = nodes_[n.in[1]].value;
        const auto i = n.aux.segment(0, h).array();
        const auto f = n.aux.segment(h, h).array();
        const auto o = n.aux.segment(2 * h, h).array();
        const auto g = n.aux.segment(3 * h, h).array();
        const auto tc = n.aux.tail(h).array();
        const auto dh = d.head(h).array();
        const Eigen::ArrayXd dc = d.tail(h).array() + dh * o * (1.0 - tc * tc);
        Vec dz(4 * h);
        dz.segment(0, h) = (dc * g * i * (1.0 - i)).matrix();
        dz.segment(h, h) = (dc * hc.tail(h).array() * f * (1.0 - f)).matrix();
        dz.segment(2 * h, h) = (dh * tc * o * (1.0 - o)).matrix();
        dz.segment(3 * h, h) = (dc * i * (1.0 - g * g)).matrix();
        const Vec &x = nodes_[n.in[0]].value;
        grads[n.p0].noalias() += dz * x.transpose();
        grads[n.p1].noalias() += dz * hc.head(h).transpose();
        grads[n.p2].col(0) += dz;
        acc(n.in[0], Wx.transpose() * dz);
        Vec dstate(2 * h);
        dstate.head(h) = Wh.transpose() * dz;
        dstate.tail(h) = (dc * f).matrix();
        acc(n.in[1], dstate);
        break;
      }
      case Op::kAttention: {
        const size_t m = n.in.size() - 1;
        if (m == 0) break;
        const Mat &W = (*params_)[n.p0];
        const Vec &s = nodes_[n.in[0]].value;
        const Vec u = W.transpose() * s;
        Vec dalpha(m);
        for (size_t j = 0; j < m; ++j) {
          dalpha(j) = d.dot(nodes_[n.in[j + 1]].value);
        }
        const double mean = n.aux.dot(dalpha);
        const Vec dscore = n.aux.cwiseProduct(
            (dalpha.array() - mean).matrix());
        Vec du = Vec::Zero(u.size());
        for (size_t j = 0; j < m; ++j) {
          const Vec &b = nodes_[n.in[j + 1]].value;
          du += dscore(j) * b;
          acc(n.in[j + 1], n.aux(j) * d + dscore(j) * u);
        }
        grads[n.p0].noalias() += s * du.transpose();
        acc(n.in[0], W * du);
        break;
      }
      case Op::kMaskedNll: {
        Vec g = n.aux;
        g(n.k0) -= 1.0;
        acc(n.in[0], d(0) * g);
        break;
      }
      case Op::kSum:
        for (NodeId s : n.in) acc(s, d);
        break;
    }
  }
  return grads;
}

}  // namespace dner
