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

#include "dner/neural/params.h"

#include <cmath>
#include <cstring>

#include "dner/error.h"

namespace dner {

ParamId Params::Add(const std::string &name, int rows, int cols) {
  if (Find(name) >= 0) throw Error("duplicate parameter " + name);
  names_.push_back(name);
  tensors_.push_back(Mat::Zero(rows, cols));
  return static_cast<ParamId>(tensors_.size()) - 1;
}

ParamId Params::Find(const std::string &name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<ParamId>(i);
  }
  return -1;
}

int64_t Params::NumValues() const {
  int64_t n = 0;
  for (const Mat &m : tensors_) n += m.size();
  return n;
}

bool Params::operator==(const Params &other) const {
  if (names_ != other.names_) return false;
  for (size_t i = 0; i < tensors_.size(); ++i) {
    const Mat &a = tensors_[i];
    const Mat &b = other.tensors_[i];
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.size() > 0 &&
        std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) != 0) {
      return false;
    }
  }
  return true;
}

Gradients::Gradients(const Params &params) {
  grads_.reserve(params.size());
  for (ParamId i = 0; i < params.size(); ++i) {
    grads_.push_back(Mat::Zero(params[i].rows(), params[i].cols()));
  }
}

double Gradients::Norm() const {
  double sq = 0;
  for (const Mat &g : grads_) sq += g.squaredNorm();
  return std::sqrt(sq);
}

bool Gradients::AllFinite() const {
  for (const Mat &g : grads_) {
    if (!g.allFinite()) return false;
  }
  return true;
}

void Gradients::Scale(double factor) {
  for (Mat &g : grads_) g *= factor;
}

void Gradients::Add(const Gradients &other) {
  for (size_t i = 0; i < grads_.size(); ++i) grads_[i] += other.grads_[i];
}

void SgdStep(Params &params, const Gradients &grads, double learning_rate) {
  for (ParamId i = 0; i < params.size(); ++i) {
    params[i] -= learning_rate * grads[i];
  }
}

}  // namespace dner
