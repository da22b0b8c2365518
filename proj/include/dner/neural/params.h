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

#ifndef DNER_NEURAL_PARAMS_H_
#define DNER_NEURAL_PARAMS_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dner {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

using ParamId = int;

// Named dense tensors. Vectors are stored as one-column matrices.
class Params {
 public:
  ParamId Add(const std::string &name, int rows, int cols);

  int size() const { return static_cast<int>(tensors_.size()); }
  Mat &operator[](ParamId id) { return tensors_[id]; }
  const Mat &operator[](ParamId id) const { return tensors_[id]; }
  const std::string &name(ParamId id) const { return names_[id]; }
  const std::vector<std::string> &names() const { return names_; }

  // -1 when absent.
  ParamId Find(const std::string &name) const;

  int64_t NumValues() const;

  bool operator==(const Params &other) const;

 private:
  std::vector<std::string> names_;
  std::vector<Mat> tensors_;
};

// Gradient buffers shaped like a Params instance.
class Gradients {
 public:
  Gradients() = default;
  explicit Gradients(const Params &params);

  Mat &operator[](ParamId id) { return grads_[id]; }
  const Mat &operator[](ParamId id) const { return grads_[id]; }
  int size() const { return static_cast<int>(grads_.size()); }

  double Norm() const;
  bool AllFinite() const;
  void Scale(double factor);
  void Add(const Gradients &other);

 private:
  std::vector<Mat> grads_;
};

// params -= lr * grads.
void SgdStep(Params &params, const Gradients &grads, double learning_rate);

}  // namespace dner

#endif  // DNER_NEURAL_PARAMS_H_
