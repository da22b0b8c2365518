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

#ifndef DNER_NEURAL_GRADCHECK_H_
#define DNER_NEURAL_GRADCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dner/neural/scorer.h"

namespace dner {

// Denominator floor of the relative error. Central differences at 1e-5 carry
// about 1e-10 of rounding noise, so smaller gradients compare on an absolute
// scale.
inline constexpr double kGradCheckFloor = 1e-5;

struct GradCheckResult {
  double max_rel_error = 0;
  int coordinates = 0;
  // The coordinate with the largest error.
  std::string worst_group;
  double worst_analytic = 0;
  double worst_numeric = 0;
  // Parameter groups with at least one sampled coordinate whose analytic
  // gradient is non-zero.
  std::vector<std::string> covered_groups;
};

// Central differences against the tape gradient of the teacher-forced loss
// of the sentence's oracle actions, on `samples` coordinates. One coordinate
// per parameter group is taken from those with a non-zero gradient when the
// group has any; the rest are drawn uniformly. Relative error is
// |a - n| / max(|a|, |n|, kGradCheckFloor). Empty sentences report 0.
GradCheckResult FiniteDiffCheck(const Model &model, const Sentence &sentence,
                                double epsilon = 1e-5, int samples = 200,
                                uint64_t seed = 1);

}  // namespace dner

#endif  // DNER_NEURAL_GRADCHECK_H_
