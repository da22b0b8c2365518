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

#include "dner/neural/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "dner/rng.h"

namespace dner {

GradCheckResult FiniteDiffCheck(const Model &model, const Sentence &sentence,
                                double epsilon, int samples, uint64_t seed) {
  GradCheckResult result;
  if (sentence.size() == 0) return result;
  const std::vector<Action> actions = Oracle(sentence).actions;
  LossResult base = SentenceLoss(model, sentence, actions);
  const Gradients analytic = base.tape.Backward(base.root);

  Model probe = model;
  Rng rng(seed);
  struct Coord {
    ParamId id;
    int64_t flat;
  };
  std::vector<Coord> coords;
  for (ParamId id = 0; id < probe.params.size(); ++id) {
    const Mat &g = analytic[id];
    std::vector<int64_t> nonzero;
    for (int64_t k = 0; k < g.size(); ++k) {
      if (g.data()[k] != 0) nonzero.push_back(k);
    }
    if (!nonzero.empty()) {
      coords.push_back({id, rng.Pick(nonzero)});
    } else if (g.size() > 0) {
      coords.push_back({id, static_cast<int64_t>(rng.Index(g.size()))});
    }
  }
  const int64_t total = probe.params.NumValues();
  while (static_cast<int>(coords.size()) < samples) {
    int64_t k = static_cast<int64_t>(rng.Index(total));
    ParamId id = 0;
    while (k >= probe.params[id].size()) {
      k -= probe.params[id].size();
      ++id;
    }
    coords.push_back({id, k});
  }

  for (const Coord &c : coords) {
    double &x = probe.params[c.id].data()[c.flat];
    const double saved = x;
    x = saved + epsilon;
    const double up = SentenceLoss(probe, sentence, actions).loss;
    x = saved - epsilon;
    const double down = SentenceLoss(probe, sentence, actions).loss;
    x = saved;
    const double numeric = (up - down) / (2 * epsilon);
    const double a = analytic[c.id].data()[c.flat];
    const double denom =
        std::max({std::abs(a), std::abs(numeric), kGradCheckFloor});
    const double err = std::abs(a - numeric) / denom;
    const std::string &name = probe.params.name(c.id);
    if (err > result.max_rel_error || result.coordinates == 0) {
      result.max_rel_error = err;
      result.worst_group = name;
      result.worst_analytic = a;
      result.worst_numeric = numeric;
    }
    ++result.coordinates;
    if (a != 0 && std::find(result.covered_groups.begin(),
                            result.covered_groups.end(),
                            name) == result.covered_groups.end()) {
      result.covered_groups.push_back(name);
    }
  }
  return result;
}

}  // namespace dner
