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

// Synthetic corpora for tests, fixtures and desk-scale training runs.

#ifndef DNER_SYNTHETIC_H_
#define DNER_SYNTHETIC_H_

#include <cstdint>

#include "dner/corpus.h"
#include "dner/rng.h"

namespace dner {

// Random mention structures over placeholder tokens. Each sentence is a
// sequence of independent groups separated by outside tokens; a group is one
// of the enabled shapes below.
struct StructureOptions {
  int max_mentions = 4;
  int max_components = 3;
  int max_groups = 3;
  bool continuous = true;    // one contiguous mention
  bool disc_single = true;   // a discontinuous mention sharing nothing
  bool left_overlap = true;  // a head followed by bodies, "muscle pain and fatigue"
  bool right_overlap = true; // bodies followed by a head
  bool crossing = false;     // two heads by two bodies, every pairing a mention
};

Sentence RandomStructuredSentence(Rng &rng, const StructureOptions &options);

// Sentences are numbered within documents of docs_size sentences each.
Corpus GenerateStructured(int num_sentences, uint64_t seed,
                          const StructureOptions &options, int doc_size = 5);

// Continuous, pairwise disjoint mentions only.
Corpus GenerateFlat(int num_sentences, uint64_t seed);

enum class TemplateStyle {
  // Short adverse-event clauses: "knee pain and swelling", "arm / leg
  // cramps", "liver is mildly enlarged", drug intake clauses.
  kStandard,
  // Adds clauses whose head is separated from the second body by several
  // filler tokens, mixed with look-alike clauses that have no second body.
  kLongGap,
};

struct TemplateOptions {
  int num_sentences = 100;
  uint64_t seed = 1;
  TemplateStyle style = TemplateStyle::kStandard;
  // Probability that a clause carries a discontinuous mention.
  double disc_rate = 0.5;
  int max_clauses = 2;
  int doc_size = 5;
  // Filler tokens between the two halves of a long-gap clause.
  int gap_min = 2;
  int gap_max = 5;
};

// Entity types are ADR and DRUG.
Corpus GenerateTemplated(const TemplateOptions &options);

}  // namespace dner

#endif  // DNER_SYNTHETIC_H_
