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

#include "dner/synthetic.h"

#include <algorithm>
#include <string>
#include <vector>

#include "dner/error.h"

namespace dner {

namespace {

const std::vector<std::string> kTypes = {"ADR", "DRUG"};

// Accumulates tokens and mentions for one sentence.
class Builder {
 public:
  explicit Builder(Rng &rng) : rng_(rng) {}

  int pos() const { return static_cast<int>(tokens_.size()); }

  // Appends n tokens and returns the fragment they occupy.
  Fragment Add(int n, const std::string &prefix = "w") {
    const int start = pos();
    for (int i = 0; i < n; ++i) {
      tokens_.push_back(prefix + std::to_string(rng_.Index(40)));
    }
    return {start, pos()};
  }

  Fragment Word(const std::string &word) {
    tokens_.push_back(word);
    return {pos() - 1, pos()};
  }

  Fragment Words(const std::vector<std::string> &words) {
    const int start = pos();
    for (const std::string &w : words) tokens_.push_back(w);
    return {start, pos()};
  }

  void Gap(int n) { Add(n, "o"); }

  void Emit(const std::string &type, std::vector<Fragment> fragments) {
    mentions_.push_back(Mention::Make(type, std::move(fragments)));
  }

  int mention_count() const { return static_cast<int>(mentions_.size()); }

  Sentence Finish() {
    Sentence s;
    s.tokens = std::move(tokens_);
    s.mentions = std::move(mentions_);
    SortMentions(s);
    s.mentions.erase(std::unique(s.mentions.begin(), s.mentions.end()),
                     s.mentions.end());
    return s;
  }

 private:
  Rng &rng_;
  std::vector<std::string> tokens_;
  std::vector<Mention> mentions_;
};

int Between(Rng &rng, int lo, int hi) {
  return lo + static_cast<int>(rng.Index(static_cast<uint64_t>(hi - lo + 1)));
}

enum class Shape { kContinuous, kDiscSingle, kLeft, kRight, kCrossing };

void BuildShape(Rng &rng, Builder &b, Shape shape, int budget,
                const StructureOptions &opt) {
  const std::string &type = rng.Pick(kTypes);
  switch (shape) {
    case Shape::kContinuous:
      b.Emit(type, {b.Add(Between(rng, 1, 3))});
      break;
    case Shape::kDiscSingle: {
      const int k = Between(rng, 2, std::max(2, opt.max_components));
      std::vector<Fragment> parts;
      for (int i = 0; i < k; ++i) {
        if (i > 0) b.Gap(Between(rng, 1, 3));
        parts.push_back(b.Add(Between(rng, 1, 2)));
      }
      b.Emit(type, parts);
      break;
    }
    case Shape::kLeft: {
      const Fragment head = b.Add(Between(rng, 1, 2));
      const int bodies = Between(rng, 2, std::min(3, budget));
      for (int i = 0; i < bodies; ++i) {
        const bool adjacent = i == 0 && rng.Bernoulli(0.5);
        if (!adjacent) b.Gap(Between(rng, 1, 2));
        b.Emit(type, {head, b.Add(Between(rng, 1, 2))});
      }
      break;
    }
    case Shape::kRight: {
      const int bodies = Between(rng, 2, std::min(3, budget));
      std::vector<Fragment> parts;
      for (int i = 0; i < bodies; ++i) {
        if (i > 0) b.Gap(Between(rng, 1, 2));
        parts.push_back(b.Add(Between(rng, 1, 2)));
      }
      if (!rng.Bernoulli(0.5)) b.Gap(Between(rng, 1, 2));
      const Fragment head = b.Add(Between(rng, 1, 2));
      for (const Fragment &p : parts) b.Emit(type, {p, head});
      break;
    }
    case Shape::kCrossing: {
      const Fragment a1 = b.Add(1);
      b.Gap(1);
      const Fragment a2 = b.Add(1);
      const Fragment h1 = b.Add(1);
      b.Gap(1);
      const Fragment h2 = b.Add(1);
      for (const Fragment &a : {a1, a2}) {
        for (const Fragment &h : {h1, h2}) b.Emit(type, {a, h});
      }
      break;
    }
  }
}

int ShapeMentions(Shape shape) {
  switch (shape) {
    case Shape::kContinuous:
    case Shape::kDiscSingle:
      return 1;
    case Shape::kLeft:
    case Shape::kRight:
      return 2;
    case Shape::kCrossing:
      return 4;
  }
  return 1;
}

}  // namespace

Sentence RandomStructuredSentence(Rng &rng, const StructureOptions &opt) {
  std::vector<Shape> shapes;
  if (opt.continuous) shapes.push_back(Shape::kContinuous);
  if (opt.disc_single && opt.max_components >= 2) {
    shapes.push_back(Shape::kDiscSingle);
  }
  if (opt.left_overlap) shapes.push_back(Shape::kLeft);
  if (opt.right_overlap) shapes.push_back(Shape::kRight);
  if (opt.crossing) shapes.push_back(Shape::kCrossing);
  if (shapes.empty()) throw Error("no mention shape enabled");

  Builder b(rng);
  if (rng.Bernoulli(0.5)) b.Gap(Between(rng, 1, 2));
  const int groups = Between(rng, 0, opt.max_groups);
  for (int g = 0; g < groups; ++g) {
    const int budget = opt.max_mentions - b.mention_count();
    std::vector<Shape> fitting;
    for (Shape s : shapes) {
      if (ShapeMentions(s) <= budget) fitting.push_back(s);
    }
    if (fitting.empty()) break;
    if (g > 0) b.Gap(Between(rng, 1, 2));
    BuildShape(rng, b, rng.Pick(fitting), budget, opt);
  }
  if (rng.Bernoulli(0.5) || b.pos() == 0) b.Gap(Between(rng, 1, 2));
  return b.Finish();
}

namespace {

void Number(Corpus &c, int doc_size) {
  for (size_t i = 0; i < c.sentences.size(); ++i) {
    c.sentences[i].doc_id = "doc" + std::to_string(i / doc_size);
    c.sentences[i].sent_index = static_cast<int>(i % doc_size);
  }
}

}  // namespace

Corpus GenerateStructured(int num_sentences, uint64_t seed,
                          const StructureOptions &options, int doc_size) {
  Rng rng(seed);
  Corpus c;
  for (int i = 0; i < num_sentences; ++i) {
    c.sentences.push_back(RandomStructuredSentence(rng, options));
  }
  Number(c, doc_size);
  return c;
}

Corpus GenerateFlat(int num_sentences, uint64_t seed) {
  StructureOptions opt;
  opt.disc_single = opt.left_overlap = opt.right_overlap = false;
  return GenerateStructured(num_sentences, seed, opt);
}

// ---------------------------------------------------------------------------
// Templated clinical-style sentences.

namespace {

const std::vector<std::string> kBody = {
    "knee", "arm",   "leg",   "back", "neck",    "shoulder", "hip",
    "ankle", "wrist", "chest", "jaw", "stomach", "muscle",   "joint"};
const std::vector<std::string> kFeel = {
    "pain",      "ache",     "cramps",   "swelling", "stiffness",
    "numbness",  "weakness", "soreness", "tingling", "burning"};
const std::vector<std::string> kOrgan = {"liver", "kidney", "atrium",
                                         "ventricle", "thyroid", "spleen"};
const std::vector<std::string> kState = {"enlarged", "dilated", "inflamed",
                                         "swollen", "tender"};
const std::vector<std::string> kDegree = {"mildly", "slightly", "very",
                                          "quite"};
const std::vector<std::string> kDrug = {"lipitor", "aspirin",  "ibuprofen",
                                        "voltaren", "naproxen", "crestor",
                                        "zocor",    "arthrotec"};
const std::vector<std::string> kIntake = {"took", "started", "after",
                                          "stopped", "on"};
const std::vector<std::string> kOpen = {"i", "had", "got", "still", "now",
                                        "then"};
const std::vector<std::string> kJoin = {",", "then", "plus", "with", ";"};
const std::vector<std::string> kFill = {"for", "a",    "few",  "days",
                                        "that", "week", "really", "later"};
const std::vector<std::string> kNoun = {"tired", "worse", "home", "slept",
                                        "bed"};

// Appends one clause and returns the number of mentions it adds.
int StandardClause(Rng &rng, Builder &b, bool disc, int budget) {
  if (!disc) {
    if (rng.Bernoulli(0.35)) {
      b.Word(rng.Pick(kIntake));
      b.Emit("DRUG", {b.Word(rng.Pick(kDrug))});
    } else if (rng.Bernoulli(0.3)) {
      b.Emit("ADR", {b.Word(rng.Pick(kFeel))});
    } else {
      b.Emit("ADR", {b.Words({rng.Pick(kBody), rng.Pick(kFeel)})});
    }
    return 1;
  }
  int kind = static_cast<int>(rng.Index(3));
  if (budget < 2) kind = 2;
  if (kind == 0) {
    // body feel and feel
    const Fragment body = b.Word(rng.Pick(kBody));
    b.Emit("ADR", {body, b.Word(rng.Pick(kFeel))});
    b.Word("and");
    b.Emit("ADR", {body, b.Word(rng.Pick(kFeel))});
    return 2;
  }
  if (kind == 1) {
    // body and body feel
    const Fragment first = b.Word(rng.Pick(kBody));
    b.Word(rng.Bernoulli(0.5) ? "and" : "/");
    const Fragment second = b.Word(rng.Pick(kBody));
    const Fragment feel = b.Word(rng.Pick(kFeel));
    b.Emit("ADR", {first, feel});
    b.Emit("ADR", {second, feel});
    return 2;
  }
  // organ is mildly enlarged
  const Fragment organ = b.Word(rng.Pick(kOrgan));
  b.Word(rng.Bernoulli(0.5) ? "is" : "was");
  b.Word(rng.Pick(kDegree));
  b.Emit("ADR", {organ, b.Word(rng.Pick(kState))});
  return 1;
}

// "body feel <fillers> and feel" or the look-alike ending in a plain word.
int LongGapClause(Rng &rng, Builder &b, int budget, int gap_min,
                  int gap_max) {
  const bool second = budget >= 2 && rng.Bernoulli(0.5);
  const Fragment body = b.Word(rng.Pick(kBody));
  b.Emit("ADR", {body, b.Word(rng.Pick(kFeel))});
  const int fill = Between(rng, gap_min, std::max(gap_min, gap_max));
  for (int i = 0; i < fill; ++i) b.Word(rng.Pick(kFill));
  b.Word("and");
  if (second) {
    b.Emit("ADR", {body, b.Word(rng.Pick(kFeel))});
    return 2;
  }
  b.Word(rng.Pick(kNoun));
  return 1;
}

}  // namespace

Corpus GenerateTemplated(const TemplateOptions &opt) {
  Rng rng(opt.seed);
  Corpus c;
  constexpr int kMaxMentions = 4;
  for (int i = 0; i < opt.num_sentences; ++i) {
    Builder b(rng);
    if (rng.Bernoulli(0.6)) b.Word(rng.Pick(kOpen));
    const int clauses = Between(rng, 1, std::max(1, opt.max_clauses));
    int used = 0;
    for (int k = 0; k < clauses && used < kMaxMentions; ++k) {
      if (k > 0) b.Word(rng.Pick(kJoin));
      const bool disc = rng.Bernoulli(opt.disc_rate);
      const int budget = kMaxMentions - used;
      if (opt.style == TemplateStyle::kLongGap && disc) {
        used += LongGapClause(rng, b, budget, opt.gap_min, opt.gap_max);
      } else {
        used += StandardClause(rng, b, disc, budget);
      }
    }
    c.sentences.push_back(b.Finish());
  }
  Number(c, opt.doc_size);
  return c;
}

}  // namespace dner
