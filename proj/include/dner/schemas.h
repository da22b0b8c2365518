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

// Token tagging schemas used by the sequence labelling baselines: plain BIO
// and the BIO extension with head (BH/IH) and discontinuous body (BD/ID)
// indicators.

#ifndef DNER_SCHEMAS_H_
#define DNER_SCHEMAS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dner/corpus.h"

namespace dner {

enum class Indicator { kO, kB, kI, kBH, kIH, kBD, kID };

struct Tag {
  Indicator indicator = Indicator::kO;
  std::string type;  // may be empty

  // "O", "B", "BH-ADR", ...
  std::string ToString() const;
  static Tag Parse(std::string_view text);

  bool operator==(const Tag &) const = default;
};

using TagSequence = std::vector<Tag>;

TagSequence ParseTags(std::string_view space_separated);
std::string FormatTags(const TagSequence &tags);

// Plain BIO. Throws Error on discontinuous or overlapping mentions.
TagSequence EncodeBio(const Sentence &sentence);

// Maximal B-I runs of one type become mentions; an I that cannot continue a
// run opens a new one. Head and body indicators are read as B and I.
std::vector<Mention> DecodeBio(const TagSequence &tags);

// BIO extension. Tokens in two or more mentions are heads (BH/IH), tokens
// owned by a single discontinuous mention are bodies (BD/ID), tokens owned
// by a single continuous mention get B/I. A token is "inside" when some
// mention covers both it and the previous token. Throws Error for nested
// mentions unless allow_nested is set.
TagSequence EncodeBiohd(int sentence_len, const std::vector<Mention> &mentions,
                        bool allow_nested = false);
inline TagSequence EncodeBiohd(const Sentence &sentence) {
  return EncodeBiohd(sentence.size(), sentence.mentions);
}

// Heuristic decoding: each body attaches to the nearest head on its left
// (else on its right), continuous runs touching a head join that head, and
// other continuous runs stand alone. Bodies in a sentence without heads are
// paired left to right.
std::vector<Mention> DecodeBiohd(const TagSequence &tags);

inline constexpr int kDefaultWitnessLimit = 64;

// Distinct mention sets whose BIO-extension encoding equals tags, found by
// depth-first search over groupings of tag runs. At most limit sets are
// returned; limit < 0 means no limit.
std::vector<std::vector<Mention>> AmbiguityWitnesses(
    const TagSequence &tags, int limit = kDefaultWitnessLimit);

// CoNLL style "token<TAB>tag" lines with a blank line after each sentence.
std::string FormatConll(const std::vector<std::string> &tokens,
                        const TagSequence &tags);

struct TaggedSentence {
  std::vector<std::string> tokens;
  TagSequence tags;
};

std::vector<TaggedSentence> ParseConll(std::string_view text);

}  // namespace dner

#endif  // DNER_SCHEMAS_H_
