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

// Sentences annotated with discontinuous and overlapping mentions, the inline
// and standoff file formats, and corpus level transformations.

#ifndef DNER_CORPUS_H_
#define DNER_CORPUS_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace dner {

// Half-open token interval [start, end).
struct Fragment {
  int start = 0;
  int end = 0;

  int size() const { return end - start; }
  auto operator<=>(const Fragment &) const = default;
};

// Sorts, merges adjacent fragments and rejects proper overlaps. Throws Error
// when two fragments share a token or a fragment is empty.
std::vector<Fragment> Canonicalize(std::vector<Fragment> fragments);

// An entity mention: a type plus a canonical fragment list. Mentions compare
// by fragments first so that sorted mention lists follow text order.
struct Mention {
  std::string type;
  std::vector<Fragment> fragments;

  // Builds a mention with canonicalized fragments.
  static Mention Make(std::string type, std::vector<Fragment> fragments);

  bool discontinuous() const { return fragments.size() > 1; }
  int first() const { return fragments.front().start; }
  int last() const { return fragments.back().end; }

  // Tokens inside fragments; gaps are not counted.
  int length() const;

  // Tokens strictly between the first and last fragment not covered by any
  // fragment (total over all gaps).
  int interval_length() const { return last() - first() - length(); }

  // Sorted token indices covered by the fragments.
  std::vector<int> tokens() const;

  bool Contains(int token) const;
  bool Overlaps(const Mention &other) const;

  bool operator==(const Mention &o) const {
    return fragments == o.fragments && type == o.type;
  }
  bool operator<(const Mention &o) const {
    return std::tie(fragments, type) < std::tie(o.fragments, o.type);
  }
};

struct Sentence {
  std::vector<std::string> tokens;
  std::vector<Mention> mentions;
  std::string doc_id;
  int sent_index = 0;

  int size() const { return static_cast<int>(tokens.size()); }
  bool HasDiscontinuous() const;
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::string split_name;

  size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

// Checks fragment ranges, canonical form and duplicate mentions. Throws Error.
void Validate(const Sentence &sentence);

// Sorts mentions into canonical order.
void SortMentions(Sentence &sentence);

// ---------------------------------------------------------------------------
// Inline format. A sentence block is a token line (single spaces), a mention
// line ("s,e[;s,e]* TYPE" items separated by '|', empty for none) and a blank
// line. An optional "#doc_id=<id>" line may precede a block.

Corpus ParseInline(std::string_view text);
std::string WriteInline(const Corpus &corpus);

// Formats one mention as "s,e[;s,e]* TYPE".
std::string FormatMention(const Mention &mention);
Mention ParseMention(std::string_view item, int sentence_size);

// ---------------------------------------------------------------------------
// Standoff (brat) format.

struct CharRange {
  int begin = 0;
  int end = 0;
};

// A token with its character span in the source text.
struct TokenSpan {
  std::string text;
  int begin = 0;
  int end = 0;
};

// Whitespace tokenization with punctuation split into single-character
// tokens.
std::vector<TokenSpan> Tokenize(std::string_view text, int offset = 0);

struct StandoffResult {
  Corpus corpus;
  // One entry per skipped annotation, e.g. "T3: offset 17 not on a token
  // boundary".
  std::vector<std::string> warnings;
};

// Maps character offset annotations onto tokens. Each sentence range is
// tokenized independently. An empty boundary list treats every non-blank
// line of the text as one sentence.
StandoffResult ParseStandoff(std::string_view text, std::string_view ann,
                             const std::vector<CharRange> &sentence_boundaries,
                             const std::string &doc_id = "");

// Character ranges of the non-blank lines in text.
std::vector<CharRange> LineBoundaries(std::string_view text);

struct StandoffDocument {
  std::string text;
  std::string ann;
};

// One line of space-joined tokens per sentence and a T line per mention.
// Tokens containing punctuation are re-split when the result is parsed.
StandoffDocument WriteStandoff(const Corpus &corpus);

// ---------------------------------------------------------------------------
// Analysis.

enum class OverlapCategory { kNoOverlap, kLeftOverlap, kRightOverlap, kMultiOverlap };

inline constexpr int kNumOverlapCategories = 4;

const char *OverlapCategoryName(OverlapCategory category);

// Classifies a discontinuous mention by which of its fragments share tokens
// with the other mentions of the sentence. Throws Error for continuous
// mentions.
OverlapCategory ClassifyOverlap(const Mention &mention,
                                const std::vector<Mention> &others);

// Classifies mentions[index] against the rest of the list.
OverlapCategory ClassifyOverlapAt(const std::vector<Mention> &mentions,
                                  size_t index);

struct StatsReport {
  int64_t documents = 0;
  int64_t sentences = 0;
  int64_t tokens = 0;
  int64_t mentions = 0;
  int64_t disc_mentions = 0;
  double disc_percentage = 0;
  double avg_mention_length = 0;
  double avg_disc_mention_length = 0;
  double avg_interval_length = 0;
  // Index k holds mentions with k + 2 components; the last bucket is open.
  std::vector<int64_t> component_histogram = std::vector<int64_t>(3, 0);
  std::vector<int64_t> overlap_histogram =
      std::vector<int64_t>(kNumOverlapCategories, 0);
  int64_t continuous_overlap = 0;
};

StatsReport ComputeStats(const Corpus &corpus);

// Flat "key=value" lines.
std::string FormatStatsText(const StatsReport &report);
// One JSON record per metric: {"metric": ..., "value": ...}.
std::string FormatStatsJsonLines(const StatsReport &report);

// ---------------------------------------------------------------------------
// Transformations.

// Replaces every discontinuous mention by its covering interval and merges
// transitively overlapping mentions into one mention over their union. The
// merged type is the majority type, ties broken by the leftmost mention.
Corpus FlattenForFlatModel(const Corpus &corpus);

enum class ResampleMode { kDiscOnly, kUnderSample, kOverSample };

// Balancing of discontinuous and continuous-only sentences.
Corpus Resample(const Corpus &corpus, ResampleMode mode, uint64_t seed);

struct CorpusSplit {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Document level random split. Sentences with an empty doc_id count as
// single-sentence documents.
CorpusSplit Split(const Corpus &corpus, double train_fraction,
                  double dev_fraction, uint64_t seed);

}  // namespace dner

#endif  // DNER_CORPUS_H_
