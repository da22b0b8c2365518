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

#include "dner/schemas.h"

#include <algorithm>
#include <map>

#include "dner/error.h"
#include "dner/text.h"
#include "dner/transitions.h"

namespace dner {

namespace {

enum class TagClass { kOutside, kPlain, kHead, kBody };

TagClass ClassOf(Indicator ind) {
  switch (ind) {
    case Indicator::kO:
      return TagClass::kOutside;
    case Indicator::kB:
    case Indicator::kI:
      return TagClass::kPlain;
    case Indicator::kBH:
    case Indicator::kIH:
      return TagClass::kHead;
    case Indicator::kBD:
    case Indicator::kID:
      return TagClass::kBody;
  }
  return TagClass::kOutside;
}

bool IsBegin(Indicator ind) {
  return ind == Indicator::kB || ind == Indicator::kBH || ind == Indicator::kBD;
}

Indicator MakeIndicator(TagClass cls, bool begin) {
  switch (cls) {
    case TagClass::kOutside:
      return Indicator::kO;
    case TagClass::kPlain:
      return begin ? Indicator::kB : Indicator::kI;
    case TagClass::kHead:
      return begin ? Indicator::kBH : Indicator::kIH;
    case TagClass::kBody:
      return begin ? Indicator::kBD : Indicator::kID;
  }
  return Indicator::kO;
}

const std::pair<Indicator, std::string_view> kNames[] = {
    {Indicator::kO, "O"},   {Indicator::kB, "B"},   {Indicator::kI, "I"},
    {Indicator::kBH, "BH"}, {Indicator::kIH, "IH"}, {Indicator::kBD, "BD"},
    {Indicator::kID, "ID"},
};

// A maximal stretch of tokens opened by a B-tag (or an I-tag that cannot
// continue the previous run) and sharing class and type.
struct Run {
  TagClass cls;
  std::string type;
  int start;
  int end;
};

std::vector<Run> Runs(const TagSequence &tags) {
  std::vector<Run> runs;
  bool open = false;
  for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
    const Tag &tag = tags[i];
    const TagClass cls = ClassOf(tag.indicator);
    if (cls == TagClass::kOutside) {
      open = false;
      continue;
    }
    if (open && !IsBegin(tag.indicator) && runs.back().cls == cls &&
        runs.back().type == tag.type) {
      runs.back().end = i + 1;
      continue;
    }
    runs.push_back({cls, tag.type, i, i + 1});
    open = true;
  }
  return runs;
}

std::vector<Mention> SortedUnique(std::vector<Mention> mentions) {
  std::sort(mentions.begin(), mentions.end());
  mentions.erase(std::unique(mentions.begin(), mentions.end()), mentions.end());
  return mentions;
}

}  // namespace

std::string Tag::ToString() const {
  std::string out;
  for (const auto &[ind, name] : kNames) {
    if (ind == indicator) out = name;
  }
  if (indicator != Indicator::kO && !type.empty()) out += "-" + type;
  return out;
}

Tag Tag::Parse(std::string_view text) {
  const size_t dash = text.find('-');
  std::string_view head = text.substr(0, dash);
  for (const auto &[ind, name] : kNames) {
    if (head == name) {
      Tag tag{ind, {}};
      if (dash != std::string_view::npos) {
        if (ind == Indicator::kO || dash + 1 >= text.size()) {
          throw Error("malformed tag '" + std::string(text) + "'");
        }
        tag.type = std::string(text.substr(dash + 1));
      }
      return tag;
    }
  }
  throw Error("unknown tag '" + std::string(text) + "'");
}

TagSequence ParseTags(std::string_view space_separated) {
  TagSequence tags;
  space_separated = Trim(space_separated);
  if (space_separated.empty()) return tags;
  for (std::string_view tok : SplitView(space_separated, ' ')) {
    if (!tok.empty()) tags.push_back(Tag::Parse(tok));
  }
  return tags;
}

std::string FormatTags(const TagSequence &tags) {
  std::string out;
  for (size_t i = 0; i < tags.size(); ++i) {
    if (i > 0) out += ' ';
    out += tags[i].ToString();
  }
  return out;
}

TagSequence EncodeBio(const Sentence &sentence) {
  TagSequence tags(sentence.size());
  for (size_t k = 0; k < sentence.mentions.size(); ++k) {
    const Mention &m = sentence.mentions[k];
    if (m.discontinuous()) {
      throw Error("BIO cannot encode discontinuous mention " + FormatMention(m));
    }
    for (size_t j = k + 1; j < sentence.mentions.size(); ++j) {
      if (m.Overlaps(sentence.mentions[j])) {
        throw Error("BIO cannot encode overlapping mentions " +
                    FormatMention(m) + " and " +
                    FormatMention(sentence.mentions[j]));
      }
    }
    const Fragment &f = m.fragments.front();
    for (int t = f.start; t < f.end; ++t) {
      tags[t] = {t == f.start ? Indicator::kB : Indicator::kI, m.type};
    }
  }
  return tags;
}

std::vector<Mention> DecodeBio(const TagSequence &tags) {
  std::vector<Mention> out;
  bool open = false;
  for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
    const Tag &tag = tags[i];
    if (tag.indicator == Indicator::kO) {
      open = false;
      continue;
    }
    if (open && !IsBegin(tag.indicator) && out.back().type == tag.type) {
      out.back().fragments.back().end = i + 1;
      continue;
    }
    out.push_back(Mention{tag.type, {{i, i + 1}}});
    open = true;
  }
  return SortedUnique(std::move(out));
}

TagSequence EncodeBiohd(int sentence_len, const std::vector<Mention> &mentions,
                        bool allow_nested) {
  if (!allow_nested) CheckNotNested(mentions);
  std::vector<Mention> sorted = mentions;
  std::sort(sorted.begin(), sorted.end());
  TagSequence tags(sentence_len);
  for (int t = 0; t < sentence_len; ++t) {
    int owners = 0;
    const Mention *first = nullptr;
    bool inside = false;
    for (const Mention &m : sorted) {
      if (!m.Contains(t)) continue;
      ++owners;
      if (first == nullptr) first = &m;
      inside = inside || (t > 0 && m.Contains(t - 1));
    }
    if (owners == 0) continue;
    TagClass cls = TagClass::kPlain;
    if (owners >= 2) {
      cls = TagClass::kHead;
    } else if (first->discontinuous()) {
      cls = TagClass::kBody;
    }
    tags[t] = {MakeIndicator(cls, !inside), first->type};
  }
  return tags;
}

std::vector<Mention> DecodeBiohd(const TagSequence &tags) {
  const std::vector<Run> runs = Runs(tags);
  std::vector<const Run *> heads;
  for (const Run &r : runs) {
    if (r.cls == TagClass::kHead) heads.push_back(&r);
  }
  auto join = [](const Run &a, const Run &b) {
    return Mention::Make(a.type, {{a.start, a.end}, {b.start, b.end}});
  };

  std::vector<Mention> out;
  std::vector<const Run *> orphans;
  for (const Run &r : runs) {
    if (r.cls == TagClass::kPlain) {
      bool touched = false;
      for (const Run *h : heads) {
        if (h->end == r.start || r.end == h->start) {
          out.push_back(join(*h, r));
          touched = true;
        }
      }
      if (!touched) out.push_back(Mention{r.type, {{r.start, r.end}}});
    } else if (r.cls == TagClass::kBody) {
      const Run *left = nullptr, *right = nullptr;
      for (const Run *h : heads) {
        if (h->end <= r.start) left = h;
        if (h->start >= r.end && right == nullptr) right = h;
      }
      const Run *head = left != nullptr ? left : right;
      if (head != nullptr) {
        out.push_back(join(*head, r));
      } else {
        orphans.push_back(&r);
      }
    }
  }
  for (size_t k = 0; k < orphans.size(); k += 2) {
    if (k + 1 < orphans.size()) {
      out.push_back(join(*orphans[k], *orphans[k + 1]));
    } else {
      out.push_back(
          Mention{orphans[k]->type, {{orphans[k]->start, orphans[k]->end}}});
    }
  }
  return SortedUnique(std::move(out));
}

// ---------------------------------------------------------------------------
// Ambiguity witnesses.

namespace {

constexpr int kMaxRunsPerMention = 4;

class WitnessSearch {
 public:
  WitnessSearch(const TagSequence &tags, int limit)
      : tags_(tags), limit_(limit), runs_(Runs(tags)) {
    BuildCandidates();
    coverage_.assign(runs_.size(), 0);
    // last_[r]: index one past the final candidate whose first run is <= r.
    last_.assign(runs_.size(), 0);
    for (size_t c = 0; c < candidates_.size(); ++c) {
      last_[candidates_[c].runs.front()] = c + 1;
    }
    for (size_t r = 1; r < runs_.size(); ++r) {
      last_[r] = std::max(last_[r], last_[r - 1]);
    }
  }

  std::vector<std::vector<Mention>> Find() {
    Search(0, 0);
    return std::move(found_);
  }

 private:
  struct Candidate {
    std::vector<int> runs;  // ascending
    Mention mention;
  };

  void BuildCandidates() {
    const int k = static_cast<int>(runs_.size());
    std::vector<int> chosen;
    // Subsets in lexicographic order of run indices.
    auto extend = [&](auto &&self, int next) -> void {
      if (!chosen.empty()) AddCandidate(chosen);
      if (static_cast<int>(chosen.size()) == kMaxRunsPerMention) return;
      for (int r = next; r < k; ++r) {
        if (!chosen.empty() && runs_[r].type != runs_[chosen[0]].type) continue;
        chosen.push_back(r);
        self(self, r + 1);
        chosen.pop_back();
      }
    };
    extend(extend, 0);
  }

  void AddCandidate(const std::vector<int> &runs) {
    std::vector<Fragment> fragments;
    for (int r : runs) fragments.push_back({runs_[r].start, runs_[r].end});
    Mention m = Mention::Make(runs_[runs[0]].type, fragments);
    for (int r : runs) {
      // Plain tokens belong to one continuous mention, body tokens to one
      // discontinuous mention.
      if (runs_[r].cls == TagClass::kPlain && m.discontinuous()) return;
      if (runs_[r].cls == TagClass::kBody && !m.discontinuous()) return;
    }
    candidates_.push_back({runs, std::move(m)});
  }

  bool Satisfied(size_t r) const {
    return runs_[r].cls == TagClass::kHead ? coverage_[r] >= 2
                                           : coverage_[r] == 1;
  }

  // Runs whose candidates have all been decided once index c is reached.
  bool Feasible(size_t c) const {
    for (size_t r = 0; r < runs_.size() && last_[r] <= c; ++r) {
      if (!Satisfied(r)) return false;
    }
    return true;
  }

  void Search(size_t c, int depth) {
    if (limit_ >= 0 && static_cast<int>(found_.size()) >= limit_) return;
    if (!Feasible(c)) return;
    if (c == candidates_.size()) {
      std::vector<Mention> set;
      for (size_t i : chosen_) set.push_back(candidates_[i].mention);
      std::sort(set.begin(), set.end());
      if (EncodeBiohd(static_cast<int>(tags_.size()), set, true) == tags_) {
        found_.push_back(std::move(set));
      }
      return;
    }
    const Candidate &cand = candidates_[c];
    bool fits = true;
    for (int r : cand.runs) {
      if (runs_[r].cls != TagClass::kHead && coverage_[r] >= 1) fits = false;
    }
    if (fits) {
      for (int r : cand.runs) ++coverage_[r];
      chosen_.push_back(c);
      Search(c + 1, depth + 1);
      chosen_.pop_back();
      for (int r : cand.runs) --coverage_[r];
    }
    Search(c + 1, depth);
  }

  const TagSequence &tags_;
  int limit_;
  std::vector<Run> runs_;
  std::vector<Candidate> candidates_;
  std::vector<int> coverage_;
  std::vector<size_t> last_;
  std::vector<size_t> chosen_;
  std::vector<std::vector<Mention>> found_;
};

}  // namespace

std::vector<std::vector<Mention>> AmbiguityWitnesses(const TagSequence &tags,
                                                     int limit) {
  if (limit == 0) return {};
  return WitnessSearch(tags, limit).Find();
}

std::string FormatConll(const std::vector<std::string> &tokens,
                        const TagSequence &tags) {
  if (tokens.size() != tags.size()) {
    throw Error("token and tag counts differ");
  }
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i] + "\t" + tags[i].ToString() + "\n";
  }
  out += "\n";
  return out;
}

std::vector<TaggedSentence> ParseConll(std::string_view text) {
  std::vector<TaggedSentence> out;
  TaggedSentence current;
  const std::vector<std::string_view> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (Trim(line).empty()) {
      if (!current.tokens.empty()) out.push_back(std::move(current));
      current = {};
      continue;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("expected token<TAB>tag", static_cast<int>(i) + 1);
    }
    current.tokens.emplace_back(line.substr(0, tab));
    try {
      current.tags.push_back(Tag::Parse(Trim(line.substr(tab + 1))));
    } catch (const Error &e) {
      throw ParseError(e.what(), static_cast<int>(i) + 1);
    }
  }
  if (!current.tokens.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace dner
