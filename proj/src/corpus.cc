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

#include "dner/corpus.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "dner/error.h"
#include "dner/rng.h"
#include "dner/text.h"

namespace dner {

std::vector<Fragment> Canonicalize(std::vector<Fragment> fragments) {
  for (const Fragment &f : fragments) {
    if (f.start < 0 || f.end <= f.start) {
      throw Error("empty or negative fragment [" + std::to_string(f.start) +
                  "," + std::to_string(f.end) + ")");
    }
  }
  std::sort(fragments.begin(), fragments.end());
  std::vector<Fragment> merged;
  for (const Fragment &f : fragments) {
    if (!merged.empty() && f.start < merged.back().end) {
      throw Error("overlapping fragments [" +
                  std::to_string(merged.back().start) + "," +
                  std::to_string(merged.back().end) + ") and [" +
                  std::to_string(f.start) + "," + std::to_string(f.end) + ")");
    }
    if (!merged.empty() && f.start == merged.back().end) {
      merged.back().end = f.end;
    } else {
      merged.push_back(f);
    }
  }
  return merged;
}

Mention Mention::Make(std::string type, std::vector<Fragment> fragments) {
  if (fragments.empty()) throw Error("mention without fragments");
  return Mention{std::move(type), Canonicalize(std::move(fragments))};
}

int Mention::length() const {
  int n = 0;
  for (const Fragment &f : fragments) n += f.size();
  return n;
}

std::vector<int> Mention::tokens() const {
  std::vector<int> out;
  out.reserve(length());
  for (const Fragment &f : fragments) {
    for (int i = f.start; i < f.end; ++i) out.push_back(i);
  }
  return out;
}

bool Mention::Contains(int token) const {
  for (const Fragment &f : fragments) {
    if (token >= f.start && token < f.end) return true;
  }
  return false;
}

bool Mention::Overlaps(const Mention &other) const {
  for (const Fragment &a : fragments) {
    for (const Fragment &b : other.fragments) {
      if (a.start < b.end && b.start < a.end) return true;
    }
  }
  return false;
}

bool Sentence::HasDiscontinuous() const {
  return std::any_of(mentions.begin(), mentions.end(),
                     [](const Mention &m) { return m.discontinuous(); });
}

void Validate(const Sentence &sentence) {
  const int n = sentence.size();
  for (const Mention &m : sentence.mentions) {
    if (m.fragments.empty()) throw Error("mention without fragments");
    if (m.type.empty()) throw Error("mention without entity type");
    for (const Fragment &f : m.fragments) {
      if (f.start < 0 || f.end > n || f.start >= f.end) {
        throw Error("fragment [" + std::to_string(f.start) + "," +
                    std::to_string(f.end) + ") outside sentence of " +
                    std::to_string(n) + " tokens");
      }
    }
    if (Canonicalize(m.fragments) != m.fragments) {
      throw Error("mention " + FormatMention(m) + " is not canonical");
    }
  }
  std::vector<Mention> sorted = sentence.mentions;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw Error("duplicate mention " + FormatMention(*dup));
  }
}

void SortMentions(Sentence &sentence) {
  std::sort(sentence.mentions.begin(), sentence.mentions.end());
}

// ---------------------------------------------------------------------------
// Inline format.

namespace {

constexpr std::string_view kDocPrefix = "#doc_id=";

int ParseInt(std::string_view s, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + std::string(s) + "'", line);
  }
  return value;
}

}  // namespace

std::string FormatMention(const Mention &mention) {
  std::string out;
  for (size_t i = 0; i < mention.fragments.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(mention.fragments[i].start);
    out += ',';
    out += std::to_string(mention.fragments[i].end);
  }
  out += ' ';
  out += mention.type;
  return out;
}

Mention ParseMention(std::string_view item, int sentence_size) {
  const size_t space = item.find(' ');
  if (space == std::string_view::npos || space == 0 ||
      space + 1 >= item.size()) {
    throw Error("mention '" + std::string(item) +
                "' is not of the form 's,e[;s,e]* TYPE'");
  }
  std::string type(item.substr(space + 1));
  if (type.find(' ') != std::string::npos) {
    throw Error("entity type '" + type + "' contains a space");
  }
  std::vector<Fragment> fragments;
  for (std::string_view part : SplitView(item.substr(0, space), ';')) {
    const size_t comma = part.find(',');
    if (comma == std::string_view::npos) {
      throw Error("fragment '" + std::string(part) + "' lacks a comma");
    }
    Fragment f{ParseInt(part.substr(0, comma), 0),
               ParseInt(part.substr(comma + 1), 0)};
    if (f.start < 0 || f.end > sentence_size || f.start >= f.end) {
      throw Error("fragment '" + std::string(part) +
                  "' out of range for sentence of " +
                  std::to_string(sentence_size) + " tokens");
    }
    fragments.push_back(f);
  }
  return Mention::Make(std::move(type), std::move(fragments));
}

Corpus ParseInline(std::string_view text) {
  std::vector<std::string_view> lines = SplitLines(text);
  Corpus corpus;
  std::string doc_id;
  int sent_index = 0;
  size_t i = 0;
  while (i < lines.size()) {
    if (lines[i].empty()) {
      ++i;
      continue;
    }
    if (StartsWith(lines[i], kDocPrefix)) {
      std::string next(lines[i].substr(kDocPrefix.size()));
      if (next != doc_id) sent_index = 0;
      doc_id = std::move(next);
      ++i;
      continue;
    }
    const int token_line = static_cast<int>(i) + 1;
    Sentence sentence;
    for (std::string_view tok : SplitView(lines[i], ' ')) {
      if (tok.empty()) throw ParseError("empty token", token_line);
      sentence.tokens.emplace_back(tok);
    }
    std::string_view mention_line =
        i + 1 < lines.size() ? lines[i + 1] : std::string_view();
    if (!mention_line.empty()) {
      for (std::string_view item : SplitView(mention_line, '|')) {
        try {
          sentence.mentions.push_back(ParseMention(item, sentence.size()));
        } catch (const Error &e) {
          throw ParseError(e.what(), token_line + 1);
        }
      }
    }
    if (i + 2 < lines.size() && !lines[i + 2].empty()) {
      throw ParseError("expected blank line after mention line",
                       token_line + 2);
    }
    SortMentions(sentence);
    if (std::adjacent_find(sentence.mentions.begin(),
                           sentence.mentions.end()) !=
        sentence.mentions.end()) {
      throw ParseError("duplicate mention in sentence", token_line + 1);
    }
    sentence.doc_id = doc_id;
    sentence.sent_index = sent_index++;
    corpus.sentences.push_back(std::move(sentence));
    i += 3;
  }
  return corpus;
}

std::string WriteInline(const Corpus &corpus) {
  std::string out;
  std::string doc_id;
  for (const Sentence &s : corpus.sentences) {
    if (s.tokens.empty()) continue;  // not representable
    if (s.doc_id != doc_id) {
      out += kDocPrefix;
      out += s.doc_id;
      out += '\n';
      doc_id = s.doc_id;
    }
    out += Join(s.tokens, " ");
    out += '\n';
    std::vector<Mention> mentions = s.mentions;
    std::sort(mentions.begin(), mentions.end());
    for (size_t k = 0; k < mentions.size(); ++k) {
      if (k > 0) out += '|';
      out += FormatMention(mentions[k]);
    }
    out += "\n\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standoff format.

namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunct(unsigned char c) { return c < 128 && std::ispunct(c); }

}  // namespace

std::vector<TokenSpan> Tokenize(std::string_view text, int offset) {
  std::vector<TokenSpan> tokens;
  int begin = -1;
  auto flush = [&](int end) {
    if (begin >= 0) {
      tokens.push_back({std::string(text.substr(begin, end - begin)),
                        offset + begin, offset + end});
      begin = -1;
    }
  };
  for (int i = 0; i < static_cast<int>(text.size()); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (IsSpace(c)) {
      flush(i);
    } else if (IsPunct(c)) {
      flush(i);
      tokens.push_back({std::string(1, text[i]), offset + i, offset + i + 1});
    } else if (begin < 0) {
      begin = i;
    }
  }
  flush(static_cast<int>(text.size()));
  return tokens;
}

std::vector<CharRange> LineBoundaries(std::string_view text) {
  std::vector<CharRange> ranges;
  size_t begin = 0;
  while (begin <= text.size()) {
    size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    if (std::any_of(line.begin(), line.end(),
                    [](char c) { return !IsSpace(c); })) {
      ranges.push_back({static_cast<int>(begin), static_cast<int>(end)});
    }
    if (end == text.size()) break;
    begin = end + 1;
  }
  return ranges;
}

StandoffResult ParseStandoff(std::string_view text, std::string_view ann,
                             const std::vector<CharRange> &sentence_boundaries,
                             const std::string &doc_id) {
  std::vector<CharRange> ranges = sentence_boundaries.empty()
                                      ? LineBoundaries(text)
                                      : sentence_boundaries;
  StandoffResult result;
  std::vector<std::vector<TokenSpan>> spans;
  for (size_t k = 0; k < ranges.size(); ++k) {
    const CharRange &r = ranges[k];
    if (r.begin < 0 || r.end > static_cast<int>(text.size()) ||
        r.begin > r.end) {
      throw Error("sentence boundary out of text range");
    }
    spans.push_back(Tokenize(text.substr(r.begin, r.end - r.begin), r.begin));
    Sentence s;
    for (const TokenSpan &t : spans.back()) s.tokens.push_back(t.text);
    s.doc_id = doc_id;
    s.sent_index = static_cast<int>(k);
    result.corpus.sentences.push_back(std::move(s));
  }

  auto find_sentence = [&](int offset) -> int {
    for (size_t k = 0; k < ranges.size(); ++k) {
      if (offset >= ranges[k].begin && offset < ranges[k].end) {
        return static_cast<int>(k);
      }
    }
    return -1;
  };

  std::vector<std::string_view> lines = SplitLines(ann);
  for (size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::string_view line = lines[li];
    if (line.empty() || line[0] != 'T') continue;
    std::vector<std::string_view> fields = SplitView(line, '\t');
    if (fields.size() < 2) throw ParseError("malformed entity line", line_no);
    const std::string id(fields[0]);
    std::string_view body = fields[1];
    const size_t space = body.find(' ');
    if (space == std::string_view::npos || space == 0) {
      throw ParseError("malformed entity line", line_no);
    }
    std::string type(body.substr(0, space));
    struct Span {
      int begin, end;
    };
    std::vector<Span> char_spans;
    for (std::string_view part : SplitView(body.substr(space + 1), ';')) {
      std::vector<std::string_view> nums = SplitView(part, ' ');
      if (nums.size() != 2) throw ParseError("malformed offsets", line_no);
      Span sp{ParseInt(nums[0], line_no), ParseInt(nums[1], line_no)};
      if (sp.begin >= sp.end) throw ParseError("empty offset span", line_no);
      char_spans.push_back(sp);
    }
    int sentence = -1;
    bool skip = false;
    std::vector<Fragment> fragments;
    for (const Span &sp : char_spans) {
      const int k = find_sentence(sp.begin);
      if (k < 0 || sp.end > ranges[k].end) {
        result.warnings.push_back(id + ": span " + std::to_string(sp.begin) +
                                  "-" + std::to_string(sp.end) +
                                  " outside any sentence");
        skip = true;
        break;
      }
      if (sentence >= 0 && k != sentence) {
        result.warnings.push_back(id + ": mention crosses sentence boundary");
        skip = true;
        break;
      }
      sentence = k;
      const std::vector<TokenSpan> &toks = spans[k];
      int first = -1, last = -1;
      for (int t = 0; t < static_cast<int>(toks.size()); ++t) {
        if (toks[t].begin == sp.begin) first = t;
        if (toks[t].end == sp.end) last = t;
      }
      if (first < 0 || last < 0 || last < first) {
        const int bad = first < 0 ? sp.begin : sp.end;
        result.warnings.push_back(id + ": offset " + std::to_string(bad) +
                                  " not on a token boundary");
        skip = true;
        break;
      }
      fragments.push_back({first, last + 1});
    }
    if (skip || sentence < 0) continue;
    Mention mention;
    try {
      mention = Mention::Make(type, fragments);
    } catch (const Error &e) {
      result.warnings.push_back(id + ": " + e.what());
      continue;
    }
    std::vector<Mention> &ms = result.corpus.sentences[sentence].mentions;
    if (std::find(ms.begin(), ms.end(), mention) != ms.end()) {
      result.warnings.push_back(id + ": duplicate mention");
      continue;
    }
    ms.push_back(std::move(mention));
  }
  for (Sentence &s : result.corpus.sentences) SortMentions(s);
  return result;
}

// ---------------------------------------------------------------------------
// Analysis.

const char *OverlapCategoryName(OverlapCategory category) {
  switch (category) {
    case OverlapCategory::kNoOverlap:
      return "no_overlap";
    case OverlapCategory::kLeftOverlap:
      return "left_overlap";
    case OverlapCategory::kRightOverlap:
      return "right_overlap";
    case OverlapCategory::kMultiOverlap:
      return "multi_overlap";
  }
  return "unknown";
}

OverlapCategory ClassifyOverlap(const Mention &mention,
                                const std::vector<Mention> &others) {
  if (!mention.discontinuous()) {
    throw Error("overlap category is defined for discontinuous mentions only");
  }
  std::vector<int> shared;
  for (size_t k = 0; k < mention.fragments.size(); ++k) {
    const Mention piece{mention.type, {mention.fragments[k]}};
    for (const Mention &other : others) {
      if (piece.Overlaps(other)) {
        shared.push_back(static_cast<int>(k));
        break;
      }
    }
  }
  if (shared.empty()) return OverlapCategory::kNoOverlap;
  if (shared.size() >= 2) return OverlapCategory::kMultiOverlap;
  if (shared[0] == 0) return OverlapCategory::kLeftOverlap;
  if (shared[0] == static_cast<int>(mention.fragments.size()) - 1) {
    return OverlapCategory::kRightOverlap;
  }
  // Only an inner component is shared; neither left nor right applies.
  return OverlapCategory::kMultiOverlap;
}

OverlapCategory ClassifyOverlapAt(const std::vector<Mention> &mentions,
                                  size_t index) {
  std::vector<Mention> others;
  others.reserve(mentions.size());
  for (size_t k = 0; k < mentions.size(); ++k) {
    if (k != index) others.push_back(mentions[k]);
  }
  return ClassifyOverlap(mentions[index], others);
}

namespace {

// Documents keyed by doc_id; sentences without one are their own document.
std::vector<std::vector<size_t>> GroupDocuments(const Corpus &corpus) {
  std::vector<std::vector<size_t>> docs;
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    const std::string &id = corpus.sentences[i].doc_id;
    if (id.empty()) {
      docs.push_back({i});
      continue;
    }
    auto [it, inserted] = index.emplace(id, docs.size());
    if (inserted) docs.emplace_back();
    docs[it->second].push_back(i);
  }
  return docs;
}

double Ratio(double num, int64_t den) { return den > 0 ? num / den : 0.0; }

}  // namespace

StatsReport ComputeStats(const Corpus &corpus) {
  StatsReport r;
  r.documents = static_cast<int64_t>(GroupDocuments(corpus).size());
  r.sentences = static_cast<int64_t>(corpus.sentences.size());
  int64_t length_sum = 0, disc_length_sum = 0, interval_sum = 0;
  for (const Sentence &s : corpus.sentences) {
    r.tokens += s.size();
    for (size_t k = 0; k < s.mentions.size(); ++k) {
      const Mention &m = s.mentions[k];
      ++r.mentions;
      length_sum += m.length();
      if (m.discontinuous()) {
        ++r.disc_mentions;
        disc_length_sum += m.length();
        interval_sum += m.interval_length();
        const size_t bucket = std::min<size_t>(m.fragments.size() - 2,
                                               r.component_histogram.size() - 1);
        ++r.component_histogram[bucket];
        ++r.overlap_histogram[static_cast<int>(ClassifyOverlapAt(s.mentions, k))];
      } else {
        for (size_t j = 0; j < s.mentions.size(); ++j) {
          if (j != k && m.Overlaps(s.mentions[j])) {
            ++r.continuous_overlap;
            break;
          }
        }
      }
    }
  }
  r.disc_percentage = Ratio(100.0 * r.disc_mentions, r.mentions);
  r.avg_mention_length = Ratio(length_sum, r.mentions);
  r.avg_disc_mention_length = Ratio(disc_length_sum, r.disc_mentions);
  r.avg_interval_length = Ratio(interval_sum, r.disc_mentions);
  return r;
}

namespace {

std::vector<std::pair<std::string, std::string>> StatsFields(
    const StatsReport &r) {
  auto real = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  auto integer = [](int64_t v) { return std::to_string(v); };
  return {
      {"documents", integer(r.documents)},
      {"sentences", integer(r.sentences)},
      {"tokens", integer(r.tokens)},
      {"mentions", integer(r.mentions)},
      {"disc_mentions", integer(r.disc_mentions)},
      {"disc_percentage", real(r.disc_percentage)},
      {"avg_mention_length", real(r.avg_mention_length)},
      {"avg_disc_mention_length", real(r.avg_disc_mention_length)},
      {"avg_interval_length", real(r.avg_interval_length)},
      {"components_2", integer(r.component_histogram[0])},
      {"components_3", integer(r.component_histogram[1])},
      {"components_4plus", integer(r.component_histogram[2])},
      {"overlap_none", integer(r.overlap_histogram[0])},
      {"overlap_left", integer(r.overlap_histogram[1])},
      {"overlap_right", integer(r.overlap_histogram[2])},
      {"overlap_multi", integer(r.overlap_histogram[3])},
      {"continuous_overlap", integer(r.continuous_overlap)},
  };
}

}  // namespace

std::string FormatStatsText(const StatsReport &report) {
  std::string out;
  for (const auto &[key, value] : StatsFields(report)) {
    out += key + "=" + value + "\n";
  }
  return out;
}

std::string FormatStatsJsonLines(const StatsReport &report) {
  std::string out;
  for (const auto &[key, value] : StatsFields(report)) {
    out += "{\"metric\": \"" + key + "\", \"value\": " + value + "}\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transformations.

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int Find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Corpus FlattenForFlatModel(const Corpus &corpus) {
  Corpus out;
  out.split_name = corpus.split_name;
  for (const Sentence &s : corpus.sentences) {
    Sentence flat = s;
    flat.mentions.clear();
    std::vector<Mention> sorted = s.mentions;
    std::sort(sorted.begin(), sorted.end());
    const int n = static_cast<int>(sorted.size());
    std::vector<Fragment> cover(n);
    for (int i = 0; i < n; ++i) cover[i] = {sorted[i].first(), sorted[i].last()};
    DisjointSets sets(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (cover[i].start < cover[j].end && cover[j].start < cover[i].end) {
          sets.Union(i, j);
        }
      }
    }
    // Sorted order makes the group root the leftmost mention.
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[sets.Find(i)].push_back(i);
    for (const auto &[root, members] : groups) {
      Fragment span = cover[members.front()];
      std::map<std::string, int> votes;
      for (int i : members) {
        span.start = std::min(span.start, cover[i].start);
        span.end = std::max(span.end, cover[i].end);
        ++votes[sorted[i].type];
      }
      int best = 0;
      for (const auto &[t, count] : votes) best = std::max(best, count);
      std::string type;
      for (int i : members) {
        if (votes[sorted[i].type] == best) {
          type = sorted[i].type;
          break;
        }
      }
      flat.mentions.push_back(Mention{type, {span}});
    }
    SortMentions(flat);
    out.sentences.push_back(std::move(flat));
  }
  return out;
}

Corpus Resample(const Corpus &corpus, ResampleMode mode, uint64_t seed) {
  std::vector<size_t> disc, plain;
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    (corpus.sentences[i].HasDiscontinuous() ? disc : plain).push_back(i);
  }
  if (mode != ResampleMode::kDiscOnly && disc.empty()) {
    throw Error("corpus has no sentence with a discontinuous mention");
  }
  Rng rng(seed);
  std::vector<size_t> keep;
  switch (mode) {
    case ResampleMode::kDiscOnly:
      keep = disc;
      break;
    case ResampleMode::kUnderSample: {
      std::vector<size_t> pool = plain;
      rng.Shuffle(pool);
      pool.resize(std::min(pool.size(), disc.size()));
      keep = disc;
      keep.insert(keep.end(), pool.begin(), pool.end());
      std::sort(keep.begin(), keep.end());
      break;
    }
    case ResampleMode::kOverSample: {
      keep.resize(corpus.sentences.size());
      std::iota(keep.begin(), keep.end(), 0);
      std::vector<size_t> order = disc;
      rng.Shuffle(order);
      for (size_t extra = disc.size(), k = 0; extra < plain.size();
           ++extra, ++k) {
        keep.push_back(order[k % order.size()]);
      }
      break;
    }
  }
  Corpus out;
  out.split_name = corpus.split_name;
  out.sentences.reserve(keep.size());
  for (size_t i : keep) out.sentences.push_back(corpus.sentences[i]);
  return out;
}

CorpusSplit Split(const Corpus &corpus, double train_fraction,
                  double dev_fraction, uint64_t seed) {
  if (!(train_fraction > 0) || !(dev_fraction > 0) ||
      train_fraction + dev_fraction >= 1.0) {
    throw Error("split fractions must be positive and sum to less than 1");
  }
  std::vector<std::vector<size_t>> docs = GroupDocuments(corpus);
  const int n = static_cast<int>(docs.size());
  if (n < 3) throw Error("need at least 3 documents to split");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  int n_train = static_cast<int>(std::lround(train_fraction * n));
  int n_dev = static_cast<int>(std::lround(dev_fraction * n));
  n_train = std::clamp(n_train, 1, n - 2);
  n_dev = std::clamp(n_dev, 1, n - n_train - 1);

  std::vector<int> part(corpus.sentences.size());
  for (int k = 0; k < n; ++k) {
    const int which = k < n_train ? 0 : (k < n_train + n_dev ? 1 : 2);
    for (size_t i : docs[order[k]]) part[i] = which;
  }
  CorpusSplit split;
  split.train.split_name = "train";
  split.dev.split_name = "dev";
  split.test.split_name = "test";
  Corpus *targets[] = {&split.train, &split.dev, &split.test};
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    targets[part[i]]->sentences.push_back(corpus.sentences[i]);
  }
  return split;
}

StandoffDocument WriteStandoff(const Corpus &corpus) {
  StandoffDocument doc;
  int next_id = 1;
  for (const Sentence &s : corpus.sentences) {
    std::vector<int> begins;
    for (int t = 0; t < s.size(); ++t) {
      if (t > 0) doc.text += ' ';
      begins.push_back(static_cast<int>(doc.text.size()));
      doc.text += s.tokens[t];
    }
    doc.text += '\n';
    auto end_of = [&](int token) {
      return begins[token] + static_cast<int>(s.tokens[token].size());
    };
    for (const Mention &m : s.mentions) {
      std::string offsets, surface;
      for (const Fragment &f : m.fragments) {
        if (!offsets.empty()) {
          offsets += ';';
          surface += ' ';
        }
        const int b = begins[f.start];
        const int e = end_of(f.end - 1);
        offsets += std::to_string(b) + " " + std::to_string(e);
        surface += doc.text.substr(b, e - b);
      }
      doc.ann += "T" + std::to_string(next_id++) + "\t" + m.type + " " +
                 offsets + "\t" + surface + "\n";
    }
  }
  return doc;
}

}  // namespace dner
