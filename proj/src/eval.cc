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

#include "dner/eval.h"

#include <algorithm>
#include <cstdio>
#include <functional>

#include <nlohmann/json.hpp>

#include "dner/error.h"

namespace dner {

namespace {

std::vector<Mention> Unique(std::vector<Mention> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool Has(const std::vector<Mention> &sorted, const Mention &m) {
  return std::binary_search(sorted.begin(), sorted.end(), m);
}

void CheckAligned(const MentionSets &gold, const MentionSets &pred) {
  if (gold.size() != pred.size()) {
    throw Error("gold has " + std::to_string(gold.size()) +
                " sentences, prediction has " + std::to_string(pred.size()));
  }
}

// Counts over sentences, keeping the mentions accepted by the filters.
Prf Count(const MentionSets &gold, const MentionSets &pred,
          const std::function<bool(size_t)> &use_sentence,
          const std::function<bool(const Mention &)> &keep_gold,
          const std::function<bool(const Mention &)> &keep_pred) {
  CheckAligned(gold, pred);
  int64_t correct = 0, predicted = 0, total = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (!use_sentence(i)) continue;
    std::vector<Mention> g, p;
    for (const Mention &m : gold[i]) {
      if (keep_gold(m)) g.push_back(m);
    }
    for (const Mention &m : pred[i]) {
      if (keep_pred(m)) p.push_back(m);
    }
    g = Unique(std::move(g));
    p = Unique(std::move(p));
    total += static_cast<int64_t>(g.size());
    predicted += static_cast<int64_t>(p.size());
    for (const Mention &m : p) {
      if (Has(g, m)) ++correct;
    }
  }
  return Prf::FromCounts(correct, predicted, total);
}

bool Always(size_t) { return true; }
bool Any(const Mention &) { return true; }
bool Disc(const Mention &m) { return m.discontinuous(); }

}  // namespace

Prf Prf::FromCounts(int64_t correct, int64_t predicted, int64_t gold) {
  Prf r;
  r.correct = correct;
  r.predicted = predicted;
  r.gold = gold;
  r.precision = predicted > 0 ? static_cast<double>(correct) / predicted : 0;
  r.recall = gold > 0 ? static_cast<double>(correct) / gold : 0;
  r.f1 = r.precision + r.recall > 0
             ? 2 * r.precision * r.recall / (r.precision + r.recall)
             : 0;
  return r;
}

MentionSets GoldSets(const Corpus &corpus) {
  MentionSets out;
  out.reserve(corpus.size());
  for (const Sentence &s : corpus.sentences) out.push_back(s.mentions);
  return out;
}

Prf StrictPrf(const MentionSets &gold, const MentionSets &pred) {
  return Count(gold, pred, Always, Any, Any);
}

SubsetPrf EvalDiscSentences(const MentionSets &gold, const MentionSets &pred) {
  CheckAligned(gold, pred);
  std::vector<bool> use(gold.size());
  SubsetPrf out;
  for (size_t i = 0; i < gold.size(); ++i) {
    use[i] = std::any_of(gold[i].begin(), gold[i].end(), Disc);
    if (use[i]) ++out.sentences;
  }
  out.empty = out.sentences == 0;
  out.prf = Count(gold, pred, [&](size_t i) { return use[i]; }, Any, Any);
  return out;
}

Prf EvalDiscOnly(const MentionSets &gold, const MentionSets &pred,
                 const DiscOnlyOptions &options) {
  if (!options.count_continuous_predictions) {
    return Count(gold, pred, Always, Disc, Disc);
  }
  return Count(gold, pred, Always, Disc, Any);
}

std::array<CategoryRow, kNumOverlapCategories> EvalByCategory(
    const MentionSets &gold, const MentionSets &pred) {
  CheckAligned(gold, pred);
  std::array<int64_t, kNumOverlapCategories> n_gold{}, found{}, n_pred{},
      correct{};
  for (size_t i = 0; i < gold.size(); ++i) {
    const std::vector<Mention> g = Unique(gold[i]);
    const std::vector<Mention> p = Unique(pred[i]);
    for (size_t k = 0; k < g.size(); ++k) {
      if (!g[k].discontinuous()) continue;
      const int c = static_cast<int>(ClassifyOverlapAt(g, k));
      ++n_gold[c];
      if (Has(p, g[k])) ++found[c];
    }
    for (size_t k = 0; k < p.size(); ++k) {
      if (!p[k].discontinuous()) continue;
      const int c = static_cast<int>(ClassifyOverlapAt(p, k));
      ++n_pred[c];
      if (Has(g, p[k])) ++correct[c];
    }
  }
  std::array<CategoryRow, kNumOverlapCategories> rows;
  for (int c = 0; c < kNumOverlapCategories; ++c) {
    Prf prf;
    prf.correct = correct[c];
    prf.predicted = n_pred[c];
    prf.gold = n_gold[c];
    prf.precision = n_pred[c] > 0 ? static_cast<double>(correct[c]) / n_pred[c]
                                  : 0;
    prf.recall = n_gold[c] > 0 ? static_cast<double>(found[c]) / n_gold[c] : 0;
    prf.f1 = prf.precision + prf.recall > 0
                 ? 2 * prf.precision * prf.recall / (prf.precision + prf.recall)
                 : 0;
    rows[c] = {static_cast<OverlapCategory>(c), prf};
  }
  return rows;
}

LengthBreakdown RecallByLength(const MentionSets &gold,
                               const MentionSets &pred) {
  CheckAligned(gold, pred);
  LengthBreakdown out;
  for (const char *label : {"1", "2", "3", "4", "5+"}) {
    out.by_length.push_back({label, 0, 0, 0});
  }
  for (const char *label : {"0", "1", "2", "3", "4+"}) {
    out.by_interval.push_back({label, 0, 0, 0});
  }
  for (size_t i = 0; i < gold.size(); ++i) {
    const std::vector<Mention> g = Unique(gold[i]);
    const std::vector<Mention> p = Unique(pred[i]);
    for (const Mention &m : g) {
      const bool hit = Has(p, m);
      RecallBucket &len = out.by_length[std::min(m.length(), 5) - 1];
      RecallBucket &gap = out.by_interval[std::min(m.interval_length(), 4)];
      ++len.gold;
      ++gap.gold;
      if (hit) {
        ++len.found;
        ++gap.found;
      }
    }
  }
  for (auto *buckets : {&out.by_length, &out.by_interval}) {
    for (RecallBucket &b : *buckets) {
      b.recall = b.gold > 0 ? static_cast<double>(b.found) / b.gold : 0;
    }
  }
  return out;
}

EvalReport Evaluate(const MentionSets &gold, const MentionSets &pred,
                    const DiscOnlyOptions &options) {
  EvalReport r;
  r.overall = StrictPrf(gold, pred);
  r.disc_sentences = EvalDiscSentences(gold, pred);
  r.disc_only = EvalDiscOnly(gold, pred, options);
  r.by_category = EvalByCategory(gold, pred);
  r.by_length = RecallByLength(gold, pred);
  return r;
}

EvalReport Evaluate(const Corpus &gold, const Corpus &pred,
                    const DiscOnlyOptions &options) {
  if (gold.size() != pred.size()) {
    throw Error("gold has " + std::to_string(gold.size()) +
                " sentences, prediction has " + std::to_string(pred.size()));
  }
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold.sentences[i].tokens != pred.sentences[i].tokens) {
      throw Error("sentence " + std::to_string(i + 1) +
                  ": tokens differ between gold and prediction");
    }
  }
  return Evaluate(GoldSets(gold), GoldSets(pred), options);
}

namespace {

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string PrfLine(const std::string &name, const Prf &p) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-16s %8.4f %8.4f %8.4f %8lld %8lld %8lld\n",
                name.c_str(), p.precision, p.recall, p.f1,
                static_cast<long long>(p.correct),
                static_cast<long long>(p.predicted),
                static_cast<long long>(p.gold));
  return buf;
}

nlohmann::ordered_json PrfJson(const Prf &p) {
  nlohmann::ordered_json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  j["correct"] = p.correct;
  j["predicted"] = p.predicted;
  j["gold"] = p.gold;
  return j;
}

nlohmann::ordered_json BucketsJson(const std::vector<RecallBucket> &buckets) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const RecallBucket &b : buckets) {
    arr.push_back({{"bucket", b.label},
                   {"gold", b.gold},
                   {"found", b.found},
                   {"recall", b.recall}});
  }
  return arr;
}

}  // namespace

std::string FormatReportText(const EvalReport &r) {
  std::string out;
  char head[160];
  std::snprintf(head, sizeof(head), "%-16s %8s %8s %8s %8s %8s %8s\n", "",
                "P", "R", "F1", "correct", "pred", "gold");
  out += head;
  out += PrfLine("overall", r.overall);
  if (r.disc_sentences.empty) {
    out += "disc_sentences   (no sentence with a discontinuous mention)\n";
  } else {
    out += PrfLine("disc_sentences", r.disc_sentences.prf);
  }
  out += PrfLine("disc_only", r.disc_only);
  out += "\nby overlap category\n";
  for (const CategoryRow &row : r.by_category) {
    out += PrfLine(OverlapCategoryName(row.category), row.prf);
  }
  auto buckets = [&](const char *title, const std::vector<RecallBucket> &bs) {
    out += std::string("\nrecall by ") + title + "\n";
    for (const RecallBucket &b : bs) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%-6s %8s %6lld / %lld\n",
                    b.label.c_str(), Fixed(b.recall).c_str(),
                    static_cast<long long>(b.found),
                    static_cast<long long>(b.gold));
      out += buf;
    }
  };
  buckets("mention length", r.by_length.by_length);
  buckets("interval length", r.by_length.by_interval);
  return out;
}

std::string FormatReportJson(const EvalReport &r) {
  nlohmann::ordered_json j;
  j["overall"] = PrfJson(r.overall);
  nlohmann::ordered_json ds = PrfJson(r.disc_sentences.prf);
  ds["empty"] = r.disc_sentences.empty;
  ds["sentences"] = r.disc_sentences.sentences;
  j["disc_sentences"] = ds;
  j["disc_only"] = PrfJson(r.disc_only);
  nlohmann::ordered_json cats;
  for (const CategoryRow &row : r.by_category) {
    cats[OverlapCategoryName(row.category)] = PrfJson(row.prf);
  }
  j["by_category"] = cats;
  j["by_length"] = {{"mention_length", BucketsJson(r.by_length.by_length)},
                    {"interval_length", BucketsJson(r.by_length.by_interval)}};
  return j.dump(2) + "\n";
}

}  // namespace dner
