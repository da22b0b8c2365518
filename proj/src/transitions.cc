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

#include "dner/transitions.h"

#include <algorithm>
#include <array>
#include <set>

#include <nlohmann/json.hpp>

#include "dner/error.h"
#include "dner/text.h"

namespace dner {

std::string Action::ToString() const {
  switch (kind) {
    case ActionKind::kShift:
      return "SHIFT";
    case ActionKind::kOut:
      return "OUT";
    case ActionKind::kReduce:
      return "REDUCE";
    case ActionKind::kLeftReduce:
      return "LREDUCE";
    case ActionKind::kRightReduce:
      return "RREDUCE";
    case ActionKind::kComplete:
      return "COMPLETE:" + type;
  }
  return "?";
}

Action Action::Parse(std::string_view token) {
  if (token == "SHIFT") return Shift();
  if (token == "OUT") return Out();
  if (token == "REDUCE") return Reduce();
  if (token == "LREDUCE") return LeftReduce();
  if (token == "RREDUCE") return RightReduce();
  constexpr std::string_view kComplete = "COMPLETE:";
  if (StartsWith(token, kComplete) && token.size() > kComplete.size()) {
    return Complete(std::string(token.substr(kComplete.size())));
  }
  throw Error("unknown action '" + std::string(token) + "'");
}

std::string FormatActions(const std::vector<Action> &actions) {
  std::string out;
  for (size_t i = 0; i < actions.size(); ++i) {
    if (i > 0) out += ' ';
    out += actions[i].ToString();
  }
  return out;
}

std::vector<Action> ParseActions(std::string_view line) {
  std::vector<Action> actions;
  line = Trim(line);
  if (line.empty()) return actions;
  for (std::string_view tok : SplitView(line, ' ')) {
    if (!tok.empty()) actions.push_back(Action::Parse(tok));
  }
  return actions;
}

ActionInventory::ActionInventory(std::vector<std::string> types)
    : types_(std::move(types)) {}

int ActionInventory::Index(const Action &action) const {
  if (action.kind != ActionKind::kComplete) {
    return static_cast<int>(action.kind);
  }
  auto it = std::find(types_.begin(), types_.end(), action.type);
  if (it == types_.end()) throw Error("unknown entity type " + action.type);
  return kNumStructural + static_cast<int>(it - types_.begin());
}

Action ActionInventory::At(int index) const {
  if (index < kNumStructural) return {static_cast<ActionKind>(index), {}};
  return Action::Complete(types_.at(index - kNumStructural));
}

std::vector<int> Span::tokens() const {
  std::vector<int> out;
  for (const Fragment &f : fragments) {
    for (int i = f.start; i < f.end; ++i) out.push_back(i);
  }
  return out;
}

namespace {

std::vector<Fragment> FromTokens(const std::vector<int> &sorted_tokens) {
  std::vector<Fragment> out;
  for (int t : sorted_tokens) {
    if (!out.empty() && out.back().end == t) {
      ++out.back().end;
    } else {
      out.push_back({t, t + 1});
    }
  }
  return out;
}

std::vector<Fragment> UnionFragments(const Span &a, const Span &b) {
  std::vector<int> ta = a.tokens(), tb = b.tokens(), merged;
  std::set_union(ta.begin(), ta.end(), tb.begin(), tb.end(),
                 std::back_inserter(merged));
  return FromTokens(merged);
}

}  // namespace

ParserState InitialState(int sentence_len) {
  if (sentence_len < 0) throw Error("negative sentence length");
  return ParserState{};
}

bool IsTerminal(const ParserState &state, int sentence_len) {
  return state.buffer_pos >= sentence_len && state.stack.empty();
}

bool IsValid(const ParserState &state, const Action &action, int sentence_len,
             int budget) {
  const bool buffer = state.buffer_pos < sentence_len;
  const size_t depth = state.stack.size();
  if (state.step_count >= budget) {
    if (depth > 0) return action.kind == ActionKind::kComplete;
    return buffer && action.kind == ActionKind::kOut;
  }
  switch (action.kind) {
    case ActionKind::kShift:
    case ActionKind::kOut:
      return buffer;
    case ActionKind::kComplete:
      return depth >= 1 && !action.type.empty();
    case ActionKind::kReduce:
    case ActionKind::kLeftReduce:
    case ActionKind::kRightReduce:
      return depth >= 2;
  }
  return false;
}

std::vector<Action> ValidActions(const ParserState &state, int sentence_len,
                                 const std::vector<std::string> &types,
                                 int budget) {
  ActionInventory inventory(types);
  std::vector<Action> out;
  for (int i = 0; i < inventory.size(); ++i) {
    Action a = inventory.At(i);
    if (IsValid(state, a, sentence_len, budget)) out.push_back(std::move(a));
  }
  return out;
}

std::vector<bool> ValidMask(const ParserState &state, int sentence_len,
                            const ActionInventory &inventory, int budget) {
  std::vector<bool> mask(inventory.size());
  for (int i = 0; i < inventory.size(); ++i) {
    mask[i] = IsValid(state, inventory.At(i), sentence_len, budget);
  }
  return mask;
}

ParserState Apply(const ParserState &state, const Action &action,
                  int sentence_len, int budget) {
  if (!IsValid(state, action, sentence_len, budget)) {
    throw Error("action " + action.ToString() + " is not valid in this state");
  }
  ParserState next = state;
  switch (action.kind) {
    case ActionKind::kShift:
      next.stack.push_back(
          Span{{{state.buffer_pos, state.buffer_pos + 1}}, next.next_span_id++});
      ++next.buffer_pos;
      break;
    case ActionKind::kOut:
      ++next.buffer_pos;
      break;
    case ActionKind::kComplete:
      next.outputs.push_back(
          Mention{action.type, std::move(next.stack.back().fragments)});
      next.stack.pop_back();
      break;
    case ActionKind::kReduce:
    case ActionKind::kLeftReduce:
    case ActionKind::kRightReduce: {
      Span s0 = std::move(next.stack.back());
      next.stack.pop_back();
      Span s1 = std::move(next.stack.back());
      next.stack.pop_back();
      Span merged{UnionFragments(s1, s0), next.next_span_id++};
      if (action.kind == ActionKind::kLeftReduce) {
        next.stack.push_back(std::move(s1));
      } else if (action.kind == ActionKind::kRightReduce) {
        next.stack.push_back(std::move(s0));
      }
      next.stack.push_back(std::move(merged));
      break;
    }
  }
  next.history.push_back(action);
  ++next.step_count;
  return next;
}

std::vector<Mention> Decode(const std::vector<Action> &actions,
                            int sentence_len, int budget) {
  if (budget < 0) budget = DefaultBudget(sentence_len);
  ParserState state = InitialState(sentence_len);
  for (size_t k = 0; k < actions.size(); ++k) {
    if (!IsValid(state, actions[k], sentence_len, budget)) {
      throw Error("invalid action " + actions[k].ToString() + " at step " +
                  std::to_string(k));
    }
    state = Apply(state, actions[k], sentence_len, budget);
  }
  if (!IsTerminal(state, sentence_len)) {
    throw Error("action sequence ends in a non-terminal state");
  }
  std::vector<Mention> out = std::move(state.outputs);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Oracle.

void CheckNotNested(const std::vector<Mention> &mentions) {
  std::vector<std::vector<int>> tokens;
  for (const Mention &m : mentions) tokens.push_back(m.tokens());
  for (size_t i = 0; i < mentions.size(); ++i) {
    for (size_t j = 0; j < mentions.size(); ++j) {
      if (i == j || tokens[i].size() >= tokens[j].size()) continue;
      if (std::includes(tokens[j].begin(), tokens[j].end(), tokens[i].begin(),
                        tokens[i].end())) {
        throw Error("nested mentions: " + FormatMention(mentions[i]) +
                    " inside " + FormatMention(mentions[j]));
      }
    }
  }
}

namespace {

// One oracle pass over the mentions flagged active.
class OracleRun {
 public:
  OracleRun(int n, const std::vector<Mention> &gold,
            const std::vector<bool> &active)
      : n_(n), budget_(DefaultBudget(n)), gold_(gold), active_(active),
        done_(gold.size(), false) {
    for (const Mention &m : gold) tokens_.push_back(m.tokens());
  }

  // Adjacent tokens with the same set of active mentions form one unit: no
  // mention starts or ends inside it, so it is built before settling.
  void Run() {
    std::vector<std::vector<size_t>> owners(n_);
    for (int i = 0; i < n_; ++i) {
      for (size_t k = 0; k < gold_.size(); ++k) {
        if (active_[k] && gold_[k].Contains(i)) owners[i].push_back(k);
      }
    }
    for (int i = 0; i < n_; ++i) {
      if (owners[i].empty()) {
        Emit(Action::Out());
        continue;
      }
      const bool joins = i > 0 && owners[i] == owners[i - 1];
      Emit(Action::Shift());
      if (joins) Emit(Action::Reduce());
      if (i + 1 < n_ && owners[i + 1] == owners[i]) continue;
      Settle();
    }
    Settle();
  }

  const std::vector<Action> &actions() const { return actions_; }
  const std::vector<bool> &done() const { return done_; }
  const ParserState &state() const { return state_; }

 private:
  bool Unfinished(size_t k) const { return active_[k] && !done_[k]; }

  // span == mention tokens restricted to [0, max(span)].
  bool IsPrefix(const std::vector<int> &span, size_t k) const {
    const std::vector<int> &m = tokens_[k];
    const int last = span.back();
    auto end = std::upper_bound(m.begin(), m.end(), last);
    return static_cast<size_t>(end - m.begin()) == span.size() &&
           std::equal(span.begin(), span.end(), m.begin());
  }

  bool Subset(const std::vector<int> &span, size_t k) const {
    return std::includes(tokens_[k].begin(), tokens_[k].end(), span.begin(),
                         span.end());
  }

  bool TryComplete() {
    if (state_.stack.empty()) return false;
    const std::vector<int> top = state_.stack.back().tokens();
    for (size_t k = 0; k < gold_.size(); ++k) {
      if (!Unfinished(k) || tokens_[k] != top) continue;
      bool prefix_of_other = false;
      for (size_t j = 0; j < gold_.size() && !prefix_of_other; ++j) {
        prefix_of_other = j != k && Unfinished(j) &&
                          tokens_[j].size() > top.size() && IsPrefix(top, j);
      }
      if (prefix_of_other) continue;
      done_[k] = true;
      Emit(Action::Complete(gold_[k].type));
      return true;
    }
    return false;
  }

  bool TryReduce() {
    const size_t depth = state_.stack.size();
    if (depth < 2) return false;
    const std::vector<int> s0 = state_.stack[depth - 1].tokens();
    const std::vector<int> s1 = state_.stack[depth - 2].tokens();
    std::vector<int> both;
    std::set_union(s1.begin(), s1.end(), s0.begin(), s0.end(),
                   std::back_inserter(both));
    if (both.size() != s0.size() + s1.size()) return false;
    std::vector<bool> target(gold_.size(), false);
    bool any = false;
    for (size_t k = 0; k < gold_.size(); ++k) {
      target[k] = Unfinished(k) && IsPrefix(both, k);
      any = any || target[k];
    }
    if (!any) return false;
    auto required = [&](const std::vector<int> &span) {
      for (size_t k = 0; k < gold_.size(); ++k) {
        if (Unfinished(k) && !target[k] && Subset(span, k)) return true;
      }
      return false;
    };
    if (required(s1)) {
      Emit(Action::LeftReduce());
    } else if (required(s0)) {
      Emit(Action::RightReduce());
    } else {
      Emit(Action::Reduce());
    }
    return true;
  }

  void Settle() {
    while (TryComplete() || TryReduce()) {
    }
  }

  void Emit(const Action &action) {
    state_ = Apply(state_, action, n_, budget_);
    actions_.push_back(action);
  }

  int n_;
  int budget_;
  const std::vector<Mention> &gold_;
  std::vector<std::vector<int>> tokens_;
  std::vector<bool> active_;
  std::vector<bool> done_;
  ParserState state_;
  std::vector<Action> actions_;
};

}  // namespace

OracleResult Oracle(const Sentence &sentence) {
  Validate(sentence);
  std::vector<Mention> gold = sentence.mentions;
  std::sort(gold.begin(), gold.end());
  CheckNotNested(gold);

  const int n = sentence.size();
  std::vector<bool> active(gold.size(), true);
  while (true) {
    OracleRun run(n, gold, active);
    run.Run();
    const ParserState &end = run.state();
    if (end.stack.empty()) {
      OracleResult result;
      result.actions = run.actions();
      for (size_t k = 0; k < gold.size(); ++k) {
        if (!run.done()[k]) result.uncovered.push_back(gold[k]);
      }
      return result;
    }
    // Spans are stranded on the stack. Drop the mentions that were not
    // produced and replay; tokens used only by dropped mentions become OUT.
    bool dropped = false;
    for (size_t k = 0; k < gold.size(); ++k) {
      if (active[k] && !run.done()[k]) {
        active[k] = false;
        dropped = true;
      }
    }
    if (!dropped) {
      for (const Span &span : end.stack) {
        for (int t : span.tokens()) {
          for (size_t k = 0; k < gold.size(); ++k) {
            if (active[k] && gold[k].Contains(t)) active[k] = false;
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Trace.

namespace {

std::string SpanText(const Sentence &sentence, const Span &span) {
  std::vector<std::string> words;
  for (int t : span.tokens()) words.push_back(sentence.tokens[t]);
  return Join(words, " ");
}

}  // namespace

TraceReport Trace(const Sentence &sentence,
                  const std::vector<Action> &actions) {
  std::vector<std::string> types;
  for (const Mention &m : sentence.mentions) types.push_back(m.type);
  for (const Action &a : actions) {
    if (a.kind == ActionKind::kComplete) types.push_back(a.type);
  }
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());

  const int n = sentence.size();
  const int budget = DefaultBudget(n);
  TraceReport report;
  ParserState state = InitialState(n);
  for (size_t k = 0; k < actions.size(); ++k) {
    TraceRecord rec;
    rec.step = static_cast<int>(k);
    for (const Span &span : state.stack) {
      rec.stack.push_back(SpanText(sentence, span));
    }
    for (int t = state.buffer_pos; t < n; ++t) {
      rec.buffer.push_back(sentence.tokens[t]);
    }
    rec.valid = ValidActions(state, n, types, budget);
    rec.chosen = actions[k];
    if (!IsValid(state, actions[k], n, budget)) {
      throw Error("invalid action " + actions[k].ToString() + " at step " +
                  std::to_string(k));
    }
    state = Apply(state, actions[k], n, budget);
    report.records.push_back(std::move(rec));
  }
  report.outputs = std::move(state.outputs);
  return report;
}

std::string FormatTraceJsonLines(const TraceReport &report) {
  std::string out;
  for (const TraceRecord &rec : report.records) {
    nlohmann::ordered_json j;
    j["step"] = rec.step;
    j["stack"] = rec.stack;
    j["buffer"] = rec.buffer;
    std::vector<std::string> valid;
    for (const Action &a : rec.valid) valid.push_back(a.ToString());
    j["valid"] = valid;
    j["action"] = rec.chosen.ToString();
    out += j.dump() + "\n";
  }
  return out;
}

std::string FormatTraceTable(const TraceReport &report) {
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"step", "stack", "buffer", "action"});
  for (const TraceRecord &rec : report.records) {
    std::vector<std::string> stack;
    for (const std::string &s : rec.stack) stack.push_back("[" + s + "]");
    rows.push_back({std::to_string(rec.step), Join(stack, " "),
                    Join(rec.buffer, " "), rec.chosen.ToString()});
  }
  std::array<size_t, 4> width{};
  for (const auto &row : rows) {
    for (size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto &row : rows) {
    std::string line;
    for (size_t c = 0; c < 4; ++c) {
      line += row[c];
      if (c + 1 < 4) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace dner
