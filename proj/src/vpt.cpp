#include "vptk/vpt.hpp"

#include <algorithm>
#include <map>

#include "vptk/error.hpp"

namespace vptk {

namespace {

void check_output(const OutputAlphabet& out, const Word& w, const char* where) {
  for (const auto& s : w)
    if (!out.contains(s))
      throw ModelError(std::string(where) + ": output symbol '" + s +
                       "' is not in the output alphabet");
}

}  // namespace

Vpt::Vpt(VptDefinition def) : def_(std::move(def)) {
  const std::size_t n = def_.states.size();
  if (def_.input.calls().empty() || def_.input.returns().empty())
    throw ModelError("input alphabet needs at least one call and one return");
  if (def_.stack.find("⊥"))
    throw ModelError("'⊥' is the implicit stack bottom and cannot be declared");
  for (StateId q : def_.initial)
    if (q >= n) throw ModelError("initial state id out of range");
  for (StateId q : def_.final)
    if (q >= n) throw ModelError("final state id out of range");

  auto check = [&](const VptTransition& t, Tag tag, const char* kind) {
    if (t.from >= n || t.to >= n)
      throw ModelError(std::string(kind) + " transition references an undeclared state");
    if (t.stack >= def_.stack.size())
      throw ModelError(std::string(kind) +
                       " transition references an undeclared stack symbol");
    if (def_.input.tag_of(t.symbol) != tag)
      throw ModelError(std::string(kind) + " transition on '" + t.symbol +
                       "', which is not a declared " +
                       (tag == Tag::call ? "call" : "return") + " symbol");
    check_output(def_.output, t.output, kind);
  };

  calls_from_.resize(n);
  returns_from_.resize(n);
  for (std::size_t i = 0; i < def_.calls.size(); ++i) {
    check(def_.calls[i], Tag::call, "call");
    calls_from_[def_.calls[i].from].push_back(i);
  }
  for (std::size_t i = 0; i < def_.returns.size(); ++i) {
    check(def_.returns[i], Tag::ret, "return");
    returns_from_[def_.returns[i].from].push_back(i);
  }
}

namespace {

using Stack = std::vector<StackId>;
using Config = std::pair<StateId, Stack>;

void check_letter(const Vpt& a, const Letter& l, std::size_t pos) {
  if (!a.input_alphabet().contains(l))
    throw AlphabetError("input symbol '" + l.name + "' at offset " +
                        std::to_string(pos) + " is not in the VPT's alphabet");
}

void merge_outputs(OutputSet& into, const OutputSet& from, const Word& suffix,
                   std::size_t limit) {
  for (const auto& w : from) {
    Word extended = w;
    extended.insert(extended.end(), suffix.begin(), suffix.end());
    into.insert(std::move(extended));
  }
  if (into.size() > limit)
    throw OutputLimitError("more than " + std::to_string(limit) +
                           " outputs for a single configuration");
}

}  // namespace

OutputSet run_all(const Vpt& a, const NestedWord& w, std::size_t limit) {
  for (std::size_t i = 0; i < w.size(); ++i) check_letter(a, w[i], i);

  // Live configurations and the outputs of the run prefixes reaching them.
  std::map<Config, OutputSet> live;
  for (StateId q : a.initial()) live[{q, {}}].insert(Word{});

  for (const Letter& l : w) {
    std::map<Config, OutputSet> next;
    for (const auto& [config, outs] : live) {
      const auto& [q, stack] = config;
      if (l.tag == Tag::call) {
        for (std::size_t i : a.calls_from(q)) {
          const auto& t = a.calls()[i];
          if (t.symbol != l.name) continue;
          Stack pushed = stack;
          pushed.push_back(t.stack);
          merge_outputs(next[{t.to, std::move(pushed)}], outs, t.output, limit);
        }
      } else {
        if (stack.empty()) continue;
        for (std::size_t i : a.returns_from(q)) {
          const auto& t = a.returns()[i];
          if (t.symbol != l.name || t.stack != stack.back()) continue;
          Stack popped(stack.begin(), stack.end() - 1);
          merge_outputs(next[{t.to, std::move(popped)}], outs, t.output, limit);
        }
      }
    }
    live = std::move(next);
    if (live.empty()) return {};
  }

  OutputSet result;
  for (const auto& [config, outs] : live) {
    if (!config.second.empty() || a.final().count(config.first) == 0) continue;
    result.insert(outs.begin(), outs.end());
    if (result.size() > limit)
      throw OutputLimitError("more than " + std::to_string(limit) + " outputs");
  }
  return result;
}

bool accepts(const Vpt& a, const NestedWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) check_letter(a, w[i], i);
  std::set<Config> live;
  for (StateId q : a.initial()) live.insert({q, {}});
  for (const Letter& l : w) {
    std::set<Config> next;
    for (const auto& [q, stack] : live) {
      if (l.tag == Tag::call) {
        for (std::size_t i : a.calls_from(q)) {
          const auto& t = a.calls()[i];
          if (t.symbol != l.name) continue;
          Stack pushed = stack;
          pushed.push_back(t.stack);
          next.insert({t.to, std::move(pushed)});
        }
      } else if (!stack.empty()) {
        for (std::size_t i : a.returns_from(q)) {
          const auto& t = a.returns()[i];
          if (t.symbol != l.name || t.stack != stack.back()) continue;
          next.insert({t.to, Stack(stack.begin(), stack.end() - 1)});
        }
      }
    }
    live = std::move(next);
    if (live.empty()) return false;
  }
  for (const auto& [q, stack] : live)
    if (stack.empty() && a.final().count(q) != 0) return true;
  return false;
}

std::optional<std::pair<std::size_t, std::size_t>> find_non_well_nested_pair(
    const Vpt& a) {
  const StructuredAlphabet& out = a.output_alphabet().structure();
  for (std::size_t i = 0; i < a.calls().size(); ++i) {
    const auto& c = a.calls()[i];
    for (std::size_t j = 0; j < a.returns().size(); ++j) {
      const auto& r = a.returns()[j];
      if (c.stack != r.stack) continue;
      Word both = c.output;
      both.insert(both.end(), r.output.begin(), r.output.end());
      if (!is_well_nested(out.resolve(both))) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

bool is_wn_vpt(const Vpt& a) { return !find_non_well_nested_pair(a).has_value(); }

StatePairs summaries(const Vpt& a) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::size_t>> calls_into(n);
  for (std::size_t i = 0; i < a.calls().size(); ++i)
    calls_into[a.calls()[i].to].push_back(i);

  std::vector<std::pair<StateId, StateId>> work;
  auto add = [&](StateId p, StateId q) {
    if (reach[p][q]) return;
    reach[p][q] = true;
    work.emplace_back(p, q);
  };
  for (StateId q = 0; q < n; ++q) add(q, q);

  while (!work.empty()) {
    auto [p, q] = work.back();
    work.pop_back();
    // (p, q) as the body of a matched call/return pair.
    for (std::size_t ci : calls_into[p]) {
      const auto& c = a.calls()[ci];
      for (std::size_t ri : a.returns_from(q)) {
        const auto& r = a.returns()[ri];
        if (r.stack == c.stack) add(c.from, r.to);
      }
    }
    // (p, q) as either half of a concatenation.
    for (StateId x = 0; x < n; ++x) {
      if (reach[x][p]) add(x, q);
      if (reach[q][x]) add(p, x);
    }
  }

  StatePairs out;
  for (StateId p = 0; p < n; ++p)
    for (StateId q = 0; q < n; ++q)
      if (reach[p][q]) out.emplace(p, q);
  return out;
}

StatePairs bot_summaries(const Vpt& a) {
  if (!a.input_alphabet().has_bottom())
    throw AlphabetError("input alphabet has no ⊥c/⊥r symbols");
  StatePairs out;
  for (const auto& c : a.calls()) {
    if (c.symbol != kBottomCall) continue;
    for (std::size_t ri : a.returns_from(c.to)) {
      const auto& r = a.returns()[ri];
      if (r.symbol == kBottomReturn && r.stack == c.stack) out.emplace(c.from, r.to);
    }
  }
  return out;
}

Vpt prune(const Vpt& a) {
  const std::size_t n = a.state_count();
  std::vector<bool> call_kept(a.calls().size(), true);
  std::vector<bool> ret_kept(a.returns().size(), true);
  std::vector<bool> keep(n, false);

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::vector<StateId>> succ(n);
    std::vector<std::vector<StateId>> pred(n);
    for (std::size_t i = 0; i < a.calls().size(); ++i) {
      if (!call_kept[i]) continue;
      succ[a.calls()[i].from].push_back(a.calls()[i].to);
      pred[a.calls()[i].to].push_back(a.calls()[i].from);
    }
    for (std::size_t i = 0; i < a.returns().size(); ++i) {
      if (!ret_kept[i]) continue;
      succ[a.returns()[i].from].push_back(a.returns()[i].to);
      pred[a.returns()[i].to].push_back(a.returns()[i].from);
    }
    auto closure = [n](const std::set<StateId>& seeds,
                       const std::vector<std::vector<StateId>>& edges) {
      std::vector<bool> seen(n, false);
      std::vector<StateId> stack(seeds.begin(), seeds.end());
      for (StateId s : seeds) seen[s] = true;
      while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId r : edges[q])
          if (!seen[r]) {
            seen[r] = true;
            stack.push_back(r);
          }
      }
      return seen;
    };
    auto fwd = closure(a.initial(), succ);
    auto bwd = closure(a.final(), pred);
    for (StateId q = 0; q < n; ++q) keep[q] = fwd[q] && bwd[q];

    std::set<StackId> pushed;
    std::set<StackId> popped;
    for (std::size_t i = 0; i < a.calls().size(); ++i) {
      const auto& t = a.calls()[i];
      if (call_kept[i] && !(keep[t.from] && keep[t.to])) {
        call_kept[i] = false;
        changed = true;
      }
      if (call_kept[i]) pushed.insert(t.stack);
    }
    for (std::size_t i = 0; i < a.returns().size(); ++i) {
      const auto& t = a.returns()[i];
      if (ret_kept[i] && !(keep[t.from] && keep[t.to])) {
        ret_kept[i] = false;
        changed = true;
      }
      if (ret_kept[i]) popped.insert(t.stack);
    }
    // A push that is never popped cannot be part of an accepting run.
    for (std::size_t i = 0; i < a.calls().size(); ++i)
      if (call_kept[i] && popped.count(a.calls()[i].stack) == 0) {
        call_kept[i] = false;
        changed = true;
      }
    for (std::size_t i = 0; i < a.returns().size(); ++i)
      if (ret_kept[i] && pushed.count(a.returns()[i].stack) == 0) {
        ret_kept[i] = false;
        changed = true;
      }
  }

  VptDefinition out;
  out.input = a.input_alphabet();
  out.output = a.output_alphabet();
  std::vector<std::optional<StateId>> state_map(n);
  for (StateId q = 0; q < n; ++q)
    if (keep[q]) state_map[q] = out.states.intern(a.states().name(q));
  std::vector<std::optional<StackId>> stack_map(a.stack().size());
  auto map_stack = [&](StackId g) {
    if (!stack_map[g]) stack_map[g] = out.stack.intern(a.stack().name(g));
    return *stack_map[g];
  };
  for (StateId q : a.initial())
    if (keep[q]) out.initial.insert(*state_map[q]);
  for (StateId q : a.final())
    if (keep[q]) out.final.insert(*state_map[q]);
  for (std::size_t i = 0; i < a.calls().size(); ++i) {
    if (!call_kept[i]) continue;
    const auto& t = a.calls()[i];
    out.calls.push_back({*state_map[t.from], t.symbol, map_stack(t.stack),
                         t.output, *state_map[t.to]});
  }
  for (std::size_t i = 0; i < a.returns().size(); ++i) {
    if (!ret_kept[i]) continue;
    const auto& t = a.returns()[i];
    out.returns.push_back({*state_map[t.from], t.symbol, map_stack(t.stack),
                           t.output, *state_map[t.to]});
  }
  for (auto* ts : {&out.calls, &out.returns}) {
    std::sort(ts->begin(), ts->end());
    ts->erase(std::unique(ts->begin(), ts->end()), ts->end());
  }
  return Vpt(std::move(out));
}

}  // namespace vptk
