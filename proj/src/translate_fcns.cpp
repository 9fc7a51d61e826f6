// Translations between H2S and VPTs running on first-child next-sibling
// encodings.

#include <algorithm>
#include <array>
#include <map>
#include <optional>

#include "vptk/error.hpp"
#include "vptk/translate.hpp"

namespace vptk {

namespace {

std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) out += "·";
    out += w[i];
  }
  return out;
}

Word cat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Folds non-empty leaf outputs into the rules that use the leaf state: each
// leaf output x of state s gets its own state s_x with an ε leaf, and every
// rule using s as child (resp. sibling) gets a variant using s_x with x
// appended to w1 (resp. w2).
H2s normalize_leaves(const H2s& t) {
  H2sDefinition d;
  d.input = t.input_alphabet();
  d.output = t.output_alphabet();
  d.states = t.states();
  d.initial = t.initial();

  // For every state: the (state, inserted word) alternatives usable in a
  // child position.
  std::vector<std::vector<std::pair<StateId, Word>>> variants(t.state_count());
  for (StateId s = 0; s < t.state_count(); ++s) variants[s].push_back({s, {}});
  std::map<std::pair<StateId, Word>, StateId> split_state;
  for (const auto& leaf : t.leaves()) {
    if (leaf.output.empty()) {
      d.leaves.push_back(leaf);
      continue;
    }
    auto key = std::pair{leaf.state, leaf.output};
    if (split_state.count(key) != 0) continue;
    const std::string& name = t.states().name(leaf.state);
    // (p,q) becomes (p,x,q).
    std::string derived = name;
    if (name.size() >= 2 && name.front() == '(' && name.back() == ')') {
      const auto comma = name.rfind(',');
      derived = name.substr(0, comma) + "," + join_word(leaf.output) + name.substr(comma);
    } else {
      derived = name + "[" + join_word(leaf.output) + "]";
    }
    const StateId s = d.states.fresh(derived);
    split_state[key] = s;
    d.leaves.push_back({s, {}});
    variants[leaf.state].push_back({s, leaf.output});
  }

  for (const auto& r : t.rules()) {
    for (const auto& [child, x1] : variants[r.child]) {
      for (const auto& [sibling, x2] : variants[r.sibling]) {
        d.rules.push_back({r.state, r.label, cat(r.w1, x1), child, cat(r.w2, x2),
                           sibling, r.w3});
      }
    }
  }
  return H2s(std::move(d));
}

}  // namespace

H2s vpt_fcns_to_h2s(const Vpt& a) {
  if (!a.input_alphabet().has_bottom())
    throw AlphabetError("fcns translation needs ⊥c/⊥r in the VPT's input alphabet");
  const StructuredAlphabet sigma = a.input_alphabet().without_bottom();
  const StatePairs pairs = summaries(a);
  const StatePairs leaf_pairs = bot_summaries(a);

  // Pairs connected by one non-⊥ tree c·w·r.
  StatePairs tree_pairs;
  for (const auto& c : a.calls()) {
    if (c.symbol == kBottomCall) continue;
    for (const auto& r : a.returns()) {
      if (r.symbol == kBottomReturn || r.stack != c.stack) continue;
      if (pairs.count({c.to, r.from}) != 0) tree_pairs.emplace(c.from, r.to);
    }
  }
  StatePairs all = tree_pairs;
  all.insert(leaf_pairs.begin(), leaf_pairs.end());

  H2sDefinition d;
  d.input = product_labels(sigma);
  d.output = a.output_alphabet();
  std::map<std::pair<StateId, StateId>, StateId> id;
  for (const auto& [p, q] : all)
    id[{p, q}] = d.states.fresh("(" + a.states().name(p) + "," + a.states().name(q) + ")");
  for (const auto& [p, q] : tree_pairs)
    if (a.initial().count(p) != 0 && a.final().count(q) != 0) d.initial.insert(id[{p, q}]);

  // (p,q)(0) -> w·w' for (p,⊥c,γ,w,p'), (p',⊥r,γ,w',q).
  for (const auto& c : a.calls()) {
    if (c.symbol != kBottomCall) continue;
    for (std::size_t ri : a.returns_from(c.to)) {
      const auto& r = a.returns()[ri];
      if (r.symbol != kBottomReturn || r.stack != c.stack) continue;
      d.leaves.push_back({id[{c.from, r.to}], cat(c.output, r.output)});
    }
  }

  // (p,q)((c,r)(x1)·x2) -> w1 (p1,p2)(x1) (p2,p3)(x2) w3.
  for (const auto& c : a.calls()) {
    if (c.symbol == kBottomCall) continue;
    for (const auto& r : a.returns()) {
      if (r.symbol == kBottomReturn || r.stack != c.stack) continue;
      auto self = id.find({c.from, r.to});
      if (self == id.end()) continue;
      const Symbol label = pair_label(c.symbol, r.symbol);
      for (auto first = all.lower_bound({c.to, 0});
           first != all.end() && first->first == c.to; ++first) {
        const StateId p2 = first->second;
        auto second = id.find({p2, r.from});
        if (second == id.end()) continue;
        d.rules.push_back({self->second, label, c.output, id[*first], {},
                           second->second, r.output});
      }
    }
  }
  return prune(normalize_leaves(H2s(std::move(d))));
}

OutputSplit split_rule_outputs(const NodeRule& rule, const OutputAlphabet& output) {
  OutputSplit literal{rule.w1, {}, rule.w2, {}, {}, rule.w3};
  if (!output.is_structured()) return literal;
  const Word all = cat(cat(rule.w1, rule.w2), rule.w3);
  const NestedWord nested = output.structure().resolve(all);
  if (!is_well_nested(nested)) return literal;

  // depth[i] = nesting depth after the first i symbols.
  std::vector<std::size_t> depth(nested.size() + 1, 0);
  for (std::size_t i = 0; i < nested.size(); ++i)
    depth[i + 1] = nested[i].tag == Tag::call ? depth[i] + 1 : depth[i] - 1;

  const std::size_t p1 = rule.w1.size();
  const std::size_t p2 = p1 + rule.w2.size();
  // Cut at the lowest level reached between the two child slots: the last
  // position at that level before slot 1, one between the slots, and the
  // first one after slot 2.
  const std::size_t level = *std::min_element(depth.begin() + static_cast<std::ptrdiff_t>(p1),
                                              depth.begin() + static_cast<std::ptrdiff_t>(p2) + 1);
  std::size_t cut_a = p1;
  while (depth[cut_a] != level) --cut_a;
  std::size_t cut_b = p1;
  while (depth[cut_b] != level) ++cut_b;
  std::size_t cut_c = p2;
  while (depth[cut_c] != level) ++cut_c;

  auto slice = [&all](std::size_t from, std::size_t to) {
    return Word(all.begin() + static_cast<std::ptrdiff_t>(from),
                all.begin() + static_cast<std::ptrdiff_t>(to));
  };
  return OutputSplit{slice(0, cut_a),  slice(cut_a, p1), slice(p1, cut_b),
                     slice(cut_b, p2), slice(p2, cut_c), slice(cut_c, all.size())};
}

Vpt h2s_to_vpt_fcns(const H2s& source) {
  const H2s t = over_pairs(source);
  if (!t.is_standard())
    throw PreconditionError("transducer has leaf rules with non-empty output");
  const auto sigma = product_components(t.input_alphabet());
  if (!sigma) throw AlphabetError("transducer has an empty input alphabet");

  VptDefinition d;
  d.input = sigma->with_bottom();
  d.output = t.output_alphabet();
  const std::size_t n_rules = t.rules().size();

  std::map<StateId, StateId> top_open;   // (q,0)
  std::map<StateId, StateId> top_done;   // (q,1)
  for (StateId q : t.initial()) {
    top_open[q] = d.states.fresh("(" + t.states().name(q) + ",0)");
    top_done[q] = d.states.fresh("(" + t.states().name(q) + ",1)");
  }
  // (t,i): inside a node processed with rule t, before child (0), between
  // child and siblings (1), after siblings (2).
  std::vector<std::array<StateId, 3>> phase(n_rules);
  for (std::size_t i = 0; i < n_rules; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      phase[i][k] = d.states.fresh("(t" + std::to_string(i) + "," + std::to_string(k) + ")");
  const StateId leaf_state = d.states.fresh("q⊥");
  for (const auto& [q, s] : top_open) d.initial.insert(s);
  for (const auto& [q, s] : top_done) d.final.insert(s);

  std::vector<OutputSplit> split;
  split.reserve(n_rules);
  for (const auto& r : t.rules()) split.push_back(split_rule_outputs(r, t.output_alphabet()));

  // The stack symbol pairs the state being left with the rule entered (or ⊥
  // for a leaf), so each pop matches the push of the same node.
  auto stack_symbol = [&](StateId from, std::optional<std::size_t> rule) {
    return d.stack.intern(d.states.name(from) + "|" +
                          (rule ? "t" + std::to_string(*rule) : std::string("⊥")));
  };

  // Root node: entered from (q,0), left into (q,1).
  for (std::size_t i = 0; i < n_rules; ++i) {
    const NodeRule& r = t.rules()[i];
    auto open = top_open.find(r.state);
    if (open == top_open.end()) continue;
    const auto [c, ret] = *split_pair_label(r.label);
    const StackId gamma = stack_symbol(open->second, i);
    d.calls.push_back({open->second, c, gamma, split[i].a, phase[i][0]});
    d.returns.push_back({phase[i][2], ret, gamma, split[i].k, top_done[r.state]});
  }

  // Nested nodes: slot `slot` of rule `outer` is processed with rule `inner`.
  for (std::size_t outer = 0; outer < n_rules; ++outer) {
    const NodeRule& o = t.rules()[outer];
    for (std::size_t slot = 0; slot < 2; ++slot) {
      const StateId slot_state = slot == 0 ? o.child : o.sibling;
      const Word& before = slot == 0 ? split[outer].b : split[outer].e;
      const Word& after = slot == 0 ? split[outer].d : split[outer].g;
      const StateId from = phase[outer][slot];
      const StateId to = phase[outer][slot + 1];
      for (std::size_t inner : t.rules_from(slot_state)) {
        const auto [c, ret] = *split_pair_label(t.rules()[inner].label);
        const StackId gamma = stack_symbol(from, inner);
        d.calls.push_back({from, c, gamma, cat(before, split[inner].a), phase[inner][0]});
        d.returns.push_back({phase[inner][2], ret, gamma, cat(split[inner].k, after), to});
      }
      if (!t.leaves_of(slot_state).empty()) {
        const StackId gamma = stack_symbol(from, std::nullopt);
        d.calls.push_back({from, kBottomCall, gamma, before, leaf_state});
        d.returns.push_back({leaf_state, kBottomReturn, gamma, after, to});
      }
    }
  }
  return prune(Vpt(std::move(d)));
}

}  // namespace vptk
