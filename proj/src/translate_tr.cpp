// Summary-pair and stack-of-rules translations between VPTs and
// tail-recursive H2S.

#include <map>

#include "vptk/error.hpp"
#include "vptk/translate.hpp"

namespace vptk {

H2s vpt_to_h2s_tr(const Vpt& a) {
  const StatePairs pairs = summaries(a);

  H2sDefinition d;
  d.input = product_labels(a.input_alphabet());
  d.output = a.output_alphabet();
  std::map<std::pair<StateId, StateId>, StateId> id;
  for (const auto& [p, q] : pairs)
    id[{p, q}] = d.states.fresh("(" + a.states().name(p) + "," + a.states().name(q) + ")");

  for (const auto& [p, q] : pairs) {
    const StateId s = id[{p, q}];
    if (a.initial().count(p) != 0 && a.final().count(q) != 0) d.initial.insert(s);
    if (p == q) d.leaves.push_back({s, {}});
  }

  // (q1,q2)((c,r)(x1)·x2) -> w1 (p1,p2)(x1) w2 (q1',q2)(x2) for every call
  // (q1,c,γ,w1,p1) and return (p2,r,γ,w2,q1') with the three pairs summaries.
  for (const auto& c : a.calls()) {
    for (const auto& r : a.returns()) {
      if (r.stack != c.stack) continue;
      auto inner = id.find({c.to, r.from});
      if (inner == id.end()) continue;
      const Symbol label = pair_label(c.symbol, r.symbol);
      for (auto it = pairs.lower_bound({c.from, 0});
           it != pairs.end() && it->first == c.from; ++it) {
        const StateId q2 = it->second;
        auto rest = id.find({r.to, q2});
        if (rest == id.end()) continue;
        d.rules.push_back(
            {id[{c.from, q2}], label, c.output, inner->second, r.output, rest->second, {}});
      }
    }
  }
  return prune(H2s(std::move(d)));
}

Vpt h2s_tr_to_vpt(const H2s& source) {
  if (auto bad = find_non_tail_recursive_rule(source))
    throw PreconditionError("transducer is not tail-recursive: rule " +
                            std::to_string(*bad) + " (state " +
                            source.states().name(source.rules()[*bad].state) + ", label " +
                            source.rules()[*bad].label + ") has a non-empty w3");
  const H2s t = over_pairs(source);
  if (!t.is_standard())
    throw PreconditionError("transducer has leaf rules with non-empty output");
  const auto sigma = product_components(t.input_alphabet());
  if (!sigma) throw AlphabetError("transducer has an empty input alphabet");

  VptDefinition d;
  d.input = *sigma;
  d.output = t.output_alphabet();
  d.states = t.states();
  d.initial = t.initial();
  for (const auto& l : t.leaves()) d.final.insert(l.state);

  for (std::size_t i = 0; i < t.rules().size(); ++i) {
    const NodeRule& rule = t.rules()[i];
    const auto [c, r] = *split_pair_label(rule.label);
    const StackId gamma = d.stack.intern("t" + std::to_string(i));
    d.calls.push_back({rule.state, c, gamma, rule.w1, rule.child});
    for (StateId f : d.final) d.returns.push_back({f, r, gamma, rule.w2, rule.sibling});
  }
  return Vpt(std::move(d));
}

}  // namespace vptk
