#include "vptk/h2s.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "vptk/error.hpp"

namespace vptk {

H2s::H2s(H2sDefinition def) : def_(std::move(def)) {
  const std::size_t n = def_.states.size();
  for (StateId q : def_.initial)
    if (q >= n) throw ModelError("initial state id out of range");
  auto check_word = [&](const Word& w) {
    for (const auto& s : w)
      if (!def_.output.contains(s))
        throw ModelError("output symbol '" + s + "' is not in the output alphabet");
  };
  rules_from_.resize(n);
  leaves_of_.resize(n);
  for (std::size_t i = 0; i < def_.leaves.size(); ++i) {
    const auto& l = def_.leaves[i];
    if (l.state >= n) throw ModelError("leaf rule references an undeclared state");
    check_word(l.output);
    leaves_of_[l.state].push_back(i);
  }
  for (std::size_t i = 0; i < def_.rules.size(); ++i) {
    const auto& r = def_.rules[i];
    if (r.state >= n || r.child >= n || r.sibling >= n)
      throw ModelError("rule " + std::to_string(i) + " references an undeclared state");
    if (def_.input.count(r.label) == 0)
      throw ModelError("rule " + std::to_string(i) + " reads label '" + r.label +
                       "', which is not in the input alphabet");
    check_word(r.w1);
    check_word(r.w2);
    check_word(r.w3);
    rules_from_[r.state].push_back(i);
  }
}

bool H2s::is_standard() const {
  return std::all_of(def_.leaves.begin(), def_.leaves.end(),
                     [](const LeafRule& l) { return l.output.empty(); });
}

namespace {

// ⟦q⟧ on the hedge suffix siblings[index..], memoized per occurrence.
class Evaluator {
 public:
  Evaluator(const H2s& t, std::size_t limit) : t_(t), limit_(limit) {}

  const OutputSet& at(StateId q, const Hedge& siblings, std::size_t index) {
    const Key key{q, &siblings, index};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    OutputSet result = compute(q, siblings, index);
    return memo_.emplace(key, std::move(result)).first->second;
  }

 private:
  using Key = std::tuple<StateId, const Hedge*, std::size_t>;

  OutputSet compute(StateId q, const Hedge& siblings, std::size_t index) {
    OutputSet result;
    if (index == siblings.size()) {
      for (std::size_t li : t_.leaves_of(q)) result.insert(t_.leaves()[li].output);
      return result;
    }
    const Tree& first = siblings[index];
    for (std::size_t ri : t_.rules_from(q)) {
      const NodeRule& r = t_.rules()[ri];
      if (r.label != first.label) continue;
      const OutputSet& below = at(r.child, first.children, 0);
      if (below.empty()) continue;
      const OutputSet& after = at(r.sibling, siblings, index + 1);
      if (after.empty()) continue;
      if (below.size() * after.size() > limit_)
        throw OutputLimitError("more than " + std::to_string(limit_) +
                               " outputs for a single subhedge");
      for (const Word& u : below) {
        for (const Word& v : after) {
          Word w;
          w.reserve(r.w1.size() + u.size() + r.w2.size() + v.size() + r.w3.size());
          w.insert(w.end(), r.w1.begin(), r.w1.end());
          w.insert(w.end(), u.begin(), u.end());
          w.insert(w.end(), r.w2.begin(), r.w2.end());
          w.insert(w.end(), v.begin(), v.end());
          w.insert(w.end(), r.w3.begin(), r.w3.end());
          result.insert(std::move(w));
        }
      }
      if (result.size() > limit_)
        throw OutputLimitError("more than " + std::to_string(limit_) + " outputs");
    }
    return result;
  }

  const H2s& t_;
  std::size_t limit_;
  std::map<Key, OutputSet> memo_;
};

void check_labels(const H2s& t, const Hedge& h) {
  for (const auto& node : h) {
    if (t.input_alphabet().count(node.label) == 0)
      throw AlphabetError("hedge label '" + node.label +
                          "' is not in the transducer's input alphabet");
    check_labels(t, node.children);
  }
}

}  // namespace

OutputSet eval_state(const H2s& t, StateId q, const Hedge& h, std::size_t limit) {
  if (q >= t.state_count()) throw Error("state id out of range");
  check_labels(t, h);
  Evaluator ev(t, limit);
  return ev.at(q, h, 0);
}

OutputSet eval(const H2s& t, const Hedge& h, std::size_t limit) {
  check_labels(t, h);
  Evaluator ev(t, limit);
  OutputSet result;
  for (StateId q : t.initial()) {
    const OutputSet& part = ev.at(q, h, 0);
    result.insert(part.begin(), part.end());
  }
  if (result.size() > limit)
    throw OutputLimitError("more than " + std::to_string(limit) + " outputs");
  return result;
}

std::optional<std::size_t> find_non_tail_recursive_rule(const H2s& t) {
  for (std::size_t i = 0; i < t.rules().size(); ++i)
    if (!t.rules()[i].w3.empty()) return i;
  return std::nullopt;
}

bool is_tail_recursive(const H2s& t) {
  return !find_non_tail_recursive_rule(t).has_value();
}

std::optional<std::size_t> find_non_h2h_rule(const H2s& t) {
  const StructuredAlphabet& out = t.output_alphabet().structure();
  for (std::size_t i = 0; i < t.rules().size(); ++i) {
    const auto& r = t.rules()[i];
    Word all = r.w1;
    all.insert(all.end(), r.w2.begin(), r.w2.end());
    all.insert(all.end(), r.w3.begin(), r.w3.end());
    if (!is_well_nested(out.resolve(all))) return i;
  }
  for (std::size_t i = 0; i < t.leaves().size(); ++i)
    if (!is_well_nested(out.resolve(t.leaves()[i].output)))
      return t.rules().size() + i;
  return std::nullopt;
}

bool is_h2h(const H2s& t) { return !find_non_h2h_rule(t).has_value(); }

namespace {

bool binary_with_hole(const StructuredAlphabet& out, const Word& before,
                      const Word& after) {
  Word w = before;
  w.push_back(kBottomCall);
  w.push_back(kBottomReturn);
  w.insert(w.end(), after.begin(), after.end());
  return is_binary_wn(out.resolve(w));
}

}  // namespace

std::optional<H2bShape> h2b_shape(const NodeRule& rule,
                                  const StructuredAlphabet& output) {
  if (rule.w1.empty() || rule.w3.empty()) return std::nullopt;
  const Symbol& open = rule.w1.front();
  const Symbol& close = rule.w3.back();
  if (output.tag_of(open) != Tag::call || open == kBottomCall) return std::nullopt;
  if (output.tag_of(close) != Tag::ret || close == kBottomReturn) return std::nullopt;
  H2bShape shape;
  shape.open = open;
  shape.close = close;
  shape.head1.assign(rule.w1.begin() + 1, rule.w1.end());
  shape.tail2.assign(rule.w3.begin(), rule.w3.end() - 1);
  for (std::size_t cut = 0; cut <= rule.w2.size(); ++cut) {
    Word tail1(rule.w2.begin(), rule.w2.begin() + static_cast<std::ptrdiff_t>(cut));
    Word head2(rule.w2.begin() + static_cast<std::ptrdiff_t>(cut), rule.w2.end());
    if (binary_with_hole(output, shape.head1, tail1) &&
        binary_with_hole(output, head2, shape.tail2)) {
      shape.tail1 = std::move(tail1);
      shape.head2 = std::move(head2);
      return shape;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> find_non_h2b_rule(const H2s& t) {
  const StructuredAlphabet& out = t.output_alphabet().structure();
  if (!out.has_bottom())
    throw AlphabetError("hedge-to-binary-tree check needs ⊥c/⊥r in the output alphabet");
  for (std::size_t i = 0; i < t.rules().size(); ++i)
    if (!h2b_shape(t.rules()[i], out)) return i;
  const Word leaf{kBottomCall, kBottomReturn};
  for (std::size_t i = 0; i < t.leaves().size(); ++i)
    if (t.leaves()[i].output != leaf) return t.rules().size() + i;
  return std::nullopt;
}

bool is_h2b(const H2s& t) { return !find_non_h2b_rule(t).has_value(); }

std::size_t rule_height_constant(const H2s& t) {
  const StructuredAlphabet& out = t.output_alphabet().structure();
  std::size_t best = 0;
  for (const auto& r : t.rules()) {
    Word all = r.w1;
    all.insert(all.end(), r.w2.begin(), r.w2.end());
    all.insert(all.end(), r.w3.begin(), r.w3.end());
    best = std::max(best, height(out.resolve(all)));
  }
  return best + 1;
}

H2s prune(const H2s& t) {
  const std::size_t n = t.state_count();
  std::vector<bool> productive(n, false);
  for (const auto& l : t.leaves()) productive[l.state] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : t.rules())
      if (!productive[r.state] && productive[r.child] && productive[r.sibling]) {
        productive[r.state] = true;
        changed = true;
      }
  }
  auto usable = [&](const NodeRule& r) {
    return productive[r.state] && productive[r.child] && productive[r.sibling];
  };

  std::vector<bool> reachable(n, false);
  std::vector<StateId> todo;
  for (StateId q : t.initial())
    if (productive[q]) {
      reachable[q] = true;
      todo.push_back(q);
    }
  while (!todo.empty()) {
    StateId q = todo.back();
    todo.pop_back();
    for (std::size_t ri : t.rules_from(q)) {
      const auto& r = t.rules()[ri];
      if (!usable(r)) continue;
      for (StateId s : {r.child, r.sibling})
        if (!reachable[s]) {
          reachable[s] = true;
          todo.push_back(s);
        }
    }
  }

  H2sDefinition out;
  out.input = t.input_alphabet();
  out.output = t.output_alphabet();
  std::vector<std::optional<StateId>> map(n);
  for (StateId q = 0; q < n; ++q)
    if (reachable[q]) map[q] = out.states.intern(t.states().name(q));
  for (StateId q : t.initial())
    if (map[q]) out.initial.insert(*map[q]);
  for (const auto& l : t.leaves())
    if (map[l.state]) out.leaves.push_back({*map[l.state], l.output});
  for (const auto& r : t.rules()) {
    if (!map[r.state] || !usable(r)) continue;
    out.rules.push_back(
        {*map[r.state], r.label, r.w1, *map[r.child], r.w2, *map[r.sibling], r.w3});
  }
  std::sort(out.leaves.begin(), out.leaves.end());
  out.leaves.erase(std::unique(out.leaves.begin(), out.leaves.end()), out.leaves.end());
  std::sort(out.rules.begin(), out.rules.end());
  out.rules.erase(std::unique(out.rules.begin(), out.rules.end()), out.rules.end());
  return H2s(std::move(out));
}

H2s over_pairs(const H2s& t) {
  if (product_components(t.input_alphabet())) return t;
  H2sDefinition d = t.definition();
  d.input = product_labels(structured_version(t.input_alphabet()));
  for (auto& r : d.rules) r.label = pair_label(call_name(r.label), return_name(r.label));
  return H2s(std::move(d));
}

H2s builtin(std::string_view name, const std::set<Symbol>& alphabet) {
  H2sDefinition d;
  d.input = alphabet;
  if (name == "mirror") {
    d.output = OutputAlphabet::plain(alphabet);
    const StateId q = d.states.intern("q");
    const StateId qp = d.states.intern("q'");
    d.initial = {q, qp};
    d.leaves = {{q, {}}, {qp, {}}};
    for (const auto& f : alphabet) d.rules.push_back({q, f, {}, qp, {}, q, {f}});
  } else if (name == "subhedge_root") {
    if (alphabet.count("#") != 0)
      throw Error("subhedge_root reserves the label '#'");
    auto extended = alphabet;
    extended.insert("#");
    d.output = OutputAlphabet::structured(structured_version(extended));
    const StateId q0 = d.states.intern("q0");
    const StateId q1 = d.states.intern("q1");
    const StateId q2 = d.states.intern("q2");
    d.initial = {q0};
    d.leaves = {{q0, {}}, {q2, {}}};
    const Symbol open = call_name("#");
    const Symbol close = return_name("#");
    for (const auto& f : alphabet) {
      const Symbol cf = call_name(f);
      const Symbol rf = return_name(f);
      d.rules.push_back({q0, f, {cf}, q0, {rf}, q0, {}});
      d.rules.push_back({q0, f, {open, cf}, q2, {rf, close}, q0, {}});
      d.rules.push_back({q0, f, {open, cf}, q2, {rf}, q1, {}});
      d.rules.push_back({q1, f, {cf}, q2, {rf, close}, q0, {}});
      d.rules.push_back({q1, f, {cf}, q2, {rf}, q1, {}});
      d.rules.push_back({q2, f, {cf}, q2, {rf}, q2, {}});
    }
  } else if (name == "flatten") {
    d.output = OutputAlphabet::structured(structured_version(alphabet));
    const StateId q = d.states.intern("q");
    d.initial = {q};
    d.leaves = {{q, {}}};
    for (const auto& f : alphabet)
      d.rules.push_back({q, f, {call_name(f), return_name(f)}, q, {}, q, {}});
  } else {
    throw Error("unknown built-in transducer '" + std::string(name) + "'");
  }
  return H2s(std::move(d));
}

}  // namespace vptk
