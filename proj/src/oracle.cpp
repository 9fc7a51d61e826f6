#include "vptk/oracle.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "vptk/error.hpp"
#include "vptk/text.hpp"

namespace vptk {

namespace {

// Depth-first generation of well-nested words of an exact length in
// lexicographic order, with every return ordered before every call and
// names in alphabet order within each side.
class WordGenerator {
 public:
  WordGenerator(const StructuredAlphabet& alphabet, std::size_t length,
                const std::function<void(const NestedWord&)>& visit)
      : calls_(alphabet.calls().begin(), alphabet.calls().end()),
        returns_(alphabet.returns().begin(), alphabet.returns().end()),
        length_(length),
        visit_(visit) {}

  void run() {
    word_.clear();
    step(0);
  }

 private:
  void step(std::size_t depth) {
    const std::size_t left = length_ - word_.size();
    if (left == 0) {
      visit_(word_);
      return;
    }
    if (depth > 0) {
      for (const auto& r : returns_) {
        word_.push_back(ret(r));
        step(depth - 1);
        word_.pop_back();
      }
    }
    if (left >= depth + 2) {
      for (const auto& c : calls_) {
        word_.push_back(call(c));
        step(depth + 1);
        word_.pop_back();
      }
    }
  }

  std::vector<Symbol> calls_;
  std::vector<Symbol> returns_;
  std::size_t length_;
  const std::function<void(const NestedWord&)>& visit_;
  NestedWord word_;
};

// Hedges with exactly `nodes` nodes in the lexicographic order of lin used by
// WordGenerator: closing the current node sorts before opening a new one.
class HedgeGenerator {
 public:
  HedgeGenerator(const std::set<Symbol>& alphabet, std::size_t nodes,
                 const std::function<void(const Hedge&)>& visit)
      : labels_(alphabet.begin(), alphabet.end()), nodes_(nodes), visit_(visit) {}

  void run() {
    open_.assign(1, Hedge{});
    labels_open_.clear();
    step(0);
  }

 private:
  void step(std::size_t used) {
    if (used == nodes_ && labels_open_.empty()) {
      visit_(open_.front());
      return;
    }
    if (!labels_open_.empty()) {
      Symbol label = labels_open_.back();
      Hedge children = std::move(open_.back());
      labels_open_.pop_back();
      open_.pop_back();
      open_.back().push_back(node(label, std::move(children)));
      step(used);
      Tree done = std::move(open_.back().back());
      open_.back().pop_back();
      open_.push_back(std::move(done.children));
      labels_open_.push_back(std::move(label));
    }
    if (used < nodes_) {
      for (const auto& label : labels_) {
        labels_open_.push_back(label);
        open_.emplace_back();
        step(used + 1);
        open_.pop_back();
        labels_open_.pop_back();
      }
    }
  }

  std::vector<Symbol> labels_;
  std::size_t nodes_;
  const std::function<void(const Hedge&)>& visit_;
  std::vector<Hedge> open_;
  std::vector<Symbol> labels_open_;
};

void for_each_word(const StructuredAlphabet& alphabet, std::size_t max_len,
                   const std::function<void(const NestedWord&)>& visit) {
  for (std::size_t len = 0; len <= max_len; len += 2) WordGenerator(alphabet, len, visit).run();
}

void for_each_hedge(const std::set<Symbol>& alphabet, std::size_t max_nodes,
                    const std::function<void(const Hedge&)>& visit) {
  for (std::size_t n = 0; n <= max_nodes; ++n) HedgeGenerator(alphabet, n, visit).run();
}

// Thrown out of an enumeration once a counterexample ends the check.
struct Stop {};

class Checker {
 public:
  explicit Checker(const EquivOptions& options) : options_(options) {}

  void check(const OracleInput& input, const Hedge& as_hedge,
             const std::function<OutputSet()>& side_a,
             const std::function<OutputSet()>& side_b) {
    if (options_.input_filter && !options_.input_filter(as_hedge)) return;
    OutputSet a = side_a();
    OutputSet b = side_b();
    ++verdict_.inputs_checked;
    if (!a.empty()) ++verdict_.inputs_accepted;
    const bool match = a == b;
    if (options_.collect_records)
      verdict_.records.push_back({input, a.size(), b.size(), match});
    if (match) return;
    if (!verdict_.counterexample) {
      verdict_.outcome = Outcome::counterexample;
      verdict_.counterexample = Counterexample{input, std::move(a), std::move(b)};
    }
    if (options_.stop_at_first) throw Stop{};
  }

  template <typename Enumerate>
  Verdict run(Enumerate&& enumerate) {
    try {
      enumerate();
    } catch (const Stop&) {
    }
    return std::move(verdict_);
  }

 private:
  const EquivOptions& options_;
  Verdict verdict_;
};

H2s require_product(const StructuredAlphabet& sigma, const H2s& t) {
  H2s paired = over_pairs(t);
  if (product_labels(sigma) != paired.input_alphabet())
    throw AlphabetError("the H2S input alphabet is not Σc×Σr of the VPT input alphabet");
  return paired;
}

}  // namespace

std::vector<Hedge> enum_hedges(const std::set<Symbol>& alphabet, std::size_t max_nodes) {
  std::vector<Hedge> out;
  for_each_hedge(alphabet, max_nodes, [&](const Hedge& h) { out.push_back(h); });
  return out;
}

std::vector<NestedWord> enum_wn_words(const StructuredAlphabet& alphabet,
                                      std::size_t max_len) {
  std::vector<NestedWord> out;
  for_each_word(alphabet, max_len, [&](const NestedWord& w) { out.push_back(w); });
  return out;
}

Verdict equiv_on_bounded(const Vpt& a, const H2s& source, std::size_t max_len,
                         const EquivOptions& options) {
  const H2s t = require_product(a.input_alphabet(), source);
  Checker checker(options);
  return checker.run([&] {
    for_each_word(a.input_alphabet(), max_len, [&](const NestedWord& w) {
      const Hedge h = hedge_of(w);
      checker.check(
          w, h, [&] { return run_all(a, w, options.output_limit); },
          [&] { return eval(t, h, options.output_limit); });
    });
  });
}

Verdict equiv_fcns_on_bounded(const Vpt& a, const H2s& source, std::size_t max_len,
                              const EquivOptions& options) {
  if (!a.input_alphabet().has_bottom())
    throw AlphabetError("the VPT input alphabet lacks ⊥c/⊥r");
  const StructuredAlphabet sigma = a.input_alphabet().without_bottom();
  const H2s t = require_product(sigma, source);
  Checker checker(options);
  return checker.run([&] {
    for_each_word(sigma, max_len, [&](const NestedWord& w) {
      if (w.empty()) return;
      const Hedge h = hedge_of(w);
      checker.check(
          w, h, [&] { return run_all(a, fcns_word(w), options.output_limit); },
          [&] { return eval(t, h, options.output_limit); });
    });
  });
}

Verdict equiv_h2s_on_bounded(const H2s& a_in, const H2s& b_in, std::size_t max_nodes,
                             bool skip_empty, const EquivOptions& options) {
  H2s a = a_in, b = b_in;
  if (a.input_alphabet() != b.input_alphabet()) {
    a = over_pairs(a_in);
    b = over_pairs(b_in);
  }
  if (a.input_alphabet() != b.input_alphabet())
    throw AlphabetError("the two transducers read different input alphabets");
  Checker checker(options);
  return checker.run([&] {
    for_each_hedge(a.input_alphabet(), max_nodes, [&](const Hedge& h) {
      if (skip_empty && h.empty()) return;
      checker.check(
          h, h, [&] { return eval(a, h, options.output_limit); },
          [&] { return eval(b, h, options.output_limit); });
    });
  });
}

Verdict equiv_vpt_on_bounded(const Vpt& a, const Vpt& b, std::size_t max_len,
                             const EquivOptions& options) {
  if (!(a.input_alphabet() == b.input_alphabet()))
    throw AlphabetError("the two VPTs read different input alphabets");
  Checker checker(options);
  return checker.run([&] {
    for_each_word(a.input_alphabet(), max_len, [&](const NestedWord& w) {
      checker.check(
          w, hedge_of(w), [&] { return run_all(a, w, options.output_limit); },
          [&] { return run_all(b, w, options.output_limit); });
    });
  });
}

bool reproduces(const Vpt& a, const H2s& t, const Counterexample& cx, bool fcns) {
  const auto* w = std::get_if<NestedWord>(&cx.input);
  if (w == nullptr) return false;
  const OutputSet side_a = run_all(a, fcns ? fcns_word(*w) : *w);
  const OutputSet side_b = eval(over_pairs(t), hedge_of(*w));
  return side_a != side_b && side_a == cx.side_a && side_b == cx.side_b;
}

std::string format_input(const OracleInput& input) {
  if (const auto* w = std::get_if<NestedWord>(&input)) return format_word(*w);
  return format_hedge(std::get<Hedge>(input));
}

namespace {

void write_set(std::ostringstream& os, const char* side, const OutputSet& set) {
  os << side << " (" << set.size() << "):\n";
  for (const auto& w : set) os << "  " << format_word(w) << '\n';
}

}  // namespace

std::string format_verdict(const Verdict& v) {
  std::ostringstream os;
  if (v.equivalent()) {
    os << "equivalent up to bound: " << v.inputs_checked << " inputs checked, "
       << v.inputs_accepted << " with outputs\n";
    return os.str();
  }
  os << "counterexample after " << v.inputs_checked << " inputs\n";
  os << "input: " << format_input(v.counterexample->input) << '\n';
  write_set(os, "side A", v.counterexample->side_a);
  write_set(os, "side B", v.counterexample->side_b);
  return os.str();
}

std::string format_records(const Verdict& v) {
  std::ostringstream os;
  for (const auto& r : v.records)
    os << format_input(r.input) << '\t' << r.side_a_size << '\t' << r.side_b_size << '\t'
       << (r.match ? "match" : "mismatch") << '\n';
  return os.str();
}

FamilyMember exp_hedge_family(std::size_t n) {
  if (n == 0) throw PreconditionError("the hedge family starts at n = 1");
  Hedge h{node("a"), node("a")};
  for (std::size_t k = 1; k < n; ++k) h = Hedge{node("a", h), node("a", h)};
  FamilyMember m;
  m.height = hedge_height(h);
  m.nodes = node_count(h);
  m.hedge = std::move(h);
  return m;
}

std::vector<WitnessRow> separation_witness(std::size_t max_n) {
  const H2s flatten = builtin("flatten", {"a"});
  const StructuredAlphabet& out = flatten.output_alphabet().structure();
  std::vector<WitnessRow> rows;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const FamilyMember m = exp_hedge_family(n);
    const OutputSet outputs = eval(flatten, m.hedge);
    if (outputs.size() != 1) throw Error("flatten is expected to be functional");
    const Word& flat = *outputs.begin();
    WitnessRow row;
    row.n = n;
    row.height_in = m.height;
    row.nodes = m.nodes;
    row.flat_size = flat.size();
    row.height_fcns_out = height(fcns_word(out.resolve(flat)));
    row.ratio = static_cast<double>(row.height_fcns_out) / static_cast<double>(row.height_in);
    rows.push_back(row);
  }
  return rows;
}

std::string format_witness(const std::vector<WitnessRow>& rows) {
  std::ostringstream os;
  os << std::setw(4) << "n" << std::setw(11) << "height_in" << std::setw(8) << "nodes"
     << std::setw(11) << "flat_size" << std::setw(12) << "height_out" << std::setw(10)
     << "ratio" << '\n';
  os << std::fixed << std::setprecision(2);
  for (const auto& r : rows)
    os << std::setw(4) << r.n << std::setw(11) << r.height_in << std::setw(8) << r.nodes
       << std::setw(11) << r.flat_size << std::setw(12) << r.height_fcns_out
       << std::setw(10) << r.ratio << '\n';
  return os.str();
}

std::string format_witness_records(const std::vector<WitnessRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(10);
  for (const auto& r : rows)
    os << r.n << '\t' << r.height_in << '\t' << r.nodes << '\t' << r.flat_size << '\t'
       << r.height_fcns_out << '\t' << r.ratio << '\n';
  return os.str();
}

HeightBoundResult fact2_bound_check(const H2s& t, std::size_t max_nodes, InputHeight metric) {
  if (auto bad = find_non_h2b_rule(t))
    throw PreconditionError("transducer is not hedge-to-binary-tree (rule " +
                            std::to_string(*bad) + ")");
  const StructuredAlphabet& out = t.output_alphabet().structure();
  HeightBoundResult result;
  result.k = rule_height_constant(t);
  try {
    for_each_hedge(t.input_alphabet(), max_nodes, [&](const Hedge& h) {
      if (h.empty()) return;
      ++result.hedges_checked;
      const std::size_t in_height =
          metric == InputHeight::lin ? hedge_height(h) : fcns_height(h);
      for (const Word& o : eval(t, h)) {
        const std::size_t out_height = height(out.resolve(o));
        if (out_height > result.k * in_height) {
          result.violation = HeightViolation{h, o, in_height, out_height};
          throw Stop{};
        }
      }
    });
  } catch (const Stop&) {
  }
  return result;
}

// ---------------------------------------------------------------------------
// Random corpora

namespace {

class Draw {
 public:
  Draw(std::mt19937_64& rng) : rng_(rng) {}

  bool coin(double p) { return std::bernoulli_distribution(std::clamp(p, 0.0, 1.0))(rng_); }
  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

  Word word(const std::vector<Symbol>& symbols, std::size_t max_len) {
    Word w;
    if (symbols.empty()) return w;
    const std::size_t len = between(0, max_len);
    for (std::size_t i = 0; i < len; ++i) w.push_back(pick(symbols));
    return w;
  }

  /// Random well-nested word of even length ≤ max_len.
  Word wn_word(const std::vector<Symbol>& calls, const std::vector<Symbol>& returns,
               std::size_t max_len) {
    Word w;
    if (calls.empty() || returns.empty()) return w;
    const std::size_t pairs = between(0, max_len / 2);
    std::size_t open = 0;
    std::size_t left = pairs;
    while (left > 0 || open > 0) {
      if (left > 0 && (open == 0 || coin(0.5))) {
        w.push_back(pick(calls));
        ++open;
        --left;
      } else {
        w.push_back(pick(returns));
        --open;
      }
    }
    return w;
  }

 private:
  std::mt19937_64& rng_;
};

std::vector<Symbol> sorted(const std::set<Symbol>& s) { return {s.begin(), s.end()}; }

std::vector<Symbol> non_bottom(const std::set<Symbol>& s) {
  std::vector<Symbol> out;
  for (const auto& x : s)
    if (x != kBottomCall && x != kBottomReturn) out.push_back(x);
  return out;
}

void name_states(NameTable& table, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) table.intern("q" + std::to_string(i));
}

std::set<StateId> draw_subset(Draw& draw, std::size_t n, double p, bool include_first) {
  std::set<StateId> out;
  for (StateId q = 0; q < n; ++q)
    if ((include_first && q == 0) || draw.coin(p)) out.insert(q);
  if (out.empty()) out.insert(static_cast<StateId>(draw.below(n)));
  return out;
}

}  // namespace

Vpt random_vpt(std::mt19937_64& rng, const StructuredAlphabet& input,
               const OutputAlphabet& output, VptFlavor flavor, const RandomOptions& options) {
  Draw draw(rng);
  const std::size_t n = draw.between(options.min_states, options.max_states);
  const double density = draw.real(options.min_density, options.max_density);
  const std::size_t n_stack = std::max<std::size_t>(1, options.stack_symbols);

  VptDefinition d;
  d.input = input;
  d.output = output;
  name_states(d.states, n);
  for (std::size_t i = 0; i < n_stack; ++i) d.stack.intern("g" + std::to_string(i));
  d.initial = draw_subset(draw, n, 0.25, true);
  d.final = draw_subset(draw, n, 0.5, false);

  const std::vector<Symbol> out_symbols = sorted(output.symbols());
  std::vector<Symbol> out_calls, out_returns;
  // Well-nested flavor: every push of γ emits u·open(γ), every pop of γ
  // emits close·v with u, v well-nested, so matched pairs concatenate to a
  // well-nested word.
  std::vector<std::optional<Symbol>> pending(n_stack);
  if (flavor == VptFlavor::well_nested) {
    out_calls = sorted(output.structure().calls());
    out_returns = sorted(output.structure().returns());
    for (auto& p : pending)
      if (!out_calls.empty() && !out_returns.empty() && draw.coin(0.5)) p = draw.pick(out_calls);
  }
  auto call_output = [&](StackId g) {
    if (flavor == VptFlavor::general) return draw.word(out_symbols, options.max_output);
    const std::size_t room = options.max_output - (pending[g] && options.max_output > 0 ? 1 : 0);
    Word w = draw.wn_word(out_calls, out_returns, room);
    if (pending[g] && options.max_output > 0) w.push_back(*pending[g]);
    return w;
  };
  auto return_output = [&](StackId g) {
    if (flavor == VptFlavor::general) return draw.word(out_symbols, options.max_output);
    Word w;
    if (pending[g] && options.max_output > 0) w.push_back(draw.pick(out_returns));
    Word rest = draw.wn_word(out_calls, out_returns, options.max_output - w.size());
    w.insert(w.end(), rest.begin(), rest.end());
    return w;
  };

  auto add_call = [&](StateId q, const Symbol& c) {
    const auto g = static_cast<StackId>(draw.below(n_stack));
    d.calls.push_back({q, c, g, call_output(g), static_cast<StateId>(draw.below(n))});
  };
  auto add_return = [&](StateId q, const Symbol& r, StackId g) {
    d.returns.push_back({q, r, g, return_output(g), static_cast<StateId>(draw.below(n))});
  };
  for (StateId q = 0; q < n; ++q) {
    for (const auto& c : input.calls()) {
      if (draw.coin(density)) add_call(q, c);
      if (draw.coin(density / 2)) add_call(q, c);
    }
    for (const auto& r : input.returns()) {
      for (StackId g = 0; g < n_stack; ++g) {
        if (draw.coin(density)) add_return(q, r, g);
        if (draw.coin(density / 4)) add_return(q, r, g);
      }
    }
  }
  return Vpt(std::move(d));
}

H2s random_h2s(std::mt19937_64& rng, const std::set<Symbol>& input,
               const OutputAlphabet& output, H2sFlavor flavor, const RandomOptions& options) {
  Draw draw(rng);
  const std::size_t n = draw.between(options.min_states, options.max_states);
  const double density = draw.real(options.min_density, options.max_density);

  H2sDefinition d;
  d.input = input;
  d.output = output;
  name_states(d.states, n);
  d.initial = draw_subset(draw, n, 0.25, true);

  const Word bottom_leaf{kBottomCall, kBottomReturn};
  for (StateId q : draw_subset(draw, n, 0.6, false))
    d.leaves.push_back({q, flavor == H2sFlavor::h2b ? bottom_leaf : Word{}});

  const std::vector<Symbol> out_symbols = sorted(output.symbols());
  std::vector<Symbol> out_calls, out_returns;
  if (flavor == H2sFlavor::h2h || flavor == H2sFlavor::h2h_tr || flavor == H2sFlavor::h2b) {
    out_calls = non_bottom(output.structure().calls());
    out_returns = non_bottom(output.structure().returns());
  }
  if (flavor == H2sFlavor::h2b && (out_calls.empty() || out_returns.empty()))
    throw AlphabetError("hedge-to-binary-tree generation needs non-⊥ call and return symbols");

  // The three ways to place a hole in a binary context: as the whole
  // subtree, as the left subtree, or as the right subtree of a fresh node.
  auto binary_context = [&](Word& head, Word& tail) {
    switch (draw.below(3)) {
      case 0:
        break;
      case 1:
        head = {draw.pick(out_calls)};
        tail = {kBottomCall, kBottomReturn, draw.pick(out_returns)};
        break;
      default:
        head = {draw.pick(out_calls), kBottomCall, kBottomReturn};
        tail = {draw.pick(out_returns)};
        break;
    }
  };

  auto add_rule = [&](StateId q, const Symbol& label) {
    NodeRule r;
    r.state = q;
    r.label = label;
    r.child = static_cast<StateId>(draw.below(n));
    r.sibling = static_cast<StateId>(draw.below(n));
    switch (flavor) {
      case H2sFlavor::general:
        r.w1 = draw.word(out_symbols, options.max_output);
        r.w2 = draw.word(out_symbols, options.max_output);
        r.w3 = draw.word(out_symbols, options.max_output);
        break;
      case H2sFlavor::tail_recursive:
        r.w1 = draw.word(out_symbols, options.max_output);
        r.w2 = draw.word(out_symbols, options.max_output);
        break;
      case H2sFlavor::h2h:
      case H2sFlavor::h2h_tr: {
        const Word all = draw.wn_word(out_calls, out_returns, options.max_output);
        std::size_t i = draw.between(0, all.size());
        std::size_t j = flavor == H2sFlavor::h2h_tr ? all.size() : draw.between(i, all.size());
        r.w1.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(i));
        r.w2.assign(all.begin() + static_cast<std::ptrdiff_t>(i),
                    all.begin() + static_cast<std::ptrdiff_t>(j));
        r.w3.assign(all.begin() + static_cast<std::ptrdiff_t>(j), all.end());
        break;
      }
      case H2sFlavor::h2b: {
        Word head1, tail1, head2, tail2;
        binary_context(head1, tail1);
        binary_context(head2, tail2);
        r.w1 = {draw.pick(out_calls)};
        r.w1.insert(r.w1.end(), head1.begin(), head1.end());
        r.w2 = tail1;
        r.w2.insert(r.w2.end(), head2.begin(), head2.end());
        r.w3 = tail2;
        r.w3.push_back(draw.pick(out_returns));
        break;
      }
    }
    d.rules.push_back(std::move(r));
  };
  for (StateId q = 0; q < n; ++q) {
    for (const auto& label : input) {
      if (draw.coin(density)) add_rule(q, label);
      if (draw.coin(density / 2)) add_rule(q, label);
    }
  }
  return H2s(std::move(d));
}

Vpt drop_transition(const Vpt& a, std::size_t index) {
  VptDefinition d = a.definition();
  if (index < d.calls.size()) {
    d.calls.erase(d.calls.begin() + static_cast<std::ptrdiff_t>(index));
  } else if (index - d.calls.size() < d.returns.size()) {
    d.returns.erase(d.returns.begin() + static_cast<std::ptrdiff_t>(index - d.calls.size()));
  } else {
    throw Error("transition index out of range");
  }
  return Vpt(std::move(d));
}

Vpt append_output(const Vpt& a, std::size_t index, const Symbol& symbol) {
  VptDefinition d = a.definition();
  if (index < d.calls.size()) {
    d.calls[index].output.push_back(symbol);
  } else if (index - d.calls.size() < d.returns.size()) {
    d.returns[index - d.calls.size()].output.push_back(symbol);
  } else {
    throw Error("transition index out of range");
  }
  return Vpt(std::move(d));
}

H2s drop_rule(const H2s& t, std::size_t index) {
  H2sDefinition d = t.definition();
  if (index >= d.rules.size()) throw Error("rule index out of range");
  d.rules.erase(d.rules.begin() + static_cast<std::ptrdiff_t>(index));
  return H2s(std::move(d));
}

H2s append_output(const H2s& t, std::size_t index, const Symbol& symbol) {
  H2sDefinition d = t.definition();
  if (index >= d.rules.size()) throw Error("rule index out of range");
  d.rules[index].w1.push_back(symbol);
  return H2s(std::move(d));
}

}  // namespace vptk
