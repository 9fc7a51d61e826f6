#pragma once

// Hedge-to-string transducers with linear, order-preserving rules
//
//   q(0)          -> ε
//   q(f(x1)·x2)   -> w1 q1(x1) w2 q2(x2) w3
//
// and the subclasses defined by the shape of the rule outputs.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "vptk/hedges.hpp"
#include "vptk/names.hpp"
#include "vptk/vpt.hpp"
#include "vptk/words.hpp"

namespace vptk {

struct NodeRule {
  StateId state;
  Symbol label;
  Word w1;
  StateId child;
  Word w2;
  StateId sibling;
  Word w3;

  friend auto operator<=>(const NodeRule&, const NodeRule&) = default;
};

/// q(0) -> output. Standard transducers only have empty outputs; non-empty
/// leaf outputs form the extended dialect used by intermediate
/// constructions and by hedge-to-binary-tree transducers (whose leaves emit
/// ⊥c ⊥r).
struct LeafRule {
  StateId state;
  Word output;

  friend auto operator<=>(const LeafRule&, const LeafRule&) = default;
};

struct H2sDefinition {
  std::set<Symbol> input;
  OutputAlphabet output;
  NameTable states;
  std::set<StateId> initial;
  std::vector<LeafRule> leaves;
  std::vector<NodeRule> rules;
};

class H2s {
 public:
  /// Throws ModelError on undeclared states, labels or output symbols.
  explicit H2s(H2sDefinition def);

  const H2sDefinition& definition() const noexcept { return def_; }
  const std::set<Symbol>& input_alphabet() const noexcept { return def_.input; }
  const OutputAlphabet& output_alphabet() const noexcept { return def_.output; }
  const NameTable& states() const noexcept { return def_.states; }
  const std::set<StateId>& initial() const noexcept { return def_.initial; }
  const std::vector<LeafRule>& leaves() const noexcept { return def_.leaves; }
  const std::vector<NodeRule>& rules() const noexcept { return def_.rules; }
  std::size_t state_count() const noexcept { return def_.states.size(); }

  std::span<const std::size_t> rules_from(StateId q) const { return rules_from_[q]; }
  std::span<const std::size_t> leaves_of(StateId q) const { return leaves_of_[q]; }

  /// True when every leaf rule outputs ε.
  bool is_standard() const;

 private:
  H2sDefinition def_;
  std::vector<std::vector<std::size_t>> rules_from_;
  std::vector<std::vector<std::size_t>> leaves_of_;
};

/// Union over initial states of eval_state. Throws AlphabetError on labels
/// outside the input alphabet, OutputLimitError past `limit` outputs.
OutputSet eval(const H2s& t, const Hedge& h, std::size_t limit = kDefaultOutputLimit);

/// ⟦q⟧(h).
OutputSet eval_state(const H2s& t, StateId q, const Hedge& h,
                     std::size_t limit = kDefaultOutputLimit);

/// Index of the first rule with a non-empty w3.
std::optional<std::size_t> find_non_tail_recursive_rule(const H2s& t);
bool is_tail_recursive(const H2s& t);

/// Index of the first node rule whose w1·w2·w3 is not well-nested, or whose
/// leaf output is not well-nested (reported as rules().size() + leaf index).
/// Throws AlphabetError if the output alphabet is not structured.
std::optional<std::size_t> find_non_h2h_rule(const H2s& t);
bool is_h2h(const H2s& t);

/// Decomposition of a hedge-to-binary-tree rule
///   w1 = open·head1,  w2 = tail1·head2,  w3 = tail2·close
/// with head1 ⊥c⊥r tail1 and head2 ⊥c⊥r tail2 binary well-nested.
struct H2bShape {
  Symbol open;
  Word head1;
  Word tail1;
  Word head2;
  Word tail2;
  Symbol close;
};

/// Searches all cut points of w2. Requires a structured output alphabet.
std::optional<H2bShape> h2b_shape(const NodeRule& rule,
                                  const StructuredAlphabet& output);

/// Every node rule has an H2bShape and every leaf rule emits exactly ⊥c ⊥r.
/// Throws AlphabetError unless the output alphabet is structured and
/// contains ⊥c/⊥r.
bool is_h2b(const H2s& t);
std::optional<std::size_t> find_non_h2b_rule(const H2s& t);

/// 1 + max over node rules of height(w1·w2·w3); the output-height growth
/// constant of a hedge-to-binary-tree transducer.
std::size_t rule_height_constant(const H2s& t);

/// Relabels a transducer over a plain label set Λ to read hedges over the
/// call/return pairs of Λs: label f becomes (c_f, r_f), and mixed pairs
/// (c_f, r_g) get no rules. Returns `t` unchanged if its input alphabet is
/// already a full product.
H2s over_pairs(const H2s& t);

/// Removes unproductive and unreachable states and the rules using them.
H2s prune(const H2s& t);

/// Built-in transducers over the label set `alphabet`:
///   "mirror"        reverses strings (flat hedges); not tail-recursive
///   "subhedge_root" nondeterministically roots subhedges under '#'
///   "flatten"       f(h1)·h2 ↦ c_f r_f flatten(h1) flatten(h2)
/// Throws Error on unknown names.
H2s builtin(std::string_view name, const std::set<Symbol>& alphabet);

}  // namespace vptk
