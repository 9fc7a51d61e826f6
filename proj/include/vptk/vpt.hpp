#pragma once

// Visibly pushdown transducers with empty-stack acceptance.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "vptk/names.hpp"
#include "vptk/words.hpp"

namespace vptk {

/// Set of output words of a transduction on one input.
using OutputSet = std::set<Word>;

inline constexpr std::size_t kDefaultOutputLimit = 1'000'000;

struct VptTransition {
  StateId from;
  Symbol symbol;
  StackId stack;
  Word output;
  StateId to;

  friend auto operator<=>(const VptTransition&, const VptTransition&) = default;
};

/// Raw data of a VPT. Mutable; validated when wrapped in a Vpt.
struct VptDefinition {
  StructuredAlphabet input;
  OutputAlphabet output;
  NameTable states;
  NameTable stack;
  std::set<StateId> initial;
  std::set<StateId> final;
  std::vector<VptTransition> calls;
  std::vector<VptTransition> returns;
};

class Vpt {
 public:
  /// Throws ModelError when a transition references an undeclared state,
  /// stack symbol, or symbol, or a call/return symbol is used on the wrong
  /// side.
  explicit Vpt(VptDefinition def);

  const VptDefinition& definition() const noexcept { return def_; }
  const StructuredAlphabet& input_alphabet() const noexcept { return def_.input; }
  const OutputAlphabet& output_alphabet() const noexcept { return def_.output; }
  const NameTable& states() const noexcept { return def_.states; }
  const NameTable& stack() const noexcept { return def_.stack; }
  const std::set<StateId>& initial() const noexcept { return def_.initial; }
  const std::set<StateId>& final() const noexcept { return def_.final; }
  const std::vector<VptTransition>& calls() const noexcept { return def_.calls; }
  const std::vector<VptTransition>& returns() const noexcept { return def_.returns; }
  std::size_t state_count() const noexcept { return def_.states.size(); }

  /// Indices into calls() / returns() of transitions leaving `q`.
  std::span<const std::size_t> calls_from(StateId q) const { return calls_from_[q]; }
  std::span<const std::size_t> returns_from(StateId q) const { return returns_from_[q]; }

 private:
  VptDefinition def_;
  std::vector<std::vector<std::size_t>> calls_from_;
  std::vector<std::vector<std::size_t>> returns_from_;
};

/// All outputs of accepting runs on `w`. Empty iff `w` is rejected, which
/// includes every non-well-nested word. Throws AlphabetError on symbols
/// outside the input alphabet and OutputLimitError past `limit` outputs.
OutputSet run_all(const Vpt& a, const NestedWord& w,
                  std::size_t limit = kDefaultOutputLimit);

bool accepts(const Vpt& a, const NestedWord& w);

/// Call/return transitions sharing a stack symbol whose outputs concatenate
/// to a non-well-nested word, as indices (call, return). Throws
/// AlphabetError if the output alphabet is not structured.
std::optional<std::pair<std::size_t, std::size_t>> find_non_well_nested_pair(
    const Vpt& a);

bool is_wn_vpt(const Vpt& a);

using StatePairs = std::set<std::pair<StateId, StateId>>;

/// Pairs (p, q) such that some well-nested word leads from (p, empty stack)
/// to (q, empty stack).
StatePairs summaries(const Vpt& a);

/// Pairs (p, q) such that ⊥c ⊥r leads from (p, empty stack) to (q, empty
/// stack). Throws AlphabetError if the input alphabet lacks ⊥c/⊥r.
StatePairs bot_summaries(const Vpt& a);

/// Drops states that are unreachable from an initial state or cannot reach a
/// final state in the transition graph (stack ignored), and unused stack
/// symbols. Preserves the transduction.
Vpt prune(const Vpt& a);

}  // namespace vptk
