#pragma once

// Bounded brute-force equivalence checking, the separation witnesses, and
// seeded random model corpora.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "vptk/h2s.hpp"
#include "vptk/hedges.hpp"
#include "vptk/vpt.hpp"
#include "vptk/words.hpp"

namespace vptk {

/// All hedges with at most `max_nodes` nodes, ordered by node count and then
/// lexicographically on lin (returns before calls, so a·a precedes a(a)).
std::vector<Hedge> enum_hedges(const std::set<Symbol>& alphabet, std::size_t max_nodes);

/// All well-nested words of length at most `max_len`, ordered by length and
/// then lexicographically (returns before calls, names in alphabet order).
std::vector<NestedWord> enum_wn_words(const StructuredAlphabet& alphabet,
                                      std::size_t max_len);

using OracleInput = std::variant<NestedWord, Hedge>;

struct Counterexample {
  OracleInput input;
  OutputSet side_a;
  OutputSet side_b;
};

struct OracleRecord {
  OracleInput input;
  std::size_t side_a_size = 0;
  std::size_t side_b_size = 0;
  bool match = true;
};

enum class Outcome { equivalent_up_to_bound, counterexample };

struct Verdict {
  Outcome outcome = Outcome::equivalent_up_to_bound;
  std::size_t inputs_checked = 0;
  /// Inputs on which side A produced at least one output.
  std::size_t inputs_accepted = 0;
  std::optional<Counterexample> counterexample;
  std::vector<OracleRecord> records;

  bool equivalent() const noexcept { return outcome == Outcome::equivalent_up_to_bound; }
};

struct EquivOptions {
  std::size_t output_limit = kDefaultOutputLimit;
  /// Keep one record per checked input.
  bool collect_records = false;
  /// Stop at the first counterexample.
  bool stop_at_first = true;
  /// Only inputs whose hedge passes the filter are checked.
  std::function<bool(const Hedge&)> input_filter;
};

/// run_all(a, w) against eval(t, hedge_of(w)) for every well-nested w of
/// length ≤ max_len. Throws AlphabetError unless t reads Σc×Σr of a's input,
/// or a plain Λ with a reading Λs (see over_pairs).
Verdict equiv_on_bounded(const Vpt& a, const H2s& t, std::size_t max_len,
                         const EquivOptions& options = {});

/// run_all(a, fcns_word(w)) against eval(t, hedge_of(w)) for every non-empty
/// well-nested w of length ≤ max_len. `a` must read Σ⊥.
Verdict equiv_fcns_on_bounded(const Vpt& a, const H2s& t, std::size_t max_len,
                              const EquivOptions& options = {});

/// Two H2S on all hedges up to `max_nodes` nodes over their common input
/// alphabet. `skip_empty` leaves out the empty hedge.
Verdict equiv_h2s_on_bounded(const H2s& a, const H2s& b, std::size_t max_nodes,
                             bool skip_empty = false, const EquivOptions& options = {});

/// Two VPTs on all well-nested words up to `max_len` over their common input
/// alphabet.
Verdict equiv_vpt_on_bounded(const Vpt& a, const Vpt& b, std::size_t max_len,
                             const EquivOptions& options = {});

/// Re-evaluates a counterexample of equiv_on_bounded and reports whether the
/// mismatch reproduces with the same sets.
bool reproduces(const Vpt& a, const H2s& t, const Counterexample& cx, bool fcns = false);

std::string format_input(const OracleInput& input);
std::string format_verdict(const Verdict& v);
/// One line per record: input, side-A size, side-B size, match flag
/// (tab-separated).
std::string format_records(const Verdict& v);

struct FamilyMember {
  Hedge hedge;
  std::size_t height = 0;
  std::size_t nodes = 0;
};

/// h1 = a·a, h(k+1) = a(hk)·a(hk). Throws PreconditionError for n = 0.
FamilyMember exp_hedge_family(std::size_t n);

struct WitnessRow {
  std::size_t n = 0;
  std::size_t height_in = 0;
  std::size_t nodes = 0;
  std::size_t flat_size = 0;
  std::size_t height_fcns_out = 0;
  double ratio = 0;
};

/// Flattens each family member, encodes the flat word with fcns_word and
/// reports its height against the input height.
std::vector<WitnessRow> separation_witness(std::size_t max_n);
std::string format_witness(const std::vector<WitnessRow>& rows);
std::string format_witness_records(const std::vector<WitnessRow>& rows);

/// How input heights are measured by fact2_bound_check.
enum class InputHeight {
  lin,   // hedge_height(h) = height(lin(h))
  fcns,  // fcns_height(h) = height(lin(fcns(h)))
};

struct HeightViolation {
  Hedge input;
  Word output;
  std::size_t input_height = 0;
  std::size_t output_height = 0;
};

struct HeightBoundResult {
  std::size_t k = 0;
  std::size_t hedges_checked = 0;
  std::optional<HeightViolation> violation;

  bool holds() const noexcept { return !violation.has_value(); }
};

/// Checks height(o) ≤ k·height(h) for every output o of `t` on every
/// non-empty hedge h up to `max_nodes` nodes over the input alphabet, with
/// k = rule_height_constant(t). Throws PreconditionError unless is_h2b(t).
HeightBoundResult fact2_bound_check(const H2s& t, std::size_t max_nodes,
                                    InputHeight metric = InputHeight::lin);

// Random corpora.

enum class VptFlavor { general, well_nested };
enum class H2sFlavor { general, tail_recursive, h2h, h2h_tr, h2b };

struct RandomOptions {
  std::size_t min_states = 2;
  std::size_t max_states = 4;
  double min_density = 0.3;
  double max_density = 0.7;
  std::size_t max_output = 2;
  std::size_t stack_symbols = 2;
};

/// Density d is drawn per model. Every (state, input symbol) gets a
/// transition with probability d and a second, nondeterministic one with
/// probability d/2; returns are drawn per (state, symbol, stack symbol).
/// The well-nested flavor needs a structured output alphabet.
Vpt random_vpt(std::mt19937_64& rng, const StructuredAlphabet& input,
               const OutputAlphabet& output, VptFlavor flavor,
               const RandomOptions& options = {});

/// Rules are drawn per (state, label) like VPT transitions. The hedge-to-hedge
/// flavors need a structured output alphabet; h2b needs one with ⊥c/⊥r.
H2s random_h2s(std::mt19937_64& rng, const std::set<Symbol>& input,
               const OutputAlphabet& output, H2sFlavor flavor,
               const RandomOptions& options = {});

// Single-edit mutations.

/// Drops call transition `index`, or return transition index - calls().size().
Vpt drop_transition(const Vpt& a, std::size_t index);
/// Appends `symbol` to the output of the transition numbered as in
/// drop_transition.
Vpt append_output(const Vpt& a, std::size_t index, const Symbol& symbol);
H2s drop_rule(const H2s& t, std::size_t index);
/// Appends `symbol` to w1 of rule `index`.
H2s append_output(const H2s& t, std::size_t index, const Symbol& symbol);

}  // namespace vptk
