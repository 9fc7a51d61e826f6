#pragma once

// Translations between visibly pushdown transducers and hedge-to-string
// transducers.
//
//   vpt_to_h2s_tr     VPT(Σ, Δ)           -> tail-recursive H2S(Σc×Σr, Δ)
//   h2s_tr_to_vpt     tail-recursive H2S  -> VPT
//   vpt_fcns_to_h2s   VPT(Σ⊥, Δ) read on fcns encodings -> H2S(Σc×Σr, Δ)
//   h2s_to_vpt_fcns   any H2S             -> VPT(Σ⊥, Δ) read on fcns encodings
//   h2b_to_h2h        hedge-to-binary-tree -> hedge-to-hedge (fcns⁻¹ ∘ T)
//
// Each translation preserves the well-nested output class: a well-nested VPT
// yields a hedge-to-hedge H2S and vice versa.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "vptk/h2s.hpp"
#include "vptk/vpt.hpp"

namespace vptk {

/// Summary-pair construction. States are the summaries of `a`; the result is
/// tail-recursive and pruned.
H2s vpt_to_h2s_tr(const Vpt& a);

/// Stack-of-rules construction. Throws PreconditionError if `t` is not
/// tail-recursive (naming the offending rule) or has non-empty leaf outputs.
/// A plain label set is read through over_pairs.
Vpt h2s_tr_to_vpt(const H2s& t);

/// Pair construction over fcns encodings. The input alphabet of `a` must
/// contain ⊥c/⊥r. Non-empty outputs on ⊥c⊥r leaves are folded into the
/// parent rules, so the result is a standard H2S. Equivalence holds on
/// non-empty inputs.
H2s vpt_fcns_to_h2s(const Vpt& a);

/// Rule-tracking construction over fcns encodings. Works for every standard
/// H2S, tail-recursive or not; a plain label set is read through over_pairs.
Vpt h2s_to_vpt_fcns(const H2s& t);

/// Applies fcns⁻¹ to rule right-hand sides. Throws PreconditionError unless
/// is_h2b(t).
H2s h2b_to_h2h(const H2s& t);

/// Split of a rule's outputs w1 = a·b, w2 = d·e, w3 = g·k used by
/// h2s_to_vpt_fcns: `a`/`k` are emitted on the node's own call/return,
/// `b`/`d` around the first-child subtree, `e`/`g` around the sibling
/// subtree. When w1·w2·w3 is well-nested the cut points are chosen so that
/// a·k, b·d and e·g are each well-nested.
struct OutputSplit {
  Word a, b, d, e, g, k;
};
OutputSplit split_rule_outputs(const NodeRule& rule, const OutputAlphabet& output);

struct TranslationReport {
  std::string direction;
  std::string target;  // "vpt" or "h2s"
  std::size_t source_states = 0;
  std::size_t result_states = 0;
  std::size_t result_rules = 0;  // transitions or node rules
  std::optional<bool> tail_recursive;
  std::optional<bool> h2h;
  std::optional<bool> wn_vpt;
};

/// Flags are recomputed from `result`; absent when the output alphabet is
/// plain and the flag needs structure.
TranslationReport make_report(std::string_view direction, std::size_t source_states,
                              const H2s& result);
TranslationReport make_report(std::string_view direction, std::size_t source_states,
                              const Vpt& result);

std::string format_report(const TranslationReport& report);

}  // namespace vptk
