#pragma once

// Text formats: model files, hedge terms and word tokens.
//
// VPT files
//
//   vpt
//   calls: c_a c_b        returns: r_a r_b
//   out: x y
//   states: q0 q1         stack: g0 g1
//   initial: q0           final: q1
//   call q0 c_a g0 [x y] q1
//   ret  q1 r_a g0 []    q0
//
// H2S files
//
//   h2s
//   in: a b            out: x y
//   states: q p        initial: q
//   leaf q
//   rule q a -> [x] p [y] q []
//
// `out:` declares a plain output alphabet; `out-calls:` and `out-returns:`
// declare a structured one. A file starting with `h2s extended` may give
// leaf rules an output list (`leaf q [w]`). `#` starts a comment at the
// beginning of a line or after whitespace.

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "vptk/h2s.hpp"
#include "vptk/hedges.hpp"
#include "vptk/vpt.hpp"
#include "vptk/words.hpp"

namespace vptk {

/// Space-separated symbols; ε for the empty word.
std::string format_word(const Word& w);
std::string format_word(const NestedWord& w);

/// Whitespace-separated tokens. A lone ε is the empty word.
Word parse_tokens(std::string_view text);

/// Tokens tagged as calls or returns: ⊥c/⊥r by name, others by membership
/// in `calls`/`returns`. With both sets empty, a leading 'c' marks a call and
/// a leading 'r' a return. Throws AlphabetError on untaggable tokens.
NestedWord parse_nested(std::string_view text, const std::set<Symbol>& calls = {},
                        const std::set<Symbol>& returns = {});

/// Term syntax `a(b c) d`; ε for the empty hedge.
std::string format_hedge(const Hedge& h);
/// Inverse of format_hedge; the empty string is also the empty hedge.
/// Throws ParseError.
Hedge parse_hedge(std::string_view text);

/// Term syntax with `_` for ⊥, e.g. `a(b(_ _) _)`.
std::string format_binary_tree(const BinaryTree& t);
/// Also accepts a bare label for a node with two ⊥ children.
BinaryTree parse_binary_tree(std::string_view text);

using Model = std::variant<Vpt, H2s>;

std::string to_text(const Vpt& a);
std::string to_text(const H2s& t);
std::string to_text(const Model& m);

/// Throws ParseError with line and column, or ModelError when the parsed
/// definition is inconsistent.
Vpt parse_vpt(std::string_view text);
H2s parse_h2s(std::string_view text);
/// Dispatches on the first token (`vpt` or `h2s`).
Model parse_model(std::string_view text);

Model load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const Model& m);

}  // namespace vptk
