#pragma once

// Structured alphabets and nested words.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vptk {

using Symbol = std::string;

/// A plain word, used for transducer outputs.
using Word = std::vector<Symbol>;

enum class Tag : std::uint8_t { call, ret };

struct Letter {
  Tag tag;
  Symbol name;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A nested word. Each letter carries its own call/return tag, so the word
/// can be inspected without the alphabet it was read against.
using NestedWord = std::vector<Letter>;

/// Reserved names of the leaf markers adjoined by the fcns encoding.
inline const Symbol kBottomCall = "⊥c";
inline const Symbol kBottomReturn = "⊥r";

inline Letter call(Symbol name) { return Letter{Tag::call, std::move(name)}; }
inline Letter ret(Symbol name) { return Letter{Tag::ret, std::move(name)}; }
inline Letter bottom_call() { return call(kBottomCall); }
inline Letter bottom_return() { return ret(kBottomReturn); }

inline bool is_bottom(const Letter& l) {
  return l.name == kBottomCall || l.name == kBottomReturn;
}

class StructuredAlphabet {
 public:
  StructuredAlphabet() = default;

  /// Throws AlphabetError when the two sides overlap or a leaf marker is
  /// declared on the wrong side.
  StructuredAlphabet(std::set<Symbol> calls, std::set<Symbol> returns);

  const std::set<Symbol>& calls() const noexcept { return calls_; }
  const std::set<Symbol>& returns() const noexcept { return returns_; }

  std::optional<Tag> tag_of(const Symbol& name) const;
  bool contains(const Letter& letter) const;
  bool empty() const noexcept { return calls_.empty() && returns_.empty(); }

  bool has_bottom() const;
  StructuredAlphabet with_bottom() const;
  StructuredAlphabet without_bottom() const;

  /// Tags every symbol by looking it up. Throws AlphabetError on unknown names.
  NestedWord resolve(const Word& word) const;

  friend bool operator==(const StructuredAlphabet&,
                         const StructuredAlphabet&) = default;

 private:
  std::set<Symbol> calls_;
  std::set<Symbol> returns_;
};

/// Output alphabet of a transducer: a plain set, or a structured alphabet
/// when the outputs are meant to be read as nested words.
class OutputAlphabet {
 public:
  OutputAlphabet() = default;

  static OutputAlphabet plain(std::set<Symbol> symbols);
  static OutputAlphabet structured(StructuredAlphabet alphabet);

  bool is_structured() const noexcept { return structured_.has_value(); }

  /// Throws AlphabetError when the alphabet is plain.
  const StructuredAlphabet& structure() const;

  bool contains(const Symbol& name) const;
  std::set<Symbol> symbols() const;

  friend bool operator==(const OutputAlphabet&, const OutputAlphabet&) = default;

 private:
  std::set<Symbol> plain_;
  std::optional<StructuredAlphabet> structured_;
};

Word names_of(const NestedWord& word);

/// Counter scan: never negative, ends at zero.
bool is_well_nested(const NestedWord& word);

/// Index of the return matching the call at `call_pos`, or nullopt if the
/// call is pending.
std::optional<std::size_t> matching_return(const NestedWord& word,
                                           std::size_t call_pos);

struct Decomposition {
  Letter call;
  NestedWord inner;
  Letter ret;
  NestedWord rest;
};

/// Splits a non-empty well-nested word as call · inner · ret · rest.
/// Throws ShapeError on empty or non-well-nested input.
Decomposition decompose(const NestedWord& word);

NestedWord recompose(const Decomposition& parts);

inline std::size_t size(const NestedWord& word) { return word.size(); }

/// Maximal nesting depth. Throws ShapeError on non-well-nested input.
std::size_t height(const NestedWord& word);

/// Offset of the first symbol breaking well-nestedness (a return on empty
/// stack, or the word length if calls remain pending); nullopt if none.
std::optional<std::size_t> first_nesting_violation(const NestedWord& word);

NestedWord concat(NestedWord a, const NestedWord& b);

}  // namespace vptk
