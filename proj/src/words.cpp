#include "vptk/words.hpp"

#include <algorithm>

#include "vptk/error.hpp"

namespace vptk {

StructuredAlphabet::StructuredAlphabet(std::set<Symbol> calls,
                                       std::set<Symbol> returns)
    : calls_(std::move(calls)), returns_(std::move(returns)) {
  for (const auto& c : calls_) {
    if (returns_.count(c) != 0)
      throw AlphabetError("symbol '" + c + "' declared both as call and return");
    if (c == kBottomReturn)
      throw AlphabetError("'" + kBottomReturn + "' must be a return symbol");
  }
  if (returns_.count(kBottomCall) != 0)
    throw AlphabetError("'" + kBottomCall + "' must be a call symbol");
}

std::optional<Tag> StructuredAlphabet::tag_of(const Symbol& name) const {
  if (calls_.count(name) != 0) return Tag::call;
  if (returns_.count(name) != 0) return Tag::ret;
  return std::nullopt;
}

bool StructuredAlphabet::contains(const Letter& letter) const {
  return tag_of(letter.name) == letter.tag;
}

bool StructuredAlphabet::has_bottom() const {
  return calls_.count(kBottomCall) != 0 && returns_.count(kBottomReturn) != 0;
}

StructuredAlphabet StructuredAlphabet::with_bottom() const {
  auto c = calls_;
  auto r = returns_;
  c.insert(kBottomCall);
  r.insert(kBottomReturn);
  return StructuredAlphabet(std::move(c), std::move(r));
}

StructuredAlphabet StructuredAlphabet::without_bottom() const {
  auto c = calls_;
  auto r = returns_;
  c.erase(kBottomCall);
  r.erase(kBottomReturn);
  return StructuredAlphabet(std::move(c), std::move(r));
}

NestedWord StructuredAlphabet::resolve(const Word& word) const {
  NestedWord out;
  out.reserve(word.size());
  for (const auto& s : word) {
    auto tag = tag_of(s);
    if (!tag) throw AlphabetError("symbol '" + s + "' is not in the alphabet");
    out.push_back(Letter{*tag, s});
  }
  return out;
}

OutputAlphabet OutputAlphabet::plain(std::set<Symbol> symbols) {
  OutputAlphabet a;
  a.plain_ = std::move(symbols);
  return a;
}

OutputAlphabet OutputAlphabet::structured(StructuredAlphabet alphabet) {
  OutputAlphabet a;
  a.structured_ = std::move(alphabet);
  return a;
}

const StructuredAlphabet& OutputAlphabet::structure() const {
  if (!structured_) throw AlphabetError("output alphabet is not structured");
  return *structured_;
}

bool OutputAlphabet::contains(const Symbol& name) const {
  if (structured_) return structured_->tag_of(name).has_value();
  return plain_.count(name) != 0;
}

std::set<Symbol> OutputAlphabet::symbols() const {
  if (!structured_) return plain_;
  std::set<Symbol> all = structured_->calls();
  all.insert(structured_->returns().begin(), structured_->returns().end());
  return all;
}

Word names_of(const NestedWord& word) {
  Word out;
  out.reserve(word.size());
  for (const auto& l : word) out.push_back(l.name);
  return out;
}

std::optional<std::size_t> first_nesting_violation(const NestedWord& word) {
  std::size_t depth = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i].tag == Tag::call) {
      ++depth;
    } else {
      if (depth == 0) return i;
      --depth;
    }
  }
  if (depth != 0) return word.size();
  return std::nullopt;
}

bool is_well_nested(const NestedWord& word) {
  return !first_nesting_violation(word).has_value();
}

std::optional<std::size_t> matching_return(const NestedWord& word,
                                           std::size_t call_pos) {
  std::size_t depth = 0;
  for (std::size_t i = call_pos; i < word.size(); ++i) {
    if (word[i].tag == Tag::call) {
      ++depth;
    } else if (--depth == 0) {
      return i;
    }
  }
  return std::nullopt;
}

Decomposition decompose(const NestedWord& word) {
  if (word.empty()) throw ShapeError("cannot decompose the empty word", 0);
  if (auto bad = first_nesting_violation(word))
    throw ShapeError("word is not well-nested", *bad);
  // A well-nested word starts with a call whose match exists.
  const std::size_t m = *matching_return(word, 0);
  return Decomposition{
      word.front(),
      NestedWord(word.begin() + 1, word.begin() + static_cast<std::ptrdiff_t>(m)),
      word[m],
      NestedWord(word.begin() + static_cast<std::ptrdiff_t>(m) + 1, word.end()),
  };
}

NestedWord recompose(const Decomposition& parts) {
  NestedWord out;
  out.reserve(parts.inner.size() + parts.rest.size() + 2);
  out.push_back(parts.call);
  out.insert(out.end(), parts.inner.begin(), parts.inner.end());
  out.push_back(parts.ret);
  out.insert(out.end(), parts.rest.begin(), parts.rest.end());
  return out;
}

std::size_t height(const NestedWord& word) {
  if (auto bad = first_nesting_violation(word))
    throw ShapeError("height is defined on well-nested words only", *bad);
  std::size_t depth = 0;
  std::size_t best = 0;
  for (const auto& l : word) {
    if (l.tag == Tag::call) {
      best = std::max(best, ++depth);
    } else {
      --depth;
    }
  }
  return best;
}

NestedWord concat(NestedWord a, const NestedWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace vptk
