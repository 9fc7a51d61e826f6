#pragma once

// Hedges, binary trees, and the encodings between them and nested words:
//
//   lin        hedge        -> well-nested word   (a ↦ c_a ... r_a)
//   hedge_of   well-nested  -> hedge over call/return pairs
//   fcns       hedge        -> binary tree        (first child, next sibling)
//   fcns_word  well-nested  -> binary well-nested word over Σ plus ⊥c/⊥r

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "vptk/words.hpp"

namespace vptk {

struct Tree;

/// A hedge in canonical form: the sequence of its top-level trees. The empty
/// vector is the empty hedge and concatenation is vector concatenation.
using Hedge = std::vector<Tree>;

struct Tree {
  Symbol label;
  Hedge children;

  friend bool operator==(const Tree&, const Tree&) = default;
};

inline Tree node(Symbol label, Hedge children = {}) {
  return Tree{std::move(label), std::move(children)};
}

Hedge concat(Hedge a, const Hedge& b);

/// Binary tree with ⊥ leaves. Immutable; copies share structure.
class BinaryTree {
 public:
  /// The leaf ⊥.
  BinaryTree() = default;
  BinaryTree(Symbol label, BinaryTree left, BinaryTree right);

  bool is_leaf() const noexcept { return node_ == nullptr; }
  const Symbol& label() const;
  const BinaryTree& left() const;
  const BinaryTree& right() const;

  friend bool operator==(const BinaryTree& a, const BinaryTree& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

/// Names used by lin for the call and return of label `a`.
Symbol call_name(const Symbol& label);
Symbol return_name(const Symbol& label);

/// Label of a node produced by hedge_of: the pair (call, return).
Symbol pair_label(const Symbol& call, const Symbol& ret);
std::optional<std::pair<Symbol, Symbol>> split_pair_label(const Symbol& label);

/// Λs for a label set Λ: calls c_a and returns r_a.
StructuredAlphabet structured_version(const std::set<Symbol>& labels);

/// Σc × Σr as pair labels.
std::set<Symbol> product_labels(const StructuredAlphabet& alphabet);

/// Inverse of product_labels. Returns nullopt unless every label is a pair
/// and the set is the full product of its components.
std::optional<StructuredAlphabet> product_components(
    const std::set<Symbol>& labels);

NestedWord lin(const Hedge& h);

/// Linearization of a binary tree; ⊥ leaves become ⊥c ⊥r.
NestedWord lin(const BinaryTree& t);

/// Throws ShapeError on non-well-nested input.
Hedge hedge_of(const NestedWord& w);

BinaryTree fcns(const Hedge& h);
Hedge fcns_inverse(const BinaryTree& t);

/// First-child next-sibling encoding on linearizations. The input must be
/// well-nested and free of ⊥ symbols; throws ShapeError otherwise.
NestedWord fcns_word(const NestedWord& w);

/// Inverse of fcns_word. Throws ShapeError at the earliest offset where the
/// input stops being a binary well-nested word.
NestedWord fcns_inv_word(const NestedWord& w);

/// Membership in the binary well-nested words over any alphabet extended
/// with ⊥c/⊥r.
bool is_binary_wn(const NestedWord& w);

std::size_t node_count(const Hedge& h);

/// height(lin(h)).
std::size_t hedge_height(const Hedge& h);

/// height(lin(fcns(h))), counting ⊥ leaves as one level.
std::size_t fcns_height(const Hedge& h);

/// Labels used anywhere in the hedge.
std::set<Symbol> labels_of(const Hedge& h);

}  // namespace vptk
