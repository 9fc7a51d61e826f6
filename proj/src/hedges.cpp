#include "vptk/hedges.hpp"

#include <algorithm>
#include <variant>

#include "vptk/error.hpp"

namespace vptk {

struct BinaryTree::Node {
  Symbol label;
  BinaryTree left;
  BinaryTree right;
};

BinaryTree::BinaryTree(Symbol label, BinaryTree left, BinaryTree right)
    : node_(std::make_shared<const Node>(
          Node{std::move(label), std::move(left), std::move(right)})) {}

const Symbol& BinaryTree::label() const {
  if (!node_) throw Error("leaf has no label");
  return node_->label;
}

const BinaryTree& BinaryTree::left() const {
  if (!node_) throw Error("leaf has no children");
  return node_->left;
}

const BinaryTree& BinaryTree::right() const {
  if (!node_) throw Error("leaf has no children");
  return node_->right;
}

bool operator==(const BinaryTree& a, const BinaryTree& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->label == b.node_->label && a.node_->left == b.node_->left &&
         a.node_->right == b.node_->right;
}

Hedge concat(Hedge a, const Hedge& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Symbol call_name(const Symbol& label) { return "c_" + label; }
Symbol return_name(const Symbol& label) { return "r_" + label; }

Symbol pair_label(const Symbol& call, const Symbol& ret) {
  return call + "/" + ret;
}

std::optional<std::pair<Symbol, Symbol>> split_pair_label(const Symbol& label) {
  const auto slash = label.find('/');
  if (slash == Symbol::npos || slash == 0 || slash + 1 == label.size() ||
      label.find('/', slash + 1) != Symbol::npos)
    return std::nullopt;
  return std::pair{label.substr(0, slash), label.substr(slash + 1)};
}

StructuredAlphabet structured_version(const std::set<Symbol>& labels) {
  std::set<Symbol> calls;
  std::set<Symbol> returns;
  for (const auto& a : labels) {
    calls.insert(call_name(a));
    returns.insert(return_name(a));
  }
  return StructuredAlphabet(std::move(calls), std::move(returns));
}

std::set<Symbol> product_labels(const StructuredAlphabet& alphabet) {
  std::set<Symbol> out;
  for (const auto& c : alphabet.calls())
    for (const auto& r : alphabet.returns()) out.insert(pair_label(c, r));
  return out;
}

std::optional<StructuredAlphabet> product_components(
    const std::set<Symbol>& labels) {
  std::set<Symbol> calls;
  std::set<Symbol> returns;
  for (const auto& l : labels) {
    auto parts = split_pair_label(l);
    if (!parts) return std::nullopt;
    calls.insert(parts->first);
    returns.insert(parts->second);
  }
  for (const auto& c : calls)
    if (returns.count(c) != 0) return std::nullopt;
  if (calls.size() * returns.size() != labels.size()) return std::nullopt;
  return StructuredAlphabet(std::move(calls), std::move(returns));
}

namespace {

void lin_into(const Hedge& h, NestedWord& out) {
  for (const auto& t : h) {
    out.push_back(call(call_name(t.label)));
    lin_into(t.children, out);
    out.push_back(ret(return_name(t.label)));
  }
}

}  // namespace

NestedWord lin(const Hedge& h) {
  NestedWord out;
  lin_into(h, out);
  return out;
}

NestedWord lin(const BinaryTree& t) {
  // Explicit stack: right spines of fcns images get long.
  using Item = std::variant<const BinaryTree*, Letter>;
  NestedWord out;
  std::vector<Item> todo{&t};
  while (!todo.empty()) {
    Item item = std::move(todo.back());
    todo.pop_back();
    if (auto* letter = std::get_if<Letter>(&item)) {
      out.push_back(std::move(*letter));
      continue;
    }
    const BinaryTree& tree = *std::get<const BinaryTree*>(item);
    if (tree.is_leaf()) {
      out.push_back(bottom_call());
      out.push_back(bottom_return());
      continue;
    }
    out.push_back(call(call_name(tree.label())));
    todo.emplace_back(ret(return_name(tree.label())));
    todo.emplace_back(&tree.right());
    todo.emplace_back(&tree.left());
  }
  return out;
}

Hedge hedge_of(const NestedWord& w) {
  if (auto bad = first_nesting_violation(w))
    throw ShapeError("hedge_of needs a well-nested word", *bad);
  Hedge root;
  // Path of open nodes as (hedge, index) so pointers stay valid.
  std::vector<Hedge*> open{&root};
  std::vector<std::size_t> call_pos;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].tag == Tag::call) {
      Hedge& current = *open.back();
      current.push_back(Tree{});
      open.push_back(&current.back().children);
      call_pos.push_back(i);
    } else {
      open.pop_back();
      Hedge& parent = *open.back();
      parent.back().label = pair_label(w[call_pos.back()].name, w[i].name);
      call_pos.pop_back();
    }
  }
  return root;
}

BinaryTree fcns(const Hedge& h) {
  BinaryTree result;
  for (auto it = h.rbegin(); it != h.rend(); ++it)
    result = BinaryTree(it->label, fcns(it->children), std::move(result));
  return result;
}

Hedge fcns_inverse(const BinaryTree& t) {
  Hedge out;
  for (const BinaryTree* cur = &t; !cur->is_leaf(); cur = &cur->right())
    out.push_back(Tree{cur->label(), fcns_inverse(cur->left())});
  return out;
}

NestedWord fcns_word(const NestedWord& w) {
  if (auto bad = first_nesting_violation(w))
    throw ShapeError("fcns needs a well-nested word", *bad);
  // Streaming form: a return is deferred until its sibling list ends, at
  // which point ⊥c ⊥r closes the list and the deferred returns are released
  // innermost-first.
  NestedWord out;
  out.reserve(2 * w.size() + 2);
  std::vector<std::vector<Letter>> deferred(1);
  auto close_list = [&out](std::vector<Letter>& pending) {
    out.push_back(bottom_call());
    out.push_back(bottom_return());
    for (auto it = pending.rbegin(); it != pending.rend(); ++it)
      out.push_back(std::move(*it));
    pending.clear();
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Letter& l = w[i];
    if (is_bottom(l))
      throw ShapeError("input of fcns must not contain ⊥ symbols", i);
    if (l.tag == Tag::call) {
      out.push_back(l);
      deferred.emplace_back();
    } else {
      close_list(deferred.back());
      deferred.pop_back();
      deferred.back().push_back(l);
    }
  }
  close_list(deferred.back());
  return out;
}

namespace {

// Recursive descent over a binary well-nested word; appends fcns⁻¹ of the
// subword starting at `pos` to `out` and returns the end offset.
std::size_t parse_binary(const NestedWord& w, std::size_t pos, NestedWord* out) {
  if (pos >= w.size()) throw ShapeError("binary word ends early", w.size());
  const Letter& first = w[pos];
  if (first.tag != Tag::call)
    throw ShapeError("expected a call opening a binary subtree", pos);
  if (first.name == kBottomCall) {
    if (pos + 1 >= w.size()) throw ShapeError("binary word ends early", w.size());
    if (w[pos + 1].name != kBottomReturn || w[pos + 1].tag != Tag::ret)
      throw ShapeError("⊥c must be followed by ⊥r", pos + 1);
    return pos + 2;
  }
  if (out) out->push_back(first);
  const std::size_t mid = parse_binary(w, pos + 1, out);
  // The node's return goes between the two inverted subtrees.
  NestedWord right;
  const std::size_t end = parse_binary(w, mid, out ? &right : nullptr);
  if (end >= w.size()) throw ShapeError("binary word ends early", w.size());
  const Letter& last = w[end];
  if (last.tag != Tag::ret || last.name == kBottomReturn)
    throw ShapeError("expected the return closing a binary node", end);
  if (out) {
    out->push_back(last);
    out->insert(out->end(), right.begin(), right.end());
  }
  return end + 1;
}

}  // namespace

NestedWord fcns_inv_word(const NestedWord& w) {
  NestedWord out;
  const std::size_t end = parse_binary(w, 0, &out);
  if (end != w.size())
    throw ShapeError("trailing symbols after a binary word", end);
  return out;
}

bool is_binary_wn(const NestedWord& w) {
  try {
    return parse_binary(w, 0, nullptr) == w.size();
  } catch (const ShapeError&) {
    return false;
  }
}

std::size_t node_count(const Hedge& h) {
  std::size_t n = 0;
  for (const auto& t : h) n += 1 + node_count(t.children);
  return n;
}

std::size_t hedge_height(const Hedge& h) {
  std::size_t best = 0;
  for (const auto& t : h) best = std::max(best, 1 + hedge_height(t.children));
  return best;
}

std::size_t fcns_height(const Hedge& h) {
  std::size_t acc = 1;  // ⊥ closing the sibling list
  for (auto it = h.rbegin(); it != h.rend(); ++it)
    acc = 1 + std::max(fcns_height(it->children), acc);
  return acc;
}

std::set<Symbol> labels_of(const Hedge& h) {
  std::set<Symbol> out;
  for (const auto& t : h) {
    out.insert(t.label);
    auto inner = labels_of(t.children);
    out.insert(inner.begin(), inner.end());
  }
  return out;
}

}  // namespace vptk
