#pragma once

// Reference implementations used as test oracles. Each follows the
// recursive definition directly and shares no code path with the library
// function it checks.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "vptk/hedges.hpp"
#include "vptk/vpt.hpp"
#include "vptk/words.hpp"

namespace ref {

using namespace vptk;

// w ∈ W iff w = ε, or w = c·v·r·u with v, u ∈ W. Memoized over intervals.
inline bool well_nested(const NestedWord& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<int>> memo(n + 1, std::vector<int>(n + 1, -1));
  auto in_w = [&](auto&& self, std::size_t i, std::size_t j) -> bool {
    if (i == j) return true;
    int& m = memo[i][j];
    if (m != -1) return m == 1;
    bool ok = false;
    if (w[i].tag == Tag::call) {
      for (std::size_t k = i + 1; k < j && !ok; ++k)
        if (w[k].tag == Tag::ret && self(self, i + 1, k) && self(self, k + 1, j)) ok = true;
    }
    m = ok ? 1 : 0;
    return ok;
  };
  return in_w(in_w, 0, n);
}

// Index of the matching return of the call at 0, found by trying every
// split c·v·r·u with v well-nested (the first such split is the matching one).
inline std::size_t first_split(const NestedWord& w) {
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k].tag != Tag::ret) continue;
    NestedWord v(w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(k));
    if (well_nested(v)) return k;
  }
  return w.size();
}

// ||ε|| = 0, ||c v r u|| = max(1 + ||v||, ||u||).
inline std::size_t height(const NestedWord& w) {
  if (w.empty()) return 0;
  const std::size_t k = first_split(w);
  NestedWord v(w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(k));
  NestedWord u(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
  return std::max(1 + ref::height(v), ref::height(u));
}

// fcns(ε) = ⊥c⊥r, fcns(c v r u) = c fcns(v) fcns(u) r.
inline NestedWord fcns_word(const NestedWord& w) {
  if (w.empty()) return {bottom_call(), bottom_return()};
  const std::size_t k = first_split(w);
  NestedWord v(w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(k));
  NestedWord u(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
  NestedWord out{w.front()};
  for (const auto& l : ref::fcns_word(v)) out.push_back(l);
  for (const auto& l : ref::fcns_word(u)) out.push_back(l);
  out.push_back(w[k]);
  return out;
}

// lin(a(h1)·h2) = c_a lin(h1) r_a lin(h2).
inline NestedWord lin(const Hedge& h) {
  NestedWord out;
  for (const auto& t : h) {
    out.push_back(call("c_" + t.label));
    for (const auto& l : ref::lin(t.children)) out.push_back(l);
    out.push_back(ret("r_" + t.label));
  }
  return out;
}

inline std::uint64_t catalan(unsigned n) {
  std::uint64_t c = 1;
  for (unsigned i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Pairs (p, q) such that some well-nested word of length ≤ max_len drives
// the VPT from (p, empty stack) to (q, empty stack), by breadth-first
// exploration of configurations layered by word length.
inline std::set<std::pair<StateId, StateId>> bounded_summaries(const Vpt& a,
                                                               std::size_t max_len) {
  using Config = std::pair<StateId, std::vector<StackId>>;
  std::set<std::pair<StateId, StateId>> out;
  for (StateId p = 0; p < a.state_count(); ++p) {
    std::set<Config> layer{{p, {}}};
    std::set<Config> seen = layer;
    for (std::size_t len = 0; len <= max_len; ++len) {
      std::set<Config> next;
      for (const auto& [q, stack] : layer) {
        if (stack.empty()) out.emplace(p, q);
        if (len == max_len) continue;
        // Pushing only pays off while there is room left to pop.
        if (stack.size() + 1 <= (max_len - len - 1))
          for (const auto& t : a.calls())
            if (t.from == q) {
              auto s = stack;
              s.push_back(t.stack);
              next.insert({t.to, std::move(s)});
            }
        if (!stack.empty())
          for (const auto& t : a.returns())
            if (t.from == q && t.stack == stack.back())
              next.insert({t.to, std::vector<StackId>(stack.begin(), stack.end() - 1)});
      }
      layer.clear();
      for (auto& c : next)
        if (seen.insert(c).second) layer.insert(c);
    }
  }
  return out;
}

}  // namespace ref
