// fcns⁻¹ applied to the right-hand sides of a hedge-to-binary-tree
// transducer, plus translation reports.

#include <optional>
#include <sstream>

#include "vptk/error.hpp"
#include "vptk/translate.hpp"

namespace vptk {

namespace {

// A rule right-hand side with holes where the two recursive outputs go.
using Item = std::optional<Letter>;
using Items = std::vector<Item>;

std::size_t invert(const Items& w, std::size_t pos, Items& out) {
  if (pos >= w.size()) throw ShapeError("binary word ends early", w.size());
  if (!w[pos]) {
    out.push_back(std::nullopt);
    return pos + 1;
  }
  const Letter& first = *w[pos];
  if (first.tag != Tag::call) throw ShapeError("expected a call", pos);
  if (first.name == kBottomCall) {
    if (pos + 1 >= w.size() || !w[pos + 1] || w[pos + 1]->name != kBottomReturn)
      throw ShapeError("⊥c must be followed by ⊥r", pos + 1);
    return pos + 2;
  }
  out.push_back(first);
  const std::size_t mid = invert(w, pos + 1, out);
  Items right;
  const std::size_t end = invert(w, mid, right);
  if (end >= w.size() || !w[end] || w[end]->tag != Tag::ret)
    throw ShapeError("expected the return closing a binary node", end);
  out.push_back(*w[end]);
  out.insert(out.end(), right.begin(), right.end());
  return end + 1;
}

void append(Items& items, const StructuredAlphabet& out, const Word& w) {
  for (const auto& l : out.resolve(w)) items.emplace_back(l);
}

}  // namespace

H2s h2b_to_h2h(const H2s& t) {
  if (auto bad = find_non_h2b_rule(t))
    throw PreconditionError("transducer is not hedge-to-binary-tree: rule " +
                            std::to_string(*bad) + " has the wrong shape");
  const StructuredAlphabet& out = t.output_alphabet().structure();

  H2sDefinition d;
  d.input = t.input_alphabet();
  d.output = OutputAlphabet::structured(out.without_bottom());
  d.states = t.states();
  d.initial = t.initial();
  for (const auto& l : t.leaves()) d.leaves.push_back({l.state, {}});

  for (const auto& r : t.rules()) {
    const H2bShape shape = *h2b_shape(r, out);
    Items items;
    items.emplace_back(Letter{Tag::call, shape.open});
    append(items, out, shape.head1);
    items.emplace_back(std::nullopt);
    append(items, out, shape.tail1);
    append(items, out, shape.head2);
    items.emplace_back(std::nullopt);
    append(items, out, shape.tail2);
    items.emplace_back(Letter{Tag::ret, shape.close});

    Items inverted;
    if (invert(items, 0, inverted) != items.size())
      throw ShapeError("trailing symbols after a binary word", items.size());

    Word parts[3];
    std::size_t part = 0;
    for (const auto& item : inverted) {
      if (!item) {
        ++part;
        continue;
      }
      parts[part].push_back(item->name);
    }
    d.rules.push_back({r.state, r.label, parts[0], r.child, parts[1], r.sibling, parts[2]});
  }
  return H2s(std::move(d));
}

TranslationReport make_report(std::string_view direction, std::size_t source_states,
                              const H2s& result) {
  TranslationReport rep;
  rep.direction = direction;
  rep.target = "h2s";
  rep.source_states = source_states;
  rep.result_states = result.state_count();
  rep.result_rules = result.rules().size();
  rep.tail_recursive = is_tail_recursive(result);
  if (result.output_alphabet().is_structured()) rep.h2h = is_h2h(result);
  return rep;
}

TranslationReport make_report(std::string_view direction, std::size_t source_states,
                              const Vpt& result) {
  TranslationReport rep;
  rep.direction = direction;
  rep.target = "vpt";
  rep.source_states = source_states;
  rep.result_states = result.state_count();
  rep.result_rules = result.calls().size() + result.returns().size();
  if (result.output_alphabet().is_structured()) rep.wn_vpt = is_wn_vpt(result);
  return rep;
}

std::string format_report(const TranslationReport& report) {
  std::ostringstream os;
  auto flag = [&](const char* name, const std::optional<bool>& v) {
    if (v) os << name << ": " << (*v ? "yes" : "no") << "\n";
  };
  os << "direction: " << report.direction << "\n"
     << "states: " << report.source_states << " -> " << report.result_states << "\n"
     << (report.target == "vpt" ? "transitions: " : "rules: ") << report.result_rules
     << "\n";
  flag("tail-recursive", report.tail_recursive);
  flag("hedge-to-hedge", report.h2h);
  flag("well-nested", report.wn_vpt);
  return os.str();
}

}  // namespace vptk
