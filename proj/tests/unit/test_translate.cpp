#include <catch2/catch_amalgamated.hpp>

#include "vptk/error.hpp"
#include "vptk/oracle.hpp"
#include "vptk/text.hpp"
#include "vptk/translate.hpp"

using namespace vptk;

namespace {

const StructuredAlphabet kSigma({"c1", "c2"}, {"r1", "r2"});
const OutputAlphabet kOut = OutputAlphabet::structured(structured_version({"x", "y"}));
const OutputAlphabet kOutBottom =
    OutputAlphabet::structured(structured_version({"x", "y"}).with_bottom());

Vpt one_loop() {
  return parse_vpt(R"(vpt
calls: c  returns: r
out: x
states: q  stack: g
initial: q  final: q
call q c g [x] q
ret q r g [] q
)");
}

// Copies its input back out, dropping the ⊥ pairs.
Vpt copy_vpt() {
  return parse_vpt(R"(vpt
calls: c ⊥c  returns: r ⊥r
out-calls: c  out-returns: r
states: p  stack: g b
initial: p  final: p
call p c g [c] p
ret p r g [r] p
call p ⊥c b [] p
ret p ⊥r b [] p
)");
}

}  // namespace

TEST_CASE("vpt_to_h2s_tr") {
  SECTION("one loop") {
    const H2s t = vpt_to_h2s_tr(one_loop());
    CHECK(is_tail_recursive(t));
    REQUIRE(t.rules().size() == 1);
    const NodeRule& r = t.rules().front();
    CHECK(r.label == pair_label("c", "r"));
    CHECK(r.w1 == Word{"x"});
    CHECK(r.w2.empty());
    CHECK(r.w3.empty());
    CHECK(t.states().name(r.state) == "(q,q)");
    CHECK(r.child == r.state);
    CHECK(r.sibling == r.state);
    CHECK(t.initial() == std::set<StateId>{r.state});
    CHECK(equiv_on_bounded(one_loop(), t, 10).equivalent());
  }
  SECTION("no accepting runs") {
    VptDefinition d = one_loop().definition();
    d.final.clear();
    const H2s t = vpt_to_h2s_tr(Vpt(d));
    CHECK(t.initial().empty());
    for (const auto& h : enum_hedges(t.input_alphabet(), 3)) CHECK(eval(t, h).empty());
  }
  SECTION("random corpus", "[property]") {
    std::mt19937_64 rng(17);
    RandomOptions opts;
    opts.min_states = opts.max_states = 3;
    for (int i = 0; i < 8; ++i) {
      const Vpt a = random_vpt(rng, kSigma, kOut, i % 2 ? VptFlavor::well_nested : VptFlavor::general,
                               opts);
      const H2s t = vpt_to_h2s_tr(a);
      CHECK(is_tail_recursive(t));
      CHECK(t.state_count() <= a.state_count() * a.state_count());
      if (is_wn_vpt(a)) CHECK(is_h2h(t));
      CHECK(equiv_on_bounded(a, t, 8).equivalent());
    }
  }
}

TEST_CASE("h2s_tr_to_vpt") {
  const std::set<Symbol> labels = product_labels(kSigma);

  SECTION("subhedge rooting") {
    const H2s t2 = builtin("subhedge_root", labels);
    const Vpt a = h2s_tr_to_vpt(t2);
    CHECK(a.state_count() == t2.state_count());
    CHECK(a.stack().size() == t2.rules().size());
    CHECK(equiv_on_bounded(a, t2, 8).equivalent());
  }
  SECTION("mirror is rejected") {
    CHECK_THROWS_WITH(h2s_tr_to_vpt(builtin("mirror", labels)),
                      Catch::Matchers::ContainsSubstring("not tail-recursive"));
  }
  SECTION("leaf rules only") {
    H2sDefinition d;
    d.input = labels;
    d.states.intern("q");
    d.initial = {0};
    d.leaves = {{0, {}}};
    const Vpt a = h2s_tr_to_vpt(H2s(d));
    for (const auto& w : enum_wn_words(kSigma, 6))
      CHECK(run_all(a, w) == (w.empty() ? OutputSet{Word{}} : OutputSet{}));
  }
  SECTION("plain labels read as pairs") {
    const H2s t = builtin("flatten", {"a", "b"});
    const Vpt a = h2s_tr_to_vpt(t);
    CHECK(a.input_alphabet() == structured_version({"a", "b"}));
    CHECK(equiv_on_bounded(a, t, 8).equivalent());
  }
  SECTION("random corpus", "[property]") {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 8; ++i) {
      const H2s t = random_h2s(rng, labels, kOut, i % 2 ? H2sFlavor::h2h_tr : H2sFlavor::tail_recursive);
      const Vpt a = h2s_tr_to_vpt(t);
      if (is_h2h(t)) CHECK(is_wn_vpt(a));
      CHECK(equiv_on_bounded(a, t, 8).equivalent());
    }
  }
}

TEST_CASE("vpt_fcns_to_h2s") {
  SECTION("copy") {
    const Vpt a = copy_vpt();
    const H2s t = vpt_fcns_to_h2s(a);
    CHECK(t.is_standard());
    CHECK_FALSE(is_tail_recursive(t));
    CHECK(is_h2h(t));
    // The copy is of the encoding, with its leaves dropped.
    const auto outs = eval(t, hedge_of(a.input_alphabet().resolve({"c", "c", "r", "c", "r", "r"})));
    CHECK(outs == OutputSet{Word{"c", "c", "c", "r", "r", "r"}});
    CHECK(equiv_fcns_on_bounded(a, t, 8).equivalent());
  }
  SECTION("only the leaf pair is accepted") {
    VptDefinition d = copy_vpt().definition();
    d.calls.erase(d.calls.begin());
    d.returns.erase(d.returns.begin());
    const H2s t = vpt_fcns_to_h2s(Vpt(d));
    CHECK(t.initial().empty());
  }
  SECTION("needs ⊥") { CHECK_THROWS_AS(vpt_fcns_to_h2s(one_loop()), AlphabetError); }
  SECTION("random corpus", "[property]") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 8; ++i) {
      const Vpt a = random_vpt(rng, kSigma.with_bottom(), kOut,
                               i % 2 ? VptFlavor::well_nested : VptFlavor::general);
      const H2s t = vpt_fcns_to_h2s(a);
      CHECK(t.is_standard());
      if (is_wn_vpt(a)) CHECK(is_h2h(t));
      CHECK(equiv_fcns_on_bounded(a, t, 8).equivalent());
    }
  }
}

TEST_CASE("h2s_to_vpt_fcns") {
  const std::set<Symbol> labels = product_labels(kSigma);

  SECTION("mirror on flat words") {
    const H2s t1 = builtin("mirror", labels);
    const Vpt a = h2s_to_vpt_fcns(t1);
    CHECK(a.input_alphabet().has_bottom());
    EquivOptions opts;
    opts.input_filter = [](const Hedge& h) { return hedge_height(h) <= 1; };
    const Verdict v = equiv_fcns_on_bounded(a, t1, 10, opts);
    CHECK(v.equivalent());
    CHECK(v.inputs_accepted > 0);
  }
  SECTION("silent rules keep the domain") {
    const H2s t = parse_h2s(R"(h2s
in: c/r
out: x
states: q p  initial: q
leaf p
rule q c/r -> [] p [] p []
)");
    const Vpt a = h2s_to_vpt_fcns(t);
    const StructuredAlphabet s({"c"}, {"r"});
    for (const auto& w : enum_wn_words(s, 8)) {
      if (w.empty()) continue;
      const auto outs = run_all(a, fcns_word(w));
      CHECK(outs == (w.size() == 2 ? OutputSet{Word{}} : OutputSet{}));
    }
  }
  SECTION("state bound and round trip", "[property]") {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 8; ++i) {
      const H2s t = random_h2s(rng, labels, kOut, i % 2 ? H2sFlavor::h2h : H2sFlavor::general);
      const Vpt a = h2s_to_vpt_fcns(t);
      CHECK(a.state_count() <= 2 * t.initial().size() + 3 * t.rules().size() + 1);
      if (is_h2h(t)) CHECK(is_wn_vpt(a));
      CHECK(equiv_fcns_on_bounded(a, t, 8).equivalent());
      CHECK(equiv_h2s_on_bounded(vpt_fcns_to_h2s(a), t, 4, true).equivalent());
    }
  }
  SECTION("plain labels read as pairs") {
    const H2s t = builtin("mirror", {"a", "b"});
    const Vpt a = h2s_to_vpt_fcns(t);
    CHECK(a.input_alphabet() == structured_version({"a", "b"}).with_bottom());
    const auto w = a.input_alphabet().resolve({"c_a", "r_a", "c_b", "r_b", "c_b", "r_b"});
    CHECK(run_all(a, fcns_word(w)) == OutputSet{Word{"b", "b", "a"}});
    CHECK(equiv_fcns_on_bounded(a, t, 8).equivalent());
  }
}

TEST_CASE("h2b_to_h2h") {
  SECTION("minimal rule") {
    const H2s t = parse_h2s(R"(h2s extended
in: f
out-calls: c ⊥c  out-returns: r ⊥r
states: q  initial: q
leaf q [⊥c ⊥r]
rule q f -> [c] q [] q [r]
)");
    const H2s h = h2b_to_h2h(t);
    REQUIRE(h.rules().size() == 1);
    CHECK(h.rules()[0].w1 == Word{"c"});
    CHECK(h.rules()[0].w2 == Word{"r"});
    CHECK(h.rules()[0].w3.empty());
    CHECK(h.is_standard());
    CHECK(is_h2h(h));
    CHECK_FALSE(h.output_alphabet().structure().has_bottom());
  }
  SECTION("leaves only") {
    const H2s t = parse_h2s(R"(h2s extended
in: f
out-calls: c ⊥c  out-returns: r ⊥r
states: q  initial: q
leaf q [⊥c ⊥r]
)");
    CHECK(eval(h2b_to_h2h(t), {}) == OutputSet{Word{}});
  }
  SECTION("preconditions") {
    const H2s no_open = parse_h2s(R"(h2s extended
in: f
out-calls: c ⊥c  out-returns: r ⊥r
states: q  initial: q
leaf q [⊥c ⊥r]
rule q f -> [] q [] q [r]
)");
    CHECK_THROWS_AS(h2b_to_h2h(no_open), PreconditionError);
    CHECK_THROWS_AS(h2b_to_h2h(builtin("flatten", {"a"})), AlphabetError);
  }
  SECTION("semantic equation", "[property]") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 10; ++i) {
      const H2s t = random_h2s(rng, {"a", "b"}, kOutBottom, H2sFlavor::h2b);
      const H2s h = h2b_to_h2h(t);
      CHECK(is_h2h(h));
      const StructuredAlphabet& in = t.output_alphabet().structure();
      for (const auto& hedge : enum_hedges({"a", "b"}, 5)) {
        OutputSet expected;
        for (const auto& o : eval(t, hedge)) expected.insert(names_of(fcns_inv_word(in.resolve(o))));
        REQUIRE(eval(h, hedge) == expected);
      }
    }
  }
}

TEST_CASE("split_rule_outputs") {
  const NodeRule rule{0, "f", {"c_x", "c_y"}, 0, {"r_y", "c_x"}, 0, {"r_x", "r_x"}};
  const StructuredAlphabet& out = kOut.structure();
  const OutputSplit s = split_rule_outputs(rule, kOut);
  const auto join = [](Word u, const Word& v) {
    u.insert(u.end(), v.begin(), v.end());
    return u;
  };
  CHECK(join(s.a, s.b) == rule.w1);
  CHECK(join(s.d, s.e) == rule.w2);
  CHECK(join(s.g, s.k) == rule.w3);
  CHECK(is_well_nested(out.resolve(join(s.a, s.k))));
  CHECK(is_well_nested(out.resolve(join(s.b, s.d))));
  CHECK(is_well_nested(out.resolve(join(s.e, s.g))));
}
