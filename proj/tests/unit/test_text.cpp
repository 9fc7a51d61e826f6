#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "vptk/error.hpp"
#include "vptk/oracle.hpp"
#include "vptk/text.hpp"

using namespace vptk;

namespace {

template <typename F>
ParseError parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no ParseError thrown");
  throw;
}

}  // namespace

TEST_CASE("words") {
  CHECK(format_word(Word{}) == "ε");
  CHECK(format_word(Word{"a", "b"}) == "a b");
  CHECK(format_word(NestedWord{call("c"), ret("r")}) == "c r");
  CHECK(parse_tokens("  a\tb \n c ") == Word{"a", "b", "c"});
  CHECK(parse_tokens("ε").empty());
  CHECK(parse_tokens("").empty());
}

TEST_CASE("parse_nested") {
  CHECK(parse_nested("c_a ⊥c ⊥r r_a") ==
        NestedWord{call("c_a"), bottom_call(), bottom_return(), ret("r_a")});
  CHECK(parse_nested("x y", {"x"}, {"y"}) == NestedWord{call("x"), ret("y")});
  CHECK(parse_nested("ε").empty());
  CHECK_THROWS_AS(parse_nested("a"), AlphabetError);
  CHECK_THROWS_AS(parse_nested("c", {"x"}, {"y"}), AlphabetError);
}

TEST_CASE("hedges") {
  CHECK(format_hedge({}) == "ε");
  CHECK(parse_hedge("ε").empty());
  CHECK(parse_hedge("  ").empty());
  const Hedge h = parse_hedge("f(a #(b c) d) g");
  REQUIRE(h.size() == 2);
  CHECK(h[0].children.size() == 3);
  CHECK(h[0].children[1].label == "#");
  CHECK(format_hedge(h) == "f(a #(b c) d) g");
  CHECK(parse_hedge("a()") == parse_hedge("a"));

  for (const auto& x : enum_hedges({"a", "b"}, 5)) REQUIRE(parse_hedge(format_hedge(x)) == x);

  const auto e = parse_error([] { parse_hedge("f(a b"); });
  CHECK(e.line() == 1);
  CHECK(e.column() == 6);
  CHECK(parse_error([] { parse_hedge("a)"); }).column() == 2);
  CHECK(parse_error([] { parse_hedge("(a)"); }).column() == 1);
}

TEST_CASE("binary trees") {
  const BinaryTree t = parse_binary_tree("a(b(_ _) _)");
  CHECK(t.label() == "a");
  CHECK(t.right().is_leaf());
  CHECK(format_binary_tree(t) == "a(b(_ _) _)");
  CHECK(parse_binary_tree("a(b _)") == t);
  CHECK(format_binary_tree(BinaryTree()) == "_");
  for (const auto& h : enum_hedges({"a", "b"}, 4))
    REQUIRE(parse_binary_tree(format_binary_tree(fcns(h))) == fcns(h));
  CHECK_THROWS_AS(parse_binary_tree("a(_)"), ParseError);
  CHECK_THROWS_AS(parse_binary_tree("a(_ _) b"), ParseError);
}

TEST_CASE("model round trips", "[property]") {
  std::mt19937_64 rng(77);
  const StructuredAlphabet in({"c1", "c2"}, {"r1", "r2"});
  const OutputAlphabet structured = OutputAlphabet::structured(structured_version({"x", "y"}));
  const OutputAlphabet plain = OutputAlphabet::plain({"x", "y"});
  for (int i = 0; i < 10; ++i) {
    const Vpt a = random_vpt(rng, in, i % 2 ? structured : plain, VptFlavor::general);
    const Vpt back = parse_vpt(to_text(a));
    CHECK(back.definition().calls == a.definition().calls);
    CHECK(back.definition().returns == a.definition().returns);
    CHECK(back.initial() == a.initial());
    CHECK(back.final() == a.final());
    CHECK(back.output_alphabet() == a.output_alphabet());
    CHECK(to_text(back) == to_text(a));

    const H2s t = random_h2s(rng, product_labels(in), i % 2 ? structured : plain, H2sFlavor::general);
    const H2s tb = parse_h2s(to_text(t));
    CHECK(tb.rules() == t.rules());
    CHECK(tb.leaves() == t.leaves());
    CHECK(to_text(tb) == to_text(t));
  }
  const OutputAlphabet bottom = OutputAlphabet::structured(structured_version({"x"}).with_bottom());
  const H2s h2b = random_h2s(rng, {"a"}, bottom, H2sFlavor::h2b);
  CHECK(to_text(h2b).starts_with("h2s extended"));
  CHECK(parse_h2s(to_text(h2b)).leaves() == h2b.leaves());
}

TEST_CASE("model parse errors") {
  SECTION("unknown header") {
    const auto e = parse_error([] { parse_vpt("vpt\ncalls: c\n  colour: red\n"); });
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
  SECTION("duplicate header") {
    CHECK(parse_error([] { parse_vpt("vpt\ncalls: c calls: d\n"); }).column() == 10);
  }
  SECTION("bad transition line") {
    const auto e = parse_error([] {
      parse_vpt("vpt\ncalls: c returns: r\nstates: q stack: g\ncall q c g [] \n");
    });
    CHECK(e.line() == 4);
  }
  SECTION("undeclared state") {
    CHECK_THROWS_AS(parse_vpt("vpt\ncalls: c returns: r\nstates: q stack: g\ncall q c g [] p\n"),
                    Error);
  }
  SECTION("leaf output needs the extended header") {
    const auto e = parse_error([] { parse_h2s("h2s\nin: a\nstates: q\nleaf q [a]\n"); });
    CHECK(e.line() == 4);
  }
  SECTION("rule arrow") {
    const auto e =
        parse_error([] { parse_h2s("h2s\nin: a\nstates: q\nrule q a [] q [] q []\n"); });
    CHECK(e.line() == 4);
    CHECK(e.column() == 10);
  }
  SECTION("dispatch") {
    CHECK(std::holds_alternative<H2s>(parse_model("# comment\nh2s\nin: a\nstates: q\n")));
    CHECK(std::holds_alternative<Vpt>(parse_model("vpt\ncalls: c returns: r\n")));
    CHECK(parse_error([] { parse_model("nfa\n"); }).column() == 1);
    CHECK_THROWS_AS(parse_model(""), ParseError);
  }
  SECTION("unwritable names") {
    VptDefinition d;
    d.states.intern("two words");
    CHECK_THROWS_AS(to_text(Vpt(d)), Error);
  }
}

TEST_CASE("comments") {
  const Vpt a = parse_vpt(R"(vpt   # header
calls: c#1  returns: r   # '#' inside a name is kept
states: q  stack: g
initial: q  final: q
call q c#1 g [] q
# whole-line comment
ret q r g [] q
)");
  CHECK(a.input_alphabet().calls() == std::set<Symbol>{"c#1"});
  CHECK(a.returns().size() == 1);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "vptk_text_test";
  std::filesystem::create_directories(dir);
  const H2s t = builtin("mirror", {"a", "b"});
  save_model(dir / "m.h2s", t);
  const Model m = load_model(dir / "m.h2s");
  CHECK(std::get<H2s>(m).rules() == t.rules());
  CHECK_THROWS_AS(load_model(dir / "missing.h2s"), Error);
  std::filesystem::remove_all(dir);
}
