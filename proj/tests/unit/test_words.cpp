#include <catch2/catch_amalgamated.hpp>

#include "support/reference.hpp"
#include "vptk/error.hpp"
#include "vptk/oracle.hpp"
#include "vptk/words.hpp"

using namespace vptk;

namespace {

const StructuredAlphabet kSigma({"c1", "c2"}, {"r"});

NestedWord w(std::initializer_list<const char*> names) {
  Word plain(names.begin(), names.end());
  return kSigma.resolve(plain);
}

}  // namespace

TEST_CASE("structured alphabets reject overlapping sides") {
  CHECK_THROWS_AS(StructuredAlphabet({"a"}, {"a"}), AlphabetError);
  CHECK_THROWS_AS(StructuredAlphabet({"⊥r"}, {"r"}), AlphabetError);
  const StructuredAlphabet s({"c"}, {"r"});
  CHECK(s.tag_of("c") == Tag::call);
  CHECK(s.tag_of("r") == Tag::ret);
  CHECK_FALSE(s.tag_of("x").has_value());
  CHECK(s.with_bottom().has_bottom());
  CHECK(s.with_bottom().without_bottom() == s);
  CHECK_THROWS_AS(s.resolve({"x"}), AlphabetError);
}

TEST_CASE("is_well_nested") {
  CHECK(is_well_nested(w({"c1", "r", "c2", "r"})));
  CHECK_FALSE(is_well_nested(w({"r", "c1"})));
  CHECK(is_well_nested({}));
  CHECK_FALSE(is_well_nested(w({"c1"})));
  CHECK(first_nesting_violation(w({"r", "c1"})) == 0u);
  CHECK(first_nesting_violation(w({"c1", "c2", "r"})) == 3u);
  CHECK_FALSE(first_nesting_violation(w({"c1", "r"})).has_value());
}

TEST_CASE("counter scan agrees with the inductive definition") {
  // Every word up to length 8 over one call and one return.
  const StructuredAlphabet s({"c"}, {"r"});
  for (std::size_t len = 0; len <= 8; ++len) {
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      NestedWord x;
      for (std::size_t i = 0; i < len; ++i) x.push_back((bits >> i) & 1 ? ret("r") : call("c"));
      INFO(len << " " << bits);
      CHECK(is_well_nested(x) == ref::well_nested(x));
    }
  }
}

TEST_CASE("decompose") {
  auto d = decompose(w({"c1", "r", "c2", "r"}));
  CHECK(d.call == call("c1"));
  CHECK(d.inner.empty());
  CHECK(d.ret == ret("r"));
  CHECK(d.rest == w({"c2", "r"}));

  d = decompose(w({"c1", "c2", "r", "r"}));
  CHECK(d.call == call("c1"));
  CHECK(d.inner == w({"c2", "r"}));
  CHECK(d.rest.empty());

  d = decompose(w({"c1", "r"}));
  CHECK(d.inner.empty());
  CHECK(d.rest.empty());

  CHECK_THROWS_AS(decompose({}), ShapeError);
  CHECK_THROWS_AS(decompose(w({"r", "c1"})), ShapeError);
}

TEST_CASE("size and height") {
  CHECK(size({}) == 0);
  CHECK(size(w({"c1", "r"})) == 2);
  CHECK(size(w({"c1", "r", "c2", "r"})) == 4);

  CHECK(height({}) == 0);
  CHECK(height(w({"c1", "r"})) == 1);
  CHECK(height(w({"c1", "c1", "r", "r", "c1", "r"})) == 2);
  CHECK_THROWS_AS(height(w({"r", "c1"})), ShapeError);
}

TEST_CASE("well-nested word properties", "[property]") {
  const StructuredAlphabet s({"c", "d"}, {"r", "s"});
  const auto words = enum_wn_words(s, 8);
  for (const auto& x : words) {
    INFO(names_of(x).size());
    REQUIRE(is_well_nested(x));
    CHECK(height(x) == ref::height(x));
    if (x.empty()) continue;
    CHECK(recompose(decompose(x)) == x);
    CHECK(height(x) >= 1);
    CHECK(height(x) <= size(x) / 2);
    CHECK(is_well_nested(concat(concat({call("c")}, x), {ret("s")})));
  }
  for (std::size_t i = 0; i < words.size(); i += 37)
    for (std::size_t j = 0; j < words.size(); j += 53)
      CHECK(is_well_nested(concat(words[i], words[j])));
}

TEST_CASE("output alphabets") {
  const auto plain = OutputAlphabet::plain({"x", "y"});
  CHECK_FALSE(plain.is_structured());
  CHECK(plain.contains("x"));
  CHECK_THROWS_AS(plain.structure(), AlphabetError);
  const auto structured = OutputAlphabet::structured(StructuredAlphabet({"c"}, {"r"}));
  CHECK(structured.symbols() == std::set<Symbol>{"c", "r"});
}
