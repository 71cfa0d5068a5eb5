#include <doctest.h>

#include "cocf/error.hpp"
#include "cocf/higman.hpp"

using namespace cocf;
using namespace cocf::higman;

namespace {
PrefixString p(const char* text) { return parse_prefix(text); }
}

TEST_CASE("prefix and sequence syntax") {
  CHECK(p("q2.121") == PrefixString{2, {1, 2, 1}});
  CHECK(p("q1") == PrefixString{1, {}});
  CHECK(p("q1.") == PrefixString{1, {}});
  CHECK(format_prefix(p("q1.12")) == "q1.12");
  CHECK_THROWS_AS(parse_prefix("p1.1"), MalformedToken);
  CHECK_THROWS_AS(parse_prefix("q1.10"), MalformedToken);
  const auto s = parse_sequence("q1.1211...");
  CHECK(s.head == p("q1.12"));
  CHECK(format_sequence(s) == "q1.12...");
  CHECK(parse_sequence("q1.12") == s);
  CHECK(format_sequence(parse_sequence("q1.111")) == "q1...");
}

TEST_CASE("barriers") {
  CHECK(validate_barrier({p("q1")}, 2, 1));
  CHECK(validate_barrier({p("q1.1"), p("q1.21"), p("q1.22")}, 2, 1));
  CHECK_FALSE(validate_barrier({p("q1.1"), p("q1.21")}, 2, 1));
  CHECK_FALSE(validate_barrier({p("q1.1"), p("q1.12"), p("q1.2")}, 2, 1));
  CHECK_FALSE(validate_barrier({p("q1"), p("q2.1")}, 2, 2));
  CHECK(validate_barrier({p("q1"), p("q2.1"), p("q2.2"), p("q2.3")}, 3, 2));
}

TEST_CASE("prefix maps") {
  CHECK_THROWS_AS(PrefixMap(2, 1, {{p("q1.1"), p("q1.1")}}), InvalidGenerators);
  CHECK_THROWS_AS(PrefixMap(2, 1, {{p("q1.1"), p("q1.1")}, {p("q1.2"), p("q1.1")}}), InvalidGenerators);
  const PrefixMap split(2, 1, {{p("q1.1"), p("q1.1")}, {p("q1.2"), p("q1.2")}});
  CHECK(is_identity(split));
  CHECK(reduce(split) == PrefixMap::identity(2, 1));
  const PrefixMap swap(2, 1, {{p("q1.1"), p("q1.2")}, {p("q1.2"), p("q1.1")}});
  CHECK_FALSE(is_identity(swap));
  CHECK(is_identity(compose(swap, swap)));
  CHECK(apply_to_sequence(swap, parse_sequence("q1.21")) == parse_sequence("q1.11"));
  CHECK(apply_to_sequence(swap, parse_sequence("q1.1")) == parse_sequence("q1.2"));
  CHECK(k_bound(swap) == 1);
  CHECK_THROWS_AS(compose(swap, PrefixMap::identity(3, 1)), ParameterMismatch);
}

TEST_CASE("the default table") {
  const auto& t = default_generator_table();
  CHECK(t.n == 2);
  CHECK(t.r == 1);
  CHECK(t.alphabet.names() == std::vector<std::string>{"A", "B", "C", "D"});
  CHECK(symmetric_k(t) == 3);
  CHECK(parse_generator_table(format_generator_table(t)).generators == t.generators);
  auto el = [&](const char* w) { return word_to_element(parse_word(w, t.alphabet), t); };
  CHECK(is_identity(el("C C C")));
  CHECK(is_identity(el("D D")));
  CHECK_FALSE(is_identity(el("A")));
  CHECK_FALSE(is_identity(el("A B^-1 A^-1 B")));
  // [A B^-1, A^-1 B A] is trivial in F.
  CHECK(is_identity(compose(compose(el("A B^-1"), el("A^-1 B A")),
                            compose(el("B A^-1"), el("A^-1 B^-1 A")))));
}

TEST_CASE("test set M") {
  CHECK(enumerate_M(2, 1, 3).size() == 8);
  CHECK(enumerate_M(3, 2, 2).size() == 18);
  CHECK(enumerate_M(2, 1, 0).size() == 1);
  const auto m = enumerate_M(2, 1, 1);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == parse_sequence("q1..."));
  CHECK(m[1] == parse_sequence("q1.2"));
  const auto& t = default_generator_table();
  const auto tr = trace_sequence(parse_word("D D", t.alphabet), parse_sequence("q1.1"), t);
  REQUIRE(tr.size() == 3);
  CHECK(tr[1] == parse_sequence("q1.21"));
  CHECK(tr[2] == parse_sequence("q1.1"));
}

TEST_CASE("generator table errors carry the line") {
  try {
    parse_generator_table("gnr n=2 r=1\ngen X\nq1.1 -> q1.2\nq1.2 -> q1.1\nq1.2 -> q1.2\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  CHECK_THROWS_AS(parse_generator_table("gen X\n"), ParseError);
  CHECK_THROWS_AS(parse_generator_table("gnr n=2 r=1\n"), ParseError);
  CHECK_THROWS_AS(parse_generator_table("gnr n=2 r=1\ngen X\nq1.1 -> q1.1\n"), ParseError);
  const auto t = parse_generator_table("# swap\ngnr n=3 r=1\ngen S\nq1.1 -> q1.2\nq1.2 -> q1.1\nq1.3 -> q1.3\n");
  CHECK(t.n == 3);
  CHECK(t.alphabet.size() == 1);
}
