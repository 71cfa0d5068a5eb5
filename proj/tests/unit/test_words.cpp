#include <doctest.h>

#include <set>

#include "cocf/error.hpp"
#include "cocf/words.hpp"

using namespace cocf;

TEST_CASE("alphabet rejects bad names") {
  CHECK_THROWS_AS(GeneratorAlphabet({"a", "a"}), Error);
  CHECK_THROWS_AS(GeneratorAlphabet({"a^"}), Error);
  CHECK_THROWS_AS(GeneratorAlphabet({"$"}), Error);
  CHECK_THROWS_AS(GeneratorAlphabet({""}), Error);
  GeneratorAlphabet ab({"a", "b"});
  CHECK(ab.find("b") == 1u);
  CHECK_FALSE(ab.find("c"));
}

TEST_CASE("parse and format words") {
  GeneratorAlphabet ab({"s1", "s2"});
  const auto w = parse_word("  s1 s2^-1\ts1 ", ab);
  REQUIRE(w.size() == 3);
  CHECK(w[1] == Letter{1, -1});
  CHECK(format_word(w, ab) == "s1 s2^-1 s1");
  CHECK(parse_word("", ab).empty());
  CHECK_THROWS_AS(parse_word("s3", ab), UnknownGenerator);
  CHECK_THROWS_AS(parse_word("s1^2", ab), MalformedToken);
  CHECK_THROWS_AS(parse_word("s1^-1^-1", ab), MalformedToken);
}

TEST_CASE("inverse, reduction, rotation") {
  GeneratorAlphabet ab({"a", "b"});
  const auto w = parse_word("a b^-1 b a^-1 b", ab);
  CHECK(format_word(invert_word(w), ab) == "b^-1 a b^-1 b a^-1");
  CHECK(format_word(free_reduce(w), ab) == "b");
  CHECK(free_reduce(concat(w, invert_word(w))).empty());
  const auto r = rotations(parse_word("a b b", ab));
  REQUIRE(r.size() == 3);
  CHECK(format_word(r[0], ab) == "b b a");
  CHECK(format_word(r[1], ab) == "b a b");
  CHECK(format_word(r[2], ab) == "a b b");
  CHECK(rotations({}).size() == 1);
}

TEST_CASE("enumeration is shortlex and complete") {
  std::size_t count = 0;
  std::set<GroupWord> seen;
  GroupWord last;
  for_each_word(2, 4, [&](const GroupWord& w) {
    ++count;
    seen.insert(w);
    CHECK(last.size() <= w.size());
    last = w;
  });
  CHECK(count == 1 + 4 + 16 + 64 + 256);
  CHECK(count == count_words(2, 4));
  CHECK(seen.size() == count);
  CHECK(all_letters(2) == std::vector<Letter>{{0, 1}, {0, -1}, {1, 1}, {1, -1}});
}
