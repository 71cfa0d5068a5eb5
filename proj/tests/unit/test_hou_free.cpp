#include <doctest.h>

#include "cocf/error.hpp"
#include "cocf/hou_free.hpp"

using namespace cocf;
using namespace cocf::hou_free;

namespace {
FreeWord v(const char* text) { return parse_vertex(text, 2); }
}

TEST_CASE("vertices") {
  CHECK(v("e").empty());
  CHECK(v("1").empty());
  CHECK(v("eps").empty());
  CHECK(v("x1 x2^-1") == FreeWord{{0, 1}, {1, -1}});
  CHECK(v("x1 x1^-1 x2") == FreeWord{{1, 1}});
  CHECK(left_multiply(v("x1"), v("x1^-1 x2")) == v("x2"));
  CHECK_THROWS_AS(parse_vertex("x3", 2), Error);
}

TEST_CASE("generators act on vertices") {
  const auto s1 = sigma_generator(1, 2);
  CHECK(s1(v("e")) == v("x1"));
  CHECK(s1(v("x1")) == v("e"));
  CHECK(s1(v("x2")) == v("x2"));
  const auto m2 = mult_generator(2, 2);
  CHECK(m2(v("x2^-1 x1")) == v("x1"));
  CHECK(hou_free_alphabet(2).names() == std::vector<std::string>{"x1", "x2", "sigma1", "sigma2"});
  CHECK_THROWS_AS(sigma_generator(3, 2), InvalidIndex);
  CHECK_THROWS_AS(mult_generator(1, 0), InvalidRank);
}

TEST_CASE("group structure") {
  const auto alphabet = hou_free_alphabet(2);
  auto el = [&](const char* w) { return word_to_element(parse_word(w, alphabet), 2); };
  CHECK(is_identity(el("sigma1 sigma1")));
  CHECK(is_identity(el("x1 x2 x2^-1 x1^-1")));
  CHECK_FALSE(is_identity(el("x1 x2 x1^-1 x2^-1")));
  CHECK_FALSE(is_identity(el("sigma1 sigma2")));
  // Conjugating a transposition by a multiplication moves its support.
  const auto c = el("x1^-1 sigma2 x1");
  CHECK(c(v("x1")) == v("x1 x2"));
  CHECK(c(v("x1 x2")) == v("x1"));
  CHECK(c(v("e")) == v("e"));
  CHECK(c.multiplier().empty());
  CHECK(el("x1 sigma1") == compose(mult_generator(1, 2), sigma_generator(1, 2)));
  CHECK(is_identity(compose(el("x2 sigma1 x1"), inverse(el("x2 sigma1 x1")))));
  CHECK_THROWS_AS(compose(sigma_generator(1, 1), sigma_generator(1, 2)), ParameterMismatch);
}

TEST_CASE("trace follows prefixes") {
  const auto alphabet = hou_free_alphabet(2);
  const auto tr = trace_point(parse_word("sigma1 x2", alphabet), v("e"), 2);
  REQUIRE(tr.size() == 3);
  CHECK(tr[1] == v("x1"));
  CHECK(tr[2] == v("x2 x1"));
}
