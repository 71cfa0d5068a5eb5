#include <doctest.h>

#include "cocf/error.hpp"
#include "cocf/houghton.hpp"

using namespace cocf;
using namespace cocf::houghton;

TEST_CASE("generator s_i on points") {
  const auto s1 = shift_generator(1, 3);
  CHECK(s1(RayPoint::origin()) == RayPoint::on_ray(1, 2));
  CHECK(s1(RayPoint::on_ray(1, 1)) == RayPoint::origin());
  CHECK(s1(RayPoint::on_ray(5, 1)) == RayPoint::on_ray(4, 1));
  CHECK(s1(RayPoint::on_ray(5, 2)) == RayPoint::on_ray(6, 2));
  CHECK(s1(RayPoint::on_ray(5, 3)) == RayPoint::on_ray(5, 3));
  CHECK(s1.shifts() == std::vector<int>{-1, 1, 0});
  const auto s3 = shift_generator(3, 3);
  CHECK(s3(RayPoint::origin()) == RayPoint::on_ray(1, 1));
}

TEST_CASE("H_2 generators") {
  const auto tau = swap_generator();
  CHECK(tau(RayPoint::origin()) == RayPoint::on_ray(1, 2));
  CHECK(tau(RayPoint::on_ray(1, 2)) == RayPoint::origin());
  CHECK(tau(RayPoint::on_ray(1, 1)) == RayPoint::on_ray(1, 1));
  CHECK(is_identity(compose(tau, tau)));
  CHECK(houghton_alphabet(2).names() == std::vector<std::string>{"t", "tau"});
  CHECK(houghton_alphabet(3).names() == std::vector<std::string>{"s1", "s2", "s3"});
}

TEST_CASE("commutator of consecutive generators swaps 0 and (1,i)") {
  for (int n : {3, 4, 5}) {
    const auto alphabet = houghton_alphabet(n);
    for (int i = 1; i <= n; ++i) {
      const int j = i % n + 1;
      const std::string a = "s" + std::to_string(i), b = "s" + std::to_string(j);
      const auto c = word_to_element(parse_word(a + " " + b + " " + a + "^-1 " + b + "^-1", alphabet), n);
      const std::map<RayPoint, RayPoint> swap{{RayPoint::origin(), RayPoint::on_ray(1, i)},
                                              {RayPoint::on_ray(1, i), RayPoint::origin()}};
      CHECK(c.exceptions() == swap);
      CHECK(c.shifts() == std::vector<int>(n, 0));
    }
  }
}

TEST_CASE("composition order and inverses") {
  const auto alphabet = houghton_alphabet(3);
  const auto s1 = shift_generator(1, 3), s2 = shift_generator(2, 3);
  // s1 acts first: 0 -> (1,2) -> 0.
  CHECK(compose(s1, s2)(RayPoint::origin()) == RayPoint::origin());
  CHECK(compose(s2, s1)(RayPoint::origin()) == RayPoint::on_ray(1, 3));
  CHECK(word_to_element(parse_word("s1 s2", alphabet), 3) == compose(s1, s2));
  CHECK(is_identity(compose(s1, inverse(s1))));
  CHECK(is_identity(word_to_element({}, 3)));
  CHECK_FALSE(is_identity(s1));
  CHECK_THROWS_AS(compose(s1, shift_generator(1, 4)), RayCountMismatch);
  CHECK_THROWS_AS(shift_generator(4, 3), InvalidRay);
}

TEST_CASE("from_table builds canonical elements") {
  const auto swap = HoughtonElement::from_table(
      3, {0, 0, 0},
      {{RayPoint::origin(), RayPoint::on_ray(1, 1)}, {RayPoint::on_ray(1, 1), RayPoint::origin()},
       {RayPoint::on_ray(4, 2), RayPoint::on_ray(4, 2)}});
  CHECK(swap.exceptions().size() == 2);
  CHECK(swap.threshold(1) == 1);
  CHECK(swap.threshold(2) == 0);
  CHECK_THROWS_AS(HoughtonElement::from_table(3, {1, 0, 0}, {}), Error);
  CHECK_THROWS_AS(HoughtonElement::from_table(
                      3, {0, 0, 0}, {{RayPoint::origin(), RayPoint::on_ray(1, 1)}}),
                  Error);
}

TEST_CASE("point syntax and traces") {
  CHECK(parse_point("0") == RayPoint::origin());
  CHECK(parse_point("(3,2)") == RayPoint::on_ray(3, 2));
  CHECK(parse_point(" ( 3 , 2 ) ") == RayPoint::on_ray(3, 2));
  CHECK(format_point(RayPoint::on_ray(3, 2)) == "(3,2)");
  CHECK_THROWS_AS(parse_point("(0,1)"), Error);
  CHECK_THROWS_AS(parse_point("x"), Error);
  const auto alphabet = houghton_alphabet(3);
  const auto tr = trace_point(parse_word("s1 s2 s1^-1 s2^-1", alphabet), RayPoint::origin(), 3);
  const std::vector<RayPoint> expected{RayPoint::origin(), RayPoint::on_ray(1, 2), RayPoint::origin(),
                                       RayPoint::on_ray(1, 1), RayPoint::on_ray(1, 1)};
  CHECK(tr == expected);
  CHECK_THROWS_AS(trace_point({}, RayPoint::on_ray(1, 4), 3), Error);
}
