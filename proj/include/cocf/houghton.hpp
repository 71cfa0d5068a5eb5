#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cocf/words.hpp"

// Houghton groups H_n acting on the n-ray star *^n: the origin 0 together
// with the points (k, l), k >= 1, on rays l = 1..n.
namespace cocf::houghton {

struct RayPoint {
  int k = 0;    // distance from the origin; 0 means the origin itself
  int ray = 0;  // 1..n, or 0 for the origin

  static constexpr RayPoint origin() noexcept { return {0, 0}; }
  static constexpr RayPoint on_ray(int k, int ray) noexcept { return {k, ray}; }
  constexpr bool is_origin() const noexcept { return k == 0; }

  friend auto operator<=>(const RayPoint&, const RayPoint&) = default;
};

bool valid_point(const RayPoint& p, int n);

// A permutation of *^n that eventually translates every ray by shifts()[l-1].
//
// Stored canonically: exceptions() holds exactly the points whose image
// differs from the eventual rule (k, l) -> (k + s_l, l), 0 -> 0, so two
// elements are equal iff they act identically.
class HoughtonElement {
 public:
  static HoughtonElement identity(int n);

  // Builds an element from an arbitrary (possibly redundant) exceptional
  // table. Throws Error unless the result is a bijection of *^n with
  // shifts summing to zero.
  static HoughtonElement from_table(int n, std::vector<int> shifts,
                                    const std::map<RayPoint, RayPoint>& table);

  int rays() const noexcept { return n_; }
  const std::vector<int>& shifts() const noexcept { return shifts_; }
  const std::map<RayPoint, RayPoint>& exceptions() const noexcept { return exceptions_; }

  // Minimal r_l: every (k, l) with k > r_l follows the eventual rule.
  int threshold(int ray) const;

  RayPoint operator()(const RayPoint& p) const;

  friend bool operator==(const HoughtonElement&, const HoughtonElement&) = default;

 private:
  HoughtonElement(int n, std::vector<int> shifts, std::map<RayPoint, RayPoint> exceptions)
      : n_(n), shifts_(std::move(shifts)), exceptions_(std::move(exceptions)) {}

  template <class Map>
  static HoughtonElement tabulate(int n, std::vector<int> shifts, const std::vector<int>& reach,
                                  Map&& map);

  friend HoughtonElement compose(const HoughtonElement&, const HoughtonElement&);
  friend HoughtonElement inverse(const HoughtonElement&);
  friend HoughtonElement shift_generator(int, int);
  friend HoughtonElement swap_generator(int);

  int n_ = 0;
  std::vector<int> shifts_;
  std::map<RayPoint, RayPoint> exceptions_;
};

// s_i: shifts ray i one step towards the origin, pushes the origin onto
// ray i + 1 and pushes ray i + 1 outwards (rays modulo n, represented 1..n).
HoughtonElement shift_generator(int i, int n);

// The transposition of 0 and (1, 2) on the 2-ray star (tau in H_2).
HoughtonElement swap_generator(int n = 2);

RayPoint apply(const HoughtonElement& e, const RayPoint& p);

// p -> b(a(p)): a acts first.
HoughtonElement compose(const HoughtonElement& a, const HoughtonElement& b);
HoughtonElement inverse(const HoughtonElement& e);
bool is_identity(const HoughtonElement& e);

// {s1..sn} for n >= 3; {t, tau} for n = 2 with t = s_1 and tau = swap_generator().
GeneratorAlphabet houghton_alphabet(int n);
HoughtonElement houghton_generator(std::size_t generator, int n);

// Letters act leftmost first. Throws InvalidRay / InvalidRayCount.
HoughtonElement word_to_element(const GroupWord& word, int n);

// Images of p under the |w| + 1 prefixes of w.
std::vector<RayPoint> trace_point(const GroupWord& word, const RayPoint& p, int n);

// `0` or `(k,l)`.
RayPoint parse_point(std::string_view text);
std::string format_point(const RayPoint& p);

}  // namespace cocf::houghton
