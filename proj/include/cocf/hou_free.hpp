#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "cocf/words.hpp"

// Hou(F_n): permutations of the vertices of the Cayley graph of the free
// group F_n that agree with a left multiplication outside a finite set.
namespace cocf::hou_free {

// A vertex: a freely reduced word over x1..xn (generator i-1 is x_i).
using FreeWord = GroupWord;

// Vertex map v -> perm(mult * v). perm only lists moved vertices, so
// equality of elements is equality of their vertex actions.
class HouFreeElement {
 public:
  static HouFreeElement identity(int rank);

  int rank() const noexcept { return rank_; }
  const std::map<FreeWord, FreeWord>& permutation() const noexcept { return perm_; }
  const FreeWord& multiplier() const noexcept { return mult_; }

  FreeWord operator()(const FreeWord& v) const;

  friend bool operator==(const HouFreeElement&, const HouFreeElement&) = default;

 private:
  HouFreeElement(int rank, std::map<FreeWord, FreeWord> perm, FreeWord mult)
      : rank_(rank), perm_(std::move(perm)), mult_(std::move(mult)) {}

  template <class Map>
  static HouFreeElement tabulate(int rank, FreeWord mult, const std::vector<FreeWord>& candidates,
                                 Map&& map);

  friend HouFreeElement sigma_generator(int, int);
  friend HouFreeElement mult_generator(int, int);
  friend HouFreeElement compose(const HouFreeElement&, const HouFreeElement&);
  friend HouFreeElement inverse(const HouFreeElement&);

  int rank_ = 0;
  std::map<FreeWord, FreeWord> perm_;
  FreeWord mult_;
};

// Swaps the vertices 1 and x_i.
HouFreeElement sigma_generator(int i, int rank);
// Left multiplication by x_i.
HouFreeElement mult_generator(int i, int rank);

FreeWord apply(const HouFreeElement& e, const FreeWord& v);
// v -> b(a(v)): a acts first.
HouFreeElement compose(const HouFreeElement& a, const HouFreeElement& b);
HouFreeElement inverse(const HouFreeElement& e);
bool is_identity(const HouFreeElement& e);

// x1..xn, sigma1..sigman.
GeneratorAlphabet hou_free_alphabet(int rank);
// x1..xn; the alphabet vertices are written in.
GeneratorAlphabet vertex_alphabet(int rank);
HouFreeElement hou_free_generator(std::size_t generator, int rank);

// Letters act leftmost first.
HouFreeElement word_to_element(const GroupWord& word, int rank);
std::vector<FreeWord> trace_point(const GroupWord& word, const FreeWord& v, int rank);

FreeWord left_multiply(const FreeWord& m, const FreeWord& v);
FreeWord parse_vertex(std::string_view text, int rank);

}  // namespace cocf::hou_free
