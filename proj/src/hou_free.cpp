#include "cocf/hou_free.hpp"

#include "cocf/error.hpp"

namespace cocf::hou_free {
namespace {

void check_rank(int rank) {
  if (rank < 1) throw InvalidRank(rank);
}

void check_index(int i, int rank) {
  check_rank(rank);
  if (i < 1 || i > rank) throw InvalidIndex(i, rank);
}

FreeWord one_letter(int i) { return {Letter{static_cast<std::size_t>(i - 1), 1}}; }

}  // namespace

FreeWord left_multiply(const FreeWord& m, const FreeWord& v) { return free_reduce(concat(m, v)); }

template <class Map>
HouFreeElement HouFreeElement::tabulate(int rank, FreeWord mult,
                                        const std::vector<FreeWord>& candidates, Map&& map) {
  std::map<FreeWord, FreeWord> perm;
  for (const auto& u : candidates) {
    FreeWord image = map(u);
    if (image != u) perm.emplace(u, std::move(image));
  }
  return HouFreeElement(rank, std::move(perm), std::move(mult));
}

HouFreeElement HouFreeElement::identity(int rank) {
  check_rank(rank);
  return HouFreeElement(rank, {}, {});
}

FreeWord HouFreeElement::operator()(const FreeWord& v) const {
  FreeWord u = left_multiply(mult_, v);
  if (auto it = perm_.find(u); it != perm_.end()) return it->second;
  return u;
}

HouFreeElement sigma_generator(int i, int rank) {
  check_index(i, rank);
  std::map<FreeWord, FreeWord> perm{{FreeWord{}, one_letter(i)}, {one_letter(i), FreeWord{}}};
  return HouFreeElement(rank, std::move(perm), {});
}

HouFreeElement mult_generator(int i, int rank) {
  check_index(i, rank);
  return HouFreeElement(rank, {}, one_letter(i));
}

FreeWord apply(const HouFreeElement& e, const FreeWord& v) { return e(v); }

HouFreeElement compose(const HouFreeElement& a, const HouFreeElement& b) {
  if (a.rank() != b.rank()) throw ParameterMismatch("rank mismatch");
  FreeWord mult = left_multiply(b.multiplier(), a.multiplier());
  FreeWord mult_inv = invert_word(mult);
  // perm(u) = b(a(mult^-1 u)) can only differ from u on supp(perm_b) and
  // on mult_b * supp(perm_a).
  std::vector<FreeWord> candidates;
  for (const auto& [u, img] : b.permutation()) candidates.push_back(u);
  for (const auto& [u, img] : a.permutation())
    candidates.push_back(left_multiply(b.multiplier(), u));
  return HouFreeElement::tabulate(a.rank(), std::move(mult), candidates, [&](const FreeWord& u) {
    return b(a(left_multiply(mult_inv, u)));
  });
}

HouFreeElement inverse(const HouFreeElement& e) {
  FreeWord mult_inv = invert_word(e.multiplier());
  std::map<FreeWord, FreeWord> back;
  for (const auto& [u, img] : e.permutation()) back.emplace(img, u);
  // f^-1(v) = mult^-1 perm^-1(v); the new permutation part moves only
  // mult^-1 * supp(perm).
  std::vector<FreeWord> candidates;
  for (const auto& [u, img] : e.permutation()) candidates.push_back(left_multiply(mult_inv, u));
  return HouFreeElement::tabulate(e.rank(), mult_inv, candidates, [&](const FreeWord& u) {
    FreeWord v = left_multiply(e.multiplier(), u);
    if (auto it = back.find(v); it != back.end()) v = it->second;
    return left_multiply(mult_inv, v);
  });
}

bool is_identity(const HouFreeElement& e) {
  return e.multiplier().empty() && e.permutation().empty();
}

GeneratorAlphabet hou_free_alphabet(int rank) {
  check_rank(rank);
  std::vector<std::string> names;
  for (int i = 1; i <= rank; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= rank; ++i) names.push_back("sigma" + std::to_string(i));
  return GeneratorAlphabet(std::move(names));
}

GeneratorAlphabet vertex_alphabet(int rank) {
  check_rank(rank);
  std::vector<std::string> names;
  for (int i = 1; i <= rank; ++i) names.push_back("x" + std::to_string(i));
  return GeneratorAlphabet(std::move(names));
}

HouFreeElement hou_free_generator(std::size_t generator, int rank) {
  check_rank(rank);
  const int g = static_cast<int>(generator);
  if (g < rank) return mult_generator(g + 1, rank);
  return sigma_generator(g - rank + 1, rank);
}

namespace {

std::vector<HouFreeElement> letter_table(const GroupWord& word, int rank) {
  std::size_t count = 0;
  for (const auto& l : word) count = std::max(count, l.generator + 1);
  std::vector<HouFreeElement> table;
  for (std::size_t g = 0; g < count; ++g) {
    auto e = hou_free_generator(g, rank);
    table.push_back(inverse(e));
    table.push_back(std::move(e));
  }
  return table;
}

const HouFreeElement& lookup(const std::vector<HouFreeElement>& table, const Letter& l) {
  return table[2 * l.generator + (l.exponent > 0 ? 1 : 0)];
}

}  // namespace

HouFreeElement word_to_element(const GroupWord& word, int rank) {
  auto table = letter_table(word, rank);
  auto e = HouFreeElement::identity(rank);
  for (const auto& l : word) e = compose(e, lookup(table, l));
  return e;
}

std::vector<FreeWord> trace_point(const GroupWord& word, const FreeWord& v, int rank) {
  auto table = letter_table(word, rank);
  std::vector<FreeWord> out{free_reduce(v)};
  for (const auto& l : word) out.push_back(lookup(table, l)(out.back()));
  return out;
}

FreeWord parse_vertex(std::string_view text, int rank) {
  std::string s(text);
  if (s == "e" || s == "1" || s == "eps") return {};
  return free_reduce(parse_word(text, vertex_alphabet(rank)));
}

}  // namespace cocf::hou_free
