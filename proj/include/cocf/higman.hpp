#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cocf/words.hpp"

// Higman-Thompson groups G_{n,r} as prefix replacements on the infinite
// sequences q_i s_{j1} s_{j2} ... over Q = {q_1..q_r}, Sigma = {s_1..s_n}.
namespace cocf::higman {

// q_root followed by a finite string over Sigma; entries of tail are 1..n.
struct PrefixString {
  int root = 1;
  std::vector<int> tail;

  std::size_t depth() const noexcept { return tail.size(); }
  bool is_prefix_of(const PrefixString& other) const;

  friend auto operator<=>(const PrefixString&, const PrefixString&) = default;
};

// `q<i>.<t1><t2>...`, e.g. q1.121; `q1` (or `q1.`) for the empty tail.
// Digits limit the text form to n <= 9.
PrefixString parse_prefix(std::string_view text);
std::string format_prefix(const PrefixString& p);

using Barrier = std::vector<PrefixString>;

// Prefix-free, entries valid for (n, r), and sum of n^-depth equal to r
// (checked in exact integer arithmetic).
bool validate_barrier(const Barrier& barrier, int n, int r);

// The sequence head * s_1 s_1 s_1 ...; the head never ends in s_1.
struct TestSequence {
  PrefixString head;

  static TestSequence from_head(PrefixString head);
  friend auto operator<=>(const TestSequence&, const TestSequence&) = default;
};

// `q1.12...`; a trailing `...` is optional on input.
TestSequence parse_sequence(std::string_view text);
std::string format_sequence(const TestSequence& s);

// A bijection between two barriers, acting on sequences by replacing the
// unique domain prefix with its partner.
class PrefixMap {
 public:
  // Throws InvalidGenerators if either side is not a barrier or the
  // pairing is not a bijection.
  PrefixMap(int n, int r, std::map<PrefixString, PrefixString> pairs);

  static PrefixMap identity(int n, int r);

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  const std::map<PrefixString, PrefixString>& pairs() const noexcept { return pairs_; }
  Barrier domain() const;
  Barrier range() const;

  friend bool operator==(const PrefixMap&, const PrefixMap&) = default;

 private:
  struct Unchecked {};
  PrefixMap(Unchecked, int n, int r, std::map<PrefixString, PrefixString> pairs)
      : n_(n), r_(r), pairs_(std::move(pairs)) {}

  friend PrefixMap reduce(const PrefixMap&);
  friend PrefixMap compose(const PrefixMap&, const PrefixMap&);
  friend PrefixMap inverse(const PrefixMap&);

  int n_ = 2;
  int r_ = 1;
  std::map<PrefixString, PrefixString> pairs_;
};

// Merges complete sibling families (b s_j -> c s_j for all j) until none
// is left; the result is the unique minimal table of the same bijection.
PrefixMap reduce(const PrefixMap& m);

// omega -> b(a(omega)), reduced. Throws ParameterMismatch.
PrefixMap compose(const PrefixMap& a, const PrefixMap& b);
PrefixMap inverse(const PrefixMap& m);
bool is_identity(const PrefixMap& m);

TestSequence apply_to_sequence(const PrefixMap& m, const TestSequence& s);

// Deepest domain element; sequences are only rewritten on prefixes of
// at most this length.
int k_bound(const PrefixMap& m);

// All q w s_1 s_1 ... with |w| = k; exactly r * n^k sequences.
std::vector<TestSequence> enumerate_M(int n, int r, int k);

// A finite generating set loaded from data.
struct GeneratorTable {
  int n = 2;
  int r = 1;
  GeneratorAlphabet alphabet;
  std::vector<PrefixMap> generators;  // reduced, indexed like the alphabet
};

// Header `gnr n=<n> r=<r>`, then blocks `gen <name>` followed by lines
// `<domain-prefix> -> <range-prefix>`. Blank lines and `#` comments are
// skipped. Throws ParseError carrying the offending line.
GeneratorTable parse_generator_table(std::string_view text);
std::string format_generator_table(const GeneratorTable& table);

// Four generators of Thompson's group V = G_{2,1}: A and B generate F,
// C adds the cyclic rotation of T and D is a transposition.
const GeneratorTable& default_generator_table();
std::string_view default_generator_table_text();

// max over X and X^-1 of k_bound, i.e. the deepest entry on either side
// of any generator table.
int symmetric_k(const GeneratorTable& table);

// Letters act leftmost first. Throws UnknownGenerator.
PrefixMap word_to_element(const GroupWord& word, const GeneratorTable& table);

std::vector<TestSequence> trace_sequence(const GroupWord& word, const TestSequence& s,
                                         const GeneratorTable& table);

}  // namespace cocf::higman
