#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cocf/words.hpp"

namespace cocf::automata {

struct GrammarSymbol {
  bool terminal = false;
  int id = 0;

  friend auto operator<=>(const GrammarSymbol&, const GrammarSymbol&) = default;
};

struct Production {
  int lhs = 0;
  std::vector<GrammarSymbol> rhs;  // empty for an epsilon production

  friend auto operator<=>(const Production&, const Production&) = default;
};

// A context-free grammar. Symbol names are whitespace free, distinct, and
// never `eps` or `->`.
struct Cfg {
  std::vector<std::string> nonterminals;
  std::vector<std::string> terminals;
  int start = 0;
  std::vector<Production> productions;

  int find_nonterminal(std::string_view name) const;  // -1 if absent
  int find_terminal(std::string_view name) const;     // -1 if absent

  friend bool operator==(const Cfg&, const Cfg&) = default;
};

std::vector<std::string> cfg_problems(const Cfg& g);

// Drops symbols that derive no terminal string or are unreachable from the
// start symbol. The language is unchanged.
Cfg trim(const Cfg& g);

// Binary normal form with unit rules kept (A -> B C, A -> B, A -> a); the
// empty word is a flag. Unit rules are closed per CYK cell, which keeps
// the form linear in the size of the source grammar.
struct NormalGrammar {
  std::vector<std::string> names;  // nonterminals
  std::size_t terminal_count = 0;
  int start = 0;
  bool accepts_empty = false;
  std::vector<std::vector<int>> by_terminal;                 // a -> {A : A -> a}
  std::vector<std::vector<std::pair<int, int>>> by_left;     // B -> {(C, A) : A -> B C}
  std::vector<std::vector<int>> unit_parents;                // B -> {A : A -> B}
};

NormalGrammar normalize(const Cfg& g);

// CYK over the normal form; build once, query many times.
class CfgRecognizer {
 public:
  explicit CfgRecognizer(const Cfg& g);

  // Terminal ids of the source grammar.
  bool accepts(std::span<const int> word) const;
  // Throws UnknownTerminal.
  bool accepts_names(std::span<const std::string> word) const;

  const std::vector<std::string>& terminals() const noexcept { return terminals_; }
  const NormalGrammar& normal_form() const noexcept { return nf_; }

 private:
  std::vector<std::string> terminals_;
  NormalGrammar nf_;
};

bool cfg_membership(const Cfg& g, std::span<const std::string> word);

// Terminal ids for the letters of a word, written as `name` / `name^-1`.
// Throws UnknownTerminal.
std::vector<int> terminal_ids(const Cfg& g, const GroupWord& word,
                              const GeneratorAlphabet& alphabet);

// Grammar for { y x : x y in L(g) }.
Cfg cyclic_closure(const Cfg& g);

// Grammar for { u : u a in L(g), u free of a }; `a` is dropped from the
// terminals.
Cfg right_quotient(const Cfg& g, std::string_view terminal);

std::string format_cfg(const Cfg& g);
Cfg parse_cfg(std::string_view text);

}  // namespace cocf::automata
