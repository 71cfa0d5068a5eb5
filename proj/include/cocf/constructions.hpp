#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cocf/grammar.hpp"
#include "cocf/higman.hpp"
#include "cocf/pda.hpp"
#include "cocf/words.hpp"

namespace cocf {

enum class MachineClass { SemiDeterministic, OneCounter, Npda, Grammar };

std::string to_string(MachineClass c);

struct ConstructionReport {
  std::string group;
  MachineClass machine_class = MachineClass::Npda;
  GeneratorAlphabet alphabet;
  std::variant<automata::SemiDetPda, automata::Npda, automata::Cfg> machine;
  std::string preamble_bound;      // human readable, e.g. "|w| + 1"
  std::vector<std::string> facts;  // sizes and parameters
  std::vector<std::string> notes;  // departures from the published tables

  const automata::SemiDetPda& semidet() const { return std::get<automata::SemiDetPda>(machine); }
  const automata::Npda& npda() const { return std::get<automata::Npda>(machine); }
  const automata::Cfg& grammar() const { return std::get<automata::Cfg>(machine); }
};

// Problems found by the validator of the report's machine class.
std::vector<std::string> report_problems(const ConstructionReport& r);

// Accepting machine for any machine class (grammars excluded).
automata::Npda as_npda(const ConstructionReport& r);

std::string format_report(const ConstructionReport& r);

// co-W(H_2) over {t, tau}: a semi-deterministic machine whose preamble picks
// either the exponent-sum branch (tag Z) or a test point k as A^k / B^-k.
ConstructionReport build_h2_machine();

// co-W(Hou(F_n)) over {x1..xn, sigma1..sigman}.
ConstructionReport build_hou_free_machine(int rank);

// L = { w : w(0) != 0 } over {s1..sn}, n >= 3, as a one-counter machine.
ConstructionReport build_hn_fixpoint_ocl(int n);

// Cyclic closure of the grammar of L; equals co-W(H_n).
ConstructionReport build_hn_coword(int n);

// Words moving some sequence of the test set M (generators of the table
// and their inverses).
ConstructionReport build_gnr_fixset_machine(const higman::GeneratorTable& table);
ConstructionReport build_gnr_coword(const higman::GeneratorTable& table);

// The predicate the fix-set machine decides: w moves some q u s1 s1 ...
// with |u| = symmetric_k(table).
bool gnr_fixset_predicate(const GroupWord& word, const higman::GeneratorTable& table);

}  // namespace cocf
