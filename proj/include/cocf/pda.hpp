#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocf/grammar.hpp"
#include "cocf/words.hpp"

namespace cocf::automata {

inline constexpr int kEps = -1;

// Input symbols of a machine over an alphabet of size g: letter x_i has id
// 2i, x_i^-1 has id 2i + 1, and the end marker `$` (if used) has id 2g.
struct PdaTransition {
  int from = 0;
  int input = kEps;
  int top = 0;
  int to = 0;
  std::vector<int> push;  // replaces `top`; push[0] ends up on top

  friend auto operator<=>(const PdaTransition&, const PdaTransition&) = default;
};

// Nondeterministic pushdown automaton, accepting by final state once the
// whole input (followed by `$` when end_marker is set) has been read.
// Stack symbol 0 is the bottom marker `#`, present at the start.
struct Npda {
  GeneratorAlphabet alphabet;
  bool end_marker = false;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<int> accepting;
  std::vector<std::string> stack_symbols{"#"};
  std::vector<PdaTransition> transitions;

  int marker() const noexcept { return static_cast<int>(2 * alphabet.size()); }
  std::size_t input_count() const noexcept {
    return 2 * alphabet.size() + (end_marker ? 1 : 0);
  }
  bool is_accepting(int state) const;

  int add_state(const std::string& name);       // returns the existing id if declared
  int add_stack_symbol(const std::string& name);
  int state(std::string_view name) const;       // throws Error if undeclared
  int stack_symbol(std::string_view name) const;
  // `eps`, `$`, `name` or `name^-1`; throws UnknownLetter.
  int input(std::string_view name) const;
  std::string input_name(int id) const;

  // By name; states and stack symbols are declared on first use.
  void add(const std::string& from, std::string_view input, const std::string& top,
           const std::string& to, const std::vector<std::string>& push);
  void accept(const std::string& state);

  friend bool operator==(const Npda&, const Npda&) = default;
};

std::vector<std::string> npda_problems(const Npda& m);

// Input ids for a word, with the end marker appended when the machine uses
// one. Throws UnknownLetter for generators outside the machine's alphabet.
std::vector<int> input_ids(const Npda& m, const GroupWord& word);

// Exactly one stack symbol besides `#`.
bool is_one_counter(const Npda& m);

class OneCounter {
 public:
  // Throws Error unless m is a valid one-counter machine.
  explicit OneCounter(Npda m);
  const Npda& machine() const noexcept { return machine_; }

 private:
  Npda machine_;
};

// Triple construction; terminals are the letter names in input-id order.
// The end marker is quotiented away, so the grammar generates exactly the
// accepted group words.
Cfg npda_to_cfg(const Npda& m);

// Exact membership through npda_to_cfg; the grammar is built once.
class NpdaRecognizer {
 public:
  explicit NpdaRecognizer(const Npda& m);
  bool accepts(const GroupWord& word) const;
  const Cfg& grammar() const noexcept { return grammar_; }

 private:
  Npda machine_;
  Cfg grammar_;
  std::shared_ptr<const CfgRecognizer> recognizer_;
};

bool npda_accepts(const Npda& m, const GroupWord& word);

std::size_t default_stack_bound(std::size_t word_length);

// Is there an accepting run whose stack never holds more than `bound`
// symbols (counting `#`)? Decided by a search over run summaries ordered by
// peak height, so it terminates even with unbounded epsilon pushes.
bool bounded_accepts(const Npda& m, const GroupWord& word, std::size_t bound);

struct Configuration {
  int state = 0;
  std::size_t position = 0;  // input symbols read
  std::vector<int> stack;    // bottom first
};

// Breadth-first search for one accepting run, deepening the stack bound
// up to `bound`. Gives up (nullopt) once `budget` configurations are seen.
std::optional<std::vector<Configuration>> find_run(const Npda& m, const GroupWord& word,
                                                   std::size_t bound,
                                                   std::size_t budget = 200000);
std::string format_configuration(const Npda& m, const Configuration& c);

std::string format_npda(const Npda& m);
Npda parse_npda(std::string_view text);

// A DFA over stack symbols restricting the initial stack word, read in
// push order (the first symbol read sits directly on `#`).
struct PreambleAutomaton {
  struct Edge {
    int from = 0;
    int symbol = 0;
    int to = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };
  std::vector<std::string> states;
  int initial = 0;
  std::vector<int> accepting;
  std::vector<Edge> edges;

  int add_state(const std::string& name);
  friend bool operator==(const PreambleAutomaton&, const PreambleAutomaton&) = default;
};

// Preamble length sufficient for words of a given length.
struct PreambleBound {
  std::size_t per_letter = 1;
  std::size_t constant = 0;

  std::size_t operator()(std::size_t word_length) const noexcept {
    return per_letter * word_length + constant;
  }
  friend bool operator==(const PreambleBound&, const PreambleBound&) = default;
};

// Writes a preamble word nondeterministically, then runs `body`
// deterministically.
struct SemiDetPda {
  Npda body;
  PreambleAutomaton preamble;
  PreambleBound bound;

  friend bool operator==(const SemiDetPda&, const SemiDetPda&) = default;
};

// Empty iff the body is a valid machine, deterministic per (state, top),
// and the preamble is a DFA over non-bottom stack symbols.
std::vector<std::string> semidet_validate(const SemiDetPda& m);

// Prepends epsilon states that push an accepted preamble word.
Npda semidet_to_npda(const SemiDetPda& m);

// Runs the deterministic body once per preamble word of length at most
// m.bound(|word|).
bool semidet_accepts_by_preamble(const SemiDetPda& m, const GroupWord& word);

std::string format_semidet(const SemiDetPda& m);
SemiDetPda parse_semidet(std::string_view text);

}  // namespace cocf::automata
