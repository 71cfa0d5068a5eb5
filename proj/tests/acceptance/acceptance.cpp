// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cocf/constructions.hpp"
#include "cocf/grammar.hpp"
#include "cocf/higman.hpp"
#include "cocf/hou_free.hpp"
#include "cocf/houghton.hpp"
#include "cocf/pda.hpp"

using namespace cocf;
using automata::Cfg;
using automata::CfgRecognizer;
using automata::Npda;
using automata::NpdaRecognizer;

namespace {

struct Tally {
  std::size_t words = 0;
  std::size_t disagreements = 0;
  std::string first;

  void record(bool ok, const std::string& what) {
    ++words;
    if (!ok && disagreements++ == 0) first = what;
  }
  std::string summary() const {
    std::ostringstream s;
    s << words << " words, " << disagreements << " disagreements";
    if (disagreements) s << " (first: '" << first << "')";
    return s.str();
  }
};

bool all_ok = true;

void report(int criterion, bool ok, const std::string& detail, double seconds) {
  std::printf("criterion %d: %s  %s  [%.1fs]\n", criterion, ok ? "PASS" : "FAIL", detail.c_str(),
              seconds);
  std::fflush(stdout);
  all_ok = all_ok && ok;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

GroupWord random_word(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t max_len) {
  const auto letters = all_letters(alphabet_size);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  GroupWord w(len(rng));
  for (auto& l : w) l = letters[pick(rng)];
  return w;
}

void criterion1() {
  Timer t;
  const auto report_h2 = build_h2_machine();
  const auto& m = report_h2.semidet();
  Tally tally;
  for_each_word(2, 8, [&](const GroupWord& w) {
    const bool oracle = !houghton::is_identity(houghton::word_to_element(w, 2));
    tally.record(automata::semidet_accepts_by_preamble(m, w) == oracle,
                 format_word(w, report_h2.alphabet));
  });
  report(1, tally.disagreements == 0, "H_2 preamble runs vs oracle, length <= 8: " + tally.summary(),
         t.seconds());
}

void criterion2() {
  Timer t;
  const auto r = build_hou_free_machine(2);
  const auto problems = automata::semidet_validate(r.semidet());
  auto oracle = [](const GroupWord& w) {
    return !hou_free::is_identity(hou_free::word_to_element(w, 2));
  };
  Tally exhaustive;
  for_each_word(4, 4, [&](const GroupWord& w) {
    exhaustive.record(automata::semidet_accepts_by_preamble(r.semidet(), w) == oracle(w),
                      format_word(w, r.alphabet));
  });
  const NpdaRecognizer rec(as_npda(r));
  std::mt19937_64 rng(2);
  Tally sampled;
  for (int i = 0; i < 10000; ++i) {
    const GroupWord w = random_word(rng, 4, 8);
    const bool o = oracle(w);
    sampled.record(automata::semidet_accepts_by_preamble(r.semidet(), w) == o && rec.accepts(w) == o,
                   format_word(w, r.alphabet));
  }
  const bool ok = problems.empty() && exhaustive.disagreements == 0 && sampled.disagreements == 0;
  report(2, ok,
         "Hou(F_2): validator " + std::to_string(problems.size()) +
             " problems; length <= 4 (preamble runs): " + exhaustive.summary() +
             "; 10000 random, length <= 8 (preamble runs and grammar engine): " + sampled.summary(),
         t.seconds());
}

void criterion3() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int n : {3, 4}) {
    const auto ocl = build_hn_fixpoint_ocl(n);
    const NpdaRecognizer l(ocl.npda());
    const auto& alphabet = ocl.alphabet;
    Tally a;
    for_each_word(alphabet.size(), 6, [&](const GroupWord& w) {
      const bool moved =
          houghton::trace_point(w, houghton::RayPoint::origin(), n).back() != houghton::RayPoint::origin();
      a.record(l.accepts(w) == moved, format_word(w, alphabet));
    });
    const auto coword = build_hn_coword(n);
    const CfgRecognizer cw(coword.grammar());
    Tally b;
    for_each_word(alphabet.size(), n == 3 ? 5 : 4, [&](const GroupWord& w) {
      const bool g = cw.accepts(automata::terminal_ids(coword.grammar(), w, alphabet));
      const bool nontrivial = !houghton::is_identity(houghton::word_to_element(w, n));
      bool rotation = false;
      for (const auto& r : rotations(w)) rotation = rotation || l.accepts(r);
      b.record(g == nontrivial && g == rotation, format_word(w, alphabet));
    });
    ok = ok && a.disagreements == 0 && b.disagreements == 0;
    if (!detail.empty()) detail += "; ";
    detail += "n=" + std::to_string(n) + ": one-counter " + a.summary() + ", coword " + b.summary();
  }
  report(3, ok, detail, t.seconds());
}

void criterion4() {
  Timer t;
  const auto& table = higman::default_generator_table();
  const int k = symmetric_k(table);
  std::size_t expected = table.r;
  for (int i = 0; i < k; ++i) expected *= table.n;
  const std::size_t m = higman::enumerate_M(table.n, table.r, k).size();
  const auto fix = build_gnr_fixset_machine(table);
  const NpdaRecognizer rec(fix.npda());
  Tally b;
  for_each_word(table.alphabet.size(), 3, [&](const GroupWord& w) {
    b.record(rec.accepts(w) == gnr_fixset_predicate(w, table), format_word(w, table.alphabet));
  });
  const auto coword = build_gnr_coword(table);
  const CfgRecognizer cw(coword.grammar());
  Tally c;
  for_each_word(table.alphabet.size(), 4, [&](const GroupWord& w) {
    const bool g = cw.accepts(automata::terminal_ids(coword.grammar(), w, table.alphabet));
    c.record(g == !higman::is_identity(higman::word_to_element(w, table)),
             format_word(w, table.alphabet));
  });
  const bool ok = m == expected && b.disagreements == 0 && c.disagreements == 0;
  report(4, ok,
         "G_{2,1}: k=" + std::to_string(k) + " |M|=" + std::to_string(m) + " (r n^k=" +
             std::to_string(expected) + "); fix-set length <= 3: " + b.summary() +
             "; coword length <= 4: " + c.summary(),
         t.seconds());
}

// Random grammar with 1..5 nonterminals, up to 12 productions of length
// 0..3 and 2 or 3 terminals.
Cfg random_grammar(std::mt19937_64& rng) {
  Cfg g;
  const int terminals = std::uniform_int_distribution<int>(2, 3)(rng);
  const int nonterminals = std::uniform_int_distribution<int>(1, 5)(rng);
  const int productions = std::uniform_int_distribution<int>(1, 12)(rng);
  for (int i = 0; i < terminals; ++i) g.terminals.push_back(std::string(1, char('a' + i)));
  for (int i = 0; i < nonterminals; ++i) g.nonterminals.push_back("N" + std::to_string(i));
  std::uniform_int_distribution<int> len(0, 3), coin(0, 1);
  std::uniform_int_distribution<int> nt(0, nonterminals - 1), tm(0, terminals - 1);
  for (int p = 0; p < productions; ++p) {
    automata::Production prod;
    prod.lhs = p < nonterminals ? p : nt(rng);
    const int l = len(rng);
    for (int i = 0; i < l; ++i) {
      if (coin(rng)) prod.rhs.push_back({true, tm(rng)});
      else prod.rhs.push_back({false, nt(rng)});
    }
    g.productions.push_back(prod);
  }
  return g;
}

void for_each_string(int terminals, std::size_t max_len,
                     const std::function<void(const std::vector<std::string>&)>& visit) {
  std::vector<std::string> w;
  std::function<void()> rec = [&] {
    visit(w);
    if (w.size() == max_len) return;
    for (int i = 0; i < terminals; ++i) {
      w.push_back(std::string(1, char('a' + i)));
      rec();
      w.pop_back();
    }
  };
  rec();
}

void criterion5() {
  Timer t;
  std::mt19937_64 rng(5);
  Tally tally;
  std::size_t nonempty = 0;
  for (int i = 0; i < 50; ++i) {
    const Cfg g = random_grammar(rng);
    const CfgRecognizer base(g);
    const CfgRecognizer closed(automata::cyclic_closure(g));
    bool any = false;
    for_each_string(static_cast<int>(g.terminals.size()), 6, [&](const std::vector<std::string>& w) {
      bool rotation = base.accepts_names(w);
      for (std::size_t s = 1; s < w.size() && !rotation; ++s) {
        std::vector<std::string> r(w.begin() + s, w.end());
        r.insert(r.end(), w.begin(), w.begin() + s);
        rotation = base.accepts_names(r);
      }
      any = any || rotation;
      std::string text = "grammar " + std::to_string(i) + ":";
      for (const auto& x : w) text += " " + x;
      tally.record(closed.accepts_names(w) == rotation, text);
    });
    nonempty += any;
  }
  report(5, tally.disagreements == 0,
         "50 random grammars (" + std::to_string(nonempty) + " with nonempty languages), length <= 6: " +
             tally.summary(),
         t.seconds());
}

void criterion6() {
  Timer t;
  std::vector<std::pair<std::string, Npda>> machines = {
      {"h2", as_npda(build_h2_machine())},
      {"hou-free-1", as_npda(build_hou_free_machine(1))},
      {"hou-free-2", as_npda(build_hou_free_machine(2))},
      {"h3-fixpoint", build_hn_fixpoint_ocl(3).npda()},
      {"h4-fixpoint", build_hn_fixpoint_ocl(4).npda()},
      {"gnr-fixset", build_gnr_fixset_machine(higman::default_generator_table()).npda()},
  };
  Tally tally;
  for (const auto& [name, m] : machines) {
    const NpdaRecognizer rec(m);
    for_each_word(m.alphabet.size(), 5, [&](const GroupWord& w) {
      const bool bounded = automata::bounded_accepts(m, w, automata::default_stack_bound(w.size()));
      tally.record(bounded == rec.accepts(w), name + ": " + format_word(w, m.alphabet));
    });
  }
  report(6, tally.disagreements == 0,
         std::to_string(machines.size()) + " machines, length <= 5, stack bound 3|w|+10: " +
             tally.summary(),
         t.seconds());
}

template <class Element, class Make, class Identity, class Compose, class Inverse>
std::size_t law_failures(std::mt19937_64& rng, std::size_t alphabet_size, Make make, Identity id,
                         Compose comp, Inverse inv) {
  std::size_t failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const Element a = make(random_word(rng, alphabet_size, 8));
    const Element b = make(random_word(rng, alphabet_size, 8));
    const Element c = make(random_word(rng, alphabet_size, 8));
    const bool ok = comp(comp(a, b), c) == comp(a, comp(b, c)) && comp(a, inv(a)) == id &&
                    comp(inv(a), a) == id && comp(a, id) == a && comp(id, a) == a;
    failures += !ok;
  }
  return failures;
}

void criterion7() {
  Timer t;
  std::mt19937_64 rng(7);
  std::string detail;
  bool ok = true;
  for (int n : {2, 3, 4}) {
    const auto f = law_failures<houghton::HoughtonElement>(
        rng, houghton::houghton_alphabet(n).size(),
        [n](const GroupWord& w) { return houghton::word_to_element(w, n); },
        houghton::HoughtonElement::identity(n),
        [](const auto& a, const auto& b) { return houghton::compose(a, b); },
        [](const auto& a) { return houghton::inverse(a); });
    ok = ok && f == 0;
    detail += "H_" + std::to_string(n) + " " + std::to_string(f) + " failures; ";
  }
  for (int rank : {1, 2}) {
    const auto f = law_failures<hou_free::HouFreeElement>(
        rng, hou_free::hou_free_alphabet(rank).size(),
        [rank](const GroupWord& w) { return hou_free::word_to_element(w, rank); },
        hou_free::HouFreeElement::identity(rank),
        [](const auto& a, const auto& b) { return hou_free::compose(a, b); },
        [](const auto& a) { return hou_free::inverse(a); });
    ok = ok && f == 0;
    detail += "Hou(F_" + std::to_string(rank) + ") " + std::to_string(f) + " failures; ";
  }
  const auto& table = higman::default_generator_table();
  const auto f = law_failures<higman::PrefixMap>(
      rng, table.alphabet.size(),
      [&table](const GroupWord& w) { return higman::word_to_element(w, table); },
      higman::PrefixMap::identity(table.n, table.r),
      [](const auto& a, const auto& b) { return higman::compose(a, b); },
      [](const auto& a) { return higman::inverse(a); });
  ok = ok && f == 0;
  detail += "G_{2,1} " + std::to_string(f) + " failures";
  report(7, ok, "1000 random triples per group: " + detail, t.seconds());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  return all_ok ? 0 : 1;
}
