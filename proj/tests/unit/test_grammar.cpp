#include <doctest.h>

#include <functional>
#include <random>

#include "cocf/error.hpp"
#include "cocf/grammar.hpp"

using namespace cocf;
using namespace cocf::automata;

namespace {

using Str = std::vector<std::string>;

// Fixpoint over derivable (symbol, substring) pairs, straight from the
// productions; no normal form involved.
bool derives(const Cfg& g, const Str& w) {
  const std::size_t n = w.size(), nt = g.nonterminals.size();
  std::vector<std::vector<std::vector<char>>> d(
      nt, std::vector<std::vector<char>>(n + 1, std::vector<char>(n + 1, 0)));
  auto matches = [&](const std::vector<GrammarSymbol>& rhs, std::size_t i, std::size_t j) {
    std::vector<char> reach(n + 1, 0);
    reach[i] = 1;
    for (const auto& s : rhs) {
      std::vector<char> next(n + 1, 0);
      for (std::size_t a = i; a <= j; ++a) {
        if (!reach[a]) continue;
        if (s.terminal) {
          if (a < j && w[a] == g.terminals[s.id]) next[a + 1] = 1;
        } else {
          for (std::size_t b = a; b <= j; ++b)
            if (d[s.id][a][b]) next[b] = 1;
        }
      }
      reach = next;
    }
    return reach[j] != 0;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i; j <= n; ++j)
        for (const auto& p : g.productions)
          if (!d[p.lhs][i][j] && matches(p.rhs, i, j)) d[p.lhs][i][j] = 1, changed = true;
  }
  return d[g.start][0][n] != 0;
}

void for_each_string(const Str& terminals, std::size_t max_len, const std::function<void(const Str&)>& f) {
  Str w;
  std::function<void()> rec = [&] {
    f(w);
    if (w.size() == max_len) return;
    for (const auto& t : terminals) {
      w.push_back(t);
      rec();
      w.pop_back();
    }
  };
  rec();
}

Cfg random_grammar(std::mt19937_64& rng) {
  Cfg g;
  g.terminals = {"a", "b"};
  const int nt = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < nt; ++i) g.nonterminals.push_back("N" + std::to_string(i));
  std::uniform_int_distribution<int> len(0, 3), coin(0, 2), pick_nt(0, nt - 1), pick_t(0, 1);
  const int count = std::uniform_int_distribution<int>(nt, 10)(rng);
  for (int p = 0; p < count; ++p) {
    Production prod{p < nt ? p : pick_nt(rng), {}};
    for (int l = len(rng); l > 0; --l)
      prod.rhs.push_back(coin(rng) ? GrammarSymbol{true, pick_t(rng)} : GrammarSymbol{false, pick_nt(rng)});
    g.productions.push_back(prod);
  }
  return g;
}

const char* kBalanced = R"(cfg
# balanced brackets
terminal a
terminal b
nonterminal S
start S
prod S -> a S b S
prod S -> eps
end
)";

}  // namespace

TEST_CASE("text format") {
  const Cfg g = parse_cfg(kBalanced);
  CHECK(g.nonterminals == Str{"S"});
  CHECK(g.terminals == Str{"a", "b"});
  CHECK(g.productions.size() == 2);
  CHECK(parse_cfg(format_cfg(g)) == g);
  CHECK(cfg_problems(g).empty());
  CHECK_THROWS_AS(parse_cfg("cfg\nnonterminal S\nstart S\nprod S -> a\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_cfg("cfg\nnonterminal S\nstart S\n"), ParseError);
}

TEST_CASE("CYK on a Dyck language") {
  const Cfg g = parse_cfg(kBalanced);
  const CfgRecognizer rec(g);
  for_each_string(g.terminals, 8, [&](const Str& w) {
    int depth = 0;
    bool ok = true;
    for (const auto& x : w) {
      depth += x == "a" ? 1 : -1;
      ok = ok && depth >= 0;
    }
    CHECK(rec.accepts_names(w) == (ok && depth == 0));
  });
  CHECK_THROWS_AS(rec.accepts_names(Str{"c"}), UnknownTerminal);
}

TEST_CASE("CYK agrees with the derivation fixpoint on random grammars") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const Cfg g = random_grammar(rng);
    const CfgRecognizer rec(g);
    const Cfg t = trim(g);
    for_each_string(g.terminals, 5, [&](const Str& w) {
      const bool expected = derives(g, w);
      CHECK(rec.accepts_names(w) == expected);
      CHECK(cfg_membership(t, w) == expected);
    });
  }
}

TEST_CASE("cyclic closure matches rotations") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    const Cfg g = random_grammar(rng);
    const CfgRecognizer base(g), closed(cyclic_closure(g));
    for_each_string(g.terminals, 5, [&](const Str& w) {
      bool any = base.accepts_names(w);
      for (std::size_t s = 1; s < w.size(); ++s) {
        Str r(w.begin() + s, w.end());
        r.insert(r.end(), w.begin(), w.begin() + s);
        any = any || base.accepts_names(r);
      }
      CHECK(closed.accepts_names(w) == any);
    });
  }
}

TEST_CASE("right quotient by a terminal") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    Cfg g = random_grammar(rng);
    g.terminals.push_back("$");
    // Append $ at the end of every start production.
    for (auto& p : g.productions)
      if (p.lhs == g.start) p.rhs.push_back({true, 2});
    const Cfg q = right_quotient(g, "$");
    CHECK(std::find(q.terminals.begin(), q.terminals.end(), "$") == q.terminals.end());
    const CfgRecognizer rec(q);
    for_each_string({"a", "b"}, 5, [&](const Str& w) {
      Str u = w;
      u.push_back("$");
      CHECK(rec.accepts_names(w) == derives(g, u));
    });
  }
}

TEST_CASE("terminal ids follow letter names") {
  const Cfg g =
      parse_cfg("cfg\nterminal x\nterminal x^-1\nnonterminal S\nstart S\nprod S -> x x^-1\nend\n");
  const GeneratorAlphabet ab({"x"});
  const auto ids = terminal_ids(g, parse_word("x x^-1", ab), ab);
  CHECK(CfgRecognizer(g).accepts(ids));
  CHECK_FALSE(CfgRecognizer(g).accepts(terminal_ids(g, parse_word("x^-1 x", ab), ab)));
}
