#include "cocf/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cocf/error.hpp"

namespace cocf::automata {

int Cfg::find_nonterminal(std::string_view name) const {
  auto it = std::find(nonterminals.begin(), nonterminals.end(), name);
  return it == nonterminals.end() ? -1 : static_cast<int>(it - nonterminals.begin());
}

int Cfg::find_terminal(std::string_view name) const {
  auto it = std::find(terminals.begin(), terminals.end(), name);
  return it == terminals.end() ? -1 : static_cast<int>(it - terminals.begin());
}

namespace {

bool valid_symbol_name(std::string_view s) {
  if (s.empty() || s == "eps" || s == "->") return false;
  return std::none_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

// Picks `base`, or `base` with a numeric suffix, not yet in `taken`.
std::string fresh_name(std::set<std::string>& taken, const std::string& base) {
  std::string name = base;
  for (int i = 1; taken.count(name); ++i) name = base + "_" + std::to_string(i);
  taken.insert(name);
  return name;
}

}  // namespace

std::vector<std::string> cfg_problems(const Cfg& g) {
  std::vector<std::string> problems;
  const int nts = static_cast<int>(g.nonterminals.size());
  const int ts = static_cast<int>(g.terminals.size());
  std::set<std::string> names;
  for (const auto& n : g.nonterminals) {
    if (!valid_symbol_name(n)) problems.push_back("bad nonterminal name '" + n + "'");
    if (!names.insert(n).second) problems.push_back("duplicate symbol '" + n + "'");
  }
  for (const auto& t : g.terminals) {
    if (!valid_symbol_name(t)) problems.push_back("bad terminal name '" + t + "'");
    if (!names.insert(t).second) problems.push_back("duplicate symbol '" + t + "'");
  }
  if (g.start < 0 || g.start >= nts) problems.push_back("start symbol undeclared");
  for (const auto& p : g.productions) {
    if (p.lhs < 0 || p.lhs >= nts) problems.push_back("production with undeclared head");
    for (const auto& s : p.rhs)
      if (s.id < 0 || s.id >= (s.terminal ? ts : nts))
        problems.push_back("production uses an undeclared symbol");
  }
  return problems;
}

Cfg trim(const Cfg& g) {
  const std::size_t nts = g.nonterminals.size();
  std::vector<bool> generating(nts, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (generating[static_cast<std::size_t>(p.lhs)]) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const GrammarSymbol& s) {
        return s.terminal || generating[static_cast<std::size_t>(s.id)];
      });
      if (ok) generating[static_cast<std::size_t>(p.lhs)] = changed = true;
    }
  }
  auto usable = [&](const Production& p) {
    return generating[static_cast<std::size_t>(p.lhs)] &&
           std::all_of(p.rhs.begin(), p.rhs.end(), [&](const GrammarSymbol& s) {
             return s.terminal || generating[static_cast<std::size_t>(s.id)];
           });
  };

  std::vector<std::vector<const Production*>> by_lhs(nts);
  for (const auto& p : g.productions)
    if (usable(p)) by_lhs[static_cast<std::size_t>(p.lhs)].push_back(&p);
  std::vector<bool> reachable(nts, false);
  std::vector<int> stack{g.start};
  reachable[static_cast<std::size_t>(g.start)] = true;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (const auto* p : by_lhs[static_cast<std::size_t>(a)])
      for (const auto& s : p->rhs)
        if (!s.terminal && !reachable[static_cast<std::size_t>(s.id)]) {
          reachable[static_cast<std::size_t>(s.id)] = true;
          stack.push_back(s.id);
        }
  }

  Cfg out;
  out.terminals = g.terminals;
  std::vector<int> remap(nts, -1);
  for (std::size_t a = 0; a < nts; ++a) {
    if (reachable[a] && (generating[a] || static_cast<int>(a) == g.start)) {
      remap[a] = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back(g.nonterminals[a]);
    }
  }
  out.start = remap[static_cast<std::size_t>(g.start)];
  for (const auto& p : g.productions) {
    if (!usable(p) || !reachable[static_cast<std::size_t>(p.lhs)]) continue;
    Production q{remap[static_cast<std::size_t>(p.lhs)], p.rhs};
    for (auto& s : q.rhs)
      if (!s.terminal) s.id = remap[static_cast<std::size_t>(s.id)];
    out.productions.push_back(std::move(q));
  }
  return out;
}

NormalGrammar normalize(const Cfg& source) {
  const Cfg g = trim(source);
  NormalGrammar nf;
  nf.names = g.nonterminals;
  nf.terminal_count = g.terminals.size();
  nf.start = g.start;
  std::set<std::string> taken(g.nonterminals.begin(), g.nonterminals.end());
  taken.insert(g.terminals.begin(), g.terminals.end());

  auto new_nt = [&](const std::string& base) {
    nf.names.push_back(fresh_name(taken, base));
    return static_cast<int>(nf.names.size() - 1);
  };

  // Terminal-free rules of length <= 2 (plus A -> a), symbols encoded as
  // nonterminal id >= 0 or ~terminal < 0.
  std::vector<std::pair<int, std::vector<int>>> rules;
  std::vector<int> terminal_nt(g.terminals.size(), -1);
  for (const auto& p : g.productions) {
    std::vector<int> rhs;
    for (const auto& s : p.rhs) rhs.push_back(s.terminal ? ~s.id : s.id);
    if (rhs.size() >= 2) {
      for (auto& s : rhs) {
        if (s >= 0) continue;
        auto& t = terminal_nt[static_cast<std::size_t>(~s)];
        if (t < 0) {
          t = new_nt("_t" + g.terminals[static_cast<std::size_t>(~s)]);
          rules.push_back({t, {s}});
        }
        s = t;
      }
    }
    int lhs = p.lhs;
    while (rhs.size() > 2) {
      int rest = new_nt("_b" + g.nonterminals[static_cast<std::size_t>(p.lhs)]);
      rules.push_back({lhs, {rhs[0], rest}});
      rhs.erase(rhs.begin());
      lhs = rest;
    }
    rules.push_back({lhs, std::move(rhs)});
  }

  const std::size_t count = nf.names.size();
  std::vector<bool> nullable(count, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [lhs, rhs] : rules) {
      if (nullable[static_cast<std::size_t>(lhs)]) continue;
      bool all = std::all_of(rhs.begin(), rhs.end(),
                             [&](int s) { return s >= 0 && nullable[static_cast<std::size_t>(s)]; });
      if (all) nullable[static_cast<std::size_t>(lhs)] = changed = true;
    }
  }
  nf.accepts_empty = nullable[static_cast<std::size_t>(nf.start)];

  std::set<std::pair<int, int>> terminal_rules, unit_rules;
  std::set<std::tuple<int, int, int>> binary_rules;
  auto add_unit = [&](int a, int b) {
    if (a != b) unit_rules.emplace(b, a);
  };
  for (const auto& [lhs, rhs] : rules) {
    if (rhs.size() == 1) {
      if (rhs[0] < 0) {
        terminal_rules.emplace(~rhs[0], lhs);
      } else {
        add_unit(lhs, rhs[0]);
      }
    } else if (rhs.size() == 2) {
      binary_rules.emplace(rhs[0], rhs[1], lhs);
      if (nullable[static_cast<std::size_t>(rhs[1])]) add_unit(lhs, rhs[0]);
      if (nullable[static_cast<std::size_t>(rhs[0])]) add_unit(lhs, rhs[1]);
    }
  }
  nf.by_terminal.assign(nf.terminal_count, {});
  nf.by_left.assign(count, {});
  nf.unit_parents.assign(count, {});
  for (const auto& [t, a] : terminal_rules) nf.by_terminal[static_cast<std::size_t>(t)].push_back(a);
  for (const auto& [b, c, a] : binary_rules) nf.by_left[static_cast<std::size_t>(b)].emplace_back(c, a);
  for (const auto& [b, a] : unit_rules) nf.unit_parents[static_cast<std::size_t>(b)].push_back(a);
  return nf;
}

CfgRecognizer::CfgRecognizer(const Cfg& g) : terminals_(g.terminals), nf_(normalize(g)) {}

bool CfgRecognizer::accepts(std::span<const int> word) const {
  const std::size_t n = word.size();
  if (n == 0) return nf_.accepts_empty;
  const std::size_t count = nf_.names.size();
  const std::size_t width = (count + 63) / 64;
  // cell(i, len) holds the nonterminals deriving word[i, i + len).
  std::vector<std::uint64_t> cells(n * n * width, 0);
  auto cell = [&](std::size_t i, std::size_t len) { return cells.data() + ((len - 1) * n + i) * width; };
  auto test = [](const std::uint64_t* c, int a) {
    return (c[static_cast<std::size_t>(a) >> 6] >> (static_cast<unsigned>(a) & 63)) & 1u;
  };
  std::vector<int> work;
  auto insert = [&](std::uint64_t* c, int a) {
    auto& w = c[static_cast<std::size_t>(a) >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (static_cast<unsigned>(a) & 63);
    if (w & bit) return;
    w |= bit;
    work.push_back(a);
  };
  auto close_units = [&](std::uint64_t* c) {
    while (!work.empty()) {
      int b = work.back();
      work.pop_back();
      for (int a : nf_.unit_parents[static_cast<std::size_t>(b)]) insert(c, a);
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    const int t = word[i];
    if (t < 0 || static_cast<std::size_t>(t) >= nf_.terminal_count) return false;
    auto* c = cell(i, 1);
    for (int a : nf_.by_terminal[static_cast<std::size_t>(t)]) insert(c, a);
    close_units(c);
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto* c = cell(i, len);
      for (std::size_t split = 1; split < len; ++split) {
        const auto* left = cell(i, split);
        const auto* right = cell(i + split, len - split);
        for (std::size_t w = 0; w < width; ++w) {
          for (std::uint64_t bits = left[w]; bits; bits &= bits - 1) {
            const int b = static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
            for (const auto& [rc, a] : nf_.by_left[static_cast<std::size_t>(b)])
              if (test(right, rc)) insert(c, a);
          }
        }
        close_units(c);
      }
    }
  }
  return test(cell(0, n), nf_.start);
}

bool CfgRecognizer::accepts_names(std::span<const std::string> word) const {
  std::vector<int> ids;
  ids.reserve(word.size());
  for (const auto& name : word) {
    auto it = std::find(terminals_.begin(), terminals_.end(), name);
    if (it == terminals_.end()) throw UnknownTerminal(name);
    ids.push_back(static_cast<int>(it - terminals_.begin()));
  }
  return accepts(ids);
}

bool cfg_membership(const Cfg& g, std::span<const std::string> word) {
  return CfgRecognizer(g).accepts_names(word);
}

std::vector<int> terminal_ids(const Cfg& g, const GroupWord& word,
                              const GeneratorAlphabet& alphabet) {
  std::vector<int> ids;
  ids.reserve(word.size());
  for (const auto& l : word) {
    const std::string name = format_letter(l, alphabet);
    int t = g.find_terminal(name);
    if (t < 0) throw UnknownTerminal(name);
    ids.push_back(t);
  }
  return ids;
}

namespace {

// The normal form written back as a grammar; the empty word is left out.
struct NormalRules {
  Cfg grammar;
  std::vector<std::pair<int, int>> terminal_rules;      // (A, a)
  std::vector<std::pair<int, int>> unit_rules;          // (A, B)
  std::vector<std::tuple<int, int, int>> binary_rules;  // (A, B, C)
};

NormalRules normal_rules(const Cfg& g) {
  const NormalGrammar nf = normalize(g);
  NormalRules out;
  out.grammar.nonterminals = nf.names;
  out.grammar.terminals = g.terminals;
  out.grammar.start = nf.start;
  for (std::size_t t = 0; t < nf.by_terminal.size(); ++t)
    for (int a : nf.by_terminal[t]) out.terminal_rules.emplace_back(a, static_cast<int>(t));
  for (std::size_t b = 0; b < nf.by_left.size(); ++b)
    for (const auto& [c, a] : nf.by_left[b]) out.binary_rules.emplace_back(a, static_cast<int>(b), c);
  for (std::size_t b = 0; b < nf.unit_parents.size(); ++b)
    for (int a : nf.unit_parents[b]) out.unit_rules.emplace_back(a, static_cast<int>(b));
  auto nt = [](int id) { return GrammarSymbol{false, id}; };
  for (const auto& [a, t] : out.terminal_rules)
    out.grammar.productions.push_back({a, {GrammarSymbol{true, t}}});
  for (const auto& [a, b] : out.unit_rules) out.grammar.productions.push_back({a, {nt(b)}});
  for (const auto& [a, b, c] : out.binary_rules)
    out.grammar.productions.push_back({a, {nt(b), nt(c)}});
  return out;
}

}  // namespace

Cfg cyclic_closure(const Cfg& g) {
  NormalRules nr = normal_rules(g);
  const bool has_empty = normalize(g).accepts_empty;
  Cfg& out = nr.grammar;
  std::set<std::string> taken(out.nonterminals.begin(), out.nonterminals.end());
  taken.insert(out.terminals.begin(), out.terminals.end());

  // ctx(A) derives { v u : S =>* u A v }, the rotated contexts of A.
  const std::size_t base = out.nonterminals.size();
  std::vector<int> ctx(base);
  for (std::size_t a = 0; a < base; ++a) {
    ctx[a] = static_cast<int>(out.nonterminals.size());
    out.nonterminals.push_back(fresh_name(taken, "rot(" + out.nonterminals[a] + ")"));
  }
  const int start = static_cast<int>(out.nonterminals.size());
  out.nonterminals.push_back(fresh_name(taken, "rot*"));

  auto nt = [](int id) { return GrammarSymbol{false, id}; };
  auto c = [&](int a) { return ctx[static_cast<std::size_t>(a)]; };
  out.productions.push_back({c(out.start), {}});
  for (const auto& [a, b, cc] : nr.binary_rules) {
    out.productions.push_back({c(b), {nt(cc), nt(c(a))}});
    out.productions.push_back({c(cc), {nt(c(a)), nt(b)}});
  }
  for (const auto& [a, b] : nr.unit_rules) out.productions.push_back({c(b), {nt(c(a))}});

  // A rotation either is the word itself or starts at some leaf a: then it
  // reads a, the rest of the word right of a, then the part left of a.
  out.productions.push_back({start, {nt(out.start)}});
  for (const auto& [a, t] : nr.terminal_rules)
    out.productions.push_back({start, {GrammarSymbol{true, t}, nt(c(a))}});
  if (has_empty) out.productions.push_back({start, {}});
  out.start = start;
  return trim(out);
}

Cfg right_quotient(const Cfg& g, std::string_view terminal) {
  const int marker = g.find_terminal(terminal);
  if (marker < 0) throw UnknownTerminal(std::string(terminal));
  NormalRules nr = normal_rules(g);
  Cfg out;
  std::vector<int> term_map(g.terminals.size(), -1);
  for (std::size_t t = 0; t < g.terminals.size(); ++t) {
    if (static_cast<int>(t) == marker) continue;
    term_map[t] = static_cast<int>(out.terminals.size());
    out.terminals.push_back(g.terminals[t]);
  }
  out.nonterminals = nr.grammar.nonterminals;
  std::set<std::string> taken(out.nonterminals.begin(), out.nonterminals.end());
  taken.insert(out.terminals.begin(), out.terminals.end());
  const std::size_t base = out.nonterminals.size();
  // cut(A) derives { u : u marker in L(A) }.
  std::vector<int> cut(base);
  for (std::size_t a = 0; a < base; ++a) {
    cut[a] = static_cast<int>(out.nonterminals.size());
    out.nonterminals.push_back(fresh_name(taken, out.nonterminals[a] + "/" + std::string(terminal)));
  }
  auto nt = [](int id) { return GrammarSymbol{false, id}; };
  auto c = [&](int a) { return cut[static_cast<std::size_t>(a)]; };
  for (const auto& [a, t] : nr.terminal_rules) {
    if (t == marker) {
      out.productions.push_back({c(a), {}});
    } else {
      out.productions.push_back({a, {GrammarSymbol{true, term_map[static_cast<std::size_t>(t)]}}});
    }
  }
  for (const auto& [a, b] : nr.unit_rules) {
    out.productions.push_back({a, {nt(b)}});
    out.productions.push_back({c(a), {nt(c(b))}});
  }
  for (const auto& [a, b, cc] : nr.binary_rules) {
    out.productions.push_back({a, {nt(b), nt(cc)}});
    out.productions.push_back({c(a), {nt(b), nt(c(cc))}});
  }
  out.start = c(nr.grammar.start);
  return trim(out);
}

std::string format_cfg(const Cfg& g) {
  std::ostringstream out;
  out << "cfg\n";
  for (const auto& t : g.terminals) out << "terminal " << t << "\n";
  for (const auto& n : g.nonterminals) out << "nonterminal " << n << "\n";
  out << "start " << g.nonterminals.at(static_cast<std::size_t>(g.start)) << "\n";
  for (const auto& p : g.productions) {
    out << "prod " << g.nonterminals[static_cast<std::size_t>(p.lhs)] << " ->";
    if (p.rhs.empty()) out << " eps";
    for (const auto& s : p.rhs)
      out << ' ' << (s.terminal ? g.terminals : g.nonterminals)[static_cast<std::size_t>(s.id)];
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

Cfg parse_cfg(std::string_view text) {
  Cfg g;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false, done = false, have_start = false;
  std::unordered_map<std::string, GrammarSymbol> symbols;
  std::vector<std::pair<int, std::vector<std::string>>> pending;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (done) throw ParseError(line_no, "content after 'end'");
    if (!header) {
      if (tok.size() != 1 || tok[0] != "cfg") throw ParseError(line_no, "expected 'cfg'");
      header = true;
      continue;
    }
    const std::string& kw = tok[0];
    auto declare = [&](bool terminal) {
      if (tok.size() != 2 || !valid_symbol_name(tok[1])) throw ParseError(line_no, "bad declaration");
      auto& list = terminal ? g.terminals : g.nonterminals;
      if (!symbols.emplace(tok[1], GrammarSymbol{terminal, static_cast<int>(list.size())}).second)
        throw ParseError(line_no, "duplicate symbol '" + tok[1] + "'");
      list.push_back(tok[1]);
    };
    if (kw == "terminal") {
      declare(true);
    } else if (kw == "nonterminal") {
      declare(false);
    } else if (kw == "start") {
      auto it = tok.size() == 2 ? symbols.find(tok[1]) : symbols.end();
      if (it == symbols.end() || it->second.terminal) throw ParseError(line_no, "bad start symbol");
      g.start = it->second.id;
      have_start = true;
    } else if (kw == "prod") {
      if (tok.size() < 4 || tok[2] != "->") throw ParseError(line_no, "expected 'prod A -> ...'");
      auto it = symbols.find(tok[1]);
      if (it == symbols.end() || it->second.terminal) throw ParseError(line_no, "bad production head");
      Production p{it->second.id, {}};
      if (!(tok.size() == 4 && tok[3] == "eps")) {
        for (std::size_t i = 3; i < tok.size(); ++i) {
          auto s = symbols.find(tok[i]);
          if (s == symbols.end()) throw ParseError(line_no, "undeclared symbol '" + tok[i] + "'");
          p.rhs.push_back(s->second);
        }
      }
      g.productions.push_back(std::move(p));
    } else if (kw == "end") {
      done = true;
    } else {
      throw ParseError(line_no, "unknown keyword '" + kw + "'");
    }
  }
  if (!done) throw ParseError(line_no, "missing 'end'");
  if (!have_start) throw ParseError(line_no, "missing start symbol");
  return g;
}

}  // namespace cocf::automata
