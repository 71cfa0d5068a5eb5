#include "cocf/constructions.hpp"

#include <sstream>

#include "cocf/error.hpp"
#include "cocf/hou_free.hpp"
#include "cocf/houghton.hpp"

namespace cocf {

using automata::Cfg;
using automata::Npda;
using automata::PreambleAutomaton;
using automata::SemiDetPda;

std::string to_string(MachineClass c) {
  switch (c) {
    case MachineClass::SemiDeterministic:
      return "semi-deterministic";
    case MachineClass::OneCounter:
      return "one-counter";
    case MachineClass::Npda:
      return "npda";
    case MachineClass::Grammar:
      return "cfg";
  }
  return "?";
}

std::vector<std::string> report_problems(const ConstructionReport& r) {
  switch (r.machine_class) {
    case MachineClass::SemiDeterministic:
      return automata::semidet_validate(r.semidet());
    case MachineClass::OneCounter: {
      auto p = automata::npda_problems(r.npda());
      if (!automata::is_one_counter(r.npda())) p.push_back("more than one counter symbol");
      return p;
    }
    case MachineClass::Npda:
      return automata::npda_problems(r.npda());
    case MachineClass::Grammar:
      return automata::cfg_problems(r.grammar());
  }
  return {"unknown machine class"};
}

Npda as_npda(const ConstructionReport& r) {
  if (r.machine_class == MachineClass::SemiDeterministic) return automata::semidet_to_npda(r.semidet());
  if (r.machine_class == MachineClass::Grammar) throw Error("a grammar is not a machine");
  return r.npda();
}

std::string format_report(const ConstructionReport& r) {
  std::ostringstream out;
  out << "# group " << r.group << "\n# class " << to_string(r.machine_class) << "\n";
  if (!r.preamble_bound.empty()) out << "# preamble bound " << r.preamble_bound << "\n";
  for (const auto& f : r.facts) out << "# fact " << f << "\n";
  for (const auto& n : r.notes) out << "# deviation " << n << "\n";
  switch (r.machine_class) {
    case MachineClass::SemiDeterministic:
      out << automata::format_semidet(r.semidet());
      break;
    case MachineClass::OneCounter:
    case MachineClass::Npda:
      out << automata::format_npda(r.npda());
      break;
    case MachineClass::Grammar:
      out << automata::format_cfg(r.grammar());
      break;
  }
  return out.str();
}

namespace {

PreambleAutomaton h2_preamble(Npda& body) {
  PreambleAutomaton p;
  const int s = p.add_state("start"), a = p.add_state("right"), b = p.add_state("left"),
            z = p.add_state("sum");
  const int A = body.add_stack_symbol("A"), B = body.add_stack_symbol("B"),
            Z = body.add_stack_symbol("Z");
  p.initial = s;
  p.accepting = {s, a, b, z};
  p.edges = {{s, A, a}, {a, A, a}, {s, B, b}, {b, B, b}, {s, Z, z}};
  return p;
}

}  // namespace

ConstructionReport build_h2_machine() {
  Npda m;
  m.alphabet = houghton::houghton_alphabet(2);
  m.end_marker = true;
  for (const char* s : {"I", "+", "-", "drop", "qA"}) m.add_state(s);
  for (const char* s : {"A", "B", "C", "D", "Z", "P", "N"}) m.add_stack_symbol(s);
  m.initial = m.state("I");
  m.accept("qA");

  // Point branch. A^k on top: the test point sits at k > 0, B^k: at -k,
  // neither: at 0. C / D below count the moves tau made on it.
  for (const char* x : {"A", "C", "D", "#"}) m.add("I", "t", x, "I", {"A", x});
  m.add("I", "t", "B", "I", {});
  m.add("I", "t^-1", "A", "I", {});
  for (const char* x : {"B", "C", "D", "#"}) m.add("I", "t^-1", x, "I", {"B", x});
  for (const char* tau : {"tau", "tau^-1"}) {
    m.add("I", tau, "A", "+", {});
    m.add("I", tau, "B", "I", {"B"});
    m.add("I", tau, "C", "-", {"C", "C"});
    m.add("I", tau, "#", "-", {"C", "#"});
    m.add("I", tau, "D", "-", {});
  }
  m.add("+", "eps", "A", "I", {"A", "A"});
  m.add("+", "eps", "C", "I", {});
  m.add("+", "eps", "D", "I", {"D", "D"});
  m.add("+", "eps", "#", "I", {"D", "#"});
  for (const char* x : {"A", "B", "C", "D", "#"}) m.add("-", "eps", x, "I", {"A", x});
  for (const char* x : {"A", "B"}) m.add("I", "$", x, "drop", {});
  for (const char* x : {"C", "D"}) m.add("I", "$", x, "qA", {x});
  for (const char* x : {"A", "B"}) m.add("drop", "eps", x, "drop", {});
  for (const char* x : {"C", "D"}) m.add("drop", "eps", x, "qA", {x});

  // Exponent-sum branch: P^k or N^k above Z.
  m.add("I", "t", "Z", "I", {"P", "Z"});
  m.add("I", "t", "P", "I", {"P", "P"});
  m.add("I", "t", "N", "I", {});
  m.add("I", "t^-1", "Z", "I", {"N", "Z"});
  m.add("I", "t^-1", "N", "I", {"N", "N"});
  m.add("I", "t^-1", "P", "I", {});
  for (const char* tau : {"tau", "tau^-1"})
    for (const char* x : {"Z", "P", "N"}) m.add("I", tau, x, "I", {x});
  for (const char* x : {"P", "N"}) m.add("I", "$", x, "qA", {x});

  ConstructionReport r;
  r.group = "H_2";
  r.machine_class = MachineClass::SemiDeterministic;
  r.alphabet = m.alphabet;
  SemiDetPda sd;
  sd.preamble = h2_preamble(m);
  sd.body = std::move(m);
  sd.bound = {1, 1};
  r.machine = std::move(sd);
  r.preamble_bound = "|w| + 1";
  r.facts = {"t = (i -> i+1), tau = (0 <-> 1); i > 0 is the point (i,2), -i the point (i,1)"};
  r.notes = {
      "row 4 (t, top in Sigma\\{A}) read as t^-1 with top in {B, C, D, #}",
      "symbol Omega in row 'I tau C,Omega' read as the bottom marker #",
      "state - pushes A on top of the C or D just written (the point moves to 1)",
      "after $ the A/B part is removed by an epsilon loop in a separate state 'drop'",
      "branch choice (tag Z for the exponent sum) is part of the preamble"};
  return r;
}

ConstructionReport build_hou_free_machine(int rank) {
  if (rank < 1) throw InvalidRank(rank);
  Npda m;
  m.alphabet = hou_free::hou_free_alphabet(rank);
  m.end_marker = true;
  for (const char* s : {"I", "drop", "acc"}) m.add_state(s);
  m.initial = m.state("I");
  m.accept("acc");

  auto letter = [](const std::string& base, int i, int e) {
    return base + std::to_string(i) + (e < 0 ? "^-1" : "");
  };
  std::vector<std::string> vertex, record, free_part;
  for (int i = 1; i <= rank; ++i) {
    for (int e : {1, -1}) {
      vertex.push_back(letter("x", i, e));
      record.push_back(letter("tau", i, e));
      free_part.push_back(letter("y", i, e));
    }
  }
  for (const auto& v : vertex) m.add_stack_symbol(v);
  for (const auto& v : record) m.add_stack_symbol(v);
  m.add_stack_symbol("F");
  for (const auto& v : free_part) m.add_stack_symbol(v);

  std::vector<std::string> below = record;  // what may lie under the vertex
  below.push_back("#");

  // The vertex v is kept as a reduced word, first letter on top; under it a
  // reduced word d over tau records the sigma moves, last letter on top.
  // At the end the point is v d, so it moved iff d is nonempty.
  for (int i = 1; i <= rank; ++i) {
    for (int e : {1, -1}) {
      const std::string in = letter("x", i, e);
      const std::string same = letter("x", i, e), undo = letter("x", i, -e);
      for (const auto& v : vertex) {
        if (v == undo) {
          m.add("I", in, v, "I", {});
        } else {
          m.add("I", in, v, "I", {same, v});
        }
      }
      for (const auto& x : below) m.add("I", in, x, "I", {same, x});
      const std::string ysame = letter("y", i, e), yundo = letter("y", i, -e);
      for (const auto& y : free_part) {
        if (y == yundo) {
          m.add("I", in, y, "I", {});
        } else {
          m.add("I", in, y, "I", {ysame, y});
        }
      }
      m.add("I", in, "F", "I", {ysame, "F"});
    }
  }
  for (int i = 1; i <= rank; ++i) {
    const std::string xi = letter("x", i, 1);
    const std::string t = letter("tau", i, 1), t_inv = letter("tau", i, -1);
    const std::string check = "at" + std::to_string(i);
    m.add_state(check);
    for (int e : {1, -1}) {
      const std::string in = letter("sigma", i, e);
      for (const auto& v : vertex) {
        if (v == xi) {
          m.add("I", in, v, check, {});
        } else {
          m.add("I", in, v, "I", {v});
        }
      }
      // v is empty: it becomes x_i and d gets tau_i.
      for (const auto& x : below) {
        if (x == t_inv) {
          m.add("I", in, x, "I", {xi});
        } else {
          m.add("I", in, x, "I", {xi, t, x});
        }
      }
      for (const auto& y : free_part) m.add("I", in, y, "I", {y});
      m.add("I", in, "F", "I", {"F"});
    }
    // x_i was popped; if nothing of v is left, v was x_i and becomes empty.
    for (const auto& v : vertex) m.add(check, "eps", v, "I", {xi, v});
    for (const auto& x : below) {
      if (x == t) {
        m.add(check, "eps", x, "I", {});
      } else {
        m.add(check, "eps", x, "I", {t_inv, x});
      }
    }
  }
  for (const auto& v : vertex) m.add("I", "$", v, "drop", {});
  for (const auto& v : record) m.add("I", "$", v, "acc", {v});
  for (const auto& y : free_part) m.add("I", "$", y, "acc", {y});
  for (const auto& v : vertex) m.add("drop", "eps", v, "drop", {});
  for (const auto& v : record) m.add("drop", "eps", v, "acc", {v});

  // Preamble: a reduced vertex (last letter first) or the tag F alone.
  PreambleAutomaton p;
  p.initial = p.add_state("start");
  p.accepting.push_back(p.initial);
  const int f = p.add_state("free");
  p.accepting.push_back(f);
  p.edges.push_back({p.initial, m.stack_symbol("F"), f});
  std::vector<int> after;
  for (const auto& v : vertex) {
    after.push_back(p.add_state("after:" + v));
    p.accepting.push_back(after.back());
  }
  for (std::size_t a = 0; a < vertex.size(); ++a) {
    p.edges.push_back({p.initial, m.stack_symbol(vertex[a]), after[a]});
    for (std::size_t b = 0; b < vertex.size(); ++b)
      if (b != (a ^ 1u)) p.edges.push_back({after[a], m.stack_symbol(vertex[b]), after[b]});
  }

  ConstructionReport r;
  r.group = "Hou(F_" + std::to_string(rank) + ")";
  r.machine_class = MachineClass::SemiDeterministic;
  r.alphabet = m.alphabet;
  SemiDetPda sd;
  sd.body = std::move(m);
  sd.preamble = std::move(p);
  sd.bound = {1, 1};
  r.machine = std::move(sd);
  r.preamble_bound = "|w| + 1";
  r.facts = {"tag F selects the free-group branch; otherwise the preamble is the test vertex"};
  return r;
}

ConstructionReport build_hn_fixpoint_ocl(int n) {
  if (n < 3) throw InvalidRayCount(n);
  Npda m;
  m.alphabet = houghton::houghton_alphabet(n);
  m.add_state("0");
  auto ray = [n](int l) { return "r" + std::to_string((l - 1 + n) % n + 1); };
  for (int l = 1; l <= n; ++l) m.accept(ray(l));
  m.add_stack_symbol("Z");
  m.initial = m.state("0");

  // The point (k, l) is state r<l> with k - 1 counters.
  for (int i = 1; i <= n; ++i) {
    const std::string s = "s" + std::to_string(i), s_inv = s + "^-1";
    const std::string down = ray(i), up = ray(i + 1);
    m.add("0", s, "#", up, {"#"});
    m.add("0", s_inv, "#", down, {"#"});
    for (const char* x : {"Z", "#"}) {
      m.add(up, s, x, up, {"Z", x});
      m.add(down, s_inv, x, down, {"Z", x});
    }
    m.add(down, s, "Z", down, {});
    m.add(down, s, "#", "0", {"#"});
    m.add(up, s_inv, "Z", up, {});
    m.add(up, s_inv, "#", "0", {"#"});
    for (int l = 1; l <= n; ++l) {
      if (ray(l) == down || ray(l) == up) continue;
      for (const char* x : {"Z", "#"}) {
        m.add(ray(l), s, x, ray(l), {x});
        m.add(ray(l), s_inv, x, ray(l), {x});
      }
    }
  }

  ConstructionReport r;
  r.group = "H_" + std::to_string(n);
  r.machine_class = MachineClass::OneCounter;
  r.alphabet = m.alphabet;
  r.machine = std::move(m);
  r.facts = {"accepts w iff w(0) != 0"};
  return r;
}

ConstructionReport build_hn_coword(int n) {
  const auto base = build_hn_fixpoint_ocl(n);
  ConstructionReport r;
  r.group = base.group;
  r.machine_class = MachineClass::Grammar;
  r.alphabet = base.alphabet;
  Cfg g = automata::cyclic_closure(automata::npda_to_cfg(base.npda()));
  r.facts = {"cyclic closure of the one-counter language { w : w(0) != 0 }",
             std::to_string(g.nonterminals.size()) + " nonterminals, " +
                 std::to_string(g.productions.size()) + " productions"};
  r.machine = std::move(g);
  return r;
}

namespace {

std::string prefix_name(int root, const std::vector<int>& tail) {
  return higman::format_prefix({root, tail});
}

}  // namespace

ConstructionReport build_gnr_fixset_machine(const higman::GeneratorTable& table) {
  using higman::PrefixMap;
  if (table.generators.empty() || table.generators.size() != table.alphabet.size())
    throw InvalidGenerators("generator table is empty or inconsistent");
  const int n = table.n, r = table.r;
  const int k = higman::symmetric_k(table);
  const std::size_t tk = static_cast<std::size_t>(k);

  Npda m;
  m.alphabet = table.alphabet;
  m.end_marker = true;
  m.initial = m.add_state("start");
  m.accept("acc");
  std::vector<std::string> tails;  // s1..sn
  for (int j = 1; j <= n; ++j) {
    tails.push_back("s" + std::to_string(j));
    m.add_stack_symbol(tails.back());
  }

  // Heads q u with |u| <= k, in order of length.
  std::vector<std::pair<int, std::vector<int>>> heads, full;
  for (int q = 1; q <= r; ++q) heads.push_back({q, {}});
  for (std::size_t at = 0; at < heads.size(); ++at) {
    if (heads[at].second.size() == tk) {
      full.push_back(heads[at]);
      continue;
    }
    for (int j = 1; j <= n; ++j) {
      auto next = heads[at];
      next.second.push_back(j);
      heads.push_back(std::move(next));
    }
  }
  std::vector<std::string> markers;
  for (const auto& [q, u] : full) {
    markers.push_back("M:" + prefix_name(q, u));
    m.add_stack_symbol(markers.back());
  }
  std::vector<std::string> below = tails;  // anything that may sit under the buffer
  below.insert(below.end(), markers.begin(), markers.end());

  // Guess omega = q u s1 s1 ... in M and a number of s1 put under it; the
  // marker stands for the rest of the sequence, which is never inspected.
  for (std::size_t w = 0; w < full.size(); ++w) {
    const auto& [q, u] = full[w];
    const std::string load = "load:" + prefix_name(q, u), buf = "buf:" + prefix_name(q, u);
    m.add("start", "eps", "#", load, {markers[w], "#"});
    for (const auto& x : {markers[w], tails[0]}) {
      m.add(load, "eps", x, load, {tails[0], x});
      m.add(load, "eps", x, buf, {x});
    }
  }

  // The first k tail symbols live in the state (buffer); the rest is on
  // the stack, top first.
  std::vector<PrefixMap> maps;
  std::vector<std::string> letters;
  for (std::size_t g = 0; g < table.generators.size(); ++g) {
    maps.push_back(table.generators[g]);
    letters.push_back(table.alphabet.name(g));
    maps.push_back(higman::inverse(table.generators[g]));
    letters.push_back(table.alphabet.name(g) + "^-1");
  }
  for (const auto& [q, u] : heads) {
    const std::string buf = "buf:" + prefix_name(q, u);
    if (u.size() < tk) {
      // Refill from the stack; reaching the marker rejects.
      for (int j = 1; j <= n; ++j) {
        auto longer = u;
        longer.push_back(j);
        m.add(buf, "eps", tails[static_cast<std::size_t>(j - 1)], "buf:" + prefix_name(q, longer), {});
      }
      continue;
    }
    for (std::size_t l = 0; l < maps.size(); ++l) {
      const higman::PrefixString here{q, u};
      const higman::PrefixString* dom = nullptr;
      const higman::PrefixString* img = nullptr;
      for (const auto& [d, i] : maps[l].pairs())
        if (d.is_prefix_of(here)) dom = &d, img = &i;
      if (!dom) throw InvalidGenerators("domain barrier deeper than k");
      std::vector<int> seq = img->tail;
      seq.insert(seq.end(), u.begin() + static_cast<std::ptrdiff_t>(dom->depth()), u.end());
      std::vector<int> kept(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(std::min(tk, seq.size())));
      const std::string to = "buf:" + prefix_name(img->root, kept);
      for (const auto& x : below) {
        std::vector<std::string> push;
        for (std::size_t i = kept.size(); i < seq.size(); ++i)
          push.push_back(tails[static_cast<std::size_t>(seq[i] - 1)]);
        push.push_back(x);
        m.add(buf, letters[l], x, to, push);
      }
    }
    // After the input: accept iff the sequence differs from omega.
    const std::string chk = "chk:" + prefix_name(q, u);
    for (const auto& x : below) m.add(buf, "$", x, chk, {x});
    m.add(chk, "eps", tails[0], chk, {});
    for (std::size_t j = 1; j < tails.size(); ++j) m.add(chk, "eps", tails[j], "acc", {tails[j]});
    for (std::size_t w = 0; w < full.size(); ++w)
      if (full[w] != std::make_pair(q, u)) m.add(chk, "eps", markers[w], "acc", {markers[w]});
  }

  ConstructionReport rep;
  rep.group = "G_{" + std::to_string(n) + "," + std::to_string(r) + "}";
  rep.machine_class = MachineClass::Npda;
  rep.alphabet = table.alphabet;
  rep.machine = std::move(m);
  rep.preamble_bound = "l <= " + std::to_string(k) + "|w| + " + std::to_string(k);
  rep.facts = {"k = " + std::to_string(k),
               "|M| = r n^k = " + std::to_string(full.size())};
  rep.notes = {
      "accepts when the final sequence differs from the guessed omega (words not fixing M)",
      "the bottom of omega's tail is a marker M:<q.u> naming omega; seeing it while refilling rejects",
      "the top k letters of the sequence are kept in the state instead of on the stack"};
  return rep;
}

ConstructionReport build_gnr_coword(const higman::GeneratorTable& table) {
  const auto base = build_gnr_fixset_machine(table);
  ConstructionReport r;
  r.group = base.group;
  r.machine_class = MachineClass::Grammar;
  r.alphabet = base.alphabet;
  Cfg g = automata::cyclic_closure(automata::npda_to_cfg(base.npda()));
  r.facts = base.facts;
  r.facts.push_back("cyclic closure of the fix-set language");
  r.facts.push_back(std::to_string(g.nonterminals.size()) + " nonterminals, " +
                    std::to_string(g.productions.size()) + " productions");
  r.machine = std::move(g);
  return r;
}

bool gnr_fixset_predicate(const GroupWord& word, const higman::GeneratorTable& table) {
  const auto e = higman::word_to_element(word, table);
  for (const auto& s : higman::enumerate_M(table.n, table.r, higman::symmetric_k(table)))
    if (higman::apply_to_sequence(e, s) != s) return true;
  return false;
}

}  // namespace cocf
