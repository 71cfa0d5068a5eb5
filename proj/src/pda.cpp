#include "cocf/pda.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cocf/error.hpp"

namespace cocf::automata {
namespace {

bool valid_name(std::string_view s) {
  if (s.empty() || s == "eps" || s == "->") return false;
  return std::none_of(s.begin(), s.end(),
                      [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

int index_of(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

std::string fresh_name(std::set<std::string>& taken, const std::string& base) {
  std::string name = base;
  for (int i = 1; taken.count(name); ++i) name = base + "'" + std::to_string(i);
  taken.insert(name);
  return name;
}

// Transitions grouped by (state, top).
class TransitionIndex {
 public:
  TransitionIndex(std::size_t states, std::size_t symbols,
                  const std::vector<PdaTransition>& transitions)
      : symbols_(symbols), groups_(states * symbols) {
    for (std::size_t t = 0; t < transitions.size(); ++t) {
      const auto& tr = transitions[t];
      groups_[static_cast<std::size_t>(tr.from) * symbols_ + static_cast<std::size_t>(tr.top)]
          .push_back(static_cast<int>(t));
    }
  }
  const std::vector<int>& at(int state, int top) const {
    return groups_[static_cast<std::size_t>(state) * symbols_ + static_cast<std::size_t>(top)];
  }

 private:
  std::size_t symbols_;
  std::vector<std::vector<int>> groups_;
};

// The machine plus a drain state: any accepting state may start popping
// the whole stack, turning final-state acceptance into empty-stack
// acceptance in the drain state.
struct Drained {
  std::size_t states = 0;
  std::size_t symbols = 0;
  int drain = 0;
  std::vector<PdaTransition> transitions;
};

Drained with_drain(const Npda& m) {
  Drained d;
  d.states = m.states.size() + 1;
  d.symbols = m.stack_symbols.size();
  d.drain = static_cast<int>(m.states.size());
  d.transitions = m.transitions;
  for (int x = 0; x < static_cast<int>(d.symbols); ++x) {
    for (int p : m.accepting) d.transitions.push_back({p, kEps, x, d.drain, {}});
    d.transitions.push_back({d.drain, kEps, x, d.drain, {}});
  }
  return d;
}

void require_valid(const Npda& m) {
  auto problems = npda_problems(m);
  if (!problems.empty()) throw Error("invalid machine: " + problems.front());
}

}  // namespace

bool Npda::is_accepting(int state) const {
  return std::find(accepting.begin(), accepting.end(), state) != accepting.end();
}

int Npda::add_state(const std::string& name) {
  if (int i = index_of(states, name); i >= 0) return i;
  if (!valid_name(name)) throw Error("invalid state name '" + name + "'");
  states.push_back(name);
  return static_cast<int>(states.size() - 1);
}

int Npda::add_stack_symbol(const std::string& name) {
  if (int i = index_of(stack_symbols, name); i >= 0) return i;
  if (!valid_name(name)) throw Error("invalid stack symbol '" + name + "'");
  stack_symbols.push_back(name);
  return static_cast<int>(stack_symbols.size() - 1);
}

int Npda::state(std::string_view name) const {
  int i = index_of(states, name);
  if (i < 0) throw Error("unknown state '" + std::string(name) + "'");
  return i;
}

int Npda::stack_symbol(std::string_view name) const {
  int i = index_of(stack_symbols, name);
  if (i < 0) throw Error("unknown stack symbol '" + std::string(name) + "'");
  return i;
}

int Npda::input(std::string_view name) const {
  if (name == "eps") return kEps;
  if (name == "$") {
    if (!end_marker) throw UnknownLetter("$ (machine has no end marker)");
    return marker();
  }
  GroupWord w;
  try {
    w = parse_word(name, alphabet);
  } catch (const Error&) {
    throw UnknownLetter("'" + std::string(name) + "'");
  }
  if (w.size() != 1) throw UnknownLetter("'" + std::string(name) + "'");
  return static_cast<int>(2 * w[0].generator) + (w[0].exponent < 0 ? 1 : 0);
}

std::string Npda::input_name(int id) const {
  if (id == kEps) return "eps";
  if (end_marker && id == marker()) return "$";
  if (id < 0 || id >= marker()) throw UnknownLetter(std::to_string(id));
  return format_letter({static_cast<std::size_t>(id / 2), id % 2 ? -1 : 1}, alphabet);
}

void Npda::add(const std::string& from, std::string_view in, const std::string& top,
               const std::string& to, const std::vector<std::string>& push) {
  PdaTransition t;
  t.from = add_state(from);
  t.input = input(in);
  t.top = add_stack_symbol(top);
  t.to = add_state(to);
  for (const auto& s : push) t.push.push_back(add_stack_symbol(s));
  transitions.push_back(std::move(t));
}

void Npda::accept(const std::string& name) {
  int s = add_state(name);
  if (!is_accepting(s)) accepting.push_back(s);
}

std::vector<std::string> npda_problems(const Npda& m) {
  std::vector<std::string> out;
  const int q = static_cast<int>(m.states.size());
  const int g = static_cast<int>(m.stack_symbols.size());
  std::set<std::string> seen;
  for (const auto& s : m.states) {
    if (!valid_name(s)) out.push_back("bad state name '" + s + "'");
    if (!seen.insert(s).second) out.push_back("duplicate state '" + s + "'");
  }
  seen.clear();
  for (const auto& s : m.stack_symbols) {
    if (!valid_name(s)) out.push_back("bad stack symbol '" + s + "'");
    if (!seen.insert(s).second) out.push_back("duplicate stack symbol '" + s + "'");
  }
  if (m.stack_symbols.empty() || m.stack_symbols[0] != "#")
    out.push_back("stack symbol 0 must be '#'");
  if (m.initial < 0 || m.initial >= q) out.push_back("initial state undeclared");
  for (int a : m.accepting)
    if (a < 0 || a >= q) out.push_back("accepting state undeclared");
  const int inputs = static_cast<int>(m.input_count());
  for (const auto& t : m.transitions) {
    if (t.from < 0 || t.from >= q || t.to < 0 || t.to >= q) {
      out.push_back("transition uses an undeclared state");
      continue;
    }
    const std::string where = "transition from " + m.states[static_cast<std::size_t>(t.from)];
    if (t.input != kEps && (t.input < 0 || t.input >= inputs))
      out.push_back(where + " reads an undeclared letter");
    if (t.top < 0 || t.top >= g) {
      out.push_back(where + " reads an undeclared stack symbol");
      continue;
    }
    if (std::any_of(t.push.begin(), t.push.end(), [&](int s) { return s < 0 || s >= g; })) {
      out.push_back(where + " pushes an undeclared stack symbol");
      continue;
    }
    const auto bottoms = std::count(t.push.begin(), t.push.end(), 0);
    if (t.top == 0 ? (bottoms != 1 || t.push.back() != 0) : bottoms != 0)
      out.push_back(where + " breaks the bottom marker discipline");
  }
  return out;
}

std::vector<int> input_ids(const Npda& m, const GroupWord& word) {
  std::vector<int> ids;
  ids.reserve(word.size() + 1);
  for (const auto& l : word) {
    if (l.generator >= m.alphabet.size())
      throw UnknownLetter("generator #" + std::to_string(l.generator));
    ids.push_back(static_cast<int>(2 * l.generator) + (l.exponent < 0 ? 1 : 0));
  }
  if (m.end_marker) ids.push_back(m.marker());
  return ids;
}

bool is_one_counter(const Npda& m) { return m.stack_symbols.size() == 2; }

OneCounter::OneCounter(Npda m) : machine_(std::move(m)) {
  require_valid(machine_);
  if (!is_one_counter(machine_)) throw Error("not a one-counter machine");
}

Cfg npda_to_cfg(const Npda& m) {
  require_valid(m);
  Drained d = with_drain(m);
  std::vector<std::string> names = m.states;
  names.push_back("drain");

  // Pushes longer than two symbols are fed in through auxiliary states
  // that push one symbol at a time.
  std::vector<PdaTransition> ts;
  std::map<std::pair<int, std::vector<int>>, int> aux;
  auto aux_state = [&](auto&& self, int target, std::vector<int> rest) -> int {
    if (rest.empty()) return target;
    auto key = std::make_pair(target, rest);
    if (auto it = aux.find(key); it != aux.end()) return it->second;
    const int id = static_cast<int>(names.size());
    names.push_back("aux" + std::to_string(aux.size()));
    aux.emplace(key, id);
    const int y = rest.back();
    rest.pop_back();
    const int next = self(self, target, rest);
    for (int z = 0; z < static_cast<int>(d.symbols); ++z) ts.push_back({id, kEps, z, next, {y, z}});
    return id;
  };
  for (const auto& t : d.transitions) {
    if (t.push.size() <= 2) {
      ts.push_back(t);
      continue;
    }
    std::vector<int> rest(t.push.begin(), t.push.end() - 2);
    const int via = aux_state(aux_state, t.to, rest);
    ts.push_back({t.from, t.input, t.top, via, {t.push[t.push.size() - 2], t.push.back()}});
  }

  // Realizable triples (p, X, q): from p with X on top, some run pops X
  // and ends in q.
  const std::size_t nq = names.size(), ns = d.symbols;
  auto tid = [&](int p, int x, int q) {
    return (static_cast<std::size_t>(p) * ns + static_cast<std::size_t>(x)) * nq +
           static_cast<std::size_t>(q);
  };
  std::vector<char> real(nq * ns * nq, 0);
  std::vector<std::vector<int>> ends(nq * ns);  // (p, X) -> realized q
  std::vector<std::vector<int>> by_first(nq * ns), by_second(ns);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    if (!t.push.empty())
      by_first[static_cast<std::size_t>(t.to) * ns + static_cast<std::size_t>(t.push[0])]
          .push_back(static_cast<int>(i));
    if (t.push.size() == 2) by_second[static_cast<std::size_t>(t.push[1])].push_back(static_cast<int>(i));
  }
  std::vector<std::array<int, 3>> work;
  auto add = [&](int p, int x, int q) {
    auto& r = real[tid(p, x, q)];
    if (r) return;
    r = 1;
    ends[static_cast<std::size_t>(p) * ns + static_cast<std::size_t>(x)].push_back(q);
    work.push_back({p, x, q});
  };
  for (const auto& t : ts)
    if (t.push.empty()) add(t.from, t.top, t.to);
  while (!work.empty()) {
    const auto [a, y, b] = work.back();
    work.pop_back();
    for (int i : by_first[static_cast<std::size_t>(a) * ns + static_cast<std::size_t>(y)]) {
      const auto& t = ts[static_cast<std::size_t>(i)];
      if (t.push.size() == 1) {
        add(t.from, t.top, b);
      } else {
        const auto list = ends[static_cast<std::size_t>(b) * ns + static_cast<std::size_t>(t.push[1])];
        for (int q : list) add(t.from, t.top, q);
      }
    }
    for (int i : by_second[static_cast<std::size_t>(y)]) {
      const auto& t = ts[static_cast<std::size_t>(i)];
      if (real[tid(t.to, t.push[0], a)]) add(t.from, t.top, b);
    }
  }

  Cfg g;
  for (int id = 0; id < static_cast<int>(m.input_count()); ++id) g.terminals.push_back(m.input_name(id));
  std::set<std::string> taken(g.terminals.begin(), g.terminals.end());
  std::unordered_map<std::size_t, int> nt;
  auto symbol = [&](int p, int x, int q) {
    auto [it, fresh] = nt.emplace(tid(p, x, q), 0);
    if (fresh) {
      it->second = static_cast<int>(g.nonterminals.size());
      g.nonterminals.push_back(fresh_name(
          taken, "[" + names[static_cast<std::size_t>(p)] + "," +
                     m.stack_symbols[static_cast<std::size_t>(x)] + "," +
                     names[static_cast<std::size_t>(q)] + "]"));
    }
    return GrammarSymbol{false, it->second};
  };
  g.start = symbol(m.initial, 0, d.drain).id;
  for (const auto& t : ts) {
    std::vector<GrammarSymbol> head;
    if (t.input != kEps) head.push_back({true, t.input});
    auto emit = [&](int q, std::vector<GrammarSymbol> tail) {
      Production p{symbol(t.from, t.top, q).id, head};
      p.rhs.insert(p.rhs.end(), tail.begin(), tail.end());
      g.productions.push_back(std::move(p));
    };
    if (t.push.empty()) {
      emit(t.to, {});
    } else if (t.push.size() == 1) {
      for (int q : ends[static_cast<std::size_t>(t.to) * ns + static_cast<std::size_t>(t.push[0])])
        emit(q, {symbol(t.to, t.push[0], q)});
    } else {
      for (int s : ends[static_cast<std::size_t>(t.to) * ns + static_cast<std::size_t>(t.push[0])])
        for (int q : ends[static_cast<std::size_t>(s) * ns + static_cast<std::size_t>(t.push[1])])
          emit(q, {symbol(t.to, t.push[0], s), symbol(s, t.push[1], q)});
    }
  }
  g = trim(g);
  if (m.end_marker) g = right_quotient(g, "$");
  return g;
}

NpdaRecognizer::NpdaRecognizer(const Npda& m)
    : machine_(m),
      grammar_(npda_to_cfg(m)),
      recognizer_(std::make_shared<const CfgRecognizer>(grammar_)) {}

bool NpdaRecognizer::accepts(const GroupWord& word) const {
  auto ids = input_ids(machine_, word);
  if (machine_.end_marker) ids.pop_back();
  return recognizer_->accepts(ids);
}

bool npda_accepts(const Npda& m, const GroupWord& word) { return NpdaRecognizer(m).accepts(word); }

std::size_t default_stack_bound(std::size_t word_length) { return 3 * word_length + 10; }

namespace {

// Summaries: from state p with X on top at input position i, a run pops X
// (never touching what lies below) and ends in state q at position j; its
// peak height above the level below X is h. Items are settled in order of
// height, so each summary is first found with its minimal peak.
class BoundedSearch {
 public:
  BoundedSearch(const Npda& m, std::vector<int> input, std::size_t bound)
      : d_(with_drain(m)),
        index_(d_.states, d_.symbols, d_.transitions),
        in_(std::move(input)),
        n_(in_.size()),
        bound_(bound),
        buckets_(bound + 1),
        waiting_(d_.states * d_.symbols * (n_ + 1)),
        results_(waiting_.size()),
        requested_(waiting_.size(), 0),
        initial_(m.initial) {}

  bool run() {
    if (bound_ < 1) return false;
    const std::size_t goal = key(initial_, 0, 0);
    request(goal);
    // A late request can post below the current height, so `current_`
    // moves down again; items always leave in order of height.
    while (current_ <= bound_) {
      auto& bucket = buckets_[current_];
      if (bucket.empty()) {
        ++current_;
        continue;
      }
      const std::size_t h = current_;
      const Item it = bucket.back();
      bucket.pop_back();
      if (it.partial) {
        settle_partial(it, h);
      } else if (settle_result(it, h) && it.parent == goal && it.state == d_.drain &&
                 it.pos == n_) {
        return true;
      }
    }
    return false;
  }

 private:
  struct Item {
    bool partial = false;
    std::size_t parent = 0;  // summary key being built (or found)
    int trans = 0;           // partial: the transition that started it
    std::size_t done = 0;    // partial: pushed symbols already popped
    int state = 0;
    std::size_t pos = 0;
  };
  struct Result {
    int state;
    std::size_t pos;
    std::size_t height;
  };

  std::size_t key(int p, int x, std::size_t i) const {
    return (static_cast<std::size_t>(p) * d_.symbols + static_cast<std::size_t>(x)) * (n_ + 1) + i;
  }
  void post(const Item& it, std::size_t h) {
    if (h > bound_) return;
    buckets_[h].push_back(it);
    current_ = std::min(current_, h);
  }

  void request(std::size_t k) {
    if (requested_[k]) return;
    requested_[k] = 1;
    const std::size_t i = k % (n_ + 1);
    const std::size_t px = k / (n_ + 1);
    const int x = static_cast<int>(px % d_.symbols);
    const int p = static_cast<int>(px / d_.symbols);
    for (int t : index_.at(p, x)) {
      const auto& tr = d_.transitions[static_cast<std::size_t>(t)];
      std::size_t j = i;
      if (tr.input != kEps) {
        if (i >= n_ || in_[i] != tr.input) continue;
        j = i + 1;
      }
      if (tr.push.empty()) {
        post({false, k, 0, 0, tr.to, j}, 1);
      } else {
        post({true, k, t, 0, tr.to, j}, tr.push.size());
      }
    }
  }

  bool settle_result(const Item& it, std::size_t h) {
    const auto id = (it.parent * d_.states + static_cast<std::size_t>(it.state)) * (n_ + 1) + it.pos;
    if (!settled_results_.insert(id).second) return false;
    results_[it.parent].push_back({it.state, it.pos, h});
    for (std::size_t w : waiting_[it.parent]) advance(partials_[w], it.state, it.pos, h);
    return true;
  }

  void settle_partial(const Item& it, std::size_t h) {
    const auto& tr = d_.transitions[static_cast<std::size_t>(it.trans)];
    if (!settled_partials_.insert(PartialKey{it.parent, it.trans, it.done, it.state, it.pos}).second)
      return;
    if (it.done == tr.push.size()) {
      post({false, it.parent, 0, 0, it.state, it.pos}, h);
      return;
    }
    partials_.push_back({it, h});
    const std::size_t sub = key(it.state, tr.push[it.done], it.pos);
    waiting_[sub].push_back(partials_.size() - 1);
    request(sub);
    const auto existing = results_[sub];
    for (const auto& r : existing) advance(partials_.back(), r.state, r.pos, r.height);
  }

  struct Partial {
    Item item;
    std::size_t height;
  };
  void advance(const Partial& p, int state, std::size_t pos, std::size_t h) {
    const auto& tr = d_.transitions[static_cast<std::size_t>(p.item.trans)];
    const std::size_t depth = tr.push.size() - 1 - p.item.done;
    Item next = p.item;
    next.done += 1;
    next.state = state;
    next.pos = pos;
    post(next, std::max(p.height, depth + h));
  }

  struct PartialKey {
    std::size_t parent;
    int trans;
    std::size_t done;
    int state;
    std::size_t pos;
    bool operator==(const PartialKey&) const = default;
  };
  struct PartialHash {
    std::size_t operator()(const PartialKey& k) const noexcept {
      std::size_t h = k.parent;
      h = h * 1000003u ^ static_cast<std::size_t>(k.trans);
      h = h * 1000003u ^ k.done;
      h = h * 1000003u ^ static_cast<std::size_t>(k.state);
      h = h * 1000003u ^ k.pos;
      return h;
    }
  };

  Drained d_;
  TransitionIndex index_;
  std::vector<int> in_;
  std::size_t n_;
  std::size_t bound_;
  std::vector<std::vector<Item>> buckets_;
  std::size_t current_ = 1;
  std::vector<std::vector<std::size_t>> waiting_;
  std::vector<std::vector<Result>> results_;
  std::vector<char> requested_;
  std::deque<Partial> partials_;
  std::unordered_set<std::size_t> settled_results_;
  std::unordered_set<PartialKey, PartialHash> settled_partials_;
  int initial_;
};

}  // namespace

bool bounded_accepts(const Npda& m, const GroupWord& word, std::size_t bound) {
  require_valid(m);
  return BoundedSearch(m, input_ids(m, word), bound).run();
}

std::optional<std::vector<Configuration>> find_run(const Npda& m, const GroupWord& word,
                                                   std::size_t bound, std::size_t budget) {
  require_valid(m);
  const auto in = input_ids(m, word);
  const TransitionIndex index(m.states.size(), m.stack_symbols.size(), m.transitions);
  std::size_t seen_total = 0;
  for (std::size_t b = 1; b <= bound; ++b) {
    std::vector<Configuration> nodes{{m.initial, 0, {0}}};
    std::vector<std::size_t> parent{0};
    std::set<std::tuple<int, std::size_t, std::vector<int>>> seen{
        {m.initial, 0, nodes[0].stack}};
    bool clipped = false;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (++seen_total > budget) return std::nullopt;
      const Configuration c = nodes[k];
      if (c.position == in.size() && m.is_accepting(c.state)) {
        std::vector<Configuration> path;
        for (std::size_t at = k;; at = parent[at]) {
          path.push_back(nodes[at]);
          if (at == 0) break;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (c.stack.empty()) continue;
      for (int t : index.at(c.state, c.stack.back())) {
        const auto& tr = m.transitions[static_cast<std::size_t>(t)];
        Configuration next = c;
        if (tr.input != kEps) {
          if (c.position >= in.size() || in[c.position] != tr.input) continue;
          ++next.position;
        }
        next.state = tr.to;
        next.stack.pop_back();
        next.stack.insert(next.stack.end(), tr.push.rbegin(), tr.push.rend());
        if (next.stack.size() > b) {
          clipped = true;
          continue;
        }
        if (!seen.emplace(next.state, next.position, next.stack).second) continue;
        nodes.push_back(std::move(next));
        parent.push_back(k);
      }
    }
    if (!clipped) return std::nullopt;
  }
  return std::nullopt;
}

std::string format_configuration(const Npda& m, const Configuration& c) {
  std::string s = m.states.at(static_cast<std::size_t>(c.state)) + " @" +
                  std::to_string(c.position) + " [";
  for (auto it = c.stack.rbegin(); it != c.stack.rend(); ++it) {
    if (it != c.stack.rbegin()) s += ' ';
    s += m.stack_symbols.at(static_cast<std::size_t>(*it));
  }
  return s + "]";
}

namespace {

using Lines = std::vector<std::pair<int, std::vector<std::string>>>;

Lines tokenize(std::string_view text) {
  Lines lines;
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    lines.emplace_back(no, std::move(tok));
  }
  return lines;
}

void write_npda_body(std::ostream& out, const Npda& m) {
  out << "npda\nalphabet";
  for (const auto& n : m.alphabet.names()) out << ' ' << n;
  out << "\n";
  if (m.end_marker) out << "endmarker\n";
  out << "stack";
  for (const auto& s : m.stack_symbols) out << ' ' << s;
  out << "\nstate";
  for (const auto& s : m.states) out << ' ' << s;
  out << "\ninitial " << m.states.at(static_cast<std::size_t>(m.initial)) << "\naccept";
  for (int a : m.accepting) out << ' ' << m.states.at(static_cast<std::size_t>(a));
  out << "\n";
  for (const auto& t : m.transitions) {
    out << "trans " << m.states[static_cast<std::size_t>(t.from)] << ' ' << m.input_name(t.input)
        << ' ' << m.stack_symbols[static_cast<std::size_t>(t.top)] << " -> "
        << m.states[static_cast<std::size_t>(t.to)];
    if (t.push.empty()) out << " eps";
    for (int s : t.push) out << ' ' << m.stack_symbols[static_cast<std::size_t>(s)];
    out << "\n";
  }
  out << "end\n";
}

// Consumes lines[at..] up to and including the closing `end`.
Npda read_npda(const Lines& lines, std::size_t& at) {
  if (at >= lines.size() || lines[at].second != std::vector<std::string>{"npda"})
    throw ParseError(at < lines.size() ? lines[at].first : 0, "expected 'npda'");
  Npda m;
  m.stack_symbols.clear();
  bool have_initial = false;
  std::vector<std::pair<int, std::vector<std::string>>> trans;
  std::vector<std::string> accept;
  int accept_line = 0, initial_line = 0;
  std::string initial;
  for (++at; at < lines.size(); ++at) {
    const auto& [no, tok] = lines[at];
    const std::string& kw = tok[0];
    if (kw == "end") {
      if (tok.size() != 1) throw ParseError(no, "junk after 'end'");
      break;
    }
    try {
      if (kw == "alphabet") {
        m.alphabet = GeneratorAlphabet({tok.begin() + 1, tok.end()});
      } else if (kw == "endmarker") {
        m.end_marker = true;
      } else if (kw == "stack") {
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (index_of(m.stack_symbols, tok[i]) >= 0) throw Error("duplicate stack symbol");
          m.add_stack_symbol(tok[i]);
        }
      } else if (kw == "state") {
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (index_of(m.states, tok[i]) >= 0) throw Error("duplicate state");
          m.add_state(tok[i]);
        }
      } else if (kw == "initial") {
        if (tok.size() != 2) throw Error("expected 'initial <state>'");
        initial = tok[1];
        initial_line = no;
        have_initial = true;
      } else if (kw == "accept") {
        accept.assign(tok.begin() + 1, tok.end());
        accept_line = no;
      } else if (kw == "trans") {
        trans.emplace_back(no, tok);
      } else {
        throw Error("unknown keyword '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(no, e.what());
    }
  }
  if (at >= lines.size()) throw ParseError(lines.empty() ? 0 : lines.back().first, "missing 'end'");
  const int end_line = lines[at].first;
  ++at;
  if (!have_initial) throw ParseError(end_line, "missing 'initial'");
  try {
    m.initial = m.state(initial);
  } catch (const Error& e) {
    throw ParseError(initial_line, e.what());
  }
  for (const auto& a : accept) {
    try {
      int s = m.state(a);
      if (m.is_accepting(s)) throw Error("state accepted twice");
      m.accepting.push_back(s);
    } catch (const Error& e) {
      throw ParseError(accept_line, e.what());
    }
  }
  for (const auto& [no, tok] : trans) {
    if (tok.size() < 7 || tok[4] != "->") throw ParseError(no, "expected 'trans p letter top -> q push...'");
    try {
      PdaTransition t;
      t.from = m.state(tok[1]);
      t.input = m.input(tok[2]);
      t.top = m.stack_symbol(tok[3]);
      t.to = m.state(tok[5]);
      if (!(tok.size() == 7 && tok[6] == "eps"))
        for (std::size_t i = 6; i < tok.size(); ++i) t.push.push_back(m.stack_symbol(tok[i]));
      m.transitions.push_back(std::move(t));
    } catch (const Error& e) {
      throw ParseError(no, e.what());
    }
  }
  if (auto problems = npda_problems(m); !problems.empty()) throw ParseError(end_line, problems.front());
  return m;
}

}  // namespace

std::string format_npda(const Npda& m) {
  std::ostringstream out;
  write_npda_body(out, m);
  return out.str();
}

Npda parse_npda(std::string_view text) {
  const Lines lines = tokenize(text);
  std::size_t at = 0;
  Npda m = read_npda(lines, at);
  if (at != lines.size()) throw ParseError(lines[at].first, "content after 'end'");
  return m;
}

int PreambleAutomaton::add_state(const std::string& name) {
  if (int i = index_of(states, name); i >= 0) return i;
  if (!valid_name(name)) throw Error("invalid preamble state '" + name + "'");
  states.push_back(name);
  return static_cast<int>(states.size() - 1);
}

std::vector<std::string> semidet_validate(const SemiDetPda& m) {
  std::vector<std::string> out;
  for (const auto& p : npda_problems(m.body)) out.push_back("body: " + p);
  if (!out.empty()) return out;

  const Npda& b = m.body;
  const TransitionIndex index(b.states.size(), b.stack_symbols.size(), b.transitions);
  for (int s = 0; s < static_cast<int>(b.states.size()); ++s) {
    for (int x = 0; x < static_cast<int>(b.stack_symbols.size()); ++x) {
      std::map<int, int> count;
      for (int t : index.at(s, x)) ++count[b.transitions[static_cast<std::size_t>(t)].input];
      const std::string where = "state " + b.states[static_cast<std::size_t>(s)] + ", top " +
                                b.stack_symbols[static_cast<std::size_t>(x)];
      const int eps = count.count(kEps) ? count[kEps] : 0;
      if (eps > 1) out.push_back(where + ": several epsilon moves");
      if (eps > 0 && count.size() > 1) out.push_back(where + ": epsilon and letter moves");
      for (const auto& [in, c] : count)
        if (in != kEps && c > 1) out.push_back(where + ": several moves on " + b.input_name(in));
    }
  }

  const auto& p = m.preamble;
  const int ps = static_cast<int>(p.states.size());
  if (p.initial < 0 || p.initial >= ps) out.push_back("preamble: initial state undeclared");
  for (int a : p.accepting)
    if (a < 0 || a >= ps) out.push_back("preamble: accepting state undeclared");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : p.edges) {
    if (e.from < 0 || e.from >= ps || e.to < 0 || e.to >= ps) {
      out.push_back("preamble: edge uses an undeclared state");
      continue;
    }
    if (e.symbol <= 0 || e.symbol >= static_cast<int>(b.stack_symbols.size())) {
      out.push_back("preamble: edge pushes '#' or an undeclared symbol");
      continue;
    }
    if (!seen.emplace(e.from, e.symbol).second)
      out.push_back("preamble: state " + p.states[static_cast<std::size_t>(e.from)] +
                    " has two edges on " + b.stack_symbols[static_cast<std::size_t>(e.symbol)]);
  }
  return out;
}

Npda semidet_to_npda(const SemiDetPda& m) {
  if (auto v = semidet_validate(m); !v.empty()) throw Error("invalid semi-deterministic machine: " + v.front());
  Npda out = m.body;
  std::set<std::string> taken(out.states.begin(), out.states.end());
  std::vector<int> pre;
  for (const auto& s : m.preamble.states) {
    pre.push_back(static_cast<int>(out.states.size()));
    out.states.push_back(fresh_name(taken, "pre:" + s));
  }
  const int symbols = static_cast<int>(out.stack_symbols.size());
  for (const auto& e : m.preamble.edges)
    for (int x = 0; x < symbols; ++x)
      out.transitions.push_back({pre[static_cast<std::size_t>(e.from)], kEps, x,
                                 pre[static_cast<std::size_t>(e.to)], {e.symbol, x}});
  for (int a : m.preamble.accepting)
    for (int x = 0; x < symbols; ++x)
      out.transitions.push_back({pre[static_cast<std::size_t>(a)], kEps, x, m.body.initial, {x}});
  out.initial = pre[static_cast<std::size_t>(m.preamble.initial)];
  return out;
}

namespace {

bool run_deterministic(const Npda& b, const TransitionIndex& index, std::vector<int> stack,
                       const std::vector<int>& in) {
  constexpr std::size_t kStepLimit = 10'000'000;
  int state = b.initial;
  std::size_t pos = 0;
  for (std::size_t steps = 0; steps < kStepLimit; ++steps) {
    if (pos == in.size() && b.is_accepting(state)) return true;
    if (stack.empty()) return false;
    const PdaTransition* next = nullptr;
    for (int t : index.at(state, stack.back())) {
      const auto& tr = b.transitions[static_cast<std::size_t>(t)];
      if (tr.input == kEps || (pos < in.size() && tr.input == in[pos])) {
        next = &tr;
        break;
      }
    }
    if (!next) return false;
    if (next->input != kEps) ++pos;
    stack.pop_back();
    stack.insert(stack.end(), next->push.rbegin(), next->push.rend());
    state = next->to;
  }
  throw Error("deterministic body did not halt");
}

}  // namespace

bool semidet_accepts_by_preamble(const SemiDetPda& m, const GroupWord& word) {
  if (auto v = semidet_validate(m); !v.empty()) throw Error("invalid semi-deterministic machine: " + v.front());
  const Npda& b = m.body;
  const auto in = input_ids(b, word);
  const TransitionIndex index(b.states.size(), b.stack_symbols.size(), b.transitions);
  const std::size_t limit = m.bound(word.size());
  const auto& p = m.preamble;
  std::vector<std::vector<const PreambleAutomaton::Edge*>> out_edges(p.states.size());
  for (const auto& e : p.edges) out_edges[static_cast<std::size_t>(e.from)].push_back(&e);
  auto accepting = [&](int s) {
    return std::find(p.accepting.begin(), p.accepting.end(), s) != p.accepting.end();
  };

  std::vector<int> stack{0};
  auto search = [&](auto&& self, int state) -> bool {
    if (accepting(state) && run_deterministic(b, index, stack, in)) return true;
    if (stack.size() > limit) return false;
    for (const auto* e : out_edges[static_cast<std::size_t>(state)]) {
      stack.push_back(e->symbol);
      const bool ok = self(self, e->to);
      stack.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return search(search, p.initial);
}

std::string format_semidet(const SemiDetPda& m) {
  std::ostringstream out;
  out << "semidet\nbound " << m.bound.per_letter << ' ' << m.bound.constant << "\n";
  write_npda_body(out, m.body);
  const auto& p = m.preamble;
  out << "preamble\npstate";
  for (const auto& s : p.states) out << ' ' << s;
  out << "\npinitial " << p.states.at(static_cast<std::size_t>(p.initial)) << "\npaccept";
  for (int a : p.accepting) out << ' ' << p.states.at(static_cast<std::size_t>(a));
  out << "\n";
  for (const auto& e : p.edges)
    out << "ptrans " << p.states[static_cast<std::size_t>(e.from)] << ' '
        << m.body.stack_symbols.at(static_cast<std::size_t>(e.symbol)) << " -> "
        << p.states[static_cast<std::size_t>(e.to)] << "\n";
  out << "end\n";
  return out.str();
}

SemiDetPda parse_semidet(std::string_view text) {
  const Lines lines = tokenize(text);
  SemiDetPda m;
  std::size_t at = 0;
  auto expect = [&](const char* kw) {
    if (at >= lines.size() || lines[at].second[0] != kw)
      throw ParseError(at < lines.size() ? lines[at].first : 0, std::string("expected '") + kw + "'");
  };
  expect("semidet");
  if (lines[at].second.size() != 1) throw ParseError(lines[at].first, "junk after 'semidet'");
  ++at;
  expect("bound");
  {
    const auto& [no, tok] = lines[at];
    try {
      if (tok.size() != 3) throw Error("expected 'bound <per-letter> <constant>'");
      m.bound.per_letter = std::stoul(tok[1]);
      m.bound.constant = std::stoul(tok[2]);
    } catch (const std::exception&) {
      throw ParseError(no, "expected 'bound <per-letter> <constant>'");
    }
  }
  ++at;
  m.body = read_npda(lines, at);
  expect("preamble");
  ++at;
  auto& p = m.preamble;
  std::vector<std::pair<int, std::vector<std::string>>> deferred;
  for (; at < lines.size(); ++at) {
    const auto& [no, tok] = lines[at];
    if (tok[0] == "end") break;
    try {
      if (tok[0] == "pstate") {
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (index_of(p.states, tok[i]) >= 0) throw Error("duplicate preamble state");
          p.add_state(tok[i]);
        }
      } else if (tok[0] == "pinitial" || tok[0] == "paccept" || tok[0] == "ptrans") {
        deferred.emplace_back(no, tok);
      } else {
        throw Error("unknown keyword '" + tok[0] + "'");
      }
    } catch (const Error& e) {
      throw ParseError(no, e.what());
    }
  }
  if (at >= lines.size()) throw ParseError(lines.back().first, "missing 'end'");
  const int end_line = lines[at].first;
  if (at + 1 != lines.size()) throw ParseError(lines[at + 1].first, "content after 'end'");
  bool have_initial = false;
  for (const auto& [no, tok] : deferred) {
    auto state = [&, no = no](const std::string& name) {
      int i = index_of(p.states, name);
      if (i < 0) throw ParseError(no, "unknown preamble state '" + name + "'");
      return i;
    };
    if (tok[0] == "pinitial") {
      if (tok.size() != 2) throw ParseError(no, "expected 'pinitial <state>'");
      p.initial = state(tok[1]);
      have_initial = true;
    } else if (tok[0] == "paccept") {
      for (std::size_t i = 1; i < tok.size(); ++i) p.accepting.push_back(state(tok[i]));
    } else {
      if (tok.size() != 5 || tok[3] != "->") throw ParseError(no, "expected 'ptrans p symbol -> q'");
      int sym = index_of(m.body.stack_symbols, tok[2]);
      if (sym < 0) throw ParseError(no, "unknown stack symbol '" + tok[2] + "'");
      p.edges.push_back({state(tok[1]), sym, state(tok[4])});
    }
  }
  if (!have_initial) throw ParseError(end_line, "missing 'pinitial'");
  if (auto v = semidet_validate(m); !v.empty()) throw ParseError(end_line, v.front());
  return m;
}

}  // namespace cocf::automata
