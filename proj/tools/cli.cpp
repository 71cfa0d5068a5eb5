#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "cocf/constructions.hpp"
#include "cocf/error.hpp"
#include "cocf/higman.hpp"
#include "cocf/hou_free.hpp"
#include "cocf/houghton.hpp"
#include "cocf/pda.hpp"

namespace cocf::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group;
  int n = 0;
  int r = 0;
  int rank = 0;
  std::string gens = "default";
  std::string engine = "both";
  std::size_t max_len = 4;
  std::size_t sample = 0;
  std::uint64_t seed = 20071;
  std::string out = ".";
  std::string word;
  std::string point = "0";
};

using Decider = std::function<bool(const GroupWord&)>;

// One group: its alphabet, the oracle and the automaton, each answering
// "is this word nontrivial?".
struct Group {
  std::string name;
  GeneratorAlphabet alphabet;
  Decider oracle;
  std::function<Decider()> make_automaton;
  std::function<std::vector<std::pair<std::string, ConstructionReport>>()> reports;
  std::function<automata::Npda()> trace_machine;
  std::function<std::vector<std::string>(const GroupWord&, const std::string&)> trace_points;
};

higman::GeneratorTable load_table(const Options& o) {
  higman::GeneratorTable table;
  if (o.gens == "default") {
    table = higman::default_generator_table();
  } else {
    std::ifstream in(o.gens);
    if (!in) throw UsageError("cannot read generator table '" + o.gens + "'");
    std::stringstream text;
    text << in.rdbuf();
    try {
      table = higman::parse_generator_table(text.str());
    } catch (const ParseError& e) {
      throw UsageError(o.gens + ": " + e.what());
    }
  }
  if ((o.n && o.n != table.n) || (o.r && o.r != table.r))
    throw UsageError("--n/--r do not match the generator table (n=" + std::to_string(table.n) +
                     " r=" + std::to_string(table.r) + ")");
  return table;
}

Decider grammar_decider(const ConstructionReport& report) {
  auto g = std::make_shared<const automata::Cfg>(report.grammar());
  auto rec = std::make_shared<const automata::CfgRecognizer>(*g);
  auto alphabet = report.alphabet;
  return [g, rec, alphabet](const GroupWord& w) {
    return rec->accepts(automata::terminal_ids(*g, w, alphabet));
  };
}

Decider machine_decider(const automata::Npda& m) {
  auto rec = std::make_shared<const automata::NpdaRecognizer>(m);
  return [rec](const GroupWord& w) { return rec->accepts(w); };
}

Group houghton_group(int n) {
  if (n < 2) throw UsageError("houghton needs --n >= 2");
  Group g;
  g.name = "H_" + std::to_string(n);
  g.alphabet = houghton::houghton_alphabet(n);
  g.oracle = [n](const GroupWord& w) { return !houghton::is_identity(houghton::word_to_element(w, n)); };
  if (n == 2) {
    g.make_automaton = [] { return machine_decider(as_npda(build_h2_machine())); };
    g.reports = [] {
      return std::vector<std::pair<std::string, ConstructionReport>>{{"h2.semidet", build_h2_machine()}};
    };
    g.trace_machine = [] { return as_npda(build_h2_machine()); };
  } else {
    g.make_automaton = [n] { return grammar_decider(build_hn_coword(n)); };
    g.reports = [n] {
      const std::string stem = "h" + std::to_string(n);
      return std::vector<std::pair<std::string, ConstructionReport>>{
          {stem + "-fixpoint.npda", build_hn_fixpoint_ocl(n)}, {stem + "-coword.cfg", build_hn_coword(n)}};
    };
    g.trace_machine = [n] { return build_hn_fixpoint_ocl(n).npda(); };
  }
  g.trace_points = [n](const GroupWord& w, const std::string& p) {
    std::vector<std::string> out;
    for (const auto& q : houghton::trace_point(w, houghton::parse_point(p), n))
      out.push_back(houghton::format_point(q));
    return out;
  };
  return g;
}

Group hou_free_group(int rank) {
  if (rank < 1) throw UsageError("hou-free needs --rank >= 1");
  Group g;
  g.name = "Hou(F_" + std::to_string(rank) + ")";
  g.alphabet = hou_free::hou_free_alphabet(rank);
  g.oracle = [rank](const GroupWord& w) {
    return !hou_free::is_identity(hou_free::word_to_element(w, rank));
  };
  g.make_automaton = [rank] { return machine_decider(as_npda(build_hou_free_machine(rank))); };
  g.reports = [rank] {
    return std::vector<std::pair<std::string, ConstructionReport>>{
        {"hou-free-" + std::to_string(rank) + ".semidet", build_hou_free_machine(rank)}};
  };
  g.trace_machine = [rank] { return as_npda(build_hou_free_machine(rank)); };
  g.trace_points = [rank](const GroupWord& w, const std::string& p) {
    const auto vertices = hou_free::vertex_alphabet(rank);
    std::vector<std::string> out;
    for (const auto& v : hou_free::trace_point(w, hou_free::parse_vertex(p, rank), rank))
      out.push_back(v.empty() ? "e" : format_word(v, vertices));
    return out;
  };
  return g;
}

Group higman_group(const Options& o) {
  auto table = std::make_shared<const higman::GeneratorTable>(load_table(o));
  Group g;
  g.name = "G_{" + std::to_string(table->n) + "," + std::to_string(table->r) + "}";
  g.alphabet = table->alphabet;
  g.oracle = [table](const GroupWord& w) {
    return !higman::is_identity(higman::word_to_element(w, *table));
  };
  g.make_automaton = [table] { return grammar_decider(build_gnr_coword(*table)); };
  g.reports = [table] {
    return std::vector<std::pair<std::string, ConstructionReport>>{
        {"gnr-fixset.npda", build_gnr_fixset_machine(*table)},
        {"gnr-coword.cfg", build_gnr_coword(*table)}};
  };
  g.trace_machine = [table] { return build_gnr_fixset_machine(*table).npda(); };
  g.trace_points = [table](const GroupWord& w, const std::string& p) {
    std::vector<std::string> out;
    for (const auto& s : higman::trace_sequence(w, higman::parse_sequence(p), *table))
      out.push_back(higman::format_sequence(s));
    return out;
  };
  return g;
}

Group make_group(const Options& o) {
  if (o.group == "houghton") return houghton_group(o.n);
  if (o.group == "hou-free") return hou_free_group(o.rank);
  if (o.group == "higman") return higman_group(o);
  throw UsageError("--group must be houghton, hou-free or higman");
}

const char* verdict(bool nontrivial) { return nontrivial ? "nontrivial" : "trivial"; }

int cmd_decide(const Options& o, std::ostream& out, std::ostream& err) {
  const Group g = make_group(o);
  const GroupWord w = parse_word(o.word, g.alphabet);
  if (o.engine == "oracle") {
    const bool v = g.oracle(w);
    out << verdict(v) << "\n";
    return v ? kNontrivial : kTrivial;
  }
  const bool a = g.make_automaton()(w);
  if (o.engine == "automaton") {
    out << verdict(a) << "\n";
    return a ? kNontrivial : kTrivial;
  }
  const bool v = g.oracle(w);
  if (v != a) {
    err << "disagreement: oracle says " << verdict(v) << ", automaton says " << verdict(a) << "\n";
    return kDisagreement;
  }
  out << verdict(v) << "\n";
  return v ? kNontrivial : kTrivial;
}

int cmd_build(const Options& o, std::ostream& out, std::ostream&) {
  const Group g = make_group(o);
  std::filesystem::create_directories(o.out);
  for (const auto& [file, report] : g.reports()) {
    const auto path = std::filesystem::path(o.out) / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path.string());
    f << format_report(report);
    if (!f) throw UsageError("cannot write " + path.string());
    out << path.string() << "\n";
  }
  return kTrivial;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream&) {
  const Group g = make_group(o);
  const Decider automaton = g.make_automaton();
  std::size_t words = 0, nontrivial = 0;
  std::vector<std::pair<std::string, bool>> bad;
  auto visit = [&](const GroupWord& w) {
    ++words;
    const bool v = g.oracle(w);
    nontrivial += v;
    if (automaton(w) != v) bad.emplace_back(format_word(w, g.alphabet), v);
  };
  for_each_word(g.alphabet.size(), o.max_len, visit);
  std::mt19937_64 rng(o.seed);
  const auto letters = all_letters(g.alphabet.size());
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::uniform_int_distribution<std::size_t> length(o.max_len + 1, std::max<std::size_t>(2 * o.max_len, o.max_len + 1));
  for (std::size_t s = 0; s < o.sample; ++s) {
    GroupWord w(length(rng));
    for (auto& l : w) l = letters[pick(rng)];
    visit(w);
  }
  std::sort(bad.begin(), bad.end());
  out << "group " << g.name << ": " << words << " words (all up to length " << o.max_len << ", "
      << o.sample << " random), " << nontrivial << " nontrivial, " << bad.size()
      << " disagreements\n";
  for (const auto& [w, v] : bad)
    out << "counterexample '" << w << "': oracle " << verdict(v) << ", automaton " << verdict(!v)
        << "\n";
  return bad.empty() ? kTrivial : kDisagreement;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream&) {
  const Group g = make_group(o);
  const GroupWord w = parse_word(o.word, g.alphabet);
  const auto points = g.trace_points(w, o.point);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << i << "  " << (i == 0 ? std::string("start") : format_letter(w[i - 1], g.alphabet)) << "  "
        << points[i] << "\n";
  }
  out << (points.front() == points.back() ? "fixed" : "moved") << "\n";

  const automata::Npda m = g.trace_machine();
  const std::size_t bound = automata::default_stack_bound(w.size());
  if (auto run = automata::find_run(m, w, bound)) {
    out << "accepting run (" << run->size() - 1 << " steps):\n";
    for (const auto& c : *run) out << "  " << automata::format_configuration(m, c) << "\n";
  } else {
    out << "no accepting run found with stack height <= " << bound << "\n";
  }
  return kTrivial;
}

void add_group_options(CLI::App* sub, Options& o) {
  sub->add_option("--group", o.group, "houghton, hou-free or higman")->required();
  sub->add_option("--n", o.n, "rays (houghton) or n of G_{n,r}");
  sub->add_option("--r", o.r, "r of G_{n,r}");
  sub->add_option("--rank", o.rank, "rank of the free group (hou-free)");
  sub->add_option("--gens", o.gens, "generator table file, or 'default'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"co-word problems of Houghton, Hou(F_n) and Higman-Thompson groups"};
  app.require_subcommand(1);
  Options o;

  auto* decide = app.add_subcommand("decide", "is a word nontrivial?");
  add_group_options(decide, o);
  decide->add_option("word", o.word, "word, e.g. \"s1 s2^-1\"");
  decide->add_option("--engine", o.engine, "oracle, automaton or both")
      ->check(CLI::IsMember({"oracle", "automaton", "both"}));

  auto* build = app.add_subcommand("build", "write the machines for a group");
  add_group_options(build, o);
  build->add_option("--out", o.out, "output directory");

  auto* check = app.add_subcommand("check", "compare oracle and automaton on many words");
  add_group_options(check, o);
  check->add_option("--max-len", o.max_len, "all words up to this length");
  check->add_option("--sample", o.sample, "random words of length up to 2 max-len");
  check->add_option("--seed", o.seed, "random seed");

  auto* trace = app.add_subcommand("trace", "images of a point under the prefixes of a word");
  add_group_options(trace, o);
  trace->add_option("word", o.word, "word")->required();
  trace->add_option("point", o.point, "0 or (k,l); a vertex; or q1.12...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*decide) return cmd_decide(o, out, err);
    if (*build) return cmd_build(o, out, err);
    if (*check) return cmd_check(o, out, err);
    return cmd_trace(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace cocf::cli
