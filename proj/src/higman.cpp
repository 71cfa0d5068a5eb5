#include "cocf/higman.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cocf/error.hpp"

namespace cocf::higman {

bool PrefixString::is_prefix_of(const PrefixString& other) const {
  return root == other.root && tail.size() <= other.tail.size() &&
         std::equal(tail.begin(), tail.end(), other.tail.begin());
}

PrefixString parse_prefix(std::string_view text) {
  const std::string s(text);
  if (s.size() < 2 || s[0] != 'q') throw MalformedToken(s);
  std::size_t i = 1;
  int root = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    root = root * 10 + (s[i] - '0');
    if (root > 1000000) throw MalformedToken(s);
    ++i;
  }
  if (i == 1 || root < 1) throw MalformedToken(s);
  PrefixString p{root, {}};
  if (i == s.size()) return p;
  if (s[i] != '.') throw MalformedToken(s);
  for (++i; i < s.size(); ++i) {
    if (s[i] < '1' || s[i] > '9') throw MalformedToken(s);
    p.tail.push_back(s[i] - '0');
  }
  return p;
}

std::string format_prefix(const PrefixString& p) {
  std::string s = "q" + std::to_string(p.root);
  if (!p.tail.empty()) {
    s += '.';
    for (int t : p.tail) s += std::to_string(t);
  }
  return s;
}

bool validate_barrier(const Barrier& barrier, int n, int r) {
  if (n < 2 || r < 1 || barrier.empty()) return false;
  std::size_t max_depth = 0;
  for (const auto& b : barrier) {
    if (b.root < 1 || b.root > r) return false;
    for (int t : b.tail)
      if (t < 1 || t > n) return false;
    max_depth = std::max(max_depth, b.depth());
  }
  Barrier sorted = barrier;
  std::sort(sorted.begin(), sorted.end());
  // Lexicographic order puts any extension of x right after x.
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].is_prefix_of(sorted[i + 1])) return false;

  // sum n^(D - depth) == r * n^D, exactly.
  using Wide = unsigned __int128;
  const Wide limit = Wide(1) << 120;
  std::vector<Wide> power(max_depth + 1, 1);
  for (std::size_t d = 1; d <= max_depth; ++d) {
    power[d] = power[d - 1] * static_cast<unsigned>(n);
    if (power[d] > limit / static_cast<unsigned>(n + r)) return false;
  }
  Wide total = 0;
  for (const auto& b : barrier) total += power[max_depth - b.depth()];
  return total == power[max_depth] * static_cast<unsigned>(r);
}

TestSequence TestSequence::from_head(PrefixString head) {
  while (!head.tail.empty() && head.tail.back() == 1) head.tail.pop_back();
  return TestSequence{std::move(head)};
}

TestSequence parse_sequence(std::string_view text) {
  std::string_view body = text;
  while (body.size() > 1 && body.back() == '.') body.remove_suffix(1);
  return TestSequence::from_head(parse_prefix(body));
}

std::string format_sequence(const TestSequence& s) {
  return format_prefix(s.head) + "...";
}

PrefixMap::PrefixMap(int n, int r, std::map<PrefixString, PrefixString> pairs)
    : n_(n), r_(r), pairs_(std::move(pairs)) {
  if (!validate_barrier(domain(), n_, r_)) throw InvalidGenerators("domain is not a barrier");
  if (!validate_barrier(range(), n_, r_)) throw InvalidGenerators("range is not a barrier");
  std::set<PrefixString> images;
  for (const auto& [d, img] : pairs_)
    if (!images.insert(img).second)
      throw InvalidGenerators("range prefix " + format_prefix(img) + " used twice");
}

PrefixMap PrefixMap::identity(int n, int r) {
  std::map<PrefixString, PrefixString> pairs;
  for (int q = 1; q <= r; ++q) pairs.emplace(PrefixString{q, {}}, PrefixString{q, {}});
  return PrefixMap(n, r, std::move(pairs));
}

Barrier PrefixMap::domain() const {
  Barrier b;
  for (const auto& [d, img] : pairs_) b.push_back(d);
  return b;
}

Barrier PrefixMap::range() const {
  Barrier b;
  for (const auto& [d, img] : pairs_) b.push_back(img);
  return b;
}

PrefixMap reduce(const PrefixMap& m) {
  auto pairs = m.pairs();
  const int n = m.n();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<PrefixString, PrefixString>> merges;
    for (const auto& [d, img] : pairs) {
      if (d.tail.empty() || d.tail.back() != 1 || img.tail.empty() || img.tail.back() != 1)
        continue;
      PrefixString parent{d.root, {d.tail.begin(), d.tail.end() - 1}};
      PrefixString target{img.root, {img.tail.begin(), img.tail.end() - 1}};
      bool family = true;
      for (int j = 2; j <= n && family; ++j) {
        PrefixString child = parent, child_img = target;
        child.tail.push_back(j);
        child_img.tail.push_back(j);
        auto it = pairs.find(child);
        family = it != pairs.end() && it->second == child_img;
      }
      if (family) merges.emplace_back(std::move(parent), std::move(target));
    }
    for (auto& [parent, target] : merges) {
      for (int j = 1; j <= n; ++j) {
        PrefixString child = parent;
        child.tail.push_back(j);
        pairs.erase(child);
      }
      pairs.emplace(std::move(parent), std::move(target));
      changed = true;
    }
  }
  return PrefixMap(PrefixMap::Unchecked{}, m.n(), m.r(), std::move(pairs));
}

namespace {

PrefixString extend(PrefixString p, const std::vector<int>& tail, std::size_t from) {
  p.tail.insert(p.tail.end(), tail.begin() + static_cast<std::ptrdiff_t>(from), tail.end());
  return p;
}

}  // namespace

PrefixMap compose(const PrefixMap& a, const PrefixMap& b) {
  if (a.n() != b.n() || a.r() != b.r())
    throw ParameterMismatch("prefix maps over different (n, r)");
  // Rewire a's range against b's domain on their common refinement.
  std::map<PrefixString, PrefixString> pairs;
  for (const auto& [src, mid] : a.pairs()) {
    for (const auto& [dom, img] : b.pairs()) {
      if (mid.is_prefix_of(dom)) {
        pairs.emplace(extend(src, dom.tail, mid.depth()), img);
      } else if (dom.is_prefix_of(mid)) {
        pairs.emplace(src, extend(img, mid.tail, dom.depth()));
      }
    }
  }
  return reduce(PrefixMap(PrefixMap::Unchecked{}, a.n(), a.r(), std::move(pairs)));
}

PrefixMap inverse(const PrefixMap& m) {
  std::map<PrefixString, PrefixString> pairs;
  for (const auto& [d, img] : m.pairs()) pairs.emplace(img, d);
  return PrefixMap(PrefixMap::Unchecked{}, m.n(), m.r(), std::move(pairs));
}

bool is_identity(const PrefixMap& m) {
  const auto reduced = reduce(m);
  if (reduced.pairs().size() != static_cast<std::size_t>(m.r())) return false;
  return std::all_of(reduced.pairs().begin(), reduced.pairs().end(), [](const auto& kv) {
    return kv.first.tail.empty() && kv.first == kv.second;
  });
}

TestSequence apply_to_sequence(const PrefixMap& m, const TestSequence& s) {
  const auto& pairs = m.pairs();
  PrefixString probe{s.head.root, {}};
  const std::size_t max_depth = static_cast<std::size_t>(k_bound(m));
  for (std::size_t len = 0; len <= max_depth; ++len) {
    if (len > 0) probe.tail.push_back(len <= s.head.depth() ? s.head.tail[len - 1] : 1);
    if (auto it = pairs.find(probe); it != pairs.end()) {
      PrefixString image = it->second;
      if (s.head.depth() > len)
        image.tail.insert(image.tail.end(), s.head.tail.begin() + static_cast<std::ptrdiff_t>(len),
                          s.head.tail.end());
      return TestSequence::from_head(std::move(image));
    }
  }
  throw Error("sequence " + format_sequence(s) + " has no prefix in the domain barrier");
}

int k_bound(const PrefixMap& m) {
  std::size_t k = 0;
  for (const auto& [d, img] : m.pairs()) k = std::max(k, d.depth());
  return static_cast<int>(k);
}

std::vector<TestSequence> enumerate_M(int n, int r, int k) {
  if (n < 2 || r < 1 || k < 0) throw ParameterMismatch("enumerate_M needs n >= 2, r >= 1, k >= 0");
  std::vector<TestSequence> out;
  for (int q = 1; q <= r; ++q) {
    std::vector<int> w(static_cast<std::size_t>(k), 1);
    while (true) {
      out.push_back(TestSequence::from_head(PrefixString{q, w}));
      int pos = k - 1;
      while (pos >= 0 && w[static_cast<std::size_t>(pos)] == n) w[static_cast<std::size_t>(pos--)] = 1;
      if (pos < 0) break;
      ++w[static_cast<std::size_t>(pos)];
    }
  }
  return out;
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return tokens;
}

int parse_param(const std::string& token, const std::string& key, int line) {
  if (token.rfind(key + "=", 0) != 0) throw ParseError(line, "expected " + key + "=<int>");
  try {
    std::size_t used = 0;
    int v = std::stoi(token.substr(key.size() + 1), &used);
    if (used != token.size() - key.size() - 1) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad value in '" + token + "'");
  }
}

}  // namespace

GeneratorTable parse_generator_table(std::string_view text) {
  GeneratorTable table;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool have_header = false;

  std::vector<std::string> names;
  struct Block {
    int line;
    std::map<PrefixString, PrefixString> pairs;
  };
  std::vector<Block> blocks;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = split_ws(raw);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 3 || tokens[0] != "gnr")
        throw ParseError(line_no, "expected header 'gnr n=<n> r=<r>'");
      table.n = parse_param(tokens[1], "n", line_no);
      table.r = parse_param(tokens[2], "r", line_no);
      if (table.n < 2 || table.n > 9 || table.r < 1)
        throw ParseError(line_no, "need 2 <= n <= 9 and r >= 1");
      have_header = true;
      continue;
    }
    if (tokens[0] == "gen") {
      if (tokens.size() != 2 || !valid_generator_name(tokens[1]))
        throw ParseError(line_no, "expected 'gen <name>'");
      if (std::find(names.begin(), names.end(), tokens[1]) != names.end())
        throw ParseError(line_no, "duplicate generator '" + tokens[1] + "'");
      names.push_back(tokens[1]);
      blocks.push_back({line_no, {}});
      continue;
    }
    if (blocks.empty()) throw ParseError(line_no, "pair outside a 'gen' block");
    if (tokens.size() != 3 || tokens[1] != "->")
      throw ParseError(line_no, "expected '<prefix> -> <prefix>'");
    PrefixString d, img;
    try {
      d = parse_prefix(tokens[0]);
      img = parse_prefix(tokens[2]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    for (const auto* p : {&d, &img}) {
      if (p->root > table.r) throw ParseError(line_no, "root out of range");
      for (int t : p->tail)
        if (t > table.n) throw ParseError(line_no, "digit out of range");
    }
    if (!blocks.back().pairs.emplace(d, img).second)
      throw ParseError(line_no, "domain prefix " + tokens[0] + " repeated");
  }
  if (!have_header) throw ParseError(line_no, "missing 'gnr' header");
  if (blocks.empty()) throw ParseError(line_no, "no generators");

  table.alphabet = GeneratorAlphabet(names);
  for (auto& block : blocks) {
    try {
      table.generators.push_back(reduce(PrefixMap(table.n, table.r, std::move(block.pairs))));
    } catch (const InvalidGenerators& e) {
      throw ParseError(block.line, e.what());
    }
  }
  return table;
}

std::string format_generator_table(const GeneratorTable& table) {
  std::ostringstream out;
  out << "gnr n=" << table.n << " r=" << table.r << "\n";
  for (std::size_t g = 0; g < table.generators.size(); ++g) {
    out << "gen " << table.alphabet.name(g) << "\n";
    for (const auto& [d, img] : table.generators[g].pairs())
      out << format_prefix(d) << " -> " << format_prefix(img) << "\n";
  }
  return out.str();
}

std::string_view default_generator_table_text() {
  return R"(# Thompson's group V = G_{2,1}
gnr n=2 r=1
gen A
q1.11 -> q1.1
q1.12 -> q1.21
q1.2 -> q1.22
gen B
q1.1 -> q1.1
q1.211 -> q1.21
q1.212 -> q1.221
q1.22 -> q1.222
gen C
q1.1 -> q1.22
q1.21 -> q1.1
q1.22 -> q1.21
gen D
q1.1 -> q1.21
q1.21 -> q1.1
q1.22 -> q1.22
)";
}

const GeneratorTable& default_generator_table() {
  static const GeneratorTable table = parse_generator_table(default_generator_table_text());
  return table;
}

int symmetric_k(const GeneratorTable& table) {
  int k = 0;
  for (const auto& g : table.generators) k = std::max({k, k_bound(g), k_bound(inverse(g))});
  return k;
}

PrefixMap word_to_element(const GroupWord& word, const GeneratorTable& table) {
  auto m = PrefixMap::identity(table.n, table.r);
  for (const auto& l : word) {
    if (l.generator >= table.generators.size())
      throw UnknownGenerator("#" + std::to_string(l.generator));
    const auto& g = table.generators[l.generator];
    m = compose(m, l.exponent > 0 ? g : inverse(g));
  }
  return m;
}

std::vector<TestSequence> trace_sequence(const GroupWord& word, const TestSequence& s,
                                         const GeneratorTable& table) {
  std::vector<TestSequence> out{s};
  for (const auto& l : word) {
    if (l.generator >= table.generators.size())
      throw UnknownGenerator("#" + std::to_string(l.generator));
    const auto& g = table.generators[l.generator];
    out.push_back(apply_to_sequence(l.exponent > 0 ? g : inverse(g), out.back()));
  }
  return out;
}

}  // namespace cocf::higman
