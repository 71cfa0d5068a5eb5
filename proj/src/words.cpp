#include "cocf/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cocf/error.hpp"

namespace cocf {

bool valid_generator_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '^' || c == '-' || c == '$' ||
           c == '#';
  });
}

GeneratorAlphabet::GeneratorAlphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!valid_generator_name(n)) throw Error("invalid generator name '" + n + "'");
    if (!seen.insert(n).second) throw Error("duplicate generator name '" + n + "'");
  }
}

std::optional<std::size_t> GeneratorAlphabet::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

GroupWord parse_word(std::string_view text, const GeneratorAlphabet& alphabet) {
  GroupWord word;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view token = text.substr(i, j - i);
    i = j;

    int exponent = 1;
    std::string_view name = token;
    if (auto caret = token.find('^'); caret != std::string_view::npos) {
      if (token.substr(caret) != "^-1") throw MalformedToken(std::string(token));
      name = token.substr(0, caret);
      exponent = -1;
    }
    if (!valid_generator_name(name)) throw MalformedToken(std::string(token));
    auto g = alphabet.find(name);
    if (!g) throw UnknownGenerator(std::string(token));
    word.push_back({*g, exponent});
  }
  return word;
}

std::string format_letter(const Letter& letter, const GeneratorAlphabet& alphabet) {
  std::string s = alphabet.name(letter.generator);
  if (letter.exponent < 0) s += "^-1";
  return s;
}

std::string format_word(const GroupWord& word, const GeneratorAlphabet& alphabet) {
  std::string s;
  for (const auto& l : word) {
    if (!s.empty()) s += ' ';
    s += format_letter(l, alphabet);
  }
  return s;
}

GroupWord invert_word(const GroupWord& word) {
  GroupWord out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverse());
  return out;
}

GroupWord free_reduce(const GroupWord& word) {
  GroupWord out;
  out.reserve(word.size());
  for (const auto& l : word) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<GroupWord> rotations(const GroupWord& word) {
  if (word.empty()) return {GroupWord{}};
  std::vector<GroupWord> out;
  out.reserve(word.size());
  for (std::size_t split = 1; split <= word.size(); ++split) {
    GroupWord r(word.begin() + static_cast<std::ptrdiff_t>(split), word.end());
    r.insert(r.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(split));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Letter> all_letters(std::size_t alphabet_size) {
  std::vector<Letter> out;
  for (std::size_t g = 0; g < alphabet_size; ++g) {
    out.push_back({g, 1});
    out.push_back({g, -1});
  }
  return out;
}

void for_each_word(std::size_t alphabet_size, std::size_t max_len,
                   const std::function<void(const GroupWord&)>& visit) {
  const auto letters = all_letters(alphabet_size);
  GroupWord word;
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (len > 0 && letters.empty()) break;
    std::vector<std::size_t> digits(len, 0);
    word.assign(len, Letter{});
    bool carry = false;
    while (!carry) {
      for (std::size_t i = 0; i < len; ++i) word[i] = letters[digits[i]];
      visit(word);
      carry = true;
      for (std::size_t pos = len; pos > 0 && carry;) {
        --pos;
        if (++digits[pos] < letters.size()) {
          carry = false;
        } else {
          digits[pos] = 0;
        }
      }
    }
  }
}

std::size_t count_words(std::size_t alphabet_size, std::size_t max_len) {
  std::size_t total = 0, power = 1;
  for (std::size_t len = 0; len <= max_len; ++len) {
    total += power;
    power *= 2 * alphabet_size;
  }
  return total;
}

}  // namespace cocf
