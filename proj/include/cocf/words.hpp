#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cocf {

// Ordered list of distinct generator names. A name may not be empty and
// may not contain whitespace or any of  ^ - $ #
class GeneratorAlphabet {
 public:
  GeneratorAlphabet() = default;
  explicit GeneratorAlphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t generator) const { return names_.at(generator); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const GeneratorAlphabet&, const GeneratorAlphabet&) = default;

 private:
  std::vector<std::string> names_;
};

bool valid_generator_name(std::string_view name);

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;  // +1 or -1

  Letter inverse() const noexcept { return {generator, -exponent}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using GroupWord = std::vector<Letter>;

// Whitespace separated tokens, each `name` or `name^-1`.
GroupWord parse_word(std::string_view text, const GeneratorAlphabet& alphabet);

std::string format_letter(const Letter& letter, const GeneratorAlphabet& alphabet);
std::string format_word(const GroupWord& word, const GeneratorAlphabet& alphabet);

GroupWord invert_word(const GroupWord& word);
GroupWord free_reduce(const GroupWord& word);
GroupWord concat(const GroupWord& a, const GroupWord& b);

// All |w| rotations yx of w = xy (x nonempty, so w itself comes last);
// [empty] for the empty word. Duplicates are kept.
std::vector<GroupWord> rotations(const GroupWord& word);

// Every letter (generator and sign) over an alphabet of the given size,
// ordered x1, x1^-1, x2, ...
std::vector<Letter> all_letters(std::size_t alphabet_size);

// Calls visit(w) for every word of length <= max_len, shortlex order.
void for_each_word(std::size_t alphabet_size, std::size_t max_len,
                   const std::function<void(const GroupWord&)>& visit);

// Number of words of length <= max_len over 2*alphabet_size letters.
std::size_t count_words(std::size_t alphabet_size, std::size_t max_len);

}  // namespace cocf
