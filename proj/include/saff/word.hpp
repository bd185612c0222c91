#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace saff {

/// A finite non-empty word over the alphabet {0, ..., N-1}.
///
/// Symbols are stored zero-based. The matrix product attached to a word
/// (i_1, ..., i_n) is A_{i_n} ... A_{i_1}: the last symbol is applied last.
/// Reports and the CLI print words one-based.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> symbols);

  static Word from_one_based(const std::vector<int>& symbols);
  /// Word of length `length` whose symbols are the base-`alphabet` digits of
  /// `index`, most significant first (lexicographic order of words).
  static Word from_index(std::uint64_t index, int length, int alphabet);

  [[nodiscard]] std::size_t size() const { return symbols_.size(); }
  [[nodiscard]] bool empty() const { return symbols_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return symbols_[i]; }
  [[nodiscard]] const std::vector<int>& symbols() const { return symbols_; }
  [[nodiscard]] std::vector<int> one_based() const;

  /// Throws InputError unless the word is non-empty with symbols in [0, alphabet).
  void validate(int alphabet) const;

  [[nodiscard]] Word concat(const Word& other) const;
  [[nodiscard]] Word power(int times) const;

  /// "1.2.2" style, one-based.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<int> symbols_;
};

/// Calls `fn(word)` for every word of length 1..max_len in shortlex order.
/// Stops early when `fn` returns false.
template <typename Fn>
void for_each_word_shortlex(int alphabet, int max_len, Fn&& fn) {
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> digits(static_cast<std::size_t>(len), 0);
    while (true) {
      if (!fn(Word(digits))) return;
      int pos = len - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == alphabet - 1) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<std::size_t>(pos)];
    }
  }
}

}  // namespace saff
