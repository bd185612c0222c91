#include "saff/word.hpp"

#include "saff/error.hpp"

namespace saff {

Word::Word(std::vector<int> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("word: empty word");
  for (int s : symbols_) {
    if (s < 0) throw InputError("word: negative symbol");
  }
}

Word Word::from_one_based(const std::vector<int>& symbols) {
  std::vector<int> zero;
  zero.reserve(symbols.size());
  for (int s : symbols) {
    if (s < 1) throw InputError("word: symbols are one-based and must be >= 1");
    zero.push_back(s - 1);
  }
  return Word(std::move(zero));
}

Word Word::from_index(std::uint64_t index, int length, int alphabet) {
  std::vector<int> digits(static_cast<std::size_t>(length));
  for (int pos = length - 1; pos >= 0; --pos) {
    digits[static_cast<std::size_t>(pos)] = static_cast<int>(index % static_cast<std::uint64_t>(alphabet));
    index /= static_cast<std::uint64_t>(alphabet);
  }
  return Word(std::move(digits));
}

std::vector<int> Word::one_based() const {
  std::vector<int> out(symbols_);
  for (int& s : out) ++s;
  return out;
}

void Word::validate(int alphabet) const {
  if (symbols_.empty()) throw InputError("word: empty word");
  for (int s : symbols_) {
    if (s < 0 || s >= alphabet) {
      throw InputError("word: symbol " + std::to_string(s + 1) + " out of range 1.." + std::to_string(alphabet));
    }
  }
}

Word Word::concat(const Word& other) const {
  std::vector<int> out(symbols_);
  out.insert(out.end(), other.symbols_.begin(), other.symbols_.end());
  return Word(std::move(out));
}

Word Word::power(int times) const {
  if (times < 1) throw InputError("word: power must be >= 1");
  std::vector<int> out;
  out.reserve(symbols_.size() * static_cast<std::size_t>(times));
  for (int t = 0; t < times; ++t) out.insert(out.end(), symbols_.begin(), symbols_.end());
  return Word(std::move(out));
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(symbols_[i] + 1);
  }
  return out;
}

}  // namespace saff
