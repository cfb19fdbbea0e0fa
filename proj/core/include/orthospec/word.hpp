#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orthospec {

/// Generator letters of the rank-two free group. Inverses differ in the
/// lowest bit, and the enumerator order doubles as the lexicographic order.
enum class Letter : std::uint8_t { X = 0, Xinv = 1, Y = 2, Yinv = 3 };

inline constexpr Letter kLetters[4] = {Letter::X, Letter::Xinv, Letter::Y,
                                       Letter::Yinv};

constexpr Letter inverse(Letter l) {
  return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1U);
}

constexpr int index(Letter l) { return static_cast<int>(l); }

/// 'X', 'x', 'Y', 'y' (lower case is the inverse).
char to_char(Letter l);
Letter letter_from_char(char c);

/// A freely reduced word in X, Y and their inverses.
///
/// Every constructor and product reduces, so a Word never contains an
/// adjacent inverse pair. The identity prints as "e".
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word parse(std::string_view text);
  static Word single(Letter l) { return Word(std::vector<Letter>{l}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word power(int n) const;
  std::string str() const;

  /// Appends one letter, cancelling against the last letter if needed.
  void push_back(Letter l);

  friend Word operator*(const Word& a, const Word& b);

  /// Shortlex order: shorter words first, then letter by letter.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  std::vector<Letter> letters_;
};

/// Whether w is cyclically reduced (first letter is not the inverse of the
/// last one).
bool is_cyclically_reduced(const Word& w);

/// Shortlex-minimal representative of the double coset <a> g <b>.
///
/// a and b must be non-trivial and cyclically reduced. The result is
/// constant on the double coset and idempotent.
Word canonical_double_coset(const Word& a, const Word& g, const Word& b);

/// All reduced words of length <= max_length, in shortlex order.
std::vector<Word> reduced_words_up_to(std::size_t max_length);

/// First `n` letters of the infinite reduced word g * b * b * b * ...
std::vector<Letter> ray_prefix(const Word& g, const Word& b, std::size_t n);

}  // namespace orthospec
