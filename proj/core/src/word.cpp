#include "orthospec/word.hpp"

#include <algorithm>
#include <cstdlib>

#include "orthospec/errors.hpp"

namespace orthospec {

char to_char(Letter l) {
  switch (l) {
    case Letter::X:
      return 'X';
    case Letter::Xinv:
      return 'x';
    case Letter::Y:
      return 'Y';
    case Letter::Yinv:
      return 'y';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'X':
      return Letter::X;
    case 'x':
      return Letter::Xinv;
    case 'Y':
      return Letter::Y;
    case 'y':
      return Letter::Yinv;
    default:
      throw DomainError(std::string("invalid letter '") + c + "'");
  }
}

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) push_back(l);
}

Word Word::parse(std::string_view text) {
  Word w;
  if (text == "e" || text.empty()) return w;
  for (char c : text) w.push_back(letter_from_char(c));
  return w;
}

void Word::push_back(Letter l) {
  if (!letters_.empty() && letters_.back() == orthospec::inverse(l)) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(orthospec::inverse(*it));
  }
  return w;
}

Word Word::power(int n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word out;
  for (int k = 0; k < std::abs(n); ++k) out = out * base;
  return out;
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(to_char(l));
  return s;
}

Word operator*(const Word& a, const Word& b) {
  std::size_t cancel = 0;
  const std::size_t na = a.letters_.size();
  const std::size_t nb = b.letters_.size();
  while (cancel < na && cancel < nb &&
         a.letters_[na - 1 - cancel] == inverse(b.letters_[cancel])) {
    ++cancel;
  }
  Word w;
  w.letters_.reserve(na + nb - 2 * cancel);
  w.letters_.insert(w.letters_.end(), a.letters_.begin(),
                    a.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  w.letters_.insert(w.letters_.end(),
                    b.letters_.begin() + static_cast<std::ptrdiff_t>(cancel),
                    b.letters_.end());
  return w;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
      b.letters_.end());
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() <= 1 || w.front() != inverse(w.back());
}

Word canonical_double_coset(const Word& a, const Word& g, const Word& b) {
  if (a.empty() || b.empty() || !is_cyclically_reduced(a) ||
      !is_cyclically_reduced(b)) {
    throw DomainError("double coset generators must be cyclically reduced");
  }
  // Descend through length plateaus: from every word of the current
  // minimal length, try all shifts a^m w b^n with |m|, |n| <= kWindow.
  // A strictly shorter hit restarts the plateau; otherwise the plateau is
  // closed under shifts and its shortlex minimum is the representative.
  constexpr int kWindow = 3;
  std::vector<Word> left_powers;
  std::vector<Word> right_powers;
  for (int m = -kWindow; m <= kWindow; ++m) left_powers.push_back(a.power(m));
  for (int n = -kWindow; n <= kWindow; ++n) right_powers.push_back(b.power(n));

  std::vector<Word> plateau{g};
  std::size_t cursor = 0;
  while (cursor < plateau.size()) {
    const Word current = plateau[cursor++];
    bool restarted = false;
    for (const Word& left : left_powers) {
      const Word lw = left * current;
      for (const Word& right : right_powers) {
        Word candidate = lw * right;
        if (candidate.size() < plateau.front().size()) {
          plateau.assign(1, std::move(candidate));
          cursor = 0;
          restarted = true;
          break;
        }
        if (candidate.size() == plateau.front().size() &&
            std::find(plateau.begin(), plateau.end(), candidate) ==
                plateau.end()) {
          plateau.push_back(std::move(candidate));
        }
      }
      if (restarted) break;
    }
  }
  return *std::min_element(plateau.begin(), plateau.end());
}

std::vector<Word> reduced_words_up_to(std::size_t max_length) {
  std::vector<Word> out{Word()};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t k = layer_begin; k < layer_end; ++k) {
      for (Letter l : kLetters) {
        if (!out[k].empty() && out[k].back() == inverse(l)) continue;
        Word w = out[k];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::vector<Letter> ray_prefix(const Word& g, const Word& b, std::size_t n) {
  if (b.empty() || !is_cyclically_reduced(b)) {
    throw DomainError("ray generator must be cyclically reduced");
  }
  // g b^k is reduced past the cancellation zone once k exceeds |g| / |b| + 1.
  const std::size_t reps = (n + 2 * g.size()) / b.size() + 2;
  Word w = g;
  for (std::size_t k = 0; k < reps; ++k) w = w * b;
  std::vector<Letter> out(w.letters().begin(),
                          w.letters().begin() +
                              static_cast<std::ptrdiff_t>(std::min(n, w.size())));
  return out;
}

}  // namespace orthospec
