#include <doctest.h>

#include <random>
#include <set>

#include "orthospec/app/oracles.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/word.hpp"

using orthospec::DomainError;
using orthospec::Letter;
using orthospec::Word;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::vector<Letter> letters;
  const std::size_t n = len(rng);
  for (std::size_t k = 0; k < n; ++k) {
    letters.push_back(orthospec::kLetters[letter(rng)]);
  }
  return Word(std::move(letters));
}

}  // namespace

TEST_CASE("parse and print round trip") {
  CHECK(Word::parse("e").str() == "e");
  CHECK(Word::parse("").empty());
  CHECK(Word::parse("XYxy").str() == "XYxy");
  CHECK(Word::parse("XxY").str() == "Y");
  CHECK_THROWS_AS(Word::parse("XZ"), DomainError);
}

TEST_CASE("products reduce freely") {
  const Word a = Word::parse("XYX");
  CHECK((a * a.inverse()).empty());
  CHECK((a.inverse() * a).empty());
  CHECK((Word::parse("XY") * Word::parse("yX")).str() == "XX");
  CHECK(Word::parse("XY").power(3).str() == "XYXYXY");
  CHECK(Word::parse("XY").power(-2).str() == "yxyx");
  CHECK(Word::parse("XY").power(0).empty());
}

TEST_CASE("shortlex order") {
  CHECK(Word::parse("Y") < Word::parse("XX"));
  CHECK(Word::parse("X") < Word::parse("x"));
  CHECK(Word::parse("x") < Word::parse("Y"));
  CHECK(Word() < Word::parse("y"));
}

TEST_CASE("cyclic reduction") {
  CHECK(orthospec::is_cyclically_reduced(Word::parse("XY")));
  CHECK_FALSE(orthospec::is_cyclically_reduced(Word::parse("XYx")));
  CHECK(orthospec::is_cyclically_reduced(Word()));
}

TEST_CASE("reduced words up to n: count and order") {
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto words = orthospec::reduced_words_up_to(n);
    // 1 + 4 (3^n - 1) / 2 = 2 * 3^n - 1
    std::size_t pow3 = 1;
    for (std::size_t k = 0; k < n; ++k) pow3 *= 3;
    CHECK(words.size() == 2 * pow3 - 1);
    CHECK(std::is_sorted(words.begin(), words.end()));
    const std::set<Word> unique(words.begin(), words.end());
    CHECK(unique.size() == words.size());
  }
  const auto ball = orthospec::app::oracles::word_ball(5);
  const std::set<Word> a(ball.begin(), ball.end());
  const auto words = orthospec::reduced_words_up_to(5);
  const std::set<Word> b(words.begin(), words.end());
  CHECK(a == b);
}

TEST_CASE("canonical double coset agrees with brute force") {
  std::mt19937_64 rng(7);
  const std::vector<Word> boundary{Word::parse("X"), Word::parse("Y"),
                                   Word::parse("XY")};
  for (int trial = 0; trial < 300; ++trial) {
    const Word& a = boundary[trial % 3];
    const Word& b = boundary[(trial / 3) % 3];
    const Word g = random_word(rng, 8);
    const Word c = orthospec::canonical_double_coset(a, g, b);
    const Word brute = orthospec::app::oracles::brute_canonical(a, g, b, 12);
    CHECK_MESSAGE(c == brute, "g = " << g.str() << " a = " << a.str()
                                     << " b = " << b.str());
    // Constant on the double coset and idempotent.
    const Word moved = a.power(2) * g * b.power(-3);
    CHECK(orthospec::canonical_double_coset(a, moved, b) == c);
    CHECK(orthospec::canonical_double_coset(a, c, b) == c);
  }
}

TEST_CASE("ray prefix") {
  const auto p = orthospec::ray_prefix(Word::parse("y"), Word::parse("XY"), 5);
  CHECK(Word(p).str() == "yXYXY");
}
