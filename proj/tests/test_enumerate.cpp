#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "orthospec/app/oracles.hpp"
#include "orthospec/enumerate.hpp"
#include "orthospec/errors.hpp"

using namespace orthospec;

namespace {

enumerate::Orthospectrum symmetric_spectrum(double cutoff, unsigned threads = 1) {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  enumerate::EnumerationOptions o;
  o.cutoff = cutoff;
  o.threads = threads;
  return enumerate::enumerate_orthogeodesics(m, o);
}

}  // namespace

TEST_CASE("symmetric pants: the shortest orthogeodesics") {
  const auto s = symmetric_spectrum(5.0);
  REQUIRE(s.records.size() == 24);
  for (int k = 0; k < 6; ++k) {
    CHECK(s.records[k].length == doctest::Approx(1.704912832358).epsilon(1e-11));
    CHECK(s.records[k].from_boundary != s.records[k].to_boundary);
  }
  for (int k = 6; k < 12; ++k) {
    CHECK(s.records[k].length == doctest::Approx(3.6122259996822).epsilon(1e-11));
    CHECK(s.records[k].from_boundary == s.records[k].to_boundary);
  }
  for (int k = 12; k < 24; ++k) {
    CHECK(s.records[k].length == doctest::Approx(4.8384).epsilon(1e-4));
  }
}

TEST_CASE("records are sorted, unique and carry canonical words") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  const auto s = symmetric_spectrum(9.0);
  std::set<std::tuple<int, int, Word>> keys;
  for (std::size_t k = 0; k < s.records.size(); ++k) {
    const auto& r = s.records[k];
    if (k > 0) CHECK(s.records[k - 1].length <= r.length);
    CHECK(keys.emplace(r.from_boundary, r.to_boundary, r.coset_rep).second);
    CHECK(canonical_double_coset(m.boundary_words()[r.from_boundary], r.coset_rep,
                                 m.boundary_words()[r.to_boundary]) == r.coset_rep);
    CHECK(enumerate::orthogeodesic_length(m, r.from_boundary, r.to_boundary,
                                          r.coset_rep) == r.length);
  }
}

TEST_CASE("orthospectrum matches the naive word ball") {
  const auto m = surfaces::build_pants(1.0, 3.0, 2.5);
  enumerate::EnumerationOptions o;
  o.cutoff = 8.0;
  o.max_word_length = 6;
  const auto fast = enumerate::enumerate_orthogeodesics(m, o).records;
  const auto slow = app::oracles::naive_orthogeodesics(m, 8.0, 6);
  REQUIRE(fast.size() == slow.size());
  std::map<std::tuple<int, int, Word>, double> want;
  for (const auto& r : slow) want[{r.from_boundary, r.to_boundary, r.coset_rep}] = r.length;
  for (const auto& r : fast) {
    const auto it = want.find({r.from_boundary, r.to_boundary, r.coset_rep});
    REQUIRE(it != want.end());
    CHECK(r.length == doctest::Approx(it->second).epsilon(1e-10));
  }
}

TEST_CASE("arcs match the naive word ball") {
  const auto m = surfaces::build_pants(2.0, 4.0, 3.0);
  const hyp2::HPoint x = m.domain_midpoint();
  const hyp2::HPoint y(x.x() + 0.05, x.y() * 1.1);
  REQUIRE(surfaces::contains_in_core(m, y).inside);
  enumerate::EnumerationOptions o;
  o.cutoff = 14.0;
  o.max_word_length = 7;
  const auto fast = enumerate::enumerate_arcs(m, x, y, o);
  const auto slow = app::oracles::naive_arcs(m, x, y, 14.0, 7);
  REQUIRE(fast.arcs.size() == slow.size());
  std::map<Word, double> want;
  for (const auto& a : slow) want[a.word] = a.length;
  for (const auto& a : fast.arcs) {
    REQUIRE(want.count(a.word));
    CHECK(a.length == doctest::Approx(want[a.word]).epsilon(1e-12));
  }
}

TEST_CASE("identity arc is the distance between basepoints") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  const auto x = m.domain_midpoint();
  enumerate::EnumerationOptions o;
  o.cutoff = 3.0;
  const auto s = enumerate::enumerate_arcs(m, x, x, o);
  REQUIRE_FALSE(s.arcs.empty());
  CHECK(s.arcs.front().word.empty());
  CHECK(s.arcs.front().length == 0.0);
}

TEST_CASE("basepoints outside the core are rejected") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  enumerate::EnumerationOptions o;
  CHECK_THROWS_AS(enumerate::enumerate_arcs(m, hyp2::HPoint(0, 1e6),
                                            m.domain_midpoint(), o),
                  DomainError);
}

TEST_CASE("thread count does not change the result") {
  const auto a = symmetric_spectrum(11.0, 1);
  const auto b = symmetric_spectrum(11.0, 3);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].length == b.records[k].length);
    CHECK(a.records[k].coset_rep == b.records[k].coset_rep);
  }
}

TEST_CASE("budget exhaustion carries a partial result") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  enumerate::EnumerationOptions o;
  o.cutoff = 12.0;
  o.budget = 2000;
  try {
    enumerate::enumerate_orthogeodesics(m, o);
    FAIL("expected budget exhaustion");
  } catch (const enumerate::BudgetExhausted<enumerate::Orthospectrum>& e) {
    CHECK(e.unexplored_bound() <= 12.0 + 1e-6);
    const auto full = symmetric_spectrum(12.0);
    // Everything below the unexplored bound is already present.
    const auto below = enumerate::counting_function(full, e.unexplored_bound());
    CHECK(e.partial().records.size() >= below);
  }
}

TEST_CASE("counting function") {
  const auto s = symmetric_spectrum(6.0);
  CHECK(enumerate::counting_function(s, 1.0) == 0);
  CHECK(enumerate::counting_function(s, 2.0) == 6);
  CHECK(enumerate::counting_function(s, 4.0) == 12);
  CHECK_THROWS_AS(enumerate::counting_function(s, 7.0), DomainError);
}

TEST_CASE("reversal is an involution and unoriented halves the count") {
  const auto m = surfaces::build_pants(2.0, 3.0, 5.0);
  enumerate::EnumerationOptions o;
  o.cutoff = 9.0;
  const auto s = enumerate::enumerate_orthogeodesics(m, o);
  for (const auto& r : s.records) {
    const auto back = enumerate::reversed(m, r);
    CHECK(back.length == doctest::Approx(r.length).epsilon(1e-10));
    const auto again = enumerate::reversed(m, back);
    CHECK(again.coset_rep == r.coset_rep);
    CHECK(again.from_boundary == r.from_boundary);
  }
  const auto u = enumerate::unoriented(m, s);
  CHECK_FALSE(u.oriented);
  CHECK(2 * u.records.size() == s.records.size());
}

TEST_CASE("cutoff outside the supported range") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  enumerate::EnumerationOptions o;
  o.cutoff = 61.0;
  CHECK_THROWS_AS(enumerate::enumerate_orthogeodesics(m, o), DomainError);
  o.cutoff = -1.0;
  CHECK_THROWS_AS(enumerate::enumerate_arcs(m, m.domain_midpoint(),
                                            m.domain_midpoint(), o),
                  DomainError);
}
