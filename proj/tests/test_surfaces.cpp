#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orthospec/app/oracles.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/surfaces.hpp"

using namespace orthospec;

TEST_CASE("symmetric pants: seams, lengths, topology") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  CHECK(m.boundary_count() == 3);
  CHECK(m.euler_char() == -1);
  CHECK(m.area() == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(surfaces::boundary_total_length(m) == doctest::Approx(6.0));
  for (int b = 0; b < 3; ++b) {
    CHECK(hyp2::translation_length(m.evaluate(m.boundary_words()[b])) ==
          doctest::Approx(2.0).epsilon(1e-12));
  }
  const auto& ax = m.boundary_axes();
  CHECK(hyp2::dist_geodesics(ax[0], ax[1]) ==
        doctest::Approx(1.704912832358).epsilon(1e-11));
  CHECK(surfaces::pingpong_failure(m).empty());
}

TEST_CASE("hexagon seams agree with the independent formula") {
  for (auto L : {std::array{0.5, 0.5, 0.5}, std::array{1.0, 7.0, 3.0},
                 std::array{10.0, 0.5, 4.0}, std::array{9.5, 9.5, 9.5}}) {
    const auto m = surfaces::build_pants(L[0], L[1], L[2]);
    CHECK(surfaces::pingpong_failure(m).empty());
    const auto& ax = m.boundary_axes();
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const int k = 3 - i - j;
        CHECK(hyp2::dist_geodesics(ax[i], ax[j]) ==
              doctest::Approx(app::oracles::hexagon_seam(L[i], L[j], L[k]))
                  .epsilon(1e-10));
        CHECK(surfaces::hexagon_seam_length(L[i] / 2, L[j] / 2, L[k] / 2) ==
              doctest::Approx(app::oracles::hexagon_seam(L[i], L[j], L[k])));
      }
    }
  }
}

TEST_CASE("invalid specs are domain errors") {
  CHECK_THROWS_AS(surfaces::build_pants(0.0, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(surfaces::build_pants(-1.0, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(surfaces::build_pants(2.0, 2.0, 25.0), DomainError);
  CHECK_THROWS_AS(surfaces::build_pants(2.0, NAN, 2.0), DomainError);
  surfaces::SurfaceSpec spec{surfaces::SurfaceKind::Pants, {1.0, 2.0}};
  CHECK_THROWS_AS(surfaces::build(spec), DomainError);
  CHECK_THROWS_AS(surfaces::surface_kind_from_string("klein"), DomainError);
}

TEST_CASE("one-holed torus is not enabled") {
  surfaces::SurfaceSpec spec{surfaces::SurfaceKind::OneHoledTorus, {2.0}};
  CHECK_THROWS_AS(surfaces::build(spec), DomainError);
}

TEST_CASE("domain midpoint lies in the core; far points do not") {
  const auto m = surfaces::build_pants(2.0, 3.0, 4.0);
  CHECK(surfaces::contains_in_core(m, m.domain_midpoint()).inside);
  CHECK_FALSE(surfaces::contains_in_core(m, hyp2::HPoint(0.0, 1e6)).inside);
}

TEST_CASE("base lifts cross the fundamental domain") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  int per_boundary[3] = {0, 0, 0};
  for (const auto& lift : m.base_lifts()) {
    ++per_boundary[lift.boundary];
    const auto expected = m.evaluate(lift.coset_word)
                              .apply(m.boundary_axes()[lift.boundary]);
    CHECK(hyp2::same_ideal_point(expected.start(), lift.geodesic.start(), 1e-9));
    CHECK(hyp2::same_ideal_point(expected.end(), lift.geodesic.end(), 1e-9));
  }
  for (int b = 0; b < 3; ++b) CHECK(per_boundary[b] >= 1);
}
