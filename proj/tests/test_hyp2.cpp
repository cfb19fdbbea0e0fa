#include <doctest.h>

#include <cmath>
#include <random>

#include "orthospec/app/oracles.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/hyp2.hpp"

using namespace orthospec::hyp2;
using orthospec::DomainError;
using orthospec::GeometryError;

namespace {

HGeodesic semicircle(double a, double b) {
  return {IdealPoint::finite(a), IdealPoint::finite(b)};
}

}  // namespace

TEST_CASE("points and ideal points validate their input") {
  CHECK_THROWS_AS(HPoint(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(HPoint(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(HPoint(NAN, 1.0), DomainError);
  CHECK_THROWS_AS(IdealPoint(0.0, 0.0), DomainError);
  CHECK(IdealPoint::infinity().is_infinite());
  CHECK(IdealPoint(6.0, 2.0).value() == doctest::Approx(3.0));
  CHECK_THROWS_AS(semicircle(1.0, 1.0), DomainError);
}

TEST_CASE("isometries are normalized") {
  const Isometry g(2.0, 0.0, 0.0, 2.0);
  CHECK(g.approx_equal(Isometry::identity(), 1e-15));
  const Isometry h(-1.0, -2.0, 0.0, -1.0);
  CHECK(h.a() == doctest::Approx(1.0));
  CHECK(h.b() == doctest::Approx(2.0));
  CHECK_THROWS_AS(Isometry(1.0, 0.0, 0.0, -1.0), DomainError);
  const Isometry k(1.0, 2.0, 3.0, 7.0);
  CHECK((k * k.inverse()).approx_equal(Isometry::identity(), 1e-12));
}

TEST_CASE("point distances") {
  CHECK(dist_points(HPoint(0, 1), HPoint(0, 2)) == doctest::Approx(std::log(2.0)));
  CHECK(dist_points(HPoint(0.3, 1.7), HPoint(0.3, 1.7)) == 0.0);
  const Isometry s = Isometry::scaling(std::exp(0.5));
  CHECK(dist_points(HPoint(0, 1), s.apply(HPoint(0, 1))) == doctest::Approx(1.0));
  const Isometry t = Isometry::translation_along_unit_circle(1.3);
  CHECK(dist_points(HPoint(0, 1), t.apply(HPoint(0, 1))) == doctest::Approx(1.3));
}

TEST_CASE("translation length and axis") {
  const Isometry s = Isometry::scaling(std::exp(0.75));
  CHECK(translation_length(s) == doctest::Approx(1.5));
  const HGeodesic ax = axis(s);
  CHECK(ax.start().value() == doctest::Approx(0.0));
  CHECK(ax.end().is_infinite());
  CHECK_THROWS_AS(translation_length(Isometry()), GeometryError);
}

TEST_CASE("nested semicircles are log R apart") {
  for (double r : {1.5, 3.0, 40.0}) {
    CHECK(dist_geodesics(semicircle(-1, 1), semicircle(-r, r)) ==
          doctest::Approx(std::log(r)).epsilon(1e-13));
  }
}

TEST_CASE("intersecting and asymptotic geodesics have no perpendicular") {
  CHECK_THROWS_AS(dist_geodesics(semicircle(-1, 1), semicircle(0, 2)), GeometryError);
  CHECK_THROWS_AS(dist_geodesics(semicircle(-1, 1), semicircle(1, 2)), GeometryError);
}

TEST_CASE("distance between geodesics matches minimization oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int checked = 0;
  while (checked < 100) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    const bool linked = (a < c && c < b) != (a < d && d < b);
    if (linked || b - a < 0.05 || d - c < 0.05 || std::abs(a - c) < 0.05 ||
        std::abs(b - d) < 0.05 || std::abs(a - d) < 0.05 ||
        std::abs(b - c) < 0.05) {
      continue;
    }
    const HGeodesic g1 = semicircle(a, b), g2 = semicircle(d, c);
    const double got = dist_geodesics(g1, g2);
    CHECK(got == doctest::Approx(orthospec::app::oracles::min_distance_geodesics(
                                     g1, g2))
                     .epsilon(1e-9));
    ++checked;
  }
}

TEST_CASE("common perpendicular feet realize the distance") {
  const HGeodesic g1 = semicircle(-1, 1);
  const HGeodesic g2 = semicircle(2, 5);
  const Perpendicular p = common_perpendicular(g1, g2);
  CHECK(dist_points(p.foot1, p.foot2) == doctest::Approx(p.length).epsilon(1e-12));
  CHECK(dist_point_geodesic(p.foot1, g1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dist_point_geodesic(p.foot2, g2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.length == doctest::Approx(dist_geodesics(g1, g2)));
}

TEST_CASE("signed distance is positive on the left") {
  // The imaginary axis from 0 to oo has the left half-plane x < 0.
  const HGeodesic v(IdealPoint::finite(0.0), IdealPoint::infinity());
  CHECK(signed_sinh_distance(v, HPoint(-1, 1)) > 0.0);
  CHECK(signed_sinh_distance(v, HPoint(1, 1)) < 0.0);
  CHECK(dist_point_geodesic(HPoint(1, 1), v) == doctest::Approx(std::asinh(1.0)));
}

TEST_CASE("standard frame sends a geodesic to the imaginary axis") {
  const HGeodesic g = semicircle(0.5, 3.0);
  const Isometry f = standard_frame(g);
  const HGeodesic image = f.apply(g);
  CHECK(image.start().value() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(image.end().is_infinite());
  const HPoint z(1.0, 2.0);
  const double t = projection_parameter(f, z);
  const HPoint foot = f.inverse().apply(HPoint(0.0, std::exp(t)));
  CHECK(dist_points(z, foot) ==
        doctest::Approx(dist_point_geodesic(z, g)).epsilon(1e-12));
}

TEST_CASE("segment to half-plane distance") {
  const HGeodesic v(IdealPoint::finite(0.0), IdealPoint::infinity());
  const GeodesicSegment seg{standard_frame(semicircle(1.0, 3.0)), -0.5, 0.5};
  CHECK(dist_segment_halfplane(seg, v) > 0.0);
  CHECK(dist_segment_halfplane(seg, v.reversed()) == 0.0);
}

TEST_CASE("distances are invariant under isometries") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const HGeodesic g1 = semicircle(-1, 1), g2 = semicircle(2, 5);
  const double d = dist_geodesics(g1, g2);
  for (int k = 0; k < 50; ++k) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (std::abs(a) < 0.3) continue;
    const Isometry h(a, b, c, (1 + b * c) / a);
    CHECK(std::abs(dist_geodesics(h.apply(g1), h.apply(g2)) - d) < 1e-12);
  }
}
