#include "orthospec/hyp2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orthospec/errors.hpp"

namespace orthospec::hyp2 {

namespace {

constexpr double kDegenerateEndpoint = 1e-15;

}  // namespace

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
    throw DomainError("point not in the upper half-plane");
  }
}

IdealPoint::IdealPoint(double num, double den) {
  if (!std::isfinite(num) || !std::isfinite(den)) {
    throw DomainError("ideal point coordinates must be finite");
  }
  const double scale = std::max(std::abs(num), std::abs(den));
  if (scale == 0.0) throw DomainError("ideal point (0:0) is undefined");
  num /= scale;
  den /= scale;
  if (den < 0.0 || (den == 0.0 && num < 0.0)) {
    num = -num;
    den = -den;
  }
  num_ = num;
  den_ = den;
}

double IdealPoint::value() const {
  return is_infinite() ? std::numeric_limits<double>::infinity() : num_ / den_;
}

double bracket(const IdealPoint& p, const IdealPoint& q) {
  return p.num() * q.den() - p.den() * q.num();
}

bool same_ideal_point(const IdealPoint& p, const IdealPoint& q, double tol) {
  return std::abs(bracket(p, q)) <= tol;
}

HGeodesic::HGeodesic(IdealPoint start, IdealPoint end)
    : start_(start), end_(end) {
  if (same_ideal_point(start_, end_)) {
    throw DomainError("geodesic endpoints coincide");
  }
}

Isometry::Isometry(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!std::isfinite(det) || !(det > 0.0)) {
    throw DomainError("isometry needs a positive determinant");
  }
  const double s = 1.0 / std::sqrt(det);
  a_ = a * s;
  b_ = b * s;
  c_ = c * s;
  d_ = d * s;
  normalize_sign();
}

Isometry::Isometry(Unimodular, double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(d)) {
    throw NumericError("isometry entries overflow");
  }
  normalize_sign();
}

void Isometry::normalize_sign() {
  const double tr = a_ + d_;
  if (tr < 0.0 || (tr == 0.0 && (c_ < 0.0 || (c_ == 0.0 && d_ < 0.0)))) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

Isometry Isometry::scaling(double lambda) {
  return {lambda, 0.0, 0.0, 1.0 / lambda};
}

Isometry Isometry::translation_along_unit_circle(double distance) {
  const double c = std::cosh(distance / 2.0);
  const double s = std::sinh(distance / 2.0);
  return {c, s, s, c};
}

Isometry Isometry::inverse() const {
  return {Unimodular{}, d_, -b_, -c_, a_};
}

Isometry operator*(const Isometry& g, const Isometry& h) {
  return {Isometry::Unimodular{}, g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
          g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_};
}

HPoint Isometry::apply(const HPoint& z) const {
  const double dx = c_ * z.x() + d_;
  const double dy = c_ * z.y();
  const double den = dx * dx + dy * dy;
  if (!(den >= 1e-300) || !std::isfinite(den)) {
    throw NumericError("Mobius denominator underflow");
  }
  const double nx = a_ * z.x() + b_;
  const double ny = a_ * z.y();
  // (nx + i ny)(dx - i dy) / den
  const double re = (nx * dx + ny * dy) / den;
  const double im = z.y() / den;
  if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im)) {
    throw NumericError("Mobius image left the upper half-plane");
  }
  return {re, im};
}

IdealPoint Isometry::apply(const IdealPoint& p) const {
  return {a_ * p.num() + b_ * p.den(), c_ * p.num() + d_ * p.den()};
}

HGeodesic Isometry::apply(const HGeodesic& g) const {
  return {apply(g.start()), apply(g.end())};
}

bool Isometry::approx_equal(const Isometry& other, double tol) const {
  return std::abs(a_ - other.a_) <= tol && std::abs(b_ - other.b_) <= tol &&
         std::abs(c_ - other.c_) <= tol && std::abs(d_ - other.d_) <= tol;
}

double dist_points(const HPoint& z, const HPoint& w) {
  const double chord = std::abs(z.z() - w.z());
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(z.y() * w.y())));
}

double translation_length(const Isometry& g) {
  const double t = std::abs(g.trace());
  if (!(t > 2.0)) throw GeometryError("not hyperbolic");
  return 2.0 * std::acosh(t / 2.0);
}

namespace {

IdealPoint eigen_direction(const Isometry& g, double lambda) {
  const double v1x = g.b();
  const double v1y = lambda - g.a();
  const double v2x = lambda - g.d();
  const double v2y = g.c();
  if (std::hypot(v1x, v1y) >= std::hypot(v2x, v2y)) return {v1x, v1y};
  return {v2x, v2y};
}

}  // namespace

HGeodesic axis(const Isometry& g) {
  const double t = g.trace();
  if (!(t > 2.0)) throw GeometryError("not hyperbolic");
  const double disc = std::sqrt((t - 2.0) * (t + 2.0));
  const double big = (t + disc) / 2.0;
  return {eigen_direction(g, 1.0 / big), eigen_direction(g, big)};
}

Isometry standard_frame(const HGeodesic& g) {
  const IdealPoint& p = g.start();
  const IdealPoint& q = g.end();
  const double det = bracket(p, q);
  if (det > 0.0) return {p.den(), -p.num(), q.den(), -q.num()};
  return {-p.den(), p.num(), q.den(), -q.num()};
}

double signed_sinh_distance(const HGeodesic& g, const HPoint& z) {
  const HPoint w = standard_frame(g).apply(z);
  return -w.x() / w.y();
}

double dist_point_geodesic(const HPoint& z, const HGeodesic& g) {
  return std::asinh(std::abs(signed_sinh_distance(g, z)));
}

namespace {

void require_no_shared_endpoint(const HGeodesic& g1, const HGeodesic& g2) {
  for (const IdealPoint* p : {&g1.start(), &g1.end()}) {
    for (const IdealPoint* q : {&g2.start(), &g2.end()}) {
      if (same_ideal_point(*p, *q)) {
        throw GeometryError("no common perpendicular: asymptotic geodesics");
      }
    }
  }
}

}  // namespace

double dist_geodesics(const HGeodesic& g1, const HGeodesic& g2) {
  require_no_shared_endpoint(g1, g2);
  const IdealPoint& a1 = g1.start();
  const IdealPoint& b1 = g1.end();
  const IdealPoint& a2 = g2.start();
  const IdealPoint& b2 = g2.end();
  // sinh^2(d/2) in cancellation-free form (Pluecker relation applied to the
  // cross-ratio of the four endpoints).
  const double q =
      bracket(a2, a1) * bracket(b2, b1) / (bracket(a2, b2) * bracket(b1, a1));
  double sinh_sq;
  if (q > 0.0) {
    sinh_sq = q;
  } else if (q < -1.0) {
    sinh_sq = -1.0 - q;
  } else {
    throw GeometryError("no common perpendicular: geodesics intersect");
  }
  return 2.0 * std::asinh(std::sqrt(sinh_sq));
}

Perpendicular common_perpendicular(const HGeodesic& g1, const HGeodesic& g2) {
  require_no_shared_endpoint(g1, g2);
  Isometry frame = standard_frame(g1);
  IdealPoint u = frame.apply(g2.start());
  IdealPoint v = frame.apply(g2.end());
  for (const IdealPoint* p : {&u, &v}) {
    if (std::abs(p->num()) <= kDegenerateEndpoint ||
        std::abs(p->den()) <= kDegenerateEndpoint) {
      throw GeometryError("no common perpendicular: asymptotic geodesics");
    }
  }
  double lo = u.value();
  double hi = v.value();
  if (lo * hi <= 0.0) {
    throw GeometryError("no common perpendicular: geodesics intersect");
  }
  if (lo < 0.0) {
    // z -> -1/z fixes the imaginary axis and moves g2 to the right side.
    frame = Isometry(0.0, -1.0, 1.0, 0.0) * frame;
    lo = -1.0 / lo;
    hi = -1.0 / hi;
  }
  if (lo > hi) std::swap(lo, hi);
  const double r = std::sqrt(lo * hi);
  const HPoint f1(0.0, r);
  const HPoint f2(2.0 * lo * hi / (lo + hi), r * (hi - lo) / (lo + hi));
  const Isometry back = frame.inverse();
  const double length = 2.0 * std::asinh(std::sqrt(lo / (hi - lo)));
  return {back.apply(f1), back.apply(f2), length};
}

HPoint GeodesicSegment::at(double t) const {
  return frame.inverse().apply(HPoint(0.0, std::exp(t)));
}

double dist_segment_halfplane(const GeodesicSegment& segment,
                              const HGeodesic& boundary) {
  // Along the carrier, sinh of the signed distance to `boundary` is
  // alpha e^t + beta e^-t.
  const Isometry n = standard_frame(segment.frame.apply(boundary));
  const double alpha = -n.a() * n.c();
  const double beta = -n.b() * n.d();
  auto f = [&](double t) { return alpha * std::exp(t) + beta * std::exp(-t); };
  double best = std::max(f(segment.lo), f(segment.hi));
  if (alpha * beta > 0.0) {
    const double t_star = 0.5 * std::log(beta / alpha);
    if (t_star > segment.lo && t_star < segment.hi) {
      best = std::max(best, f(t_star));
    }
  }
  return best >= 0.0 ? 0.0 : std::asinh(-best);
}

double projection_parameter(const Isometry& frame, const HPoint& z) {
  return std::log(std::abs(frame.apply(z).z()));
}

}  // namespace orthospec::hyp2
