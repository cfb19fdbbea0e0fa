#pragma once

#include <complex>
#include <string>

namespace orthospec::hyp2 {

/// Lengths beyond this are rejected so that cosh stays finite.
inline constexpr double kMaxLength = 60.0;

/// A point of the upper half-plane.
class HPoint {
 public:
  /// Throws DomainError unless y > 0 and both coordinates are finite.
  HPoint(double x, double y);
  explicit HPoint(std::complex<double> z) : HPoint(z.real(), z.imag()) {}

  double x() const { return x_; }
  double y() const { return y_; }
  std::complex<double> z() const { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

/// A point of the ideal boundary R u {oo}, stored projectively as num/den.
/// The point at infinity is the tagged value den == 0.
class IdealPoint {
 public:
  static IdealPoint finite(double t) { return IdealPoint(t, 1.0); }
  static IdealPoint infinity() { return IdealPoint(1.0, 0.0); }
  /// Throws DomainError if both coordinates vanish.
  IdealPoint(double num, double den);

  double num() const { return num_; }
  double den() const { return den_; }
  bool is_infinite() const { return den_ == 0.0; }
  /// Affine coordinate; +inf for the point at infinity.
  double value() const;

 private:
  double num_;
  double den_;
};

/// Determinant [p q] = p.num q.den - p.den q.num.
double bracket(const IdealPoint& p, const IdealPoint& q);

/// Whether p and q are the same ideal point up to a relative tolerance.
bool same_ideal_point(const IdealPoint& p, const IdealPoint& q,
                      double tol = 1e-12);

/// An oriented complete geodesic, given by its ideal endpoints. Used both as
/// a line and as the half-plane to its left.
class HGeodesic {
 public:
  /// Throws DomainError if the endpoints coincide.
  HGeodesic(IdealPoint start, IdealPoint end);

  const IdealPoint& start() const { return start_; }
  const IdealPoint& end() const { return end_; }
  HGeodesic reversed() const { return {end_, start_}; }

 private:
  IdealPoint start_;
  IdealPoint end_;
};

/// An orientation-preserving isometry, i.e. an element of PSL(2, R).
///
/// Entries are normalized to determinant +1 with a + d >= 0 (ties broken
/// by c > 0, then d > 0), so equal isometries have equal entries.
class Isometry {
 public:
  /// Identity.
  Isometry() = default;
  /// Throws DomainError unless ad - bc > 0 and the entries are finite.
  Isometry(double a, double b, double c, double d);

  static Isometry identity() { return {}; }
  /// z -> lambda^2 z.
  static Isometry scaling(double lambda);
  /// Hyperbolic element with axis (-1, 1), moving i towards 1 by `distance`.
  static Isometry translation_along_unit_circle(double distance);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double trace() const { return a_ + d_; }
  bool is_hyperbolic() const { return trace() > 2.0; }

  Isometry inverse() const;
  friend Isometry operator*(const Isometry& g, const Isometry& h);

  /// Throws NumericError when |cz + d|^2 underflows below 1e-300.
  HPoint apply(const HPoint& z) const;
  IdealPoint apply(const IdealPoint& p) const;
  HGeodesic apply(const HGeodesic& g) const;

  /// Entrywise comparison after normalization.
  bool approx_equal(const Isometry& other, double tol = 1e-9) const;

 private:
  // Entries already of determinant one (products and inverses); only the
  // sign is normalized, since recomputing ad - bc cancels badly for long
  // words.
  struct Unimodular {};
  Isometry(Unimodular, double a, double b, double c, double d);
  void normalize_sign();

  double a_ = 1.0;
  double b_ = 0.0;
  double c_ = 0.0;
  double d_ = 1.0;
};

double dist_points(const HPoint& z, const HPoint& w);

/// 2 arccosh(|tr g| / 2). Throws GeometryError "not hyperbolic" otherwise.
double translation_length(const Isometry& g);

/// Axis oriented from the repelling to the attracting fixed point.
HGeodesic axis(const Isometry& g);

/// Orientation-preserving isometry taking `g` to the imaginary axis, with
/// start -> 0 and end -> oo.
Isometry standard_frame(const HGeodesic& g);

/// sinh of the signed distance from z to g, positive on the left of g.
double signed_sinh_distance(const HGeodesic& g, const HPoint& z);

double dist_point_geodesic(const HPoint& z, const HGeodesic& g);

/// Distance between disjoint, non-asymptotic geodesics. Throws
/// GeometryError "no common perpendicular" otherwise.
double dist_geodesics(const HGeodesic& g1, const HGeodesic& g2);

struct Perpendicular {
  HPoint foot1;
  HPoint foot2;
  double length;
};

/// Feet of the common perpendicular; foot1 on g1, foot2 on g2.
Perpendicular common_perpendicular(const HGeodesic& g1, const HGeodesic& g2);

/// The geodesic segment frame^{-1}({i e^t : lo <= t <= hi}).
struct GeodesicSegment {
  Isometry frame;  // takes the carrier geodesic to the imaginary axis
  double lo;
  double hi;

  HPoint at(double t) const;
};

/// Distance from a segment to the left half-plane of `boundary`; zero when
/// they meet.
double dist_segment_halfplane(const GeodesicSegment& segment,
                              const HGeodesic& boundary);

/// Position of the orthogonal projection of z onto the carrier of `frame`,
/// as the parameter t with projection = frame^{-1}(i e^t).
double projection_parameter(const Isometry& frame, const HPoint& z);

}  // namespace orthospec::hyp2
