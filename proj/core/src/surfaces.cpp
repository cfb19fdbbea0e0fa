#include "orthospec/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "orthospec/errors.hpp"

namespace orthospec::surfaces {

using hyp2::HGeodesic;
using hyp2::HPoint;
using hyp2::IdealPoint;
using hyp2::Isometry;

std::string to_string(SurfaceKind kind) {
  return kind == SurfaceKind::Pants ? "pants" : "one-holed-torus";
}

SurfaceKind surface_kind_from_string(const std::string& text) {
  if (text == "pants") return SurfaceKind::Pants;
  if (text == "one-holed-torus") return SurfaceKind::OneHoledTorus;
  throw DomainError("unknown surface kind '" + text + "'");
}

void SurfaceSpec::validate() const {
  const std::size_t expected = kind == SurfaceKind::Pants ? 3 : 1;
  if (boundary_lengths.size() != expected) {
    throw DomainError(to_string(kind) + " needs " + std::to_string(expected) +
                      " boundary lengths");
  }
  for (double len : boundary_lengths) {
    if (!std::isfinite(len) || !(len > 0.0) || len > kMaxBoundaryLength) {
      std::ostringstream msg;
      msg << "boundary length " << len << " outside (0, " << kMaxBoundaryLength
          << "]";
      throw DomainError(msg.str());
    }
  }
}

Isometry SurfaceModel::evaluate(const Word& w) const {
  Isometry g;
  for (Letter l : w.letters()) g = g * generators_[index(l)];
  return g;
}

double hexagon_seam_length(double li, double lj, double lk) {
  const double c = (std::cosh(li) * std::cosh(lj) + std::cosh(lk)) /
                   (std::sinh(li) * std::sinh(lj));
  return std::acosh(c);
}

namespace {

std::vector<BoundaryLift> compute_base_lifts(const SurfaceModel& model) {
  std::vector<BoundaryLift> lifts;
  for (int j = 0; j < model.boundary_count(); ++j) {
    const Word& b = model.boundary_words()[j];
    const Word b_inv = b.inverse();
    // A minimal coset representative h has both rays starting with h's
    // first letter once |h| > |b| / 2, so short words suffice.
    const std::size_t max_len = b.size() + 1;
    const std::size_t ray_len = 2 * (max_len + b.size()) + 4;
    std::map<std::pair<std::vector<Letter>, std::vector<Letter>>, Word> found;
    for (const Word& h : reduced_words_up_to(max_len)) {
      auto forward = ray_prefix(h, b, ray_len);
      auto backward = ray_prefix(h, b_inv, ray_len);
      if (forward.front() == backward.front()) continue;
      auto key = std::make_pair(std::move(forward), std::move(backward));
      auto it = found.find(key);
      if (it == found.end() || h < it->second) found[key] = h;
    }
    std::vector<BoundaryLift> for_boundary;
    for (const auto& [rays, h] : found) {
      for_boundary.push_back(
          BoundaryLift{j, h, model.evaluate(h).apply(model.boundary_axes()[j]),
                       rays.first.front(), rays.second.front()});
    }
    std::sort(for_boundary.begin(), for_boundary.end(),
              [](const BoundaryLift& a, const BoundaryLift& b) {
                return a.coset_word < b.coset_word;
              });
    lifts.insert(lifts.end(), for_boundary.begin(), for_boundary.end());
  }
  return lifts;
}

/// A point at sinh-distance `offset` to the left of `g`, over frame point i.
HPoint offset_point(const HGeodesic& g, double t, double offset) {
  const Isometry back = hyp2::standard_frame(g).inverse();
  // In the frame the geodesic is the upward imaginary axis; its left side
  // is Re < 0, and -x/y = offset at (x, y) = (-offset e^t, e^t).
  return back.apply(HPoint(-offset * std::exp(t), std::exp(t)));
}

}  // namespace

std::string pingpong_failure(const SurfaceModel& model) {
  constexpr double kBoundaryTol = 1e-9;
  // Disks pairwise disjoint: each boundary lies outside every other disk.
  for (Letter s : kLetters) {
    for (Letter t : kLetters) {
      if (s == t) continue;
      try {
        if (!(hyp2::dist_geodesics(model.disk(s), model.disk(t)) > 0.0)) {
          return "disk boundaries touch";
        }
      } catch (const GeometryError&) {
        return std::string("disk boundaries of ") + to_char(s) + " and " +
               to_char(t) + " meet";
      }
      const HPoint probe = offset_point(model.disk(t), 0.0, 0.0);
      if (hyp2::signed_sinh_distance(model.disk(s), probe) >= 0.0) {
        return std::string("disk ") + to_char(t) + " inside disk " +
               to_char(s);
      }
    }
  }
  // s maps the outside of D(s^-1) onto the closure of D(s).
  for (Letter s : kLetters) {
    const Isometry& g = model.generator(s);
    const HGeodesic& source = model.disk(inverse(s));
    const HGeodesic& target = model.disk(s);
    for (int k = -16; k <= 16; ++k) {
      const double t = 0.25 * k;
      const HPoint on_wall = offset_point(source, t, 0.0);
      const double on = hyp2::signed_sinh_distance(target, g.apply(on_wall));
      if (std::abs(on) > kBoundaryTol) {
        return std::string("generator ") + to_char(s) +
               " does not map wall to wall";
      }
      const HPoint outside = offset_point(source, t, -0.5);
      if (!(hyp2::signed_sinh_distance(target, g.apply(outside)) > 0.0)) {
        return std::string("generator ") + to_char(s) +
               " maps the outside of its inverse disk to the wrong side";
      }
    }
  }
  return {};
}

SurfaceModel build_pants(double L1, double L2, double L3) {
  SurfaceSpec spec{SurfaceKind::Pants, {L1, L2, L3}};
  spec.validate();

  const double seam12 = hexagon_seam_length(L1 / 2, L2 / 2, L3 / 2);
  const Isometry x = Isometry::scaling(std::exp(L1 / 2));
  const Isometry to_y = Isometry::translation_along_unit_circle(seam12);
  // Y translates against the direction induced from X so that XY is the
  // third boundary, not the figure-eight curve XY^-1.
  const Isometry y =
      to_y * Isometry::scaling(std::exp(-L2 / 2)) * to_y.inverse();

  SurfaceModel m;
  m.spec_ = spec;
  m.generators_ = {x, x.inverse(), y, y.inverse()};
  m.boundary_words_ = {Word::parse("X"), Word::parse("Y"), Word::parse("XY")};
  for (const Word& w : m.boundary_words_) {
    const Isometry g = m.evaluate(w);
    m.boundary_axes_.push_back(hyp2::axis(g));
    m.boundary_lengths_.push_back(hyp2::translation_length(g));
  }
  m.euler_char_ = -1;
  m.area_ = 2.0 * std::numbers::pi * std::abs(m.euler_char_);

  const double ax = std::exp(L1 / 2);
  const double ay = std::exp(L2 / 2);
  const auto pt = [](double t) { return IdealPoint::finite(t); };
  m.disks_ = {
      HGeodesic(pt(-ax), pt(ax)),              // X: |z| > e^{L1/2}
      HGeodesic(pt(1 / ax), pt(-1 / ax)),      // X^-1: |z| < e^{-L1/2}
      to_y.apply(HGeodesic(pt(1 / ay), pt(-1 / ay))),  // Y
      to_y.apply(HGeodesic(pt(-ay), pt(ay))),  // Y^-1
  };
  m.midpoint_ =
      Isometry::translation_along_unit_circle(seam12 / 2).apply(HPoint(0, 1));

  for (int j = 0; j < 3; ++j) {
    if (std::abs(m.boundary_lengths_[j] - spec.boundary_lengths[j]) > 1e-9) {
      throw ConstructionError("realized boundary length mismatch");
    }
  }
  if (const std::string why = pingpong_failure(m); !why.empty()) {
    throw ConstructionError("construction not discrete: " + why);
  }
  m.base_lifts_ = compute_base_lifts(m);
  return m;
}

SurfaceModel build(const SurfaceSpec& spec) {
  spec.validate();
  if (spec.kind != SurfaceKind::Pants) {
    throw DomainError("one-holed torus construction is not enabled");
  }
  return build_pants(spec.boundary_lengths[0], spec.boundary_lengths[1],
                     spec.boundary_lengths[2]);
}

double boundary_total_length(const SurfaceModel& model) {
  double total = 0.0;
  for (double len : model.boundary_lengths()) total += len;
  return total;
}

CoreMembership contains_in_core(const SurfaceModel& model, const HPoint& z,
                                double tol) {
  CoreMembership out;
  for (Letter s : kLetters) {
    const double side = hyp2::signed_sinh_distance(model.disk(s), z);
    if (std::abs(side) <= tol) {
      out.ambiguous = true;
      return out;
    }
    if (side > 0.0) return out;
  }
  for (const BoundaryLift& lift : model.base_lifts()) {
    const double side = hyp2::signed_sinh_distance(lift.geodesic, z);
    if (std::abs(side) <= tol) {
      out.ambiguous = true;
      return out;
    }
    const double ref =
        hyp2::signed_sinh_distance(lift.geodesic, model.domain_midpoint());
    if ((side > 0.0) != (ref > 0.0)) return out;
  }
  out.inside = true;
  return out;
}

}  // namespace orthospec::surfaces
