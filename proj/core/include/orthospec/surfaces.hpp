#pragma once

#include <array>
#include <string>
#include <vector>

#include "orthospec/hyp2.hpp"
#include "orthospec/word.hpp"

namespace orthospec::surfaces {

enum class SurfaceKind { Pants, OneHoledTorus };

std::string to_string(SurfaceKind kind);
SurfaceKind surface_kind_from_string(const std::string& text);

/// Largest admissible boundary length.
inline constexpr double kMaxBoundaryLength = 20.0;

struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::Pants;
  std::vector<double> boundary_lengths;

  /// Throws DomainError when lengths are missing, non-positive or > 20.
  void validate() const;
};

/// A lift of a boundary component whose two endpoints lie in different
/// top-level ping-pong disks. Every other lift of the same component is
/// c * geodesic for a unique reduced word c ending in a letter whose inverse
/// is neither `first_forward` nor `first_backward`.
struct BoundaryLift {
  int boundary = 0;
  Word coset_word;  // geodesic = coset_word * axis of the boundary word
  hyp2::HGeodesic geodesic;
  Letter first_forward;   // first letter of coset_word * b^(+oo)
  Letter first_backward;  // first letter of coset_word * b^(-oo)
};

struct CoreMembership {
  bool inside = false;
  /// Set when z is within the tolerance of a wall; inside is then false.
  bool ambiguous = false;
};

/// A hyperbolic surface with totally geodesic boundary, realized as the
/// convex core of a Schottky group <X, Y> acting on the upper half-plane.
///
/// Coordinates: the axis of X is the imaginary axis with attracting fixed
/// point oo, and i is the foot of the common perpendicular from that axis
/// to the axis of Y. Ping-pong disks are bounded by extensions of the
/// seams of the right-angled hexagon decomposition, so their complement
/// intersected with the convex hull is a fundamental domain for the core.
class SurfaceModel {
 public:
  const SurfaceSpec& spec() const { return spec_; }
  const hyp2::Isometry& generator(Letter l) const {
    return generators_[index(l)];
  }
  hyp2::Isometry evaluate(const Word& w) const;

  const std::vector<Word>& boundary_words() const { return boundary_words_; }
  const std::vector<hyp2::HGeodesic>& boundary_axes() const {
    return boundary_axes_;
  }
  const std::vector<double>& boundary_lengths() const {
    return boundary_lengths_;
  }
  int boundary_count() const { return static_cast<int>(boundary_words_.size()); }
  int euler_char() const { return euler_char_; }
  double area() const { return area_; }

  /// Ping-pong disk of a letter: the open half-plane to the left of the
  /// returned geodesic. The letter maps the complement of the disk of its
  /// inverse onto the closure of its own disk.
  const hyp2::HGeodesic& disk(Letter l) const { return disks_[index(l)]; }

  /// Reference point inside the fundamental domain: the midpoint of the
  /// seam joining the axes of X and Y.
  const hyp2::HPoint& domain_midpoint() const { return midpoint_; }

  /// Lifts of every boundary component that cross the fundamental domain.
  const std::vector<BoundaryLift>& base_lifts() const { return base_lifts_; }

  friend SurfaceModel build_pants(double, double, double);

 private:
  SurfaceModel() = default;

  SurfaceSpec spec_;
  std::array<hyp2::Isometry, 4> generators_;
  std::vector<Word> boundary_words_;
  std::vector<hyp2::HGeodesic> boundary_axes_;
  std::vector<double> boundary_lengths_;
  int euler_char_ = 0;
  double area_ = 0.0;
  std::vector<hyp2::HGeodesic> disks_;
  hyp2::HPoint midpoint_{0.0, 1.0};
  std::vector<BoundaryLift> base_lifts_;
};

/// Length of the common perpendicular between boundaries i and j of a pair
/// of pants with half-lengths li, lj and opposite half-length lk, from the
/// right-angled hexagon formula.
double hexagon_seam_length(double li, double lj, double lk);

/// Pair of pants with boundary words X, Y, XY of lengths L1, L2, L3.
/// Throws DomainError for lengths outside (0, 20] and ConstructionError if
/// the ping-pong certificate fails.
SurfaceModel build_pants(double L1, double L2, double L3);

SurfaceModel build(const SurfaceSpec& spec);

double boundary_total_length(const SurfaceModel& model);

/// Whether z lies in the closed fundamental domain of the convex core.
CoreMembership contains_in_core(const SurfaceModel& model,
                                const hyp2::HPoint& z,
                                double tol = 1e-9);

/// Checks the ping-pong configuration of `model` numerically: disks pairwise
/// disjoint and each generator mapping boundary to boundary with the right
/// sides. Returns an empty string on success, otherwise the failure.
std::string pingpong_failure(const SurfaceModel& model);

}  // namespace orthospec::surfaces
