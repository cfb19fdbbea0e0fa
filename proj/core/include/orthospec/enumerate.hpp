#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orthospec/errors.hpp"
#include "orthospec/hyp2.hpp"
#include "orthospec/surfaces.hpp"
#include "orthospec/word.hpp"

namespace orthospec::enumerate {

struct EnumerationOptions {
  double cutoff = 10.0;
  /// Node expansions allowed before giving up.
  std::uint64_t budget = 100'000'000;
  /// Only words (coset representatives for orthogeodesics) up to this
  /// length are reported; unlimited when empty.
  std::optional<std::size_t> max_word_length;
  /// Worker threads; the result does not depend on this.
  unsigned threads = 1;
};

struct ArcRecord {
  double length;
  Word word;  // the arc lifts to the segment from x to word * y
};

struct ArcSpectrum {
  hyp2::HPoint x{0.0, 1.0};
  hyp2::HPoint y{0.0, 1.0};
  double cutoff = 0.0;
  std::vector<ArcRecord> arcs;  // sorted by (length, word)

  std::vector<double> lengths() const;
};

struct OrthoRecord {
  double length;
  int from_boundary;
  int to_boundary;
  Word coset_rep;  // canonical in <b_from> \ G / <b_to>
};

/// Oriented orthospectrum: an orthogeodesic and its reversal are distinct
/// records of equal length.
struct Orthospectrum {
  surfaces::SurfaceSpec surface;
  double cutoff = 0.0;
  bool oriented = true;
  std::vector<OrthoRecord> records;  // sorted by (length, from, to, word)

  std::vector<double> lengths() const;
};

/// Thrown when the node budget runs out. Carries everything found so far
/// and the smallest lower bound among unexplored subtrees; the partial
/// result is complete only below that bound.
template <class Partial>
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(Partial partial, double unexplored_bound)
      : Error("enumeration budget exhausted"),
        partial_(std::move(partial)),
        unexplored_bound_(unexplored_bound) {}

  const Partial& partial() const { return partial_; }
  double unexplored_bound() const { return unexplored_bound_; }

 private:
  Partial partial_;
  double unexplored_bound_;
};

/// All g in the group with d(x, g y) <= cutoff, each exactly once.
///
/// x and y must lie in the fundamental domain of the convex core. A prefix
/// w of a reduced word is pruned once the distance from x to the nested
/// ping-pong half-plane of w exceeds the cutoff; every extension of w moves
/// y inside that half-plane, so nothing within the cutoff is lost.
ArcSpectrum enumerate_arcs(const surfaces::SurfaceModel& model,
                           const hyp2::HPoint& x, const hyp2::HPoint& y,
                           const EnumerationOptions& options);

/// All oriented orthogeodesics of length <= cutoff.
///
/// For each ordered boundary pair (i, j), the lifts of boundary j are
/// c * B for base lifts B crossing the fundamental domain and reduced words
/// c; they are walked as a tree in c with the same nested half-plane bound,
/// measured from a fundamental segment of the axis of b_i. A lift is kept
/// when its perpendicular foot falls in that segment, which picks one
/// representative per double coset <b_i> g <b_j>.
Orthospectrum enumerate_orthogeodesics(const surfaces::SurfaceModel& model,
                                       const EnumerationOptions& options);

/// Length of the orthogeodesic (i, j, g), from the trace identity
/// tr(A B) - tr(A B^-1) = 4 sinh(l_A / 2) sinh(l_B / 2) cosh d for
/// A = b_i and B = g b_j g^-1.
double orthogeodesic_length(const surfaces::SurfaceModel& model, int from,
                            int to, const Word& g);

/// The reversed orthogeodesic (j, i, g^-1), canonicalized.
OrthoRecord reversed(const surfaces::SurfaceModel& model,
                     const OrthoRecord& record);

/// One record per unoriented orthogeodesic: of (i, j, g) and its reversal,
/// the one with the smaller (from, to, word) key is kept.
Orthospectrum unoriented(const surfaces::SurfaceModel& model,
                         const Orthospectrum& spectrum);

/// N(l) = #{lengths <= l}. Throws DomainError when l > cutoff.
std::size_t counting_function(const Orthospectrum& spectrum, double ell);
std::size_t counting_function(const ArcSpectrum& spectrum, double ell);

}  // namespace orthospec::enumerate
