#pragma once

#include <vector>

#include "orthospec/enumerate.hpp"
#include "orthospec/hyp2.hpp"
#include "orthospec/surfaces.hpp"
#include "orthospec/word.hpp"

/// Slow reference implementations. They share no formulas with the code
/// they check beyond the point-to-point distance.
namespace orthospec::app::oracles {

/// Distance between two geodesics by direct minimization of d(p(s), q(t))
/// over arclength parameters, a coarse grid followed by Nelder-Mead.
double min_distance_geodesics(const hyp2::HGeodesic& g1,
                              const hyp2::HGeodesic& g2);

/// Point of `g` at arclength parameter s.
hyp2::HPoint point_on(const hyp2::HGeodesic& g, double s);

/// Seam between boundaries of lengths Li and Lj (full lengths) opposite a
/// boundary of length Lk: cosh d = (cosh lk + cosh li cosh lj) /
/// (sinh li sinh lj) with half-lengths li, lj, lk.
double hexagon_seam(double Li, double Lj, double Lk);

/// All reduced words of length <= n, built breadth first.
std::vector<Word> word_ball(std::size_t n);

/// Every g with |g| <= max_len and d(x, g y) <= cutoff.
std::vector<enumerate::ArcRecord> naive_arcs(
    const surfaces::SurfaceModel& model, const hyp2::HPoint& x,
    const hyp2::HPoint& y, double cutoff, std::size_t max_len);

/// Shortlex-minimal word among a^m g b^n for |m|, |n| <= reach.
Word brute_canonical(const Word& a, const Word& g, const Word& b, int reach);

/// Oriented orthogeodesics of length <= cutoff whose double coset has a
/// representative of length <= max_len. Lifts g * axis(b_j) are reduced
/// modulo <b_i> geometrically, then named by brute_canonical.
std::vector<enumerate::OrthoRecord> naive_orthogeodesics(
    const surfaces::SurfaceModel& model, double cutoff, std::size_t max_len);

}  // namespace orthospec::app::oracles
