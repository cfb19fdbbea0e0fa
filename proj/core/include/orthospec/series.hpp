#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orthospec/enumerate.hpp"
#include "orthospec/surfaces.hpp"

namespace orthospec::series {

/// Sum of e^{-s l} over `lengths`, ascending, with Neumaier compensation.
double partial_sum(std::span<const double> lengths, double s);
std::complex<double> partial_sum(std::span<const double> lengths,
                                 std::complex<double> s);

/// N(l) = #{lengths <= l} for sorted `lengths`.
std::size_t count_up_to(std::span<const double> lengths, double ell);

struct DeltaEstimate {
  double delta = 0.0;
  double standard_error = 0.0;
  /// Set when delta falls outside (0, 1).
  bool out_of_range = false;
};

/// Growth rate of N(l): least-squares slope of log N against l over the
/// upper half of [l_min, l_max]. Needs at least 200 lengths.
DeltaEstimate estimate_delta(std::span<const double> lengths);

/// One term of a tail model: c e^{delta l} for a real term, or
/// 2 Re(c e^{(sigma + i omega) l}) for a conjugate pair.
struct TailTerm {
  std::complex<double> exponent;
  std::complex<double> coefficient;
  bool pair = false;

  double evaluate(double ell) const;
};

struct TailModel {
  std::vector<TailTerm> terms;  // decreasing real part; terms[0] is real
  double constant = 0.0;        // c0
  double constant_stderr = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double residual = 0.0;  // weighted RMS of N - model on the window

  double evaluate(double ell) const;
};

struct FitOptions {
  /// Number of terms; the leading one is real, the others real or pairs.
  int terms = 2;
  /// Window [hi - f (hi - l_min), hi] as a fraction f of the data range.
  double window_fraction = 0.7;
  /// Right end of the window; the largest length when unset.
  std::optional<double> window_end;
  /// The least-squares weight is sin^taper over the window, times
  /// e^{-delta l} to balance the exponential growth.
  double taper = 6.0;
  int samples = 4000;
  int starts = 12;
  std::uint64_t seed = 1;
  /// Lower bound on every fitted exponent's real part.
  double min_exponent = 0.02;
};

/// Variable-projection least squares fit of N(l) ~ c0 + sum_k terms on the
/// window. Exponents are solved by multistart Levenberg-Marquardt with the
/// linear coefficients eliminated; among real/pair shapes the one with the
/// best BIC wins. Throws DomainError for a degenerate window or bad K, and
/// NumericError if no start converges.
TailModel fit_tail(std::span<const double> lengths, const FitOptions& options);

/// The Abel-continued series
///   sum_{l <= L} e^{-s l} - e^{-s L} N(L) + s int_L^oo e^{-s l} Nt(l) dl
/// with Nt the tail model and L = tail.window_hi. Each term integrates in
/// closed form; at s = 0 the value is the constant c0. Throws DomainError
/// when s is within 1e-6 of a fitted exponent.
std::complex<double> continue_with_tail(std::span<const double> lengths,
                                        std::complex<double> s,
                                        const TailModel& tail);

struct ContinuationOptions {
  std::vector<int> terms{1, 2};
  std::vector<double> window_fractions{0.7, 0.8};
  /// Window ends spread evenly over the top `end_span` of the data range.
  int window_ends = 5;
  double end_span = 0.2;
  /// Length up to which the data is complete; the largest length if unset.
  std::optional<double> cutoff;
  FitOptions fit;  // terms, window_fraction and window_end are overridden
  unsigned threads = 1;
};

struct GridPoint {
  int terms;
  double window_fraction;
  double window_end;
  double value;
  double constant_stderr;
};

struct SeriesEstimate {
  double s = 0.0;
  double value = 0.0;  // median over the grid
  double uncertainty = 0.0;
  double cutoff = 0.0;
  TailModel tail;  // the fit with the most terms, widest window, largest end
  std::vector<GridPoint> grid;
  /// Largest minus smallest per-window-end median.
  double end_spread = 0.0;
  /// Whether end_spread <= uncertainty.
  bool stable = false;
};

/// Continued series at real s, aggregated over a grid of (K, window,
/// window end) fits: the value is the median, the uncertainty the
/// interquartile range combined with the median c0 standard error.
SeriesEstimate continue_series(std::span<const double> lengths, double s,
                               const ContinuationOptions& options);

inline SeriesEstimate continue_at_zero(std::span<const double> lengths,
                                       const ContinuationOptions& options) {
  return continue_series(lengths, 0.0, options);
}

/// Continuation at 0 of the arc series from x to y.
SeriesEstimate eta_xy_at_zero(const surfaces::SurfaceModel& model,
                              const hyp2::HPoint& x, const hyp2::HPoint& y,
                              const enumerate::EnumerationOptions& enumeration,
                              const ContinuationOptions& continuation);

/// Rogers dilogarithm L(u) = Li2(u) + log(u) log(1 - u) / 2 on [0, 1],
/// with L(1) = pi^2 / 6.
double rogers_dilog(double u);

enum class DilogNormalization { Standard, Doubled, Halved };

std::string to_string(DilogNormalization n);
DilogNormalization dilog_normalization_from_string(const std::string& text);

/// |l(boundary) - sum over oriented records of 2 log coth(l / 2)|; an
/// unoriented spectrum counts each record twice.
double basmajian_residual(const enumerate::Orthospectrum& spectrum,
                          const surfaces::SurfaceModel& model);

/// |vol - (2 / pi) sum over oriented records of R(sech^2(l / 2))| with
/// vol = 2 pi |chi| and R the Rogers dilogarithm scaled by `normalization`.
double bridgeman_residual(
    const enumerate::Orthospectrum& spectrum,
    const surfaces::SurfaceModel& model,
    DilogNormalization normalization = DilogNormalization::Standard);

}  // namespace orthospec::series
