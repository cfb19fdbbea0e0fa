#include "orthospec/series.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>

#include "orthospec/errors.hpp"

namespace orthospec::series {

namespace {

constexpr double kPi = std::numbers::pi;

/// Neumaier's compensated accumulator.
template <class T>
class Accumulator {
 public:
  void add(T v) {
    const T t = sum_ + v;
    if constexpr (std::is_same_v<T, double>) {
      comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    } else {
      comp_ += std::abs(sum_.real()) >= std::abs(v.real())
                   ? (sum_ - t) + v
                   : (v - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

void require_sorted(std::span<const double> lengths) {
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    if (!std::isfinite(lengths[k])) throw DomainError("non-finite length");
    if (k > 0 && lengths[k] < lengths[k - 1]) {
      throw DomainError("lengths must be sorted");
    }
  }
}

struct Line {
  double slope;
  double slope_stderr;
};

/// Least-squares line through log N(l) on midpoints of [lo, hi].
Line regress_log_count(std::span<const double> lengths, double lo, double hi,
                       int samples = 512) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs(samples), ys(samples);
  for (int k = 0; k < samples; ++k) {
    const double x = lo + (hi - lo) * (k + 0.5) / samples;
    const double n = static_cast<double>(count_up_to(lengths, x));
    xs[k] = x;
    ys[k] = std::log(std::max(n, 1.0));
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx / samples;
  const double my = sy / samples;
  for (int k = 0; k < samples; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0;
  for (int k = 0; k < samples; ++k) {
    const double r = ys[k] - my - slope * (xs[k] - mx);
    rss += r * r;
  }
  return {slope, std::sqrt(rss / (samples - 2) / sxx)};
}

double sigmoid(double q) { return 1.0 / (1.0 + std::exp(-q)); }
double logit(double p) {
  p = std::clamp(p, 1e-9, 1.0 - 1e-9);
  return std::log(p / (1.0 - p));
}

constexpr double kOmegaMin = 0.2;
constexpr double kOmegaMax = 25.0;

/// Fit problem for one shape: a leading real exponent, `reals` further
/// real exponents and `pairs` conjugate pairs. The unconstrained parameter
/// vector is mapped into the admissible box through sigmoids.
class Shape {
 public:
  Shape(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
        const Eigen::VectorXd& w, int reals, int pairs, double min_exp,
        double max_exp)
      : x_(x), y_(y), w_(w), reals_(reals), pairs_(pairs),
        min_exp_(min_exp), max_exp_(max_exp) {}

  int nonlinear() const { return 1 + reals_ + 2 * pairs_; }
  int linear() const { return 2 + reals_ + 2 * pairs_; }

  std::vector<TailTerm> decode(const Eigen::VectorXd& q) const {
    std::vector<TailTerm> terms;
    const double lead = min_exp_ + (max_exp_ - min_exp_) * sigmoid(q[0]);
    terms.push_back({lead, 0.0, false});
    int k = 1;
    for (int r = 0; r < reals_; ++r, ++k) {
      terms.push_back({min_exp_ + (lead - min_exp_) * sigmoid(q[k]), 0.0,
                       false});
    }
    for (int p = 0; p < pairs_; ++p, k += 2) {
      const double sigma = min_exp_ + (lead - min_exp_) * sigmoid(q[k]);
      const double omega =
          kOmegaMin + (kOmegaMax - kOmegaMin) * sigmoid(q[k + 1]);
      terms.push_back({{sigma, omega}, 0.0, true});
    }
    return terms;
  }

  Eigen::VectorXd encode(const std::vector<TailTerm>& terms) const {
    Eigen::VectorXd q(nonlinear());
    const double lead = terms[0].exponent.real();
    q[0] = logit((lead - min_exp_) / (max_exp_ - min_exp_));
    int k = 1;
    for (std::size_t t = 1; t < terms.size(); ++t) {
      const double sigma = terms[t].exponent.real();
      q[k++] = logit((sigma - min_exp_) / (lead - min_exp_));
      if (terms[t].pair) {
        q[k++] = logit((terms[t].exponent.imag() - kOmegaMin) /
                       (kOmegaMax - kOmegaMin));
      }
    }
    return q;
  }

  /// Weighted design matrix with columns scaled to unit max; `scale`
  /// receives the column factors.
  Eigen::MatrixXd design(const std::vector<TailTerm>& terms,
                         Eigen::VectorXd& scale) const {
    const Eigen::Index n = x_.size();
    Eigen::MatrixXd a(n, linear());
    a.col(0).setOnes();
    int c = 1;
    for (const TailTerm& t : terms) {
      const double sigma = t.exponent.real();
      if (!t.pair) {
        a.col(c++) = (sigma * x_.array()).exp();
      } else {
        const double omega = t.exponent.imag();
        a.col(c++) = (sigma * x_.array()).exp() * (omega * x_.array()).cos();
        a.col(c++) = (sigma * x_.array()).exp() * (omega * x_.array()).sin();
      }
    }
    a = w_.asDiagonal() * a;
    scale.resize(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double m = a.col(j).cwiseAbs().maxCoeff();
      scale[j] = m > 0.0 ? 1.0 / m : 1.0;
      a.col(j) *= scale[j];
    }
    return a;
  }

  /// Weighted residual for linear coefficients solved by QR; fills the
  /// unscaled coefficients when requested.
  Eigen::VectorXd residual(const Eigen::VectorXd& q,
                           Eigen::VectorXd* coeffs = nullptr) const {
    const auto terms = decode(q);
    Eigen::VectorXd scale;
    const Eigen::MatrixXd a = design(terms, scale);
    const Eigen::VectorXd yw = w_.cwiseProduct(y_);
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(yw);
    if (coeffs) *coeffs = c.cwiseProduct(scale);
    return a * c - yw;
  }

  const Eigen::VectorXd& weights() const { return w_; }
  const Eigen::VectorXd& samples() const { return x_; }
  const Eigen::VectorXd& values() const { return y_; }
  int reals() const { return reals_; }
  int pairs() const { return pairs_; }

 private:
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& y_;
  const Eigen::VectorXd& w_;
  int reals_;
  int pairs_;
  double min_exp_;
  double max_exp_;
};

struct ShapeFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const Shape* shape;
  int values_;

  int inputs() const { return shape->nonlinear(); }
  int values() const { return values_; }
  int operator()(const InputType& q, ValueType& r) const {
    r = shape->residual(q);
    return 0;
  }
};

struct ShapeFit {
  Eigen::VectorXd q;
  double rss = std::numeric_limits<double>::infinity();
};

ShapeFit solve_shape(const Shape& shape, double lead_start, int starts,
                     std::mt19937_64& rng) {
  ShapeFit best;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < starts; ++s) {
    std::vector<TailTerm> start{{lead_start, 0.0, false}};
    for (int r = 0; r < shape.reals(); ++r) {
      start.push_back({lead_start * (0.1 + 0.85 * unit(rng)), 0.0, false});
    }
    for (int p = 0; p < shape.pairs(); ++p) {
      const double sigma = lead_start * (0.1 + 0.85 * unit(rng));
      const double omega = 0.5 * std::pow(24.0, unit(rng));
      start.push_back({{sigma, omega}, 0.0, true});
    }
    Eigen::VectorXd q = shape.encode(start);
    ShapeFunctor f{&shape, static_cast<int>(shape.samples().size())};
    Eigen::NumericalDiff<ShapeFunctor> diff(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ShapeFunctor>> lm(diff);
    lm.parameters.maxfev = 400 * (shape.nonlinear() + 1);
    lm.minimize(q);
    if (!q.allFinite()) continue;
    const double rss = shape.residual(q).squaredNorm();
    if (std::isfinite(rss) && rss < best.rss) best = {q, rss};
    // A single real exponent needs no restarts.
    if (shape.nonlinear() == 1) break;
  }
  return best;
}

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const std::size_t k = static_cast<std::size_t>(pos);
  if (k + 1 >= v.size()) return v.back();
  return v[k] + (pos - static_cast<double>(k)) * (v[k + 1] - v[k]);
}

}  // namespace

double partial_sum(std::span<const double> lengths, double s) {
  Accumulator<double> acc;
  for (double ell : lengths) acc.add(std::exp(-s * ell));
  return acc.value();
}

std::complex<double> partial_sum(std::span<const double> lengths,
                                 std::complex<double> s) {
  Accumulator<std::complex<double>> acc;
  for (double ell : lengths) acc.add(std::exp(-s * ell));
  return acc.value();
}

std::size_t count_up_to(std::span<const double> lengths, double ell) {
  return static_cast<std::size_t>(
      std::upper_bound(lengths.begin(), lengths.end(), ell) - lengths.begin());
}

DeltaEstimate estimate_delta(std::span<const double> lengths) {
  if (lengths.size() < 200) {
    throw DomainError("estimate_delta needs at least 200 lengths");
  }
  require_sorted(lengths);
  const double lo = lengths.front();
  const double hi = lengths.back();
  if (!(hi > lo)) throw DomainError("degenerate length range");
  const Line line = regress_log_count(lengths, 0.5 * (lo + hi), hi);
  return {line.slope, line.slope_stderr,
          !(line.slope > 0.0 && line.slope < 1.0)};
}

double TailTerm::evaluate(double ell) const {
  if (!pair) return coefficient.real() * std::exp(exponent.real() * ell);
  return 2.0 * (coefficient * std::exp(exponent * ell)).real();
}

double TailModel::evaluate(double ell) const {
  double v = constant;
  for (const TailTerm& t : terms) v += t.evaluate(ell);
  return v;
}

TailModel fit_tail(std::span<const double> lengths, const FitOptions& options) {
  if (options.terms < 1 || options.terms > 4) {
    throw DomainError("term count must be between 1 and 4");
  }
  if (!(options.window_fraction > 0.0 && options.window_fraction <= 1.0)) {
    throw DomainError("window fraction must lie in (0, 1]");
  }
  if (options.samples < 100 || options.starts < 1) {
    throw DomainError("fit needs at least 100 samples and one start");
  }
  if (lengths.empty()) throw DomainError("no lengths to fit");
  require_sorted(lengths);
  const double hi = options.window_end.value_or(lengths.back());
  const double lo = hi - options.window_fraction * (hi - lengths.front());
  if (!(hi > lo) || hi > lengths.back() * (1.0 + 1e-12) + 1e-12 ||
      count_up_to(lengths, hi) - count_up_to(lengths, lo) < 50) {
    throw DomainError("degenerate fit window");
  }

  const int n = options.samples;
  Eigen::VectorXd x(n), y(n), w(n);
  for (int k = 0; k < n; ++k) {
    x[k] = lo + (hi - lo) * (k + 0.5) / n;
    y[k] = static_cast<double>(count_up_to(lengths, x[k]));
  }
  const double lead_start =
      std::max(regress_log_count(lengths, lo, hi).slope,
               2.0 * std::max(options.min_exponent, 1.0 / (hi - lo)));
  for (int k = 0; k < n; ++k) {
    const double u = (x[k] - lo) / (hi - lo);
    w[k] = std::pow(std::sin(kPi * u), options.taper / 2.0) *
           std::exp(-0.5 * lead_start * (x[k] - hi));
  }
  const double max_exp = std::max(2.0, 2.0 * lead_start);
  // e^{sigma l} with sigma (hi - lo) < 1 is indistinguishable from c0.
  const double min_exp = std::max(options.min_exponent, 1.0 / (hi - lo));

  std::mt19937_64 rng(options.seed);
  double best_bic = std::numeric_limits<double>::infinity();
  std::optional<Shape> best_shape;
  ShapeFit best_fit;
  for (int pairs = 0; pairs < options.terms; ++pairs) {
    Shape shape(x, y, w, options.terms - 1 - pairs, pairs, min_exp, max_exp);
    ShapeFit fit = solve_shape(shape, lead_start, options.starts, rng);
    if (!std::isfinite(fit.rss)) continue;
    const int params = shape.linear() + shape.nonlinear();
    const double bic = n * std::log(std::max(fit.rss, 1e-300) / n) +
                       params * std::log(static_cast<double>(n));
    if (bic < best_bic) {
      best_bic = bic;
      best_shape.emplace(shape);
      best_fit = fit;
    }
  }
  if (!best_shape) {
    throw NumericError("tail fit did not converge from any start (window [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "])");
  }

  Eigen::VectorXd coeffs;
  best_shape->residual(best_fit.q, &coeffs);
  TailModel model;
  model.window_lo = lo;
  model.window_hi = hi;
  model.constant = coeffs[0];
  model.terms = best_shape->decode(best_fit.q);
  int c = 1;
  for (TailTerm& t : model.terms) {
    if (!t.pair) {
      t.coefficient = coeffs[c++];
    } else {
      t.coefficient = std::complex<double>(coeffs[c], -coeffs[c + 1]) / 2.0;
      c += 2;
    }
  }
  std::stable_sort(model.terms.begin() + 1, model.terms.end(),
                   [](const TailTerm& a, const TailTerm& b) {
                     return a.exponent.real() > b.exponent.real();
                   });

  // c0 standard error from the weighted normal equations.
  Eigen::VectorXd scale;
  const Eigen::MatrixXd a =
      best_shape->design(best_shape->decode(best_fit.q), scale);
  const int dof = std::max(1, n - best_shape->linear() - best_shape->nonlinear());
  const double sigma2 = best_fit.rss / dof;
  const Eigen::MatrixXd cov =
      (a.transpose() * a).completeOrthogonalDecomposition().pseudoInverse();
  model.constant_stderr = std::sqrt(std::max(0.0, sigma2 * cov(0, 0))) * scale[0];
  model.residual = std::sqrt(best_fit.rss / w.squaredNorm());
  return model;
}

std::complex<double> continue_with_tail(std::span<const double> lengths,
                                        std::complex<double> s,
                                        const TailModel& tail) {
  const double big_l = tail.window_hi;
  const auto check_pole = [&](std::complex<double> rho) {
    if (std::abs(s - rho) < 1e-6) {
      throw DomainError("evaluation point collides with a fitted exponent");
    }
  };
  const std::size_t n_l = count_up_to(lengths, big_l);
  const std::complex<double> head =
      partial_sum(lengths.first(n_l), s) -
      std::exp(-s * big_l) * (static_cast<double>(n_l) - tail.constant);
  std::complex<double> rest = 0.0;
  for (const TailTerm& t : tail.terms) {
    const auto one = [&](std::complex<double> c, std::complex<double> rho) {
      check_pole(rho);
      return s * c * std::exp((rho - s) * big_l) / (s - rho);
    };
    if (!t.pair) {
      rest += one(t.coefficient.real(), t.exponent.real());
    } else {
      rest += one(t.coefficient, t.exponent) +
              one(std::conj(t.coefficient), std::conj(t.exponent));
    }
  }
  return head + rest;
}

SeriesEstimate continue_series(std::span<const double> lengths, double s,
                               const ContinuationOptions& options) {
  if (lengths.empty()) throw DomainError("no lengths to continue");
  require_sorted(lengths);
  if (options.terms.empty() || options.window_fractions.empty() ||
      options.window_ends < 1) {
    throw DomainError("empty continuation grid");
  }
  if (!(options.end_span >= 0.0 && options.end_span < 1.0)) {
    throw DomainError("end span must lie in [0, 1)");
  }
  const double data_hi = options.cutoff.value_or(lengths.back());
  if (data_hi < lengths.back()) {
    throw DomainError("cutoff below the largest length");
  }
  const double span = options.end_span * (data_hi - lengths.front());

  struct Config {
    int terms;
    double fraction;
    double end;
  };
  std::vector<Config> configs;
  for (int k : options.terms) {
    for (double f : options.window_fractions) {
      for (int e = 0; e < options.window_ends; ++e) {
        const double t = options.window_ends == 1
                             ? 1.0
                             : static_cast<double>(e) / (options.window_ends - 1);
        configs.push_back({k, f, data_hi - span * (1.0 - t)});
      }
    }
  }

  std::vector<std::optional<GridPoint>> points(configs.size());
  std::vector<std::optional<TailModel>> models(configs.size());
  auto run = [&](std::size_t i) {
    FitOptions fit = options.fit;
    fit.terms = configs[i].terms;
    fit.window_fraction = configs[i].fraction;
    fit.window_end = configs[i].end;
    try {
      TailModel m = fit_tail(lengths, fit);
      const double v = continue_with_tail(lengths, s, m).real();
      points[i] = GridPoint{configs[i].terms, configs[i].fraction,
                            configs[i].end, v, m.constant_stderr};
      models[i] = std::move(m);
    } catch (const NumericError&) {
    } catch (const DomainError&) {
    }
  };
  if (options.threads <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < options.threads; ++t) {
      jobs.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) run(i);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  SeriesEstimate out;
  out.s = s;
  out.cutoff = data_hi;
  std::vector<double> values, errors;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!points[i]) continue;
    out.grid.push_back(*points[i]);
    values.push_back(points[i]->value);
    errors.push_back(points[i]->constant_stderr);
  }
  if (2 * out.grid.size() < configs.size()) {
    throw NumericError("continuation grid: fewer than half of the fits succeeded");
  }
  out.value = percentile(values, 0.5);
  const double iqr = percentile(values, 0.75) - percentile(values, 0.25);
  out.uncertainty = std::hypot(iqr, percentile(errors, 0.5));

  std::vector<double> end_medians;
  for (int e = 0; e < options.window_ends; ++e) {
    std::vector<double> at_end;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      if (points[i] && static_cast<int>(i % options.window_ends) == e) {
        at_end.push_back(points[i]->value);
      }
    }
    if (!at_end.empty()) end_medians.push_back(percentile(at_end, 0.5));
  }
  const auto [mn, mx] = std::minmax_element(end_medians.begin(), end_medians.end());
  out.end_spread = *mx - *mn;
  out.stable = out.end_spread <= out.uncertainty;

  for (std::size_t i = configs.size(); i-- > 0;) {
    if (models[i]) {
      out.tail = *models[i];
      break;
    }
  }
  return out;
}

SeriesEstimate eta_xy_at_zero(const surfaces::SurfaceModel& model,
                              const hyp2::HPoint& x, const hyp2::HPoint& y,
                              const enumerate::EnumerationOptions& enumeration,
                              const ContinuationOptions& continuation) {
  const enumerate::ArcSpectrum arcs =
      enumerate::enumerate_arcs(model, x, y, enumeration);
  ContinuationOptions options = continuation;
  options.cutoff = enumeration.cutoff;
  const std::vector<double> lengths = arcs.lengths();
  return continue_at_zero(lengths, options);
}

double rogers_dilog(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("Rogers dilogarithm needs an argument in [0, 1]");
  }
  if (u == 0.0) return 0.0;
  if (u == 1.0) return kPi * kPi / 6.0;
  const auto li2_small = [](double v) {
    // Converges geometrically for v <= 1/2.
    double term = v;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      const double add = term / (static_cast<double>(k) * k);
      sum += add;
      if (add < 1e-18 * sum) break;
      term *= v;
    }
    return sum;
  };
  const double half_log = 0.5 * std::log(u) * std::log1p(-u);
  if (u <= 0.5) return li2_small(u) + half_log;
  // Li2(u) + Li2(1 - u) = pi^2 / 6 - log(u) log(1 - u)
  return kPi * kPi / 6.0 - li2_small(1.0 - u) - half_log;
}

std::string to_string(DilogNormalization n) {
  switch (n) {
    case DilogNormalization::Standard:
      return "standard";
    case DilogNormalization::Doubled:
      return "doubled";
    case DilogNormalization::Halved:
      return "halved";
  }
  return "standard";
}

DilogNormalization dilog_normalization_from_string(const std::string& text) {
  if (text == "standard") return DilogNormalization::Standard;
  if (text == "doubled") return DilogNormalization::Doubled;
  if (text == "halved") return DilogNormalization::Halved;
  throw DomainError("unknown dilogarithm normalization '" + text + "'");
}

double basmajian_residual(const enumerate::Orthospectrum& spectrum,
                          const surfaces::SurfaceModel& model) {
  const double weight = spectrum.oriented ? 1.0 : 2.0;
  Accumulator<double> acc;
  for (const auto& r : spectrum.records) {
    acc.add(-2.0 * weight * std::log(std::tanh(r.length / 2.0)));
  }
  return std::abs(surfaces::boundary_total_length(model) - acc.value());
}

double bridgeman_residual(const enumerate::Orthospectrum& spectrum,
                          const surfaces::SurfaceModel& model,
                          DilogNormalization normalization) {
  double factor = normalization == DilogNormalization::Doubled  ? 2.0
                  : normalization == DilogNormalization::Halved ? 0.5
                                                                : 1.0;
  if (!spectrum.oriented) factor *= 2.0;
  Accumulator<double> acc;
  for (const auto& r : spectrum.records) {
    const double sech = 1.0 / std::cosh(r.length / 2.0);
    acc.add(factor * rogers_dilog(sech * sech));
  }
  return std::abs(model.area() - 2.0 / kPi * acc.value());
}

}  // namespace orthospec::series
