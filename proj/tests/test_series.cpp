#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "orthospec/enumerate.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/series.hpp"

using namespace orthospec;
using std::numbers::pi;

namespace {

std::vector<double> zeta_lengths(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(static_cast<double>(i + 1));
  return out;
}

/// N(l) = floor(e^{0.6 l} + 2.5), so that the smoothed count is e^{0.6 l} + 2.
std::vector<double> planted_lengths(double cutoff) {
  std::vector<double> out(3, 0.0);
  for (int k = 4;; ++k) {
    const double len = std::log(k - 2.5) / 0.6;
    if (len > cutoff) break;
    out.push_back(len);
  }
  return out;
}

}  // namespace

TEST_CASE("partial sums") {
  const std::vector<double> ls{0.0, 1.0, 2.0};
  CHECK(series::partial_sum(ls, 0.0) == 3.0);
  CHECK(series::partial_sum(ls, 1.0) ==
        doctest::Approx(1.0 + std::exp(-1.0) + std::exp(-2.0)));
  const auto z = series::partial_sum(ls, std::complex<double>(0.0, pi));
  CHECK(z.real() == doctest::Approx(1.0 - 1.0 + 1.0));
  CHECK(series::count_up_to(ls, 1.0) == 2);
  CHECK(series::count_up_to(ls, -1.0) == 0);
}

TEST_CASE("critical exponent of a planted spectrum") {
  const auto ls = planted_lengths(18.0);
  const auto d = series::estimate_delta(ls);
  CHECK(d.delta == doctest::Approx(0.6).epsilon(0.01));
  CHECK_FALSE(d.out_of_range);
  CHECK_THROWS_AS(series::estimate_delta(std::vector<double>(10, 1.0)), DomainError);
}

TEST_CASE("tail fit recovers a planted constant") {
  const auto ls = planted_lengths(20.0);
  series::FitOptions o;
  o.terms = 1;
  const auto t = series::fit_tail(ls, o);
  REQUIRE(t.terms.size() == 1);
  CHECK(t.terms[0].exponent.real() == doctest::Approx(0.6).epsilon(1e-3));
  CHECK(t.constant == doctest::Approx(2.0).epsilon(0.05));
  CHECK(t.evaluate(15.0) ==
        doctest::Approx(std::exp(0.6 * 15.0) + 2.0).epsilon(1e-3));
}

TEST_CASE("continuation inside the convergence region matches the sum") {
  // zeta(2) = pi^2 / 6 from the lengths log i.
  const auto ls = zeta_lengths(100000);
  series::ContinuationOptions o;
  const auto e = series::continue_series(ls, 2.0, o);
  CHECK(e.value == doctest::Approx(pi * pi / 6.0).epsilon(1e-4));
}

TEST_CASE("zeta(0) = -1/2 from the lengths log i") {
  const auto ls = zeta_lengths(200000);
  series::ContinuationOptions o;
  const auto e = series::continue_at_zero(ls, o);
  CHECK(std::abs(e.value + 0.5) < 0.05);
  CHECK(e.uncertainty > 0.0);
  CHECK(e.grid.size() == o.terms.size() * o.window_fractions.size() *
                             static_cast<std::size_t>(o.window_ends));
}

TEST_CASE("planted constant through the full pipeline") {
  const auto ls = planted_lengths(20.0);
  series::ContinuationOptions o;
  o.cutoff = 20.0;
  const auto e = series::continue_at_zero(ls, o);
  CHECK(e.value == doctest::Approx(2.0).epsilon(0.05));
  CHECK(e.stable);
}

TEST_CASE("continuation rejects bad input") {
  series::ContinuationOptions o;
  CHECK_THROWS_AS(series::continue_at_zero(std::vector<double>{}, o), DomainError);
  CHECK_THROWS_AS(series::continue_at_zero(std::vector<double>{2.0, 1.0}, o),
                  DomainError);
  o.cutoff = 1.0;
  CHECK_THROWS_AS(series::continue_at_zero(zeta_lengths(1000), o), DomainError);
}

TEST_CASE("Rogers dilogarithm") {
  CHECK(series::rogers_dilog(0.0) == 0.0);
  CHECK(series::rogers_dilog(1.0) == doctest::Approx(pi * pi / 6.0));
  CHECK(series::rogers_dilog(0.5) == doctest::Approx(pi * pi / 12.0).epsilon(1e-14));
  for (double u : {0.01, 0.2, 0.37, 0.7, 0.99}) {
    CHECK(series::rogers_dilog(u) + series::rogers_dilog(1.0 - u) ==
          doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  }
  // Li2(1/4) = 0.267652639082...
  const double li2 = 0.26765263908273261;
  CHECK(series::rogers_dilog(0.25) ==
        doctest::Approx(li2 + 0.5 * std::log(0.25) * std::log(0.75)).epsilon(1e-14));
  CHECK_THROWS_AS(series::rogers_dilog(1.5), DomainError);
}

TEST_CASE("normalization names round trip") {
  for (auto n : {series::DilogNormalization::Standard,
                 series::DilogNormalization::Doubled,
                 series::DilogNormalization::Halved}) {
    CHECK(series::dilog_normalization_from_string(series::to_string(n)) == n);
  }
  CHECK_THROWS_AS(series::dilog_normalization_from_string("tripled"), DomainError);
}

TEST_CASE("identity residuals shrink with the cutoff") {
  const auto m = surfaces::build_pants(2.0, 2.0, 2.0);
  enumerate::EnumerationOptions o;
  o.cutoff = 14.0;
  const auto full = enumerate::enumerate_orthogeodesics(m, o);
  double prev_b = INFINITY, prev_r = INFINITY;
  for (double cut : {6.0, 10.0, 14.0}) {
    auto part = full;
    part.cutoff = cut;
    part.records.resize(enumerate::counting_function(full, cut));
    const double b = series::basmajian_residual(part, m);
    const double r = series::bridgeman_residual(part, m);
    CHECK(b < prev_b);
    CHECK(r < prev_r);
    prev_b = b;
    prev_r = r;
  }
  CHECK(prev_b / 6.0 < 1e-2);
  CHECK(prev_r / (2.0 * pi) < 2e-2);
  // Unoriented records are counted twice.
  const auto u = enumerate::unoriented(m, full);
  CHECK(series::basmajian_residual(u, m) ==
        doctest::Approx(series::basmajian_residual(full, m)).epsilon(1e-10));
  // The doubled normalization overshoots by about the full volume.
  const double doubled =
      series::bridgeman_residual(full, m, series::DilogNormalization::Doubled);
  CHECK(doubled > 5.0);
}
