#include "orthospec/app/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <tuple>

#include "orthospec/errors.hpp"

namespace orthospec::app::oracles {

using hyp2::HGeodesic;
using hyp2::HPoint;
using hyp2::IdealPoint;
using hyp2::Isometry;

namespace {

// |p - q|^2 / (y_p y_q) = 4 sinh^2(d / 2).
double chord(const HPoint& p, const HPoint& q) {
  const double dx = p.x() - q.x();
  const double dy = p.y() - q.y();
  return (dx * dx + dy * dy) / (p.y() * q.y());
}

using Vec2 = std::array<double, 2>;

template <class F>
Vec2 nelder_mead(F&& f, Vec2 start, double step, int iterations) {
  std::array<Vec2, 3> v{start, Vec2{start[0] + step, start[1]},
                        Vec2{start[0], start[1] + step}};
  std::array<double, 3> fv{f(v[0]), f(v[1]), f(v[2])};
  for (int it = 0; it < iterations; ++it) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = order[0], mid = order[1], worst = order[2];
    if (std::abs(v[worst][0] - v[best][0]) + std::abs(v[worst][1] - v[best][1]) <
        1e-12) {
      break;
    }
    const Vec2 c{(v[best][0] + v[mid][0]) / 2, (v[best][1] + v[mid][1]) / 2};
    const auto along = [&](double k) {
      return Vec2{c[0] + k * (v[worst][0] - c[0]), c[1] + k * (v[worst][1] - c[1])};
    };
    const Vec2 r = along(-1.0);
    const double fr = f(r);
    if (fr < fv[best]) {
      const Vec2 e = along(-2.0);
      const double fe = f(e);
      if (fe < fr) {
        v[worst] = e, fv[worst] = fe;
      } else {
        v[worst] = r, fv[worst] = fr;
      }
    } else if (fr < fv[mid]) {
      v[worst] = r, fv[worst] = fr;
    } else {
      const Vec2 k = fr < fv[worst] ? along(-0.5) : along(0.5);
      const double fk = f(k);
      if (fk < std::min(fr, fv[worst])) {
        v[worst] = k, fv[worst] = fk;
      } else {
        for (int s : {mid, worst}) {
          v[s] = {(v[s][0] + v[best][0]) / 2, (v[s][1] + v[best][1]) / 2};
          fv[s] = f(v[s]);
        }
      }
    }
  }
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (fv[k] < fv[best]) best = k;
  }
  return v[best];
}

Isometry evaluate(const surfaces::SurfaceModel& model, const Word& w) {
  Isometry m;
  for (Letter l : w.letters()) m = m * model.generator(l);
  return m;
}

bool has_prefix(const Word& w, const Word& prefix) {
  return prefix.size() <= w.size() &&
         std::equal(prefix.letters().begin(), prefix.letters().end(),
                    w.letters().begin());
}

}  // namespace

HPoint point_on(const HGeodesic& g, double s) {
  const auto& a = g.start();
  const auto& b = g.end();
  if (a.is_infinite() || b.is_infinite()) {
    const double foot = a.is_infinite() ? b.value() : a.value();
    return HPoint(foot, std::exp(s));
  }
  const double c = (a.value() + b.value()) / 2.0;
  const double r = std::abs(b.value() - a.value()) / 2.0;
  // theta = 2 atan(e^s) makes s the hyperbolic arclength.
  const double theta = 2.0 * std::atan(std::exp(s));
  return HPoint(c + r * std::cos(theta), r * std::sin(theta));
}

double min_distance_geodesics(const HGeodesic& g1, const HGeodesic& g2) {
  const auto f = [&](const Vec2& p) {
    return chord(point_on(g1, p[0]), point_on(g2, p[1]));
  };
  double lo = -16.0, hi = 16.0;
  Vec2 best{0.0, 0.0};
  for (int widen = 0; widen < 4; ++widen) {
    double fbest = INFINITY;
    const int n = 128;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const Vec2 p{lo + (hi - lo) * i / n, lo + (hi - lo) * j / n};
        const double v = f(p);
        if (v < fbest) fbest = v, best = p;
      }
    }
    const double edge = (hi - lo) / n;
    if (std::abs(best[0]) < hi - edge && std::abs(best[1]) < hi - edge) break;
    lo *= 2.0, hi *= 2.0;
  }
  double step = (hi - lo) / 128.0;
  for (int round = 0; round < 3; ++round) {
    best = nelder_mead(f, best, step, 4000);
    step = 1e-3;
  }
  return 2.0 * std::asinh(std::sqrt(f(best)) / 2.0);
}

double hexagon_seam(double Li, double Lj, double Lk) {
  const double li = Li / 2.0, lj = Lj / 2.0, lk = Lk / 2.0;
  return std::acosh((std::cosh(lk) + std::cosh(li) * std::cosh(lj)) /
                    (std::sinh(li) * std::sinh(lj)));
}

std::vector<Word> word_ball(std::size_t n) {
  std::vector<Word> out{Word()};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t k = layer_begin; k < layer_end; ++k) {
      for (Letter l : kLetters) {
        const Word& w = out[k];
        if (!w.empty() && w.back() == inverse(l)) continue;
        std::vector<Letter> letters = w.letters();
        letters.push_back(l);
        out.emplace_back(std::move(letters));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::vector<enumerate::ArcRecord> naive_arcs(const surfaces::SurfaceModel& model,
                                             const HPoint& x, const HPoint& y,
                                             double cutoff, std::size_t max_len) {
  std::vector<enumerate::ArcRecord> out;
  for (const Word& w : word_ball(max_len)) {
    const double d = hyp2::dist_points(x, evaluate(model, w).apply(y));
    if (d <= cutoff) out.push_back({d, w});
  }
  return out;
}

Word brute_canonical(const Word& a, const Word& g, const Word& b, int reach) {
  Word best = g;
  for (int m = -reach; m <= reach; ++m) {
    const Word left = a.power(m) * g;
    for (int n = -reach; n <= reach; ++n) {
      Word w = left * b.power(n);
      if (w < best) best = std::move(w);
    }
  }
  return best;
}

std::vector<enumerate::OrthoRecord> naive_orthogeodesics(
    const surfaces::SurfaceModel& model, double cutoff, std::size_t max_len) {
  const std::vector<Word> ball = word_ball(max_len);
  std::vector<Isometry> images;
  images.reserve(ball.size());
  for (const Word& w : ball) images.push_back(evaluate(model, w));

  std::vector<enumerate::OrthoRecord> out;
  const int nb = model.boundary_count();
  const std::vector<Word>& b_words = model.boundary_words();
  std::vector<Word> b_inverses;
  for (const Word& b : b_words) b_inverses.push_back(b.inverse());
  for (int i = 0; i < nb; ++i) {
    const HGeodesic& axis_i = model.boundary_axes()[i];
    // Work in the frame where axis_i is the imaginary axis and b_i is
    // z -> e^L z; lifts close to an endpoint of axis_i keep their relative
    // precision there.
    const Isometry frame = hyp2::standard_frame(axis_i);
    const HGeodesic vertical(IdealPoint::finite(0.0), IdealPoint::infinity());
    const double L = model.boundary_lengths()[i];
    for (int j = 0; j < nb; ++j) {
      struct Class {
        double u, v;
        Word g;
        double length;
      };
      std::vector<Class> classes;
      for (std::size_t k = 0; k < ball.size(); ++k) {
        // b_i^{+-1} g and g b_j^{+-1} name the same orthogeodesic as g, and
        // the shorter word is in the ball too. Skipping them also avoids
        // applying large powers of b_i or b_j.
        if (has_prefix(ball[k], b_words[i]) ||
            has_prefix(ball[k], b_inverses[i]) ||
            has_prefix(ball[k].inverse(), b_words[j].inverse()) ||
            has_prefix(ball[k].inverse(), b_inverses[j].inverse())) {
          continue;
        }
        const auto& axis_j = model.boundary_axes()[j];
        const Isometry m = frame * images[k];
        const IdealPoint start = m.apply(axis_j.start());
        const IdealPoint end = m.apply(axis_j.end());
        if (start.is_infinite() || end.is_infinite()) continue;
        const double u0 = start.value();
        const double v0 = end.value();
        const double big = std::max(std::abs(u0), std::abs(v0));
        const double small = std::min(std::abs(u0), std::abs(v0));
        // Endpoints merged by rounding: far beyond any cutoff used here.
        if (std::abs(u0 - v0) <= 1e-11 * big) continue;
        // Endpoints near 0 and oo: axis_i itself, up to rounding.
        if (small <= 1e-9 * big) continue;
        // Scaling fixes the imaginary axis; bring the lift to unit size
        // before handing it to the kernel.
        if (!(u0 * v0 > 0.0)) {
          throw NumericError("naive orthogeodesics lost precision at " +
                             ball[k].str());
        }
        const double scale = 1.0 / std::sqrt(std::abs(u0 * v0));
        const HGeodesic lift(IdealPoint::finite(u0 * scale),
                             IdealPoint::finite(v0 * scale));
        const auto perp = hyp2::common_perpendicular(vertical, lift);
        if (perp.length > cutoff) continue;
        const double t = std::log(perp.foot1.y() / scale);
        const double shift = std::exp(-L * std::round(t / L));
        const double u = u0 * shift;
        const double v = v0 * shift;
        const auto close = [](double p, double q) {
          return std::abs(p - q) <= 1e-8 * std::max(std::abs(p), std::abs(q));
        };
        const bool seen = std::any_of(
            classes.begin(), classes.end(),
            [&](const Class& c) { return close(c.u, u) && close(c.v, v); });
        if (!seen) classes.push_back({u, v, ball[k], perp.length});
      }
      std::map<Word, double> named;
      for (const Class& c : classes) {
        named.emplace(brute_canonical(model.boundary_words()[i], c.g,
                                      model.boundary_words()[j], 12),
                      c.length);
      }
      for (auto& [w, len] : named) out.push_back({len, i, j, w});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.length, a.from_boundary, a.to_boundary, a.coset_rep) <
           std::tie(b.length, b.from_boundary, b.to_boundary, b.coset_rep);
  });
  return out;
}

}  // namespace orthospec::app::oracles
