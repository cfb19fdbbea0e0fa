#include "orthospec/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <span>
#include <tuple>

namespace orthospec::enumerate {

using hyp2::HGeodesic;
using hyp2::HPoint;
using hyp2::IdealPoint;
using hyp2::Isometry;
using surfaces::SurfaceModel;

namespace {

// Pruning uses cutoff + kPruneSlack so rounding in the bound never drops a
// node that sits exactly at the cutoff.
constexpr double kPruneSlack = 1e-7;
// Feet this close to either end of the fundamental segment are accepted at
// both ends and merged by canonical word.
constexpr double kFootTol = 1e-9;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative endpoint separation treated as unresolved, and a lower bound on
// the length of any lift that close, below 2 asinh(sqrt(1 / kUnresolved)).
constexpr double kUnresolved = 1e-13;
constexpr double kFarLength = 28.0;

void check_cutoff(double cutoff) {
  if (!std::isfinite(cutoff) || !(cutoff >= 0.0) || cutoff > hyp2::kMaxLength) {
    throw DomainError("cutoff must lie in [0, 60]");
  }
}

/// Depth-first walk over non-empty reduced words.
///
/// `node(path, m, m_inv)` returns a lower bound for the subtree of `path`
/// (with m = M(path)) and records whatever it wants; the subtree is skipped
/// when the bound exceeds the cutoff.
class WordTree {
 public:
  WordTree(const SurfaceModel& model, double cutoff,
           std::optional<std::size_t> max_depth,
           std::atomic<std::uint64_t>& expansions, std::uint64_t budget)
      : model_(model),
        cutoff_(cutoff),
        max_depth_(max_depth),
        expansions_(expansions),
        budget_(budget) {}

  /// Returns the smallest pending lower bound when the budget ran out.
  template <class Node>
  std::optional<double> walk(std::span<const Letter> first_letters,
                             Node&& node) {
    struct Frame {
      Isometry m;
      Isometry m_inv;
      std::size_t next;
    };
    std::vector<Frame> stack{{Isometry(), Isometry(), 0}};
    std::vector<Letter> path;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const bool at_root = stack.size() == 1;
      const std::size_t fanout = at_root ? first_letters.size() : 4;
      if (top.next == fanout ||
          (max_depth_ && path.size() >= *max_depth_)) {
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      const Letter l = at_root ? first_letters[top.next] : kLetters[top.next];
      ++top.next;
      if (!path.empty() && l == inverse(path.back())) continue;
      if (expansions_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
        --top.next;
        return pending_bound(stack, path, first_letters, node);
      }
      const Isometry m = top.m * model_.generator(l);
      const Isometry m_inv = model_.generator(inverse(l)) * top.m_inv;
      path.push_back(l);
      if (node(std::span<const Letter>(path), m, m_inv) > cutoff_ + kPruneSlack) {
        path.pop_back();
        continue;
      }
      stack.push_back({m, m_inv, 0});
    }
    return std::nullopt;
  }

 private:
  template <class Frames, class Node>
  double pending_bound(const Frames& stack, const std::vector<Letter>& path,
                       std::span<const Letter> first_letters, Node& node) {
    double best = kInf;
    std::vector<Letter> prefix;
    for (std::size_t k = 0; k < stack.size(); ++k) {
      prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k));
      const bool at_root = k == 0;
      const std::size_t fanout = at_root ? first_letters.size() : 4;
      for (std::size_t n = stack[k].next; n < fanout; ++n) {
        const Letter l = at_root ? first_letters[n] : kLetters[n];
        if (!prefix.empty() && l == inverse(prefix.back())) continue;
        prefix.push_back(l);
        const Isometry m = stack[k].m * model_.generator(l);
        const Isometry m_inv = model_.generator(inverse(l)) * stack[k].m_inv;
        // Bounds only; the node callback is told not to record.
        best = std::min(best, node.bound_only(std::span<const Letter>(prefix),
                                              m, m_inv));
        prefix.pop_back();
      }
    }
    return best;
  }

  const SurfaceModel& model_;
  double cutoff_;
  std::optional<std::size_t> max_depth_;
  std::atomic<std::uint64_t>& expansions_;
  std::uint64_t budget_;
};

bool arc_less(const ArcRecord& a, const ArcRecord& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.word < b.word;
}

bool ortho_less(const OrthoRecord& a, const OrthoRecord& b) {
  if (a.length != b.length) return a.length < b.length;
  if (a.from_boundary != b.from_boundary) {
    return a.from_boundary < b.from_boundary;
  }
  if (a.to_boundary != b.to_boundary) return a.to_boundary < b.to_boundary;
  return a.coset_rep < b.coset_rep;
}

/// sinh of the distance from a point p' = M^-1 p to the half-plane
/// N(path) = M(outside of D(last^-1)); positive when p is outside.
double sinh_gap(const SurfaceModel& model, Letter last, const HPoint& pulled) {
  return hyp2::signed_sinh_distance(model.disk(inverse(last)), pulled);
}

struct ArcNode {
  const SurfaceModel& model;
  const HPoint& x;
  const HPoint& y;
  double cutoff;
  std::optional<std::size_t> max_len;
  std::vector<ArcRecord>& out;

  double bound_only(std::span<const Letter> path, const Isometry&,
                    const Isometry& m_inv) const {
    const double gap = sinh_gap(model, path.back(), m_inv.apply(x));
    return gap > 0.0 ? std::asinh(gap) : 0.0;
  }

  double operator()(std::span<const Letter> path, const Isometry&,
                    const Isometry& m_inv) const {
    const HPoint pulled = m_inv.apply(x);
    const double gap = sinh_gap(model, path.back(), pulled);
    const double bound = gap > 0.0 ? std::asinh(gap) : 0.0;
    if (bound > cutoff + kPruneSlack) return bound;
    const double d = hyp2::dist_points(pulled, y);
    if (d <= cutoff && (!max_len || path.size() <= *max_len)) {
      out.push_back({d, Word(std::vector<Letter>(path.begin(), path.end()))});
    }
    return bound;
  }
};

/// Orthogeodesics from boundary i to boundary j.
struct OrthoNode {
  const SurfaceModel& model;
  int from;
  int to;
  double cutoff;
  std::optional<std::size_t> max_len;
  Isometry frame;  // axis of b_from -> imaginary axis, segment centred at i
  double lo;
  double hi;
  std::vector<const surfaces::BoundaryLift*> lifts;  // base lifts of `to`
  std::map<Word, OrthoRecord>& out;

  double bound_only(std::span<const Letter> path, const Isometry&,
                    const Isometry& m_inv) const {
    // sinh of the distance from the segment point at t to N(path), along
    // the segment: alpha e^t + beta e^-t.
    const Isometry back = frame.inverse();
    const auto gap = [&](double t) {
      return sinh_gap(model, path.back(),
                      m_inv.apply(back.apply(HPoint(0.0, std::exp(t)))));
    };
    const double g_lo = gap(lo);
    const double g_hi = gap(hi);
    const double det = -2.0 * std::sinh(hi - lo);
    const double alpha = (g_lo * std::exp(-hi) - g_hi * std::exp(-lo)) / det;
    const double beta = (std::exp(lo) * g_hi - std::exp(hi) * g_lo) / det;
    double g_min = std::min(g_lo, g_hi);
    if (alpha > 0.0 && beta > 0.0) {
      const double t_star = 0.5 * std::log(beta / alpha);
      if (t_star > lo && t_star < hi) {
        g_min = std::min(g_min, alpha * std::exp(t_star) +
                                    beta * std::exp(-t_star));
      }
    }
    return g_min > 0.0 ? std::asinh(g_min) : 0.0;
  }

  void consider(std::span<const Letter> path, const Isometry& m,
                const surfaces::BoundaryLift& lift) const {
    const Isometry to_frame = frame * m;
    const IdealPoint u = to_frame.apply(lift.geodesic.start());
    const IdealPoint v = to_frame.apply(lift.geodesic.end());
    if (u.is_infinite() || v.is_infinite()) return;
    const double spread = std::abs(u.value() - v.value());
    const double scale = std::max(std::abs(u.value()), std::abs(v.value()));
    if (!(spread > kUnresolved * scale)) {
      // Endpoints agree to rounding: the lift is at least kFarLength away.
      if (cutoff + kPruneSlack < kFarLength) return;
      throw NumericError("cutoff beyond the resolution of double precision");
    }
    const double uv = u.value() * v.value();
    if (!(uv > 0.0)) {
      throw ConstructionError("boundary lift crosses a boundary axis");
    }
    const double t = 0.5 * std::log(uv);
    if (t < lo || t > hi) return;
    const double near = std::min(std::abs(u.value()), std::abs(v.value()));
    const double far = std::max(std::abs(u.value()), std::abs(v.value()));
    const double rough = 2.0 * std::asinh(std::sqrt(near / (far - near)));
    if (rough > cutoff + kPruneSlack) return;
    const Word g_word =
        Word(std::vector<Letter>(path.begin(), path.end())) * lift.coset_word;
    Word rep = canonical_double_coset(model.boundary_words()[from], g_word,
                                      model.boundary_words()[to]);
    if (max_len && rep.size() > *max_len) return;
    if (out.count(rep)) return;
    const double length = orthogeodesic_length(model, from, to, rep);
    if (length > cutoff) return;
    out.emplace(rep, OrthoRecord{length, from, to, rep});
  }

  double operator()(std::span<const Letter> path, const Isometry& m,
                    const Isometry& m_inv) const {
    const double bound = bound_only(path, m, m_inv);
    if (bound > cutoff + kPruneSlack) return bound;
    const Letter back_letter = inverse(path.back());
    for (const surfaces::BoundaryLift* lift : lifts) {
      if (lift->first_forward == back_letter ||
          lift->first_backward == back_letter) {
        continue;
      }
      consider(path, m, *lift);
    }
    return bound;
  }
};

Isometry segment_frame(const SurfaceModel& model, int i) {
  const Isometry base = hyp2::standard_frame(model.boundary_axes()[i]);
  const double t0 = hyp2::projection_parameter(base, model.domain_midpoint());
  return Isometry::scaling(std::exp(-t0 / 2.0)) * base;
}

}  // namespace

std::vector<double> ArcSpectrum::lengths() const {
  std::vector<double> out;
  out.reserve(arcs.size());
  for (const ArcRecord& r : arcs) out.push_back(r.length);
  return out;
}

std::vector<double> Orthospectrum::lengths() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const OrthoRecord& r : records) out.push_back(r.length);
  return out;
}

ArcSpectrum enumerate_arcs(const SurfaceModel& model, const HPoint& x,
                           const HPoint& y, const EnumerationOptions& options) {
  check_cutoff(options.cutoff);
  for (const HPoint* p : {&x, &y}) {
    if (!surfaces::contains_in_core(model, *p).inside) {
      throw DomainError("basepoint outside the fundamental domain of the core");
    }
  }
  ArcSpectrum result;
  result.x = x;
  result.y = y;
  result.cutoff = options.cutoff;

  const double d0 = hyp2::dist_points(x, y);
  if (d0 <= options.cutoff) result.arcs.push_back({d0, Word()});

  std::atomic<std::uint64_t> expansions{0};
  const unsigned workers = std::clamp(options.threads, 1U, 4U);
  std::vector<std::vector<ArcRecord>> parts(4);
  std::vector<std::optional<double>> pending(4);
  auto run = [&](std::size_t k) {
    WordTree tree(model, options.cutoff, options.max_word_length, expansions,
                  options.budget);
    ArcNode node{model, x, y, options.cutoff, options.max_word_length,
                 parts[k]};
    pending[k] = tree.walk(std::span<const Letter>(&kLetters[k], 1), node);
  };
  if (options.max_word_length && *options.max_word_length == 0) {
    // identity only
  } else if (workers == 1) {
    for (std::size_t k = 0; k < 4; ++k) run(k);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t k = 0; k < 4; ++k) {
      jobs.push_back(std::async(std::launch::async, run, k));
    }
    for (auto& j : jobs) j.get();
  }
  for (auto& part : parts) {
    result.arcs.insert(result.arcs.end(), part.begin(), part.end());
  }
  std::sort(result.arcs.begin(), result.arcs.end(), arc_less);

  double unexplored = kInf;
  for (const auto& p : pending) {
    if (p) unexplored = std::min(unexplored, *p);
  }
  if (unexplored < kInf) {
    throw BudgetExhausted<ArcSpectrum>(std::move(result), unexplored);
  }
  return result;
}

double orthogeodesic_length(const SurfaceModel& model, int from, int to,
                            const Word& g) {
  const Isometry a = model.evaluate(model.boundary_words()[from]);
  const Isometry gm = model.evaluate(g);
  const Isometry b = gm * model.evaluate(model.boundary_words()[to]) *
                     gm.inverse();
  const Isometry b_inv = b.inverse();
  // Raw SL(2) traces: the identity needs consistent signs, which the
  // normalized product would not keep.
  const auto raw_trace = [](const Isometry& p, const Isometry& q) {
    return p.a() * q.a() + p.b() * q.c() + p.c() * q.b() + p.d() * q.d();
  };
  const double diff = std::abs(raw_trace(a, b) - raw_trace(a, b_inv));
  const double scale = 4.0 * std::sinh(model.boundary_lengths()[from] / 2.0) *
                       std::sinh(model.boundary_lengths()[to] / 2.0);
  const double c = diff / scale;
  if (!(c > 1.0)) throw GeometryError("no common perpendicular");
  return std::acosh(c);
}

OrthoRecord reversed(const SurfaceModel& model, const OrthoRecord& record) {
  const int from = record.to_boundary;
  const int to = record.from_boundary;
  Word rep = canonical_double_coset(model.boundary_words()[from],
                                    record.coset_rep.inverse(),
                                    model.boundary_words()[to]);
  const double length = orthogeodesic_length(model, from, to, rep);
  return {length, from, to, std::move(rep)};
}

Orthospectrum enumerate_orthogeodesics(const SurfaceModel& model,
                                       const EnumerationOptions& options) {
  check_cutoff(options.cutoff);
  const int nb = model.boundary_count();
  std::atomic<std::uint64_t> expansions{0};

  struct Task {
    int from;
    int to;
    std::map<Word, OrthoRecord> found;
    std::optional<double> pending;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) tasks.push_back({i, j, {}, std::nullopt});
  }

  auto run = [&](Task& task) {
    const int i = task.from;
    const int j = task.to;
    const double half = model.boundary_lengths()[i] / 2.0;
    OrthoNode node{model,
                   i,
                   j,
                   options.cutoff,
                   options.max_word_length,
                   segment_frame(model, i),
                   -half - kFootTol,
                   half + kFootTol,
                   {},
                   task.found};
    for (const auto& lift : model.base_lifts()) {
      if (lift.boundary == j) node.lifts.push_back(&lift);
    }
    const std::vector<Letter> empty;
    for (const surfaces::BoundaryLift* lift : node.lifts) {
      if (i == j && lift->coset_word.empty()) continue;  // the axis itself
      node.consider(std::span<const Letter>(empty), Isometry(), *lift);
    }
    WordTree tree(model, options.cutoff, std::nullopt, expansions,
                  options.budget);
    task.pending = tree.walk(std::span<const Letter>(kLetters), node);
  };

  const unsigned workers = std::max(options.threads, 1U);
  if (workers == 1) {
    for (Task& t : tasks) run(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, tasks.size()); ++w) {
      jobs.push_back(std::async(std::launch::async, [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) run(tasks[k]);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  Orthospectrum result;
  result.surface = model.spec();
  result.cutoff = options.cutoff;
  double unexplored = kInf;
  for (Task& t : tasks) {
    for (auto& [word, rec] : t.found) result.records.push_back(rec);
    if (t.pending) unexplored = std::min(unexplored, *t.pending);
  }
  std::sort(result.records.begin(), result.records.end(), ortho_less);
  if (unexplored < kInf) {
    throw BudgetExhausted<Orthospectrum>(std::move(result), unexplored);
  }
  return result;
}

Orthospectrum unoriented(const SurfaceModel& model,
                         const Orthospectrum& spectrum) {
  if (!spectrum.oriented) return spectrum;
  Orthospectrum out;
  out.surface = spectrum.surface;
  out.cutoff = spectrum.cutoff;
  out.oriented = false;
  for (const OrthoRecord& r : spectrum.records) {
    const OrthoRecord back = reversed(model, r);
    const auto key = [](const OrthoRecord& x) {
      return std::tie(x.from_boundary, x.to_boundary, x.coset_rep);
    };
    if (!(key(back) < key(r))) out.records.push_back(r);
  }
  return out;
}

namespace {

template <class Lengths>
std::size_t count_up_to(const Lengths& lengths, double cutoff, double ell) {
  if (ell > cutoff) throw DomainError("counting function queried past cutoff");
  return static_cast<std::size_t>(
      std::upper_bound(lengths.begin(), lengths.end(), ell) - lengths.begin());
}

}  // namespace

std::size_t counting_function(const Orthospectrum& spectrum, double ell) {
  return count_up_to(spectrum.lengths(), spectrum.cutoff, ell);
}

std::size_t counting_function(const ArcSpectrum& spectrum, double ell) {
  return count_up_to(spectrum.lengths(), spectrum.cutoff, ell);
}

}  // namespace orthospec::enumerate
