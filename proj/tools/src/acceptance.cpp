#include "orthospec/app/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "orthospec/app/commands.hpp"
#include "orthospec/app/config.hpp"
#include "orthospec/app/oracles.hpp"
#include "orthospec/enumerate.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/series.hpp"
#include "orthospec/surfaces.hpp"

namespace orthospec::app {

using nlohmann::json;
using hyp2::HGeodesic;
using hyp2::HPoint;
using hyp2::IdealPoint;
using hyp2::Isometry;
namespace fs = std::filesystem;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

CriterionResult criterion(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Two disjoint geodesics whose four endpoints are at least `gap` apart.
/// Every tenth pair has a vertical first geodesic.
std::pair<HGeodesic, HGeodesic> random_disjoint_pair(std::mt19937_64& rng,
                                                     int index) {
  const double gap = 1e-2;
  for (;;) {
    std::array<double, 4> p{};
    for (double& v : p) v = uniform(rng, -5.0, 5.0);
    const bool vertical = index % 10 == 0;
    std::array<double, 4> s = p;
    std::sort(s.begin(), s.end());
    bool spread = true;
    for (int k = 0; k + 1 < 4; ++k) spread = spread && s[k + 1] - s[k] > gap;
    if (!spread) continue;
    const double a0 = std::min(p[0], p[1]), a1 = std::max(p[0], p[1]);
    const double b0 = std::min(p[2], p[3]), b1 = std::max(p[2], p[3]);
    const auto inside = [&](double t) { return t > a0 && t < a1; };
    IdealPoint s1 = IdealPoint::finite(p[0]);
    IdealPoint e1 = IdealPoint::finite(p[1]);
    if (vertical) {
      // (p0, oo) is disjoint from (b0, b1) when p0 is outside it.
      if (p[0] > b0 && p[0] < b1) continue;
      e1 = IdealPoint::infinity();
    } else if (inside(b0) != inside(b1)) {
      continue;
    }
    HGeodesic g1(s1, e1);
    HGeodesic g2(IdealPoint::finite(p[2]), IdealPoint::finite(p[3]));
    if (rng() & 1U) g1 = g1.reversed();
    return {g1, g2};
  }
}

Isometry random_isometry(std::mt19937_64& rng) {
  for (;;) {
    const double a = uniform(rng, -2.0, 2.0);
    const double b = uniform(rng, -2.0, 2.0);
    const double c = uniform(rng, -2.0, 2.0);
    if (std::abs(a) < 0.3) continue;
    return Isometry(a, b, c, (1.0 + b * c) / a);
  }
}

surfaces::SurfaceModel random_pants(std::mt19937_64& rng,
                                    std::vector<double>& lengths) {
  lengths = {uniform(rng, 0.5, 10.0), uniform(rng, 0.5, 10.0),
             uniform(rng, 0.5, 10.0)};
  return surfaces::build_pants(lengths[0], lengths[1], lengths[2]);
}

HPoint random_core_point(std::mt19937_64& rng,
                         const surfaces::SurfaceModel& model) {
  const HPoint mid = model.domain_midpoint();
  for (int attempt = 0; attempt < 200; ++attempt) {
    const HPoint p(mid.x() + uniform(rng, -0.3, 0.3) * mid.y(),
                   mid.y() * std::exp(uniform(rng, -0.3, 0.3)));
    const auto m = surfaces::contains_in_core(model, p);
    if (m.inside && !m.ambiguous) return p;
  }
  return mid;
}

// ---------------------------------------------------------------------------

CriterionResult kernel_oracle() {
  CriterionResult r = criterion(1, "kernel oracle");
  std::mt19937_64 rng(101);
  double worst_oracle = 0.0;
  double worst_invariance = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto [g1, g2] = random_disjoint_pair(rng, k);
    const double d = hyp2::dist_geodesics(g1, g2);
    const double d_oracle = oracles::min_distance_geodesics(g1, g2);
    worst_oracle = std::max(worst_oracle,
                            std::abs(d - d_oracle) / std::max(1.0, d));
    const Isometry h = random_isometry(rng);
    const double d_moved = hyp2::dist_geodesics(h.apply(g1), h.apply(g2));
    worst_invariance = std::max(worst_invariance,
                                std::abs(d - d_moved) / std::max(1.0, d));
  }
  r.passed = worst_oracle <= 1e-8 && worst_invariance <= 1e-12;
  r.metrics = {{"pairs", 1000},
               {"max_oracle_error", worst_oracle},
               {"max_invariance_error", worst_invariance},
               {"oracle_tolerance", 1e-8},
               {"invariance_tolerance", 1e-12}};
  r.summary = "1000 pairs, oracle error " + sci(worst_oracle) +
              ", invariance error " + sci(worst_invariance);
  return r;
}

CriterionResult construction_oracle() {
  CriterionResult r = criterion(2, "construction oracle");
  std::mt19937_64 rng(202);
  double worst_length = 0.0;
  double worst_seam = 0.0;
  int certificate_failures = 0;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> L;
    const auto model = random_pants(rng, L);
    if (!surfaces::pingpong_failure(model).empty()) ++certificate_failures;
    for (int b = 0; b < 3; ++b) {
      const double realized = hyp2::translation_length(
          model.evaluate(model.boundary_words()[b]));
      worst_length = std::max(worst_length, std::abs(realized - L[b]));
    }
    const auto& axes = model.boundary_axes();
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const int o = 3 - i - j;
        const double seam = hyp2::dist_geodesics(axes[i], axes[j]);
        worst_seam = std::max(
            worst_seam, std::abs(seam - oracles::hexagon_seam(L[i], L[j], L[o])));
      }
    }
  }
  r.passed = worst_length <= 1e-9 && worst_seam <= 1e-9 &&
             certificate_failures == 0;
  r.metrics = {{"pants", 100},
               {"max_boundary_length_error", worst_length},
               {"max_seam_error", worst_seam},
               {"certificate_failures", certificate_failures},
               {"tolerance", 1e-9}};
  r.summary = "100 pants, boundary error " + sci(worst_length) +
              ", seam error " + sci(worst_seam);
  return r;
}

/// Compares two record lists keyed by `key`; lengths must agree to 1e-9
/// relative, and a record may be missing from one side only when it sits
/// within 1e-9 of the cutoff.
template <class Record, class Key>
std::pair<int, int> compare_records(const std::vector<Record>& a,
                                    const std::vector<Record>& b, Key key,
                                    double cutoff) {
  std::map<decltype(key(a.front())), double> ma, mb;
  int duplicates = 0;
  for (const auto& r : a) duplicates += !ma.emplace(key(r), r.length).second;
  for (const auto& r : b) duplicates += !mb.emplace(key(r), r.length).second;
  int mismatches = duplicates;
  const auto near_cutoff = [&](double len) {
    return std::abs(len - cutoff) <= 1e-9 * cutoff;
  };
  int borderline = 0;
  for (const auto& [k, len] : ma) {
    const auto it = mb.find(k);
    if (it == mb.end()) {
      near_cutoff(len) ? ++borderline : ++mismatches;
    } else if (std::abs(it->second - len) > 1e-9 * std::max(1.0, len)) {
      ++mismatches;
    }
  }
  for (const auto& [k, len] : mb) {
    if (!ma.count(k)) near_cutoff(len) ? ++borderline : ++mismatches;
  }
  return {mismatches, borderline};
}

CriterionResult enumeration_exhaustiveness(unsigned threads) {
  CriterionResult r = criterion(3, "enumeration exhaustiveness");
  std::mt19937_64 rng(303);
  constexpr std::size_t kMaxLen = 8;
  constexpr double kArcCutoff = 16.0;
  constexpr double kOrthoCutoff = 12.0;
  int mismatches = 0, borderline = 0;
  std::size_t arcs = 0, orthos = 0;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> L;
    const auto model = random_pants(rng, L);
    const HPoint x = random_core_point(rng, model);
    const HPoint y = random_core_point(rng, model);

    enumerate::EnumerationOptions opt;
    opt.max_word_length = kMaxLen;
    opt.threads = threads;
    opt.cutoff = kArcCutoff;
    const auto fast_arcs = enumerate::enumerate_arcs(model, x, y, opt).arcs;
    const auto slow_arcs = oracles::naive_arcs(model, x, y, kArcCutoff, kMaxLen);
    const auto [ma, ba] = compare_records(
        fast_arcs, slow_arcs, [](const enumerate::ArcRecord& a) { return a.word; },
        kArcCutoff);

    opt.cutoff = kOrthoCutoff;
    const auto fast_orthos = enumerate::enumerate_orthogeodesics(model, opt).records;
    const auto slow_orthos =
        oracles::naive_orthogeodesics(model, kOrthoCutoff, kMaxLen);
    const auto [mo, bo] = compare_records(
        fast_orthos, slow_orthos,
        [](const enumerate::OrthoRecord& o) {
          return std::make_tuple(o.from_boundary, o.to_boundary, o.coset_rep);
        },
        kOrthoCutoff);
    mismatches += ma + mo;
    borderline += ba + bo;
    arcs += slow_arcs.size();
    orthos += slow_orthos.size();
  }
  r.passed = mismatches == 0;
  r.metrics = {{"pants", 20},
               {"max_word_length", kMaxLen},
               {"arc_cutoff", kArcCutoff},
               {"ortho_cutoff", kOrthoCutoff},
               {"arcs_compared", arcs},
               {"orthogeodesics_compared", orthos},
               {"mismatches", mismatches},
               {"borderline", borderline}};
  r.summary = "20 pants, " + std::to_string(arcs) + " arcs and " +
              std::to_string(orthos) + " orthogeodesics, " +
              std::to_string(mismatches) + " mismatches";
  return r;
}

CriterionResult continuation_oracle(unsigned threads) {
  CriterionResult r = criterion(4, "continuation oracle");
  std::vector<double> zeta(1'000'000);
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    zeta[i] = std::log(static_cast<double>(i + 1));
  }
  series::ContinuationOptions opt;
  opt.threads = threads;
  opt.cutoff = zeta.back();
  const auto z = series::continue_at_zero(zeta, opt);

  // N(l) = floor(e^{0.6 l} + 2.5), whose mean is e^{0.6 l} + 2.
  constexpr double kPlantedCutoff = 20.0;
  std::vector<double> planted(3, 0.0);
  for (int k = 4;; ++k) {
    const double len = std::log(k - 2.5) / 0.6;
    if (len > kPlantedCutoff) break;
    planted.push_back(len);
  }
  opt.cutoff = kPlantedCutoff;
  const auto p = series::continue_at_zero(planted, opt);

  const bool zeta_ok = std::abs(z.value + 0.5) <= 0.05;
  const bool planted_ok = std::abs(p.value - 2.0) <= 0.05 * 2.0;
  r.passed = zeta_ok && planted_ok;
  r.metrics = {{"zeta", {{"estimate", z.value},
                         {"uncertainty", z.uncertainty},
                         {"expected", -0.5},
                         {"tolerance", 0.05}}},
               {"planted", {{"estimate", p.value},
                            {"uncertainty", p.uncertainty},
                            {"expected", 2.0},
                            {"relative_tolerance", 0.05}}}};
  r.summary = "zeta(0) estimate " + fixed(z.value) + " (target -0.5), planted " +
              fixed(p.value) + " (target 2)";
  return r;
}

struct IdentityRow {
  double cutoff;
  double basmajian;
  double bridgeman;
};

CriterionResult identity_criterion(int id, const std::string& name,
                                   const std::vector<IdentityRow>& rows,
                                   bool basmajian, double target_cutoff,
                                   double tolerance) {
  CriterionResult r = criterion(id, name);
  bool decreasing = true;
  double at_target = INFINITY;
  json table = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double v = basmajian ? rows[k].basmajian : rows[k].bridgeman;
    if (k > 0) {
      const double prev = basmajian ? rows[k - 1].basmajian : rows[k - 1].bridgeman;
      decreasing = decreasing && v < prev;
    }
    if (rows[k].cutoff == target_cutoff) at_target = v;
    table.push_back({{"cutoff", rows[k].cutoff}, {"relative_residual", v}});
  }
  r.passed = decreasing && at_target <= tolerance;
  r.metrics = {{"surface", "pants(2,2,2)"},
               {"target_cutoff", target_cutoff},
               {"relative_residual_at_target", at_target},
               {"tolerance", tolerance},
               {"decreasing", decreasing},
               {"checkpoints", table}};
  if (!basmajian) r.metrics["dilog_normalization"] = "standard";
  const double last = basmajian ? rows.back().basmajian : rows.back().bridgeman;
  r.summary = "relative residual " + sci(at_target) + " at L=" +
              fixed(target_cutoff, 0) + ", " + sci(last) + " at L=" +
              fixed(rows.back().cutoff, 0) +
              (decreasing ? ", decreasing" : ", NOT decreasing");
  return r;
}

CriterionResult eta_vanishes(const std::vector<double>& lengths, double cutoff,
                            unsigned threads) {
  CriterionResult r = criterion(7, "eta vanishes at 0");
  series::ContinuationOptions opt;
  opt.threads = threads;
  opt.cutoff = cutoff;
  const auto e = series::continue_at_zero(lengths, opt);
  const double bound = std::max(0.1, 3.0 * e.uncertainty);
  r.passed = std::abs(e.value) <= bound && e.stable;
  r.metrics = {{"surface", "pants(2,2,2)"},
               {"cutoff", cutoff},
               {"count", lengths.size()},
               {"estimate", e.value},
               {"uncertainty", e.uncertainty},
               {"bound", bound},
               {"end_spread", e.end_spread},
               {"stable", e.stable}};
  r.summary = "estimate " + fixed(e.value) + " +- " + fixed(e.uncertainty) +
              " from " + std::to_string(lengths.size()) + " lengths" +
              (e.stable ? ", stable" : ", UNSTABLE");
  return r;
}

CriterionResult eta_xy_is_inverse_chi(unsigned threads) {
  CriterionResult r = criterion(8, "eta_xy equals 1/chi at 0");
  const auto model = surfaces::build_pants(2.0, 2.0, 2.0);
  const HPoint mid = model.domain_midpoint();
  // {dx, y factor} offsets from the domain midpoint for x and for y.
  const double pairs[3][4] = {{0.02, 1.0, -0.03, 1.1},
                              {-0.1, 0.9, 0.15, 1.2},
                              {0.3, 1.3, -0.2, 0.8}};
  constexpr double kCutoff = 24.0;
  const double expected = 1.0 / model.euler_char();
  enumerate::EnumerationOptions eo;
  eo.cutoff = kCutoff;
  eo.threads = threads;
  series::ContinuationOptions co;
  co.threads = threads;
  bool ok = true;
  json rows = json::array();
  std::string values;
  for (const auto& p : pairs) {
    const HPoint x(mid.x() + p[0], mid.y() * p[1]);
    const HPoint y(mid.x() + p[2], mid.y() * p[3]);
    const auto e = series::eta_xy_at_zero(model, x, y, eo, co);
    const bool within = std::abs(e.value - expected) <= 0.15;
    const bool covered = std::abs(e.value - expected) <= e.uncertainty;
    ok = ok && within && covered && e.stable;
    rows.push_back({{"x", {x.x(), x.y()}},
                    {"y", {y.x(), y.y()}},
                    {"estimate", e.value},
                    {"uncertainty", e.uncertainty},
                    {"within_tolerance", within},
                    {"covers_expected", covered},
                    {"stable", e.stable}});
    values += (values.empty() ? "" : ", ") + fixed(e.value) + " +- " +
              fixed(e.uncertainty, 2);
  }
  r.passed = ok;
  r.metrics = {{"surface", "pants(2,2,2)"},
               {"cutoff", kCutoff},
               {"expected", expected},
               {"tolerance", 0.15},
               {"pairs", rows}};
  r.summary = "estimates " + values + " (target -1)";
  return r;
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream f(entry.path(), std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    out[fs::relative(entry.path(), dir).string()] = s.str();
  }
  return out;
}

CriterionResult determinism(const AcceptanceOptions& options) {
  CriterionResult r = criterion(9, "determinism");
  const fs::path root(options.scratch_dir);
  struct Step {
    std::string command;
    double cutoff;
  };
  const std::vector<Step> steps{{"spectrum", 10.0},
                                {"arcs", 12.0},
                                {"identities", 12.0},
                                {"eta", 16.0},
                                {"eta-xy", 16.0}};
  const std::vector<unsigned> thread_counts{1, std::max(2U, options.threads), 1};
  std::vector<std::map<std::string, std::string>> trees;
  for (std::size_t run = 0; run < thread_counts.size(); ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    fs::remove_all(dir);
    std::ostringstream text;
    for (const Step& s : steps) {
      RunConfig c;
      c.cutoff = s.cutoff;
      c.threads = thread_counts[run];
      c.out = (dir / s.command).string();
      text << run_command(s.command, c, text) << "\n";
    }
    auto tree = read_tree(dir);
    tree["stdout"] = text.str();
    trees.push_back(std::move(tree));
  }
  fs::remove_all(root);
  int differing = 0;
  for (std::size_t k = 1; k < trees.size(); ++k) {
    if (trees[k].size() != trees[0].size()) ++differing;
    for (const auto& [name, body] : trees[0]) {
      const auto it = trees[k].find(name);
      if (it == trees[k].end() || it->second != body) ++differing;
    }
  }
  r.passed = differing == 0 && trees[0].size() > steps.size();
  r.metrics = {{"commands", json::array()},
               {"runs", thread_counts.size()},
               {"files_per_run", trees[0].size()},
               {"differing_files", differing}};
  for (const Step& s : steps) r.metrics["commands"].push_back(s.command);
  r.summary = std::to_string(thread_counts.size()) + " runs of " +
              std::to_string(steps.size()) + " commands (1 and " +
              std::to_string(thread_counts[1]) + " threads), " +
              std::to_string(trees[0].size()) + " files each, " +
              std::to_string(differing) + " differing";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  const auto wanted = [&](int id) {
    return options.only.empty() ||
           std::find(options.only.begin(), options.only.end(), id) !=
               options.only.end();
  };
  const auto record = [&](int id, const std::string& name, auto&& body,
                          double extra_seconds = 0.0) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = body();
    } catch (const std::exception& e) {
      r = criterion(id, name);
      r.passed = false;
      r.summary = std::string("error: ") + e.what();
      r.metrics = {{"error", e.what()}};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count() +
                extra_seconds;
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  const unsigned threads = std::max(options.threads, 1U);

  if (wanted(1)) record(1, "kernel oracle", kernel_oracle);
  if (wanted(2)) record(2, "construction oracle", construction_oracle);
  if (wanted(3)) {
    record(3, "enumeration exhaustiveness",
           [&] { return enumeration_exhaustiveness(threads); });
  }
  if (wanted(4)) {
    record(4, "continuation oracle", [&] { return continuation_oracle(threads); });
  }

  if (wanted(5) || wanted(6) || wanted(7)) {
    // One oriented spectrum serves the identities and the eta criterion.
    constexpr double kCutoff = 22.0;
    constexpr double kTarget = 14.0;
    const auto model = surfaces::build_pants(2.0, 2.0, 2.0);
    std::optional<enumerate::Orthospectrum> spectrum;
    std::string failure;
    double enumeration_seconds = 0.0;
    {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        enumerate::EnumerationOptions eo;
        eo.cutoff = kCutoff;
        eo.threads = threads;
        spectrum = enumerate::enumerate_orthogeodesics(model, eo);
      } catch (const std::exception& e) {
        failure = e.what();
      }
      enumeration_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
    const auto need_spectrum = [&] {
      if (!spectrum) throw NumericError("enumeration failed: " + failure);
    };
    std::vector<IdentityRow> rows;
    const auto identity_rows = [&] {
      need_spectrum();
      if (!rows.empty()) return rows;
      const double boundary = surfaces::boundary_total_length(model);
      for (double cut = 6.0; cut <= kCutoff; cut += 2.0) {
        enumerate::Orthospectrum part = *spectrum;
        part.cutoff = cut;
        part.records.resize(enumerate::counting_function(*spectrum, cut));
        rows.push_back({cut, series::basmajian_residual(part, model) / boundary,
                        series::bridgeman_residual(part, model) / model.area()});
      }
      return rows;
    };
    // The shared enumeration is timed with the first criterion using it.
    const auto charge = [&] {
      const double s = enumeration_seconds;
      enumeration_seconds = 0.0;
      return s;
    };
    if (wanted(5)) {
      record(5, "Basmajian identity", [&] {
        return identity_criterion(5, "Basmajian identity", identity_rows(), true,
                                  kTarget, 1e-2);
      }, charge());
    }
    if (wanted(6)) {
      record(6, "Bridgeman identity", [&] {
        return identity_criterion(6, "Bridgeman identity", identity_rows(), false,
                                  kTarget, 2e-2);
      }, charge());
    }
    if (wanted(7)) {
      record(7, "eta vanishes at 0", [&] {
        need_spectrum();
        return eta_vanishes(spectrum->lengths(), kCutoff, threads);
      }, charge());
    }
  }
  if (wanted(8)) {
    record(8, "eta_xy equals 1/chi at 0", [&] { return eta_xy_is_inverse_chi(threads); });
  }
  if (wanted(9)) record(9, "determinism", [&] { return determinism(options); });
  return results;
}

std::string format_result_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1f s", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) +
         " " + r.name + ": " + r.summary + " (" + secs + ")";
}

json acceptance_report(const std::vector<CriterionResult>& results) {
  json criteria = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"summary", r.summary},
                        {"metrics", r.metrics}});
  }
  return {{"schema", "orthospec.accept/1"}, {"passed", all}, {"criteria", criteria}};
}

}  // namespace orthospec::app
