#include "orthospec/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "orthospec/app/acceptance.hpp"
#include "orthospec/enumerate.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/series.hpp"
#include "orthospec/surfaces.hpp"

namespace orthospec::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& dir, const std::string& name,
                const std::string& body) {
  fs::create_directories(dir);
  std::ofstream f(fs::path(dir) / name, std::ios::binary);
  if (!f) throw Error("cannot write " + (fs::path(dir) / name).string());
  f << body;
}

void write_json(const std::string& dir, const std::string& name,
                const json& doc) {
  write_text(dir, name, doc.dump(2) + "\n");
}

std::string csv_preamble(const RunConfig& config, const std::string& columns) {
  return "# orthospec " + tool_version() + " config " + config_hash(config) +
         "\n" + columns + "\n";
}

json stamp(const RunConfig& config, const std::string& command,
           const std::string& schema) {
  json hashed = to_json(config);
  hashed.erase("out");
  hashed.erase("threads");
  return {{"schema", schema},
          {"config", hashed},
          {"version", tool_version()},
          {"config_hash", config_hash(config)},
          {"command", command},
          {"surface",
           {{"kind", surfaces::to_string(config.surface.kind)},
            {"boundary_lengths", config.surface.boundary_lengths}}},
          {"conventions",
           {{"oriented", config.oriented},
            {"dilog_normalization", series::to_string(config.dilog)}}}};
}

enumerate::EnumerationOptions enumeration_options(const RunConfig& config) {
  enumerate::EnumerationOptions o;
  o.cutoff = config.cutoff;
  o.budget = config.budget;
  o.max_word_length = config.max_word_length;
  o.threads = config.threads;
  return o;
}

series::ContinuationOptions continuation_options(const RunConfig& config) {
  series::ContinuationOptions o = config.continuation;
  o.cutoff = config.cutoff;
  o.threads = config.threads;
  return o;
}

std::string spectrum_csv(const RunConfig& config,
                         const enumerate::Orthospectrum& s) {
  std::string out =
      csv_preamble(config, "length,from_boundary,to_boundary,word");
  for (const auto& r : s.records) {
    out += fmt(r.length) + "," + std::to_string(r.from_boundary) + "," +
           std::to_string(r.to_boundary) + "," + r.coset_rep.str() + "\n";
  }
  return out;
}

std::string arcs_csv(const RunConfig& config, const enumerate::ArcSpectrum& s) {
  std::string out = csv_preamble(config, "length,word");
  for (const auto& a : s.arcs) out += fmt(a.length) + "," + a.word.str() + "\n";
  return out;
}

/// Finalizes an orthospectrum under the configured orientation convention.
enumerate::Orthospectrum apply_convention(const RunConfig& config,
                                          const surfaces::SurfaceModel& model,
                                          enumerate::Orthospectrum s) {
  return config.oriented ? s : enumerate::unoriented(model, s);
}

std::pair<hyp2::HPoint, hyp2::HPoint> basepoints(
    const RunConfig& config, const surfaces::SurfaceModel& model) {
  return {config.x.value_or(model.domain_midpoint()),
          config.y.value_or(model.domain_midpoint())};
}

json tail_json(const series::TailModel& t) {
  json terms = json::array();
  for (const auto& term : t.terms) {
    terms.push_back({{"pair", term.pair},
                     {"exponent", {term.exponent.real(), term.exponent.imag()}},
                     {"coefficient",
                      {term.coefficient.real(), term.coefficient.imag()}}});
  }
  return {{"terms", terms},
          {"constant", t.constant},
          {"constant_stderr", t.constant_stderr},
          {"window", {t.window_lo, t.window_hi}},
          {"residual", t.residual}};
}

json estimate_json(const series::SeriesEstimate& e) {
  json grid = json::array();
  for (const auto& g : e.grid) {
    grid.push_back({{"terms", g.terms},
                    {"window_fraction", g.window_fraction},
                    {"window_end", g.window_end},
                    {"value", g.value},
                    {"constant_stderr", g.constant_stderr}});
  }
  return {{"s", e.s},
          {"estimate", e.value},
          {"uncertainty", e.uncertainty},
          {"end_spread", e.end_spread},
          {"stable", e.stable},
          {"tail", tail_json(e.tail)},
          {"grid", grid}};
}

std::string plot_csv(const RunConfig& config, std::span<const double> lengths,
                     const series::TailModel& tail) {
  std::string out = csv_preamble(config, "ell,N,N_fit,residual");
  constexpr int kPoints = 500;
  for (int k = 0; k < kPoints; ++k) {
    const double ell = tail.window_lo +
                       (tail.window_hi - tail.window_lo) * (k + 0.5) / kPoints;
    const double n = static_cast<double>(series::count_up_to(lengths, ell));
    const double fit = tail.evaluate(ell);
    out += fmt(ell) + "," + fmt(n) + "," + fmt(fit) + "," + fmt(n - fit) + "\n";
  }
  return out;
}

/// Shared body of eta and eta-xy once the lengths are known.
int report_continuation(const RunConfig& config, const std::string& command,
                        const std::string& stem, std::vector<double> lengths,
                        double expected, json extra, std::ostream& text) {
  json report = stamp(config, command, "orthospec.eta/1");
  report["cutoff"] = config.cutoff;
  report["count"] = lengths.size();
  report["expected"] = expected;
  report.update(extra);
  if (lengths.size() >= 200) {
    const auto d = series::estimate_delta(lengths);
    report["delta"] = {{"value", d.delta},
                       {"stderr", d.standard_error},
                       {"out_of_range", d.out_of_range}};
  } else {
    report["delta"] = nullptr;
  }
  const series::SeriesEstimate e =
      series::continue_at_zero(lengths, continuation_options(config));
  report["continuation"] = estimate_json(e);
  const double tolerance = std::max(0.1, 3.0 * e.uncertainty);
  report["within_tolerance"] = std::abs(e.value - expected) <= tolerance;
  report["inconclusive"] = !e.stable;
  write_json(config.out, stem + ".json", report);
  write_text(config.out, stem + "_plot.csv", plot_csv(config, lengths, e.tail));

  char line[256];
  std::snprintf(line, sizeof line,
                "%s: estimate %.6f +- %.6f (expected %.6f), %zu lengths, "
                "window-end spread %.6f%s\n",
                command.c_str(), e.value, e.uncertainty, expected,
                lengths.size(), e.end_spread,
                e.stable ? "" : " [INCONCLUSIVE]");
  text << line;
  return e.stable ? kExitOk : kExitInconclusive;
}

int cmd_spectrum(const RunConfig& config, std::ostream& text) {
  const auto model = surfaces::build(config.surface);
  json meta = stamp(config, "spectrum", "orthospec.spectrum/1");
  meta["cutoff"] = config.cutoff;
  try {
    const auto s = apply_convention(
        config, model,
        enumerate::enumerate_orthogeodesics(model, enumeration_options(config)));
    meta["count"] = s.records.size();
    meta["complete"] = true;
    write_text(config.out, "spectrum.csv", spectrum_csv(config, s));
    write_json(config.out, "spectrum.json", meta);
    text << "spectrum: " << s.records.size() << " records up to "
         << fmt(config.cutoff) << "\n";
    return kExitOk;
  } catch (const enumerate::BudgetExhausted<enumerate::Orthospectrum>& e) {
    const auto s = apply_convention(config, model, e.partial());
    meta["count"] = s.records.size();
    meta["complete"] = false;
    meta["complete_below"] = e.unexplored_bound();
    write_text(config.out, "spectrum.csv.partial", spectrum_csv(config, s));
    write_json(config.out, "spectrum.json.partial", meta);
    text << "spectrum: budget exhausted; partial result complete below "
         << fmt(e.unexplored_bound()) << "\n";
    return kExitBudget;
  }
}

int cmd_arcs(const RunConfig& config, std::ostream& text) {
  const auto model = surfaces::build(config.surface);
  const auto [x, y] = basepoints(config, model);
  json meta = stamp(config, "arcs", "orthospec.arcs/1");
  meta["cutoff"] = config.cutoff;
  meta["basepoints"] = {{"x", {x.x(), x.y()}}, {"y", {y.x(), y.y()}}};
  try {
    const auto s =
        enumerate::enumerate_arcs(model, x, y, enumeration_options(config));
    meta["count"] = s.arcs.size();
    meta["complete"] = true;
    write_text(config.out, "arcs.csv", arcs_csv(config, s));
    write_json(config.out, "arcs.json", meta);
    text << "arcs: " << s.arcs.size() << " arcs up to " << fmt(config.cutoff)
         << "\n";
    return kExitOk;
  } catch (const enumerate::BudgetExhausted<enumerate::ArcSpectrum>& e) {
    meta["count"] = e.partial().arcs.size();
    meta["complete"] = false;
    meta["complete_below"] = e.unexplored_bound();
    write_text(config.out, "arcs.csv.partial", arcs_csv(config, e.partial()));
    write_json(config.out, "arcs.json.partial", meta);
    text << "arcs: budget exhausted; partial result complete below "
         << fmt(e.unexplored_bound()) << "\n";
    return kExitBudget;
  }
}

int cmd_eta(const RunConfig& config, std::ostream& text) {
  const auto model = surfaces::build(config.surface);
  const auto s = apply_convention(
      config, model,
      enumerate::enumerate_orthogeodesics(model, enumeration_options(config)));
  return report_continuation(config, "eta", "eta", s.lengths(), 0.0,
                             json::object(), text);
}

int cmd_eta_xy(const RunConfig& config, std::ostream& text) {
  const auto model = surfaces::build(config.surface);
  const auto [x, y] = basepoints(config, model);
  const auto s =
      enumerate::enumerate_arcs(model, x, y, enumeration_options(config));
  json extra = {{"basepoints", {{"x", {x.x(), x.y()}}, {"y", {y.x(), y.y()}}}},
                {"euler_characteristic", model.euler_char()}};
  return report_continuation(config, "eta-xy", "eta_xy", s.lengths(),
                             1.0 / model.euler_char(), extra, text);
}

int cmd_identities(const RunConfig& config, std::ostream& text) {
  const auto model = surfaces::build(config.surface);
  const auto full = apply_convention(
      config, model,
      enumerate::enumerate_orthogeodesics(model, enumeration_options(config)));
  std::vector<double> checkpoints = config.checkpoints;
  if (checkpoints.empty()) {
    for (int k = 1; k <= 4; ++k) checkpoints.push_back(config.cutoff * k / 4.0);
  }
  std::sort(checkpoints.begin(), checkpoints.end());

  const double boundary = surfaces::boundary_total_length(model);
  json rows = json::array();
  bool decreasing = true;
  double prev_b = INFINITY, prev_r = INFINITY;
  for (double cut : checkpoints) {
    enumerate::Orthospectrum part = full;
    part.cutoff = cut;
    part.records.resize(enumerate::counting_function(full, cut));
    const double b = series::basmajian_residual(part, model);
    const double r = series::bridgeman_residual(part, model, config.dilog);
    decreasing = decreasing && b < prev_b && r < prev_r && b > 0 && r > 0;
    prev_b = b;
    prev_r = r;
    rows.push_back({{"cutoff", cut},
                    {"count", part.records.size()},
                    {"basmajian_residual", b},
                    {"basmajian_relative", b / boundary},
                    {"bridgeman_residual", r},
                    {"bridgeman_relative", r / model.area()}});
  }
  json report = stamp(config, "identities", "orthospec.identities/1");
  report["cutoff"] = config.cutoff;
  report["boundary_length"] = boundary;
  report["area"] = model.area();
  report["checkpoints"] = rows;
  report["decreasing"] = decreasing;
  write_json(config.out, "identities.json", report);

  const json& last = rows.back();
  char line[256];
  std::snprintf(line, sizeof line,
                "identities: at L=%g Basmajian relative residual %.3e, "
                "Bridgeman relative residual %.3e%s\n",
                last["cutoff"].get<double>(),
                last["basmajian_relative"].get<double>(),
                last["bridgeman_relative"].get<double>(),
                decreasing ? "" : " [NOT DECREASING]");
  text << line;
  return decreasing ? kExitOk : kExitInconclusive;
}

int cmd_accept(const RunConfig& config, std::ostream& text) {
  AcceptanceOptions options;
  options.threads = config.threads;
  options.scratch_dir = (fs::path(config.out) / "accept_scratch").string();
  const auto results = run_acceptance(options, [&](const CriterionResult& r) {
    text << format_result_line(r) << "\n" << std::flush;
  });
  json report = acceptance_report(results);
  report["version"] = tool_version();
  write_json(config.out, "accept.json", report);
  fs::remove_all(options.scratch_dir);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  text << (all ? "acceptance: all criteria passed\n"
               : "acceptance: some criteria failed\n");
  return all ? kExitOk : kExitInconclusive;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "spectrum", "arcs", "eta", "eta-xy", "identities", "accept"};
  return names;
}

void write_error(const std::string& out_dir, const std::string& command,
                 const std::string& kind, const std::string& message,
                 int exit_code) {
  const json doc = {{"schema", "orthospec.error/1"},
                    {"version", tool_version()},
                    {"command", command},
                    {"error", {{"kind", kind}, {"message", message}}},
                    {"exit_code", exit_code}};
  try {
    write_json(out_dir, "error.json", doc);
  } catch (const std::exception&) {
    // The caller still reports the failure on stderr.
  }
}

int run_command(const std::string& command, const RunConfig& config,
                std::ostream& text) {
  try {
    config.validate();
    if (command == "spectrum") return cmd_spectrum(config, text);
    if (command == "arcs") return cmd_arcs(config, text);
    if (command == "eta") return cmd_eta(config, text);
    if (command == "eta-xy") return cmd_eta_xy(config, text);
    if (command == "identities") return cmd_identities(config, text);
    if (command == "accept") return cmd_accept(config, text);
    throw DomainError("unknown command '" + command + "'");
  } catch (const enumerate::BudgetExhausted<enumerate::Orthospectrum>& e) {
    write_error(config.out, command, "budget", e.what(), kExitBudget);
    text << command << ": " << e.what() << "\n";
    return kExitBudget;
  } catch (const enumerate::BudgetExhausted<enumerate::ArcSpectrum>& e) {
    write_error(config.out, command, "budget", e.what(), kExitBudget);
    text << command << ": " << e.what() << "\n";
    return kExitBudget;
  } catch (const DomainError& e) {
    write_error(config.out, command, "domain", e.what(), kExitDomain);
    text << command << ": error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericError& e) {
    write_error(config.out, command, "numeric", e.what(), kExitInconclusive);
    text << command << ": inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    write_error(config.out, command, "internal", e.what(), kExitInternal);
    text << command << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace orthospec::app
