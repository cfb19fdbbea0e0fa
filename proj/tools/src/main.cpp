#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "orthospec/app/commands.hpp"
#include "orthospec/app/config.hpp"
#include "orthospec/errors.hpp"

namespace {

using orthospec::app::RunConfig;

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> surface;
  std::vector<double> lengths;
  std::optional<double> cutoff;
  std::optional<double> budget;
  std::optional<unsigned> threads;
  std::optional<int> max_word_length;
  std::vector<double> x;
  std::vector<double> y;
  std::optional<bool> oriented;
  std::optional<std::string> dilog;
  std::vector<double> checkpoints;
  std::vector<int> terms;
  std::vector<double> window_fractions;
  std::optional<std::uint64_t> seed;
};

void add_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", o.out, "output directory");
  cmd->add_option("--surface", o.surface, "surface kind (pants)");
  cmd->add_option("--lengths", o.lengths, "boundary lengths")->expected(3);
  cmd->add_option("-L,--cutoff", o.cutoff, "length cutoff");
  cmd->add_option("--budget", o.budget, "node budget for enumeration");
  cmd->add_option("-j,--threads", o.threads, "worker threads");
  cmd->add_option("--max-word-length", o.max_word_length,
                  "cap on word length (testing)");
  cmd->add_option("--x", o.x, "basepoint x as RE IM")->expected(2);
  cmd->add_option("--y", o.y, "basepoint y as RE IM")->expected(2);
  cmd->add_option("--oriented", o.oriented, "count both orientations");
  cmd->add_option("--dilog", o.dilog, "standard, doubled or halved");
  cmd->add_option("--checkpoints", o.checkpoints, "identity checkpoints");
  cmd->add_option("--terms", o.terms, "fit term counts");
  cmd->add_option("--window-fractions", o.window_fractions,
                  "fit window fractions");
  cmd->add_option("--seed", o.seed, "multistart seed");
}

/// Config file first, then command-line flags on top, as one JSON document
/// so that the same validation applies.
RunConfig resolve(const Overrides& o) {
  nlohmann::json doc = nlohmann::json::object();
  if (!o.config_path.empty()) {
    std::ifstream f(o.config_path);
    try {
      doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw orthospec::DomainError(std::string("cannot parse config: ") + e.what());
    }
    if (!doc.is_object()) throw orthospec::DomainError("config must be an object");
  }
  if (o.surface) doc["surface"]["kind"] = *o.surface;
  if (!o.lengths.empty()) doc["surface"]["boundary_lengths"] = o.lengths;
  if (o.cutoff) doc["cutoff"] = *o.cutoff;
  if (o.budget) doc["budget"] = *o.budget;
  if (o.threads) doc["threads"] = *o.threads;
  if (o.max_word_length) doc["max_word_length"] = *o.max_word_length;
  if (!o.x.empty()) doc["basepoints"]["x"] = o.x;
  if (!o.y.empty()) doc["basepoints"]["y"] = o.y;
  if (o.oriented) doc["conventions"]["oriented"] = *o.oriented;
  if (o.dilog) doc["conventions"]["dilog_normalization"] = *o.dilog;
  if (!o.checkpoints.empty()) doc["checkpoints"] = o.checkpoints;
  if (!o.terms.empty()) doc["fit"]["terms"] = o.terms;
  if (!o.window_fractions.empty()) doc["fit"]["window_fractions"] = o.window_fractions;
  if (o.seed) doc["fit"]["seed"] = *o.seed;
  if (o.out) doc["out"] = *o.out;
  return orthospec::app::config_from_json(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthospectra, arc spectra and Poincare series of hyperbolic pants"};
  app.set_version_flag("--version", orthospec::app::tool_version());
  app.require_subcommand(1);

  Overrides overrides;
  std::string chosen;
  const std::map<std::string, std::string> help{
      {"spectrum", "enumerate the orthospectrum up to the cutoff"},
      {"arcs", "enumerate geodesic arcs between two basepoints"},
      {"eta", "continue the orthospectrum series to s = 0"},
      {"eta-xy", "continue the arc series to s = 0"},
      {"identities", "Basmajian and Bridgeman residuals at checkpoints"},
      {"accept", "run the acceptance suite"}};
  for (const auto& name : orthospec::app::command_names()) {
    CLI::App* cmd = app.add_subcommand(name, help.at(name));
    add_flags(cmd, overrides);
    cmd->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : orthospec::app::kExitDomain;
  }

  RunConfig config;
  try {
    config = resolve(overrides);
  } catch (const std::exception& e) {
    const std::string out = overrides.out.value_or(RunConfig{}.out);
    orthospec::app::write_error(out, chosen, "domain", e.what(),
                                orthospec::app::kExitDomain);
    std::cerr << chosen << ": error: " << e.what() << "\n";
    return orthospec::app::kExitDomain;
  }
  return orthospec::app::run_command(chosen, config, std::cout);
}
