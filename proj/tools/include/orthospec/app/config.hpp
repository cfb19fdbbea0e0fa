#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "orthospec/hyp2.hpp"
#include "orthospec/series.hpp"
#include "orthospec/surfaces.hpp"

namespace orthospec::app {

/// Everything a run depends on. Serializes to a JSON document whose
/// SHA-256 (without the output directory) stamps every artifact.
struct RunConfig {
  surfaces::SurfaceSpec surface{surfaces::SurfaceKind::Pants, {2.0, 2.0, 2.0}};
  double cutoff = 14.0;
  std::uint64_t budget = 100'000'000;
  unsigned threads = 1;
  std::optional<std::size_t> max_word_length;
  /// Basepoints for arcs; the domain midpoint when unset.
  std::optional<hyp2::HPoint> x;
  std::optional<hyp2::HPoint> y;
  series::ContinuationOptions continuation;
  bool oriented = true;
  series::DilogNormalization dilog = series::DilogNormalization::Standard;
  /// Cutoffs at which identity residuals are reported; four evenly spaced
  /// values ending at `cutoff` when empty.
  std::vector<double> checkpoints;
  std::string out = "out";

  /// Throws DomainError on any inconsistent field.
  void validate() const;
};

/// Parses a config document. Unknown keys are errors; missing keys keep
/// their defaults.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);

/// Hex SHA-256 of the canonical JSON of `config`, output directory excluded.
std::string config_hash(const RunConfig& config);

std::string tool_version();

}  // namespace orthospec::app
