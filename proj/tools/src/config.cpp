#include "orthospec/app/config.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <set>

#include "orthospec/errors.hpp"

#ifndef ORTHOSPEC_VERSION
#define ORTHOSPEC_VERSION "0.0.0"
#endif

namespace orthospec::app {

using nlohmann::json;

std::string tool_version() { return ORTHOSPEC_VERSION; }

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) throw DomainError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw DomainError("unknown key '" + key + "' in " + where);
    }
  }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw DomainError("bad value for '" + std::string(key) + "' in " + where);
  }
}

hyp2::HPoint point_from_json(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    throw DomainError(what + " must be [re, im]");
  }
  return hyp2::HPoint(v[0].get<double>(), v[1].get<double>());
}

json point_to_json(const hyp2::HPoint& p) { return json::array({p.x(), p.y()}); }

}  // namespace

void RunConfig::validate() const {
  surface.validate();
  if (!std::isfinite(cutoff) || !(cutoff > 0.0) || cutoff > hyp2::kMaxLength) {
    throw DomainError("cutoff must lie in (0, 60]");
  }
  if (budget == 0) throw DomainError("budget must be positive");
  if (threads == 0 || threads > 256) throw DomainError("threads must be 1..256");
  const auto& c = continuation;
  if (c.terms.empty() || c.window_fractions.empty()) {
    throw DomainError("fit grid must not be empty");
  }
  for (int k : c.terms) {
    if (k < 1 || k > 4) throw DomainError("fit terms must be 1..4");
  }
  for (double f : c.window_fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw DomainError("window fractions must lie in (0, 1]");
    }
  }
  if (c.window_ends < 1) throw DomainError("window_ends must be positive");
  if (!(c.end_span >= 0.0 && c.end_span < 1.0)) {
    throw DomainError("end_span must lie in [0, 1)");
  }
  if (c.fit.samples < 100) throw DomainError("samples must be at least 100");
  if (c.fit.starts < 1) throw DomainError("starts must be positive");
  if (!(c.fit.taper >= 0.0)) throw DomainError("taper must be nonnegative");
  for (double v : checkpoints) {
    if (!(v > 0.0 && v <= cutoff)) {
      throw DomainError("checkpoints must lie in (0, cutoff]");
    }
  }
  if (out.empty()) throw DomainError("output directory must not be empty");
}

RunConfig config_from_json(const json& doc) {
  RunConfig c;
  check_keys(doc,
             {"surface", "cutoff", "budget", "threads", "max_word_length",
              "basepoints", "fit", "conventions", "checkpoints", "out"},
             "config");
  if (doc.contains("surface")) {
    const json& s = doc["surface"];
    check_keys(s, {"kind", "boundary_lengths"}, "surface");
    if (s.contains("kind")) {
      c.surface.kind =
          surfaces::surface_kind_from_string(get<std::string>(s, "kind", "surface"));
    }
    if (s.contains("boundary_lengths")) {
      c.surface.boundary_lengths =
          get<std::vector<double>>(s, "boundary_lengths", "surface");
    }
  }
  if (doc.contains("cutoff")) c.cutoff = get<double>(doc, "cutoff", "config");
  if (doc.contains("budget")) {
    const double b = get<double>(doc, "budget", "config");
    if (!(b >= 1.0 && b <= 1e15) || b != std::floor(b)) {
      throw DomainError("budget must be a positive integer");
    }
    c.budget = static_cast<std::uint64_t>(b);
  }
  if (doc.contains("threads")) {
    const int t = get<int>(doc, "threads", "config");
    if (t < 1) throw DomainError("threads must be positive");
    c.threads = static_cast<unsigned>(t);
  }
  if (doc.contains("max_word_length") && !doc["max_word_length"].is_null()) {
    const int m = get<int>(doc, "max_word_length", "config");
    if (m < 0) throw DomainError("max_word_length must be nonnegative");
    c.max_word_length = static_cast<std::size_t>(m);
  }
  if (doc.contains("basepoints") && !doc["basepoints"].is_null()) {
    const json& b = doc["basepoints"];
    check_keys(b, {"x", "y"}, "basepoints");
    if (b.contains("x")) c.x = point_from_json(b["x"], "basepoints.x");
    if (b.contains("y")) c.y = point_from_json(b["y"], "basepoints.y");
  }
  if (doc.contains("fit")) {
    const json& f = doc["fit"];
    check_keys(f,
               {"terms", "window_fractions", "window_ends", "end_span", "taper",
                "samples", "starts", "seed", "min_exponent"},
               "fit");
    auto& k = c.continuation;
    if (f.contains("terms")) k.terms = get<std::vector<int>>(f, "terms", "fit");
    if (f.contains("window_fractions")) {
      k.window_fractions = get<std::vector<double>>(f, "window_fractions", "fit");
    }
    if (f.contains("window_ends")) k.window_ends = get<int>(f, "window_ends", "fit");
    if (f.contains("end_span")) k.end_span = get<double>(f, "end_span", "fit");
    if (f.contains("taper")) k.fit.taper = get<double>(f, "taper", "fit");
    if (f.contains("samples")) k.fit.samples = get<int>(f, "samples", "fit");
    if (f.contains("starts")) k.fit.starts = get<int>(f, "starts", "fit");
    if (f.contains("seed")) k.fit.seed = get<std::uint64_t>(f, "seed", "fit");
    if (f.contains("min_exponent")) {
      k.fit.min_exponent = get<double>(f, "min_exponent", "fit");
    }
  }
  if (doc.contains("conventions")) {
    const json& v = doc["conventions"];
    check_keys(v, {"oriented", "dilog_normalization"}, "conventions");
    if (v.contains("oriented")) c.oriented = get<bool>(v, "oriented", "conventions");
    if (v.contains("dilog_normalization")) {
      c.dilog = series::dilog_normalization_from_string(
          get<std::string>(v, "dilog_normalization", "conventions"));
    }
  }
  if (doc.contains("checkpoints")) {
    c.checkpoints = get<std::vector<double>>(doc, "checkpoints", "config");
  }
  if (doc.contains("out")) c.out = get<std::string>(doc, "out", "config");
  c.validate();
  return c;
}

json to_json(const RunConfig& c) {
  json basepoints = nullptr;
  if (c.x || c.y) {
    basepoints = json::object();
    if (c.x) basepoints["x"] = point_to_json(*c.x);
    if (c.y) basepoints["y"] = point_to_json(*c.y);
  }
  const auto& k = c.continuation;
  return {
      {"surface",
       {{"kind", surfaces::to_string(c.surface.kind)},
        {"boundary_lengths", c.surface.boundary_lengths}}},
      {"cutoff", c.cutoff},
      {"budget", c.budget},
      {"threads", c.threads},
      {"max_word_length",
       c.max_word_length ? json(*c.max_word_length) : json(nullptr)},
      {"basepoints", basepoints},
      {"fit",
       {{"terms", k.terms},
        {"window_fractions", k.window_fractions},
        {"window_ends", k.window_ends},
        {"end_span", k.end_span},
        {"taper", k.fit.taper},
        {"samples", k.fit.samples},
        {"starts", k.fit.starts},
        {"seed", k.fit.seed},
        {"min_exponent", k.fit.min_exponent}}},
      {"conventions",
       {{"oriented", c.oriented},
        {"dilog_normalization", series::to_string(c.dilog)}}},
      {"checkpoints", c.checkpoints},
      {"out", c.out},
  };
}

std::string config_hash(const RunConfig& config) {
  json doc = to_json(config);
  doc.erase("out");
  // Thread count never changes results.
  doc.erase("threads");
  const std::string text = doc.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace orthospec::app
