#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "orthospec/app/commands.hpp"
#include "orthospec/app/config.hpp"
#include "orthospec/errors.hpp"

using namespace orthospec;
using app::RunConfig;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "orthospec_test_cli" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run(const std::string& command, const RunConfig& c) {
  std::ostringstream text;
  return app::run_command(command, c, text);
}

}  // namespace

TEST_CASE("config defaults, round trip and unknown keys") {
  const RunConfig d = app::config_from_json(json::object());
  CHECK(d.cutoff == 14.0);
  CHECK(d.surface.boundary_lengths == std::vector<double>{2.0, 2.0, 2.0});
  const json doc = {{"surface", {{"kind", "pants"}, {"boundary_lengths", {1.0, 2.0, 3.0}}}},
                    {"cutoff", 9.5},
                    {"basepoints", {{"x", {0.1, 0.9}}}},
                    {"fit", {{"terms", {1}}, {"seed", 42}}},
                    {"conventions", {{"oriented", false}}}};
  const RunConfig c = app::config_from_json(doc);
  CHECK(c.cutoff == 9.5);
  CHECK_FALSE(c.oriented);
  REQUIRE(c.x.has_value());
  CHECK(c.x->y() == 0.9);
  CHECK_FALSE(c.y.has_value());
  CHECK(app::to_json(app::config_from_json(app::to_json(c))) == app::to_json(c));

  CHECK_THROWS_AS(app::config_from_json({{"cutof", 3.0}}), DomainError);
  CHECK_THROWS_AS(app::config_from_json({{"fit", {{"window", 0.5}}}}), DomainError);
  CHECK_THROWS_AS(app::config_from_json({{"cutoff", "ten"}}), DomainError);
  CHECK_THROWS_AS(app::config_from_json({{"cutoff", 100.0}}), DomainError);
  CHECK_THROWS_AS(app::config_from_json({{"budget", 1.5}}), DomainError);
  CHECK_THROWS_AS(app::config_from_json({{"checkpoints", {20.0}}}), DomainError);
}

TEST_CASE("config hash ignores output directory and threads only") {
  RunConfig a;
  RunConfig b = a;
  b.out = "elsewhere";
  b.threads = 4;
  CHECK(app::config_hash(a) == app::config_hash(b));
  CHECK(app::config_hash(a).size() == 64);
  b.cutoff = 13.0;
  CHECK(app::config_hash(a) != app::config_hash(b));
}

TEST_CASE("spectrum command writes the symmetric seams first") {
  RunConfig c;
  c.cutoff = 6.0;
  c.out = scratch("spectrum").string();
  REQUIRE(run("spectrum", c) == app::kExitOk);
  std::istringstream csv(slurp(fs::path(c.out) / "spectrum.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("# orthospec ", 0) == 0);
  CHECK(line.find(app::config_hash(c)) != std::string::npos);
  std::getline(csv, line);
  CHECK(line == "length,from_boundary,to_boundary,word");
  for (int k = 0; k < 6; ++k) {
    REQUIRE(std::getline(csv, line));
    CHECK(std::stod(line.substr(0, line.find(','))) ==
          doctest::Approx(1.7049128323580).epsilon(1e-12));
  }
  const json meta = json::parse(slurp(fs::path(c.out) / "spectrum.json"));
  CHECK(meta["count"] == 36);
  CHECK(meta["config_hash"] == app::config_hash(c));
  CHECK(meta["conventions"]["oriented"] == true);
}

TEST_CASE("reruns are byte identical") {
  RunConfig c;
  c.cutoff = 9.0;
  c.out = scratch("rerun_a").string();
  REQUIRE(run("spectrum", c) == 0);
  RunConfig d = c;
  d.out = scratch("rerun_b").string();
  d.threads = 3;
  REQUIRE(run("spectrum", d) == 0);
  for (const char* f : {"spectrum.csv", "spectrum.json"}) {
    CHECK(slurp(fs::path(c.out) / f) == slurp(fs::path(d.out) / f));
  }
}

TEST_CASE("invalid surface gives exit code 2 and error.json") {
  RunConfig c;
  c.surface.boundary_lengths = {0.0, 2.0, 2.0};
  c.out = scratch("invalid").string();
  CHECK(run("spectrum", c) == app::kExitDomain);
  const json err = json::parse(slurp(fs::path(c.out) / "error.json"));
  CHECK(err["exit_code"] == 2);
  CHECK(err["error"]["kind"] == "domain");
  CHECK(run("nonsense", c) == app::kExitDomain);
}

TEST_CASE("budget exhaustion gives exit code 4 and partial files") {
  RunConfig c;
  c.cutoff = 12.0;
  c.budget = 5000;
  c.out = scratch("budget").string();
  CHECK(run("spectrum", c) == app::kExitBudget);
  CHECK(fs::exists(fs::path(c.out) / "spectrum.csv.partial"));
  const json meta = json::parse(slurp(fs::path(c.out) / "spectrum.json.partial"));
  CHECK(meta["complete"] == false);
  CHECK_FALSE(fs::exists(fs::path(c.out) / "spectrum.csv"));
}

TEST_CASE("eta report carries estimate, uncertainty and plot data") {
  RunConfig c;
  c.cutoff = 15.0;
  c.out = scratch("eta").string();
  const int code = run("eta", c);
  CHECK((code == app::kExitOk || code == app::kExitInconclusive));
  const json r = json::parse(slurp(fs::path(c.out) / "eta.json"));
  CHECK(r["expected"] == 0.0);
  CHECK(r["continuation"].contains("estimate"));
  CHECK(r["continuation"].contains("uncertainty"));
  CHECK(r["inconclusive"] == (code == app::kExitInconclusive));
  const std::string plot = slurp(fs::path(c.out) / "eta_plot.csv");
  CHECK(plot.find("ell,N,N_fit,residual") != std::string::npos);
}

TEST_CASE("eta-xy report expects 1/chi") {
  RunConfig c;
  c.cutoff = 15.0;
  c.out = scratch("eta_xy").string();
  run("eta-xy", c);
  const json r = json::parse(slurp(fs::path(c.out) / "eta_xy.json"));
  CHECK(r["expected"] == -1.0);
  CHECK(r["euler_characteristic"] == -1);
}

TEST_CASE("identities report decreases across checkpoints") {
  RunConfig c;
  c.cutoff = 12.0;
  c.checkpoints = {8.0, 12.0};
  c.out = scratch("identities").string();
  CHECK(run("identities", c) == app::kExitOk);
  const json r = json::parse(slurp(fs::path(c.out) / "identities.json"));
  REQUIRE(r["checkpoints"].size() == 2);
  CHECK(r["checkpoints"][1]["basmajian_residual"].get<double>() <
        r["checkpoints"][0]["basmajian_residual"].get<double>());
  CHECK(r["decreasing"] == true);
}

TEST_CASE("command names") {
  const auto& names = app::command_names();
  CHECK(names.size() == 6);
  CHECK(std::find(names.begin(), names.end(), "eta-xy") != names.end());
}
