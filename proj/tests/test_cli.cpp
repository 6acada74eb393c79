#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "csf/errors.hpp"
#include "csf/exact_solutions.hpp"
#include "csf/experiments.hpp"
#include "csf/io.hpp"

using namespace csf;
namespace fs = std::filesystem;

namespace {

auto code_of(const std::function<void()>& f) -> std::optional<ErrorCode> {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

auto message_of(const std::function<void()>& f) -> std::string {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

struct Shell {
  int status;
  std::string output;
};

auto shell(const std::string& command) -> Shell {
  std::string out;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (const std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) { out.append(buf, n); }
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

auto binary() -> std::string {
  const char* bin = std::getenv("CSF_LAB_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

auto scratch(const std::string& name) -> fs::path {
  const auto dir = fs::temp_directory_path() / ("csf_lab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal config takes every default", "[cli]") {
  const auto cfgs = parse_config("name = oval-verify\n");
  REQUIRE(cfgs.size() == 1);
  const auto d = default_config("oval-verify");
  REQUIRE(cfgs[0].name == "oval-verify");
  REQUIRE(cfgs[0].grid_n == d.grid_n);
  REQUIRE(cfgs[0].t_start == d.t_start);
  REQUIRE(cfgs[0].t_end == d.t_end);
  REQUIRE(cfgs[0].controls == d.controls);
  REQUIRE(cfgs[0].tolerances == d.tolerances);
  REQUIRE(cfgs[0].output_dir == "oval-verify");
  REQUIRE_NOTHROW(validate(cfgs[0]));
}

TEST_CASE("sections, overrides and comments", "[cli]") {
  const auto cfgs = parse_config(
      "# two runs\n"
      "[fine]\n"
      "name = circle-verify   # trailing comment\n"
      "grid_n = 128\n"
      "control.samples = 4\n"
      "tol.l_inf_err = 1e-8\n"
      "seed = 42\n"
      "\n"
      "[coarse]\n"
      "name = circle-verify\n"
      "output_dir = elsewhere\n");
  REQUIRE(cfgs.size() == 2);
  REQUIRE(cfgs[0].output_dir == "fine");
  REQUIRE(cfgs[0].grid_n == 128);
  REQUIRE(cfgs[0].controls.at("samples") == 4.0);
  REQUIRE(cfgs[0].tolerances.at("l_inf_err") == 1e-8);
  REQUIRE(cfgs[0].seed == 42);
  REQUIRE(cfgs[1].output_dir == "elsewhere");
  REQUIRE(cfgs[1].grid_n == 256);
}

TEST_CASE("config errors carry the line", "[cli]") {
  REQUIRE(code_of([] { (void)parse_config("name = oval-verify\ngrid_n = 63\n"); }) == ErrorCode::ConfigInvalid);
  REQUIRE(message_of([] { (void)parse_config("name = oval-verify\ngrid_n = 63\n"); }).find("line 2") !=
          std::string::npos);
  REQUIRE(code_of([] { (void)parse_config("name = oval-verify\ngrid_n = 62\n"); }) == ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("name = oval-verify\nt_start = -0.1\nt_end = -0.1\n"); }) ==
          ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("name = oval-verify\nbogus = 1\n"); }) == ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("name = oval-verify\ncontrol.bogus = 1\n"); }) ==
          ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("name = oval-verify\ngrid_n = 64\ngrid_n = 128\n"); }) ==
          ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("name = oval-verify\ngrid_n = lots\n"); }) == ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("[a]\nname = oval-verify\n[b]\nname = oval-verify\noutput_dir = a\n"); }) ==
          ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("# nothing\n"); }) == ErrorCode::ConfigInvalid);
  REQUIRE(code_of([] { (void)parse_config("name = no-such-thing\n"); }) == ErrorCode::UnknownExperiment);
  REQUIRE(code_of([] { (void)default_config("no-such-thing"); }) == ErrorCode::UnknownExperiment);
}

TEST_CASE("registry lists every experiment once", "[cli]") {
  std::set<std::string> names;
  for (const auto& e : registered_experiments()) {
    REQUIRE(names.insert(e.name).second);
    REQUIRE_NOTHROW(validate(default_config(e.name)));
  }
  REQUIRE(names.size() == 11);
  REQUIRE(names.contains("grim-reaper-soliton"));
}

TEST_CASE("circle-verify run writes artifacts", "[cli]") {
  const auto root = scratch("circle");
  auto cfg = default_config("circle-verify");
  cfg.grid_n = 64;
  const auto s = run_experiment(cfg, root);
  REQUIRE(s.pass);
  REQUIRE(s.failures.empty());
  REQUIRE(s.metrics.at("l_inf_err") < 1e-9);
  REQUIRE(fs::exists(root / "circle-verify" / "manifest.json"));
  for (const auto& f : s.files) { REQUIRE(fs::exists(root / f)); }
  const auto manifest = nlohmann::json::parse(io::read_file(root / "circle-verify" / "manifest.json"));
  REQUIRE(manifest["pass"] == true);
  fs::remove_all(root);
}

TEST_CASE("oval-verify run meets its tolerance", "[cli]") {
  const auto root = scratch("oval");
  const auto s = run_experiment(default_config("oval-verify"), root);
  REQUIRE(s.pass);
  REQUIRE(s.metrics.at("l_inf_err") < 1e-6);
  REQUIRE(s.metrics.at("max_closure_residual") < 1e-7);
  const auto profile = io::read_file(root / "oval-verify" / "profiles" / "profile_0000.csv");
  REQUIRE(profile.rfind("theta,p\n", 0) == 0);
  fs::remove_all(root);
}

TEST_CASE("a failing tolerance fails the run", "[cli]") {
  const auto root = scratch("strict");
  auto cfg = default_config("oval-verify");
  cfg.tolerances["l_inf_err"] = 1e-300;
  const auto s = run_experiment(cfg, root);
  REQUIRE_FALSE(s.pass);
  REQUIRE(s.failures.size() == 1);
  fs::remove_all(root);
}

TEST_CASE("unknown experiment at run time", "[cli]") {
  ExperimentConfig cfg;
  cfg.name = "missing";
  cfg.output_dir = "missing";
  REQUIRE(code_of([&] { (void)run_experiment(cfg, fs::temp_directory_path()); }) ==
          ErrorCode::UnknownExperiment);
}

TEST_CASE("binary: list, run and classify", "[cli][binary]") {
  const auto bin = binary();
  const auto listed = shell(bin + " list");
  REQUIRE(listed.status == 0);
  REQUIRE(listed.output.find("oval-verify") != std::string::npos);
  REQUIRE(listed.output.find("grim-reaper-soliton") != std::string::npos);

  const auto dir = scratch("binary");
  io::write_file(dir / "ok.cfg", "[c1]\nname = circle-verify\ngrid_n = 64\n[c2]\nname = circle-verify\ngrid_n = 128\n");
  const auto ok = shell(bin + " run " + (dir / "ok.cfg").string() + " --jobs 2 --out " + (dir / "out").string());
  REQUIRE(ok.status == 0);
  REQUIRE(ok.output.find("PASS c1 (circle-verify)") != std::string::npos);
  REQUIRE(ok.output.find("PASS c2 (circle-verify)") != std::string::npos);
  const auto summary = nlohmann::json::parse(io::read_file(dir / "out" / "summary.json"));
  REQUIRE(summary.size() == 2);

  io::write_file(dir / "bad.cfg", "name = circle-verify\ntol.l_inf_err = 1e-300\n");
  REQUIRE(shell(bin + " run " + (dir / "bad.cfg").string() + " --out " + (dir / "out2").string()).status == 1);

  io::write_file(dir / "broken.cfg", "name = circle-verify\ngrid_n = 63\n");
  const auto broken = shell(bin + " run " + (dir / "broken.cfg").string() + " --out " + (dir / "out3").string());
  REQUIRE(broken.status == 2);
  REQUIRE(broken.output.find("line 2") != std::string::npos);

  REQUIRE(shell(bin + " run " + (dir / "nope.cfg").string()).status != 0);
  REQUIRE(shell(bin + " frobnicate").status != 0);

  std::vector<CurvatureProfile> snaps;
  for (double t : {-3.0, -2.0, -1.0}) { snaps.push_back(oval_pressure(AngleGrid(128), OvalParams(0.7, 1.2), t)); }
  io::write_file(dir / "snaps.csv", io::snapshots_csv(snaps));
  const auto c = shell(bin + " classify " + (dir / "snaps.csv").string());
  REQUIRE(c.status == 0);
  const auto doc = nlohmann::json::parse(c.output);
  REQUIRE(doc["kind"] == "AngenentOval");
  REQUIRE(doc["lambda"].get<double>() == Catch::Approx(0.7).epsilon(1e-6));
  REQUIRE(doc["gamma"].get<double>() == Catch::Approx(1.2).epsilon(1e-6));

  io::write_file(dir / "garbage.csv", "time,theta,p\n-1,0,abc\n");
  REQUIRE(shell(bin + " classify " + (dir / "garbage.csv").string()).status == 2);
  fs::remove_all(dir);
}

TEST_CASE("binary: seed override gives identical bytes", "[cli][binary]") {
  const auto bin = binary();
  const auto dir = scratch("seed");
  io::write_file(dir / "p.cfg", "name = tac-monotone\ngrid_n = 128\nt_end = 0.05\ncontrol.samples = 3\n");
  const auto a = shell("CSF_LAB_SEED=7 " + bin + " run " + (dir / "p.cfg").string() + " --out " + (dir / "a").string());
  const auto b = shell("CSF_LAB_SEED=7 " + bin + " run " + (dir / "p.cfg").string() + " --out " + (dir / "b").string());
  const auto c = shell("CSF_LAB_SEED=8 " + bin + " run " + (dir / "p.cfg").string() + " --out " + (dir / "c").string());
  REQUIRE(a.output == b.output);
  const auto first = io::read_file(dir / "a" / "tac-monotone" / "curves" / "curve_0000.csv");
  REQUIRE(first == io::read_file(dir / "b" / "tac-monotone" / "curves" / "curve_0000.csv"));
  REQUIRE(first != io::read_file(dir / "c" / "tac-monotone" / "curves" / "curve_0000.csv"));
  REQUIRE(shell("CSF_LAB_SEED=x " + bin + " run " + (dir / "p.cfg").string() + " --out " + (dir / "d").string())
              .status == 2);
  fs::remove_all(dir);
}
