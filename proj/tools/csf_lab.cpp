// csf-lab: batch runner for the curve shortening flow experiments.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

#include "csf/asymptotics.hpp"
#include "csf/errors.hpp"
#include "csf/experiments.hpp"
#include "csf/io.hpp"

namespace {

using csf::io::format_double;

auto seed_from_env() -> std::optional<std::uint64_t> {
  const char* raw = std::getenv("CSF_LAB_SEED");
  if (raw == nullptr || *raw == '\0') { return std::nullopt; }
  std::uint64_t seed = 0;
  const std::string_view s(raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw csf::Error(csf::ErrorCode::ConfigInvalid,
                     "CSF_LAB_SEED must be a non-negative integer, got '" + std::string(s) + "'");
  }
  return seed;
}

struct Outcome {
  csf::ExperimentSummary summary;
  std::string error;
};

auto run_all(std::vector<csf::ExperimentConfig> configs, const std::string& out, unsigned jobs)
    -> int {
  if (const auto seed = seed_from_env()) {
    for (auto& c : configs) { c.seed = *seed; }
  }
  std::vector<Outcome> outcomes(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      try {
        outcomes[k].summary = csf::run_experiment(configs[k], out);
      } catch (const std::exception& e) {
        outcomes[k].summary.name = configs[k].name;
        outcomes[k].error = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    for (unsigned k = 0; k < n; ++k) { pool.emplace_back(worker); }
  }

  bool all = true;
  std::vector<csf::ExperimentSummary> summaries;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    auto& o = outcomes[k];
    if (!o.error.empty()) { o.summary.failures.push_back(o.error); }
    const bool pass = o.error.empty() && o.summary.pass;
    all = all && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << configs[k].output_dir << " (" << configs[k].name
              << ")";
    for (const auto& [key, value] : o.summary.metrics) {
      std::cout << ' ' << key << '=' << format_double(value);
    }
    std::cout << '\n';
    for (const auto& f : o.summary.failures) { std::cout << "  - " << f << '\n'; }
    o.summary.pass = pass;
    summaries.push_back(o.summary);
  }
  csf::io::write_file(std::filesystem::path(out) / "summary.json", csf::summary_json(summaries));
  return all ? 0 : 1;
}

auto classify_file(const std::string& path) -> int {
  const auto snaps = csf::io::parse_snapshots_csv(csf::io::read_file(path));
  const auto c = csf::classify_ancient(snaps);
  nlohmann::ordered_json doc;
  doc["kind"] = csf::to_string(c.kind);
  if (c.params) {
    doc["lambda"] = c.params->lambda();
    doc["gamma"] = c.params->gamma();
  }
  if (c.extinction_time) { doc["extinction_time"] = *c.extinction_time; }
  doc["residual"] = c.residual;
  std::cout << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the curve shortening flow"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "csf-lab-out";
  unsigned jobs = 1;
  auto* run = app.add_subcommand("run", "Run every experiment named in a config file");
  run->add_option("config", config_path, "Config file (key = value, one [section] per run)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--jobs", jobs, "Experiments to run concurrently")->check(CLI::Range(1u, 256u));
  run->add_option("--out", out_dir, "Output root directory");

  auto* list = app.add_subcommand("list", "List registered experiments and their defaults");

  std::string snapshots_path;
  auto* classify = app.add_subcommand("classify", "Classify ancient-solution snapshots");
  classify->add_option("snapshots", snapshots_path, "CSV with columns time,theta,p")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) { return run_all(csf::parse_config_file(config_path), out_dir, jobs); }
    if (*list) {
      for (const auto& e : csf::registered_experiments()) {
        std::cout << e.name << "  " << e.description << "\n  grid_n=" << e.grid_n
                  << " t_start=" << format_double(e.t_start) << " t_end=" << format_double(e.t_end);
        for (const auto& [k, v] : e.controls) { std::cout << " control." << k << '=' << format_double(v); }
        for (const auto& [k, v] : e.tolerances) { std::cout << " tol." << k << '=' << format_double(v); }
        std::cout << '\n';
      }
      return 0;
    }
    if (*classify) { return classify_file(snapshots_path); }
  } catch (const std::exception& e) {
    std::cerr << "csf-lab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
