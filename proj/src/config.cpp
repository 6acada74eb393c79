#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "csf/errors.hpp"
#include "csf/experiments.hpp"
#include "csf/io.hpp"

namespace csf {
namespace {

// The defaults table. Arclength experiments read grid_n as a point count.
const std::vector<ExperimentInfo>& registry() {
  static const std::vector<ExperimentInfo> table{
      {"oval-verify", "pressure solver against the Angenent oval closed form", 256, -2.0, -0.2,
       {{"c_cfl", 0.2}, {"samples", 10}, {"lambda", 1.0}, {"gamma", 0.0}},
       {{"l_inf_err", 1e-6}, {"closure", 1e-7}}},
      {"circle-verify", "pressure solver against the shrinking circle", 256, -1.0, -0.1,
       {{"c_cfl", 0.2}, {"samples", 10}},
       {{"l_inf_err", 1e-9}, {"closure", 1e-7}}},
      {"lyapunov-monotone", "J dissipation identity and monotonicity along an oval run", 256, -2.0,
       -0.2, {{"c_cfl", 0.2}, {"samples", 200}, {"lambda", 1.0}, {"gamma", 0.0}},
       {{"identity_rel", 0.01}, {"monotone_slack", 1e-8}}},
      {"I-functional-zero", "I and its dissipation vanish on circles and ovals; Harnack margins",
       256, -10.0, -0.1, {{"lambda", 1.0}, {"gamma", 0.3}, {"harnack_samples", 199}},
       {{"I_abs", 1e-10}, {"dissipation_abs", 1e-10}}},
      {"normalized-rate", "linearized decay rates of modes 2 and 3 in the normalized flow", 256,
       0.0, 3.0, {{"c_cfl", 0.2}, {"samples", 60}, {"amplitude", 0.05}},
       {{"rate_rel", 0.1}}},
      {"backward-limit", "backward-limit fit of the oval at very negative times", 256, -15.0, -5.0,
       {{"lambda", 1.0}, {"gamma", 0.0}},
       {{"a_abs", 1e-3}, {"b_abs", 1e-6}, {"slope_rel", 0.1}}},
      {"classify", "ancient-solution classifier on circle, oval and mode-3 snapshots", 256, -3.0,
       -1.0, {{"snapshots", 3}},
       {{"param_abs", 1e-6}}},
      {"grayson-convexify", "nonconvex limacon becomes convex before extinction", 256, 0.0, 0.6,
       {{"c_cfl", 0.2}, {"samples", 60}, {"limacon", 0.8}},
       {{"area_slope_rel", 0.01}, {"tac_step", 1e-4}}},
      {"sturm-monotone", "curvature zero count is non-increasing", 256, 0.0, 0.45,
       {{"c_cfl", 0.2}, {"samples", 45}, {"peanut", 0.3}, {"perturbation", 0.0}},
       {{"area_slope_rel", 0.01}}},
      {"tac-monotone", "total absolute curvature is non-increasing for several epsilon", 256, 0.0,
       0.45, {{"c_cfl", 0.2}, {"samples", 45}, {"peanut", 0.3}, {"perturbation", 0.02}},
       {{"area_slope_rel", 0.01}, {"tac_step", 1e-4}, {"final_tac", 1e-3}}},
      {"grim-reaper-soliton", "grim reaper translates; blow-up of a thin ellipse looks like it",
       400, 0.0, 0.1,
       {{"c_cfl", 0.2},
        {"half_width", 1.45},
        {"window", 1.0},
        {"ellipse_ratio", 10.0},
        {"ellipse_time", 1.0},
        {"ellipse_points", 512}},
       {{"hausdorff", 1e-3}, {"blowup_hausdorff", 5e-2}}},
  };
  return table;
}

auto trim(std::string_view s) -> std::string_view {
  const auto* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) { return {}; }
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void invalid(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ConfigInvalid, "line " + std::to_string(line) + ": " + what);
}

auto parse_real(std::string_view v, std::size_t line, const std::string& key) -> double {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    invalid(line, "'" + key + "' needs a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

auto parse_unsigned(std::string_view v, std::size_t line, const std::string& key) -> std::uint64_t {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    invalid(line, "'" + key + "' needs a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

struct Entry {
  std::size_t line;
  std::string key;
  std::string value;
};

struct Section {
  std::size_t line = 0;
  std::string label;
  std::vector<Entry> entries;
};

auto build(const Section& sec) -> ExperimentConfig {
  std::string name = sec.label;
  for (const auto& e : sec.entries) {
    if (e.key == "name") { name = e.value; }
  }
  if (name.empty()) { invalid(sec.line, "experiment has no name"); }
  ExperimentConfig cfg;
  try {
    cfg = default_config(name);
  } catch (const Error&) {
    throw Error(ErrorCode::UnknownExperiment,
                "line " + std::to_string(sec.line) + ": unknown experiment '" + name + "'");
  }
  if (!sec.label.empty()) { cfg.output_dir = sec.label; }

  std::set<std::string> seen;
  std::size_t grid_line = sec.line;
  std::size_t window_line = sec.line;
  for (const auto& e : sec.entries) {
    if (!seen.insert(e.key).second) { invalid(e.line, "duplicate key '" + e.key + "'"); }
    if (e.key == "name") { continue; }
    if (e.key == "grid_n") {
      cfg.grid_n = parse_unsigned(e.value, e.line, e.key);
      grid_line = e.line;
    } else if (e.key == "t_start") {
      cfg.t_start = parse_real(e.value, e.line, e.key);
      window_line = std::max(window_line, e.line);
    } else if (e.key == "t_end") {
      cfg.t_end = parse_real(e.value, e.line, e.key);
      window_line = std::max(window_line, e.line);
    } else if (e.key == "output_dir") {
      if (e.value.empty()) { invalid(e.line, "output_dir is empty"); }
      cfg.output_dir = e.value;
    } else if (e.key == "seed") {
      cfg.seed = parse_unsigned(e.value, e.line, e.key);
    } else if (e.key.starts_with("control.")) {
      const auto k = e.key.substr(8);
      if (!cfg.controls.contains(k)) {
        invalid(e.line, "unknown control '" + k + "' for experiment '" + name + "'");
      }
      cfg.controls[k] = parse_real(e.value, e.line, e.key);
    } else if (e.key.starts_with("tol.")) {
      const auto k = e.key.substr(4);
      if (!cfg.tolerances.contains(k)) {
        invalid(e.line, "unknown tolerance '" + k + "' for experiment '" + name + "'");
      }
      cfg.tolerances[k] = parse_real(e.value, e.line, e.key);
    } else {
      invalid(e.line, "unknown key '" + e.key + "'");
    }
  }
  if (cfg.grid_n < 64 || cfg.grid_n % 2 != 0) {
    invalid(grid_line, "grid_n must be even and >= 64, got " + std::to_string(cfg.grid_n));
  }
  if (!(cfg.t_start < cfg.t_end)) {
    invalid(window_line, "t_start must be less than t_end");
  }
  return cfg;
}

}  // namespace

auto registered_experiments() -> std::span<const ExperimentInfo> { return registry(); }

auto default_config(const std::string& name) -> ExperimentConfig {
  const auto& table = registry();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const ExperimentInfo& e) { return name == e.name; });
  if (it == table.end()) {
    throw Error(ErrorCode::UnknownExperiment, "unknown experiment '" + name + "'");
  }
  ExperimentConfig cfg;
  cfg.name = it->name;
  cfg.grid_n = it->grid_n;
  cfg.t_start = it->t_start;
  cfg.t_end = it->t_end;
  cfg.controls = it->controls;
  cfg.tolerances = it->tolerances;
  cfg.output_dir = it->name;
  return cfg;
}

auto parse_config(const std::string& text) -> std::vector<ExperimentConfig> {
  std::vector<Section> sections(1);
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view view(raw);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) { continue; }
    if (view.front() == '[') {
      if (view.back() != ']' || view.size() < 3) { invalid(line, "malformed section header"); }
      sections.push_back({line, std::string(trim(view.substr(1, view.size() - 2))), {}});
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) { invalid(line, "expected 'key = value'"); }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty()) { invalid(line, "empty key"); }
    if (sections.back().entries.empty() && sections.back().line == 0) {
      sections.back().line = line;
    }
    sections.back().entries.push_back({line, std::string(key), std::string(value)});
  }

  std::vector<ExperimentConfig> out;
  std::set<std::string> dirs;
  for (std::size_t k = 0; k < sections.size(); ++k) {
    if (k == 0 && sections[0].entries.empty()) { continue; }
    auto cfg = build(sections[k]);
    if (!dirs.insert(cfg.output_dir).second) {
      invalid(sections[k].line, "output_dir '" + cfg.output_dir + "' is used twice");
    }
    out.push_back(std::move(cfg));
  }
  if (out.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "config names no experiment");
  }
  return out;
}

auto parse_config_file(const std::filesystem::path& path) -> std::vector<ExperimentConfig> {
  return parse_config(io::read_file(path));
}

void validate(const ExperimentConfig& config) {
  const auto defaults = default_config(config.name);
  if (config.grid_n < 64 || config.grid_n % 2 != 0) {
    throw Error(ErrorCode::ConfigInvalid,
                "grid_n must be even and >= 64, got " + std::to_string(config.grid_n));
  }
  if (!(config.t_start < config.t_end)) {
    throw Error(ErrorCode::ConfigInvalid, "t_start must be less than t_end");
  }
  if (config.output_dir.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "output_dir is empty");
  }
  for (const auto& [key, value] : defaults.controls) {
    if (!config.controls.contains(key)) {
      throw Error(ErrorCode::ConfigInvalid, "control '" + key + "' is missing");
    }
  }
  for (const auto& [key, value] : defaults.tolerances) {
    if (!config.tolerances.contains(key)) {
      throw Error(ErrorCode::ConfigInvalid, "tolerance '" + key + "' is missing");
    }
  }
}

}  // namespace csf
