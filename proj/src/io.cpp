#include "csf/io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "csf/errors.hpp"

namespace csf::io {

auto format_double(double v) -> std::string {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) { throw Error(ErrorCode::Io, "cannot format double"); }
  return {buf.data(), end};
}

auto profile_csv(const CurvatureProfile& profile) -> std::string {
  const auto p = profile.pressure();
  std::string out = "theta,p\n";
  for (std::size_t j = 0; j < p.size(); ++j) {
    out += format_double(profile.grid.node(j));
    out += ',';
    out += format_double(p[j]);
    out += '\n';
  }
  return out;
}

auto profile_json(const CurvatureProfile& profile) -> std::string {
  // Hand-written so every value keeps its shortest round-trip form.
  const auto p = profile.pressure();
  std::string out = "{\"n\":" + std::to_string(p.size()) + ",\"time\":" + format_double(profile.time) +
                    ",\"values\":[";
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j > 0) { out += ','; }
    out += format_double(p[j]);
  }
  out += "]}\n";
  return out;
}

auto curve_csv(const PlanarCurve& curve) -> std::string {
  std::string out = "x,y\n";
  for (const auto& pt : curve.points) {
    out += format_double(pt.x);
    out += ',';
    out += format_double(pt.y);
    out += '\n';
  }
  return out;
}

auto series_csv(const FunctionalSeries& series) -> std::string {
  std::string out = "time,value\n";
  for (std::size_t j = 0; j < series.size(); ++j) {
    out += format_double(series.times[j]);
    out += ',';
    out += format_double(series.values[j]);
    out += '\n';
  }
  return out;
}

auto parse_profile_json(const std::string& text) -> CurvatureProfile {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, std::string("profile JSON: ") + e.what());
  }
  if (!doc.contains("n") || !doc.contains("time") || !doc.contains("values")) {
    throw Error(ErrorCode::Io, "profile JSON needs n, time and values");
  }
  const auto n = doc["n"].get<std::size_t>();
  auto values = doc["values"].get<std::vector<double>>();
  if (values.size() != n) {
    throw Error(ErrorCode::Io, "profile JSON: n does not match the number of values");
  }
  return {AngleGrid(n), std::move(values), doc["time"].get<double>()};
}

namespace {

auto parse_number(std::string_view field, std::size_t line) -> double {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  while (first != last && (*first == ' ' || *first == '\t')) { ++first; }
  while (last != first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) { --last; }
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::Io, "line " + std::to_string(line) + ": bad number '" +
                                   std::string(field) + "'");
  }
  return v;
}

void finish_profile(std::vector<CurvatureProfile>& out, double time, std::vector<double>& thetas,
                    std::vector<double>& values, std::size_t line) {
  const AngleGrid grid(values.size());
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    if (std::abs(thetas[j] - grid.node(j)) > 1e-9) {
      throw Error(ErrorCode::Io, "snapshot ending at line " + std::to_string(line) +
                                     ": theta column is not the uniform grid");
    }
  }
  out.emplace_back(grid, std::move(values), time);
  thetas.clear();
  values.clear();
}

}  // namespace

auto parse_snapshots_csv(const std::string& text) -> std::vector<CurvatureProfile> {
  std::istringstream in(text);
  std::string row;
  if (!std::getline(in, row)) { throw Error(ErrorCode::Io, "snapshot CSV is empty"); }
  if (!row.empty() && row.back() == '\r') { row.pop_back(); }
  if (row != "time,theta,p") {
    throw Error(ErrorCode::Io, "snapshot CSV header must be 'time,theta,p', got '" + row + "'");
  }
  std::vector<CurvatureProfile> out;
  std::vector<double> thetas;
  std::vector<double> values;
  double current = std::nan("");
  std::size_t line = 1;
  while (std::getline(in, row)) {
    ++line;
    if (row.empty() || row == "\r") { continue; }
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string::npos || row.find(',', c2 + 1) != std::string::npos) {
      throw Error(ErrorCode::Io, "line " + std::to_string(line) + ": expected three columns");
    }
    const std::string_view view(row);
    const double t = parse_number(view.substr(0, c1), line);
    const double th = parse_number(view.substr(c1 + 1, c2 - c1 - 1), line);
    const double p = parse_number(view.substr(c2 + 1), line);
    if (!values.empty() && t != current) { finish_profile(out, current, thetas, values, line); }
    current = t;
    thetas.push_back(th);
    values.push_back(p);
  }
  if (!values.empty()) { finish_profile(out, current, thetas, values, line); }
  return out;
}

auto snapshots_csv(const std::vector<CurvatureProfile>& profiles) -> std::string {
  std::string out = "time,theta,p\n";
  for (const auto& prof : profiles) {
    const auto p = prof.pressure();
    const std::string t = format_double(prof.time);
    for (std::size_t j = 0; j < p.size(); ++j) {
      out += t;
      out += ',';
      out += format_double(prof.grid.node(j));
      out += ',';
      out += format_double(p[j]);
      out += '\n';
    }
  }
  return out;
}

auto read_file(const std::filesystem::path& path) -> std::string {
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw Error(ErrorCode::Io, "cannot open " + path.string()); }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) { std::filesystem::create_directories(path.parent_path(), ec); }
  if (ec) { throw Error(ErrorCode::Io, "cannot create " + path.parent_path().string()); }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) { throw Error(ErrorCode::Io, "cannot write " + path.string()); }
}

}  // namespace csf::io
