#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/trajectory.hpp"

namespace csf::io {

/// Shortest decimal string that parses back to the same double.
auto format_double(double v) -> std::string;

auto profile_csv(const CurvatureProfile& profile) -> std::string;  // theta,p
auto profile_json(const CurvatureProfile& profile) -> std::string; // {"n","time","values"}
auto curve_csv(const PlanarCurve& curve) -> std::string;           // x,y
auto series_csv(const FunctionalSeries& series) -> std::string;    // time,value

/// Parses the JSON written by profile_json back into a pressure profile.
auto parse_profile_json(const std::string& text) -> CurvatureProfile;

/// Long-format snapshot table with header time,theta,p. Rows of one time
/// form one profile; each must cover the uniform grid in order.
auto parse_snapshots_csv(const std::string& text) -> std::vector<CurvatureProfile>;
auto snapshots_csv(const std::vector<CurvatureProfile>& profiles) -> std::string;

auto read_file(const std::filesystem::path& path) -> std::string;
/// Creates parent directories as needed; throws Io on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace csf::io
