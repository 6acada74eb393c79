#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "csf/errors.hpp"

namespace csf {

/// A named scalar time series (J, I, TAC, Harnack margin, ...).
struct FunctionalSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> values;

  /// Appends a sample; times must increase strictly.
  void push(double time, double value);
  [[nodiscard]] auto size() const noexcept -> std::size_t { return times.size(); }
};

enum class RunStatus { Completed, Extinction };

/// Time-ordered states with a diagnostic value per state and per name.
template <class State>
struct FlowTrajectory {
  std::vector<State> states;
  std::map<std::string, std::vector<double>> diagnostics;
  RunStatus status = RunStatus::Completed;
  std::size_t steps = 0;

  void append(State state, const std::map<std::string, double>& diag) {
    if (!states.empty() && !(state.time > states.back().time)) {
      throw Error(ErrorCode::InvalidArgument, "trajectory times must increase strictly");
    }
    if (!states.empty() && diag.size() != diagnostics.size()) {
      throw Error(ErrorCode::InvalidArgument, "diagnostic set changed between states");
    }
    for (const auto& [name, value] : diag) { diagnostics[name].push_back(value); }
    states.push_back(std::move(state));
  }

  [[nodiscard]] auto empty() const noexcept -> bool { return states.empty(); }
  [[nodiscard]] auto size() const noexcept -> std::size_t { return states.size(); }

  [[nodiscard]] auto times() const -> std::vector<double> {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states) { out.push_back(s.time); }
    return out;
  }

  [[nodiscard]] auto series(const std::string& name) const -> FunctionalSeries {
    const auto it = diagnostics.find(name);
    if (it == diagnostics.end()) {
      throw Error(ErrorCode::InvalidArgument, "no diagnostic named '" + name + "'");
    }
    return {name, times(), it->second};
  }
};

}  // namespace csf
