#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wavetrain/checker.hpp"
#include "wavetrain/fitter.hpp"
#include "wavetrain/oscillator.hpp"
#include "wavetrain/packet.hpp"

namespace wavetrain {

struct PhysicalUnits {
  double omega_x_si = 0.0;  // rad/s
  double mass_amu = 0.0;
  double lx_microns = 0.0;
  double period_ms = 0.0;
};

// l_x = sqrt(hbar/(m omega_x)) and the oscillation period, from SI inputs.
PhysicalUnits convert_units(double omega_x_si, double mass_amu);

struct YGrid {
  double min = -0.6;
  double max = 0.6;
  int count = 49;
};

struct Scenario {
  std::string name = "custom";
  OscillatorParams params;
  TrainSpec train;
  std::vector<double> times;
  GridSpec grid;
  YGrid y_grid;
  std::vector<std::string> outputs;  // density_xy | density_profile | vertical_view | report
  double g1d = 0.0;
  std::optional<double> omega_x_si;
  std::optional<double> mass_amu;
};

// Scenario presets fig1..fig5 binding the canonical parameter sets.
Scenario preset(const std::string& name);

using ConfigResult = std::variant<Scenario, FitConstraints>;

// Flat key=value config (or the "config" object of an emitted metadata .json).
// Unknown keys and invariant violations are hard errors.
ConfigResult load_config(const std::string& path);
ConfigResult parse_config_text(const std::string& text, const std::string& origin);

// Writes the requested artifacts into out_dir and returns the file list.
std::vector<std::string> run_scenario(const Scenario& s, const std::string& out_dir);

// Serialized forms (stable key order, 17 significant digits).
std::string metadata_json(const Scenario& s);
std::string report_json(const VerificationReport& rep);
std::string fit_result_json(const FitResult& fr);

// Peak analysis on a sampled density profile.
int count_local_maxima(const std::vector<double>& density, double rel_threshold = 1e-6);

// Extent of the interval where density exceeds rel_threshold of its peak.
// Informational only: the value depends on the threshold, so it is logged,
// never gated.
double support_width(const std::vector<double>& xs, const std::vector<double>& density,
                     double rel_threshold = 1e-4);
std::vector<double> peak_positions(const std::vector<double>& xs,
                                   const std::vector<double>& density,
                                   double rel_threshold = 1e-6);

}  // namespace wavetrain
