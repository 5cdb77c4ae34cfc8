#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "wavetrain/shell.hpp"
#include "wavetrain/stepper.hpp"

namespace {

using namespace wavetrain;

struct ScenarioFlags {
  std::string config;
  std::string scenario_name;
  std::string out_dir = ".";
  int n = 0;
  double A = 0, B = 0, alpha = 0, beta = 0, b0 = 0, omega_r = 0, g1d = 0;
  double x_min = 0, x_max = 0;
  int points = 0;
  double omega_x_si = 0, mass_amu = 0;
  std::vector<double> times;
  std::vector<std::string> outputs;
};

// Flags mirror the config keys; a config file is applied first, then any flag
// the user actually passed wins.
void add_scenario_flags(CLI::App* cmd, ScenarioFlags& fl) {
  cmd->add_option("--config", fl.config, "key=value or metadata .json config file");
  cmd->add_option("--scenario", fl.scenario_name, "preset name fig1..fig5 or custom");
  cmd->add_option("--out", fl.out_dir, "output directory");
  cmd->add_option("--n", fl.n, "quantum number");
  cmd->add_option("--A", fl.A, "oscillator amplitude A");
  cmd->add_option("--B", fl.B, "oscillator amplitude B");
  cmd->add_option("--alpha", fl.alpha, "phase alpha");
  cmd->add_option("--beta", fl.beta, "phase beta");
  cmd->add_option("--b0", fl.b0, "drift constant b0");
  cmd->add_option("--omega-r", fl.omega_r, "transverse frequency over omega_x");
  cmd->add_option("--g1d", fl.g1d, "1D interaction strength");
  cmd->add_option("--grid-x-min", fl.x_min, "grid left edge");
  cmd->add_option("--grid-x-max", fl.x_max, "grid right edge");
  cmd->add_option("--grid-points", fl.points, "grid point count");
  cmd->add_option("--omega-x-si", fl.omega_x_si, "axial frequency in rad/s");
  cmd->add_option("--mass-amu", fl.mass_amu, "atomic mass in amu");
  cmd->add_option("--times", fl.times, "sample times")->delimiter(',');
  cmd->add_option("--outputs", fl.outputs, "artifact kinds")->delimiter(',');
}

void apply_overrides(const CLI::App* cmd, const ScenarioFlags& fl, Scenario& s) {
  if (cmd->count("--n")) s.train.n = fl.n;
  if (cmd->count("--A")) s.params.A = fl.A;
  if (cmd->count("--B")) s.params.B = fl.B;
  if (cmd->count("--alpha")) s.params.alpha = fl.alpha;
  if (cmd->count("--beta")) s.params.beta = fl.beta;
  if (cmd->count("--b0")) s.train.b0 = fl.b0;
  if (cmd->count("--omega-r")) s.train.omega_r = fl.omega_r;
  if (cmd->count("--g1d")) s.g1d = fl.g1d;
  if (cmd->count("--grid-x-min")) s.grid.x_min = fl.x_min;
  if (cmd->count("--grid-x-max")) s.grid.x_max = fl.x_max;
  if (cmd->count("--grid-points")) s.grid.points = fl.points;
  if (cmd->count("--omega-x-si")) s.omega_x_si = fl.omega_x_si;
  if (cmd->count("--mass-amu")) s.mass_amu = fl.mass_amu;
  if (cmd->count("--times")) s.times = fl.times;
  if (cmd->count("--outputs")) s.outputs = fl.outputs;
}

Scenario resolve_scenario(const CLI::App* cmd, const ScenarioFlags& fl,
                          const std::string& preset_name = "") {
  Scenario s;
  bool seeded = false;
  if (!fl.config.empty()) {
    ConfigResult cr = load_config(fl.config);
    if (!std::holds_alternative<Scenario>(cr))
      throw CLI::ValidationError("--config", "config file describes a fit, not a scenario");
    s = std::get<Scenario>(cr);
    seeded = true;
  }
  if (cmd->count("--scenario") && fl.scenario_name != "custom") {
    s = preset(fl.scenario_name);
    seeded = true;
  } else if (!preset_name.empty()) {
    s = preset(preset_name);
    seeded = true;
  }
  if (!seeded) {
    s.name = "custom";
    s.train = {0, 0.0, 40.0};
    s.times = {0.0};
    s.outputs = {"density_profile"};
    s.grid = {-15.0, 15.0, 1024};
  }
  apply_overrides(cmd, fl, s);
  validate(s.params);
  validate(s.train);
  return s;
}

void print_manifest(const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact wave-packet train toolkit"};
  app.require_subcommand(1);

  ScenarioFlags ev, sc, ve, pr;
  std::string scenario_pos;

  CLI::App* eval_cmd = app.add_subcommand("eval", "sample density/wavefunction grids");
  add_scenario_flags(eval_cmd, ev);

  CLI::App* scenario_cmd = app.add_subcommand("scenario", "run a figure preset");
  scenario_cmd->add_option("name", scenario_pos, "preset name fig1..fig5")->required();
  add_scenario_flags(scenario_cmd, sc);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the checker report");
  add_scenario_flags(verify_cmd, ve);
  std::string verify_out;
  verify_cmd->add_option("--report-out", verify_out, "write the report here instead of stdout");

  CLI::App* prop_cmd = app.add_subcommand("propagate", "split-step run + deviation curve");
  add_scenario_flags(prop_cmd, pr);
  double prop_dt = 1e-4;
  int prop_steps = 0, prop_samples = 16;
  double prop_t_final = 3.141592653589793238462643383279502884;
  prop_cmd->add_option("--dt", prop_dt, "time step");
  prop_cmd->add_option("--steps", prop_steps, "step count (default from --t-final)");
  prop_cmd->add_option("--t-final", prop_t_final, "final time when --steps is omitted");
  prop_cmd->add_option("--samples", prop_samples, "deviation samples");

  CLI::App* fit_cmd = app.add_subcommand("fit", "invert observed widths/amplitude");
  FitConstraints fc;
  std::string fit_config, fit_method = "closed";
  double fit_omega_x_si = 0.0;
  fit_cmd->add_option("--config", fit_config, "config file with fit.* keys");
  fit_cmd->add_option("--amplitude", fc.amplitude, "center oscillation amplitude");
  fit_cmd->add_option("--width-min", fc.width_min, "minimum packet width");
  fit_cmd->add_option("--width-max", fc.width_max, "maximum packet width");
  fit_cmd->add_flag("--physical", fc.physical, "inputs are in microns");
  fit_cmd->add_option("--omega-x-si", fit_omega_x_si, "axial frequency in rad/s");
  fit_cmd->add_option("--omega-r-ratio", fc.omega_r_ratio, "omega_r/omega_x");
  fit_cmd->add_option("--method", fit_method, "closed | lsq")
      ->check(CLI::IsMember({"closed", "lsq"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval_cmd) {
      print_manifest(run_scenario(resolve_scenario(eval_cmd, ev), ev.out_dir));
    } else if (*scenario_cmd) {
      print_manifest(run_scenario(resolve_scenario(scenario_cmd, sc, scenario_pos), sc.out_dir));
    } else if (*verify_cmd) {
      Scenario s = resolve_scenario(verify_cmd, ve);
      const std::string doc = report_json(full_report(s.params, s.train));
      if (verify_out.empty()) {
        std::cout << doc;
      } else {
        std::ofstream f(verify_out, std::ios::binary);
        f << doc;
        std::cout << verify_out << "\n";
      }
    } else if (*prop_cmd) {
      Scenario s = resolve_scenario(prop_cmd, pr);
      StepperConfig cfg;
      cfg.x_min = s.grid.x_min;
      cfg.x_max = s.grid.x_max;
      cfg.points = s.grid.points;
      cfg.dt = prop_dt;
      cfg.g1d = s.g1d;
      cfg.omega_r = s.train.omega_r;
      cfg.omega_x = s.params.omega_x;
      if (prop_steps > 0) {
        cfg.steps = prop_steps;
      } else {
        cfg.steps = static_cast<int>(std::lround(prop_t_final / prop_dt));
        cfg.steps -= cfg.steps % prop_samples;
      }
      std::cout << "t,l2_deviation\n";
      for (const auto& [t, dev] : deviation_curve(s.params, s.train, cfg, prop_samples)) {
        char line[96];
        std::snprintf(line, sizeof(line), "%.16e,%.16e\n", t, dev);
        std::cout << line;
      }
    } else if (*fit_cmd) {
      FitConstraints c = fc;
      if (!fit_config.empty()) {
        ConfigResult cr = load_config(fit_config);
        if (!std::holds_alternative<FitConstraints>(cr))
          throw std::runtime_error("fit: config file describes a scenario, not a fit");
        c = std::get<FitConstraints>(cr);
        if (fit_cmd->count("--amplitude")) c.amplitude = fc.amplitude;
        if (fit_cmd->count("--width-min")) c.width_min = fc.width_min;
        if (fit_cmd->count("--width-max")) c.width_max = fc.width_max;
        if (fit_cmd->count("--physical")) c.physical = fc.physical;
        if (fit_cmd->count("--omega-r-ratio")) c.omega_r_ratio = fc.omega_r_ratio;
      }
      if (fit_cmd->count("--omega-x-si")) c.omega_x_si = fit_omega_x_si;
      FitResult r = (fit_method == "closed") ? fit_closed_form(c) : fit_least_squares(c);
      std::cout << fit_result_json(r);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
