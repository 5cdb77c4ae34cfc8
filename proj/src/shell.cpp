#include "wavetrain/shell.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wavetrain {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHbar = 1.054571817e-34;      // J s
constexpr double kAmu = 1.66053906660e-27;     // kg

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string fmt_compact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_compact(v[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i];
  }
  return out;
}

const std::set<std::string> kOutputKinds = {"density_xy", "density_profile", "vertical_view",
                                            "report"};

[[noreturn]] void config_error(const std::string& origin, int line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

PhysicalUnits convert_units(double omega_x_si, double mass_amu) {
  if (!(omega_x_si > 0.0) || !(mass_amu > 0.0))
    throw std::invalid_argument("convert_units: frequency and mass must be positive");
  PhysicalUnits u;
  u.omega_x_si = omega_x_si;
  u.mass_amu = mass_amu;
  u.lx_microns = std::sqrt(kHbar / (mass_amu * kAmu * omega_x_si)) * 1e6;
  u.period_ms = 2.0 * kPi / omega_x_si * 1000.0;
  return u;
}

Scenario preset(const std::string& name) {
  Scenario s;
  s.name = name;
  s.params = {1.0, 1.0, 0.0, -kPi / 2, 1.0};
  s.train = {10, -5.0, 40.0};
  if (name == "fig1") {
    s.times = {0.0, kPi / 2, kPi};
    s.grid = {-15.0, 15.0, 1024};
    s.outputs = {"density_xy"};
  } else if (name == "fig2") {
    s.params.A = 0.01;
    s.train.b0 = 0.0;
    s.times = {0.0, kPi / 4, kPi / 2};
    s.grid = {-90.0, 90.0, 8192};
    s.outputs = {"density_xy"};
  } else if (name == "fig3" || name == "fig4" || name == "fig5") {
    s.params.A = 0.4624;
    s.train.b0 = -17.437;
    s.times = {0.0, kPi / 2, kPi};
    s.grid = {-32.0, 32.0, 2048};
    s.outputs = {"density_xy"};
    if (name == "fig4") s.outputs = {"density_profile"};
    if (name == "fig5") {
      s.train.n = 6;  // post-transition train: seven packets
      s.times = {2.0 * kPi, 2.5 * kPi, 3.0 * kPi};
    }
  } else {
    throw std::invalid_argument("preset: unknown scenario name '" + name + "'");
  }
  return s;
}

namespace {

ConfigResult build_from_pairs(const std::vector<std::tuple<int, std::string, std::string>>& kv,
                              const std::string& origin) {
  bool is_fit = false;
  for (const auto& [line, key, value] : kv)
    if (key.rfind("fit.", 0) == 0) is_fit = true;

  if (is_fit) {
    FitConstraints c;
    for (const auto& [line, key, value] : kv) {
      try {
        if (key == "fit.amplitude") c.amplitude = std::stod(value);
        else if (key == "fit.width_min") c.width_min = std::stod(value);
        else if (key == "fit.width_max") c.width_max = std::stod(value);
        else if (key == "fit.physical") c.physical = std::stod(value) != 0.0;
        else if (key == "fit.omega_x_si") c.omega_x_si = std::stod(value);
        else if (key == "fit.omega_r_ratio") c.omega_r_ratio = std::stod(value);
        else config_error(origin, line, "unknown key '" + key + "'");
      } catch (const std::invalid_argument&) {
        config_error(origin, line, "cannot parse value '" + value + "' for key '" + key + "'");
      }
    }
    validate(c);
    return c;
  }

  Scenario s;
  s.train = {0, 0.0, 40.0};
  s.grid = {-15.0, 15.0, 1024};
  s.times = {0.0};
  s.outputs = {"density_profile"};

  // scenario= first, so later keys override preset values
  for (const auto& [line, key, value] : kv)
    if (key == "scenario" && value != "custom") {
      try {
        s = preset(value);
      } catch (const std::invalid_argument& e) {
        config_error(origin, line, e.what());
      }
    }

  for (const auto& [line, key, value] : kv) {
    try {
      if (key == "scenario") continue;
      else if (key == "n") s.train.n = std::stoi(value);
      else if (key == "A") s.params.A = std::stod(value);
      else if (key == "B") s.params.B = std::stod(value);
      else if (key == "alpha") s.params.alpha = std::stod(value);
      else if (key == "beta") s.params.beta = std::stod(value);
      else if (key == "b0") s.train.b0 = std::stod(value);
      else if (key == "omega_r") s.train.omega_r = std::stod(value);
      else if (key == "omega_x_si") s.omega_x_si = std::stod(value);
      else if (key == "mass_amu") s.mass_amu = std::stod(value);
      else if (key == "grid.x_min") s.grid.x_min = std::stod(value);
      else if (key == "grid.x_max") s.grid.x_max = std::stod(value);
      else if (key == "grid.points") s.grid.points = std::stoi(value);
      else if (key == "g1d") s.g1d = std::stod(value);
      else if (key == "times") {
        s.times.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) s.times.push_back(std::stod(tok));
      } else if (key == "outputs") {
        s.outputs.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          if (!kOutputKinds.count(tok))
            config_error(origin, line, "unknown output kind '" + tok + "'");
          s.outputs.push_back(tok);
        }
      } else {
        config_error(origin, line, "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      config_error(origin, line, "cannot parse value '" + value + "' for key '" + key + "'");
    }
  }

  try {
    validate(s.params);
    validate(s.train);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  return s;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigResult parse_config_text(const std::string& text, const std::string& origin) {
  std::vector<std::tuple<int, std::string, std::string>> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      config_error(origin, lineno, "expected key=value, got '" + t + "'");
    kv.emplace_back(lineno, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return build_from_pairs(kv, origin);
}

ConfigResult load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();

  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    ordered_json doc = ordered_json::parse(buf.str());
    if (!doc.contains("config"))
      throw std::runtime_error("load_config: '" + path + "' has no \"config\" object");
    std::vector<std::tuple<int, std::string, std::string>> kv;
    int line = 0;
    for (const auto& [key, value] : doc["config"].items()) {
      std::string v = value.is_string() ? value.get<std::string>() : value.dump();
      kv.emplace_back(++line, key, v);
    }
    return build_from_pairs(kv, path);
  }
  return parse_config_text(buf.str(), path);
}

namespace {

ordered_json config_object(const Scenario& s) {
  ordered_json cfg;
  cfg["scenario"] = s.name;
  cfg["n"] = s.train.n;
  cfg["A"] = s.params.A;
  cfg["B"] = s.params.B;
  cfg["alpha"] = s.params.alpha;
  cfg["beta"] = s.params.beta;
  cfg["b0"] = s.train.b0;
  cfg["omega_r"] = s.train.omega_r;
  cfg["grid.x_min"] = s.grid.x_min;
  cfg["grid.x_max"] = s.grid.x_max;
  cfg["grid.points"] = s.grid.points;
  cfg["times"] = join_doubles(s.times);
  cfg["outputs"] = join_strings(s.outputs);
  cfg["g1d"] = s.g1d;
  if (s.omega_x_si) cfg["omega_x_si"] = *s.omega_x_si;
  if (s.mass_amu) cfg["mass_amu"] = *s.mass_amu;
  return cfg;
}

}  // namespace

std::string metadata_json(const Scenario& s) {
  ordered_json doc;
  doc["config"] = config_object(s);
  const ConservedSet c = conserved(s.params);
  doc["conserved"] = {{"c0", c.c0}, {"c1", c.c1}, {"c2", c.c2}};
  doc["energy_level"] = energy_level(s.params, s.train);
  ordered_json units;
  units["convention"] = "natural: hbar = m = omega_x = 1, length l_x, time 1/omega_x";
  if (s.omega_x_si && s.mass_amu) {
    const PhysicalUnits u = convert_units(*s.omega_x_si, *s.mass_amu);
    units["omega_x_rad_per_s"] = u.omega_x_si;
    units["mass_amu"] = u.mass_amu;
    units["lx_microns"] = u.lx_microns;
    units["period_ms"] = u.period_ms;
    // alternate reading of the quoted frequency as cycles/s
    const PhysicalUnits alt = convert_units(*s.omega_x_si * 2.0 * kPi, *s.mass_amu);
    units["lx_microns_if_hz_cycles"] = alt.lx_microns;
    units["period_ms_if_hz_cycles"] = alt.period_ms;
  }
  doc["units"] = units;
  if (!s.times.empty() && s.grid.points >= 2) {
    std::vector<double> xs(s.grid.points);
    const double hx = (s.grid.x_max - s.grid.x_min) / (s.grid.points - 1);
    for (int i = 0; i < s.grid.points; ++i) xs[i] = s.grid.x_min + i * hx;
    ordered_json widths = ordered_json::array();
    for (const double t : s.times) {
      const auto psi = psi_axial_grid(xs, t, s.params, s.train);
      std::vector<double> d(psi.size());
      for (std::size_t i = 0; i < psi.size(); ++i) d[i] = std::norm(psi[i]);
      widths.push_back({{"t", t}, {"width", support_width(xs, d, 1e-4)}});
    }
    doc["measured"]["support_width_rel_1e-4"] = widths;
  }
  return doc.dump(2) + "\n";
}

std::string report_json(const VerificationReport& rep) {
  ordered_json doc;
  doc["residual_l2"] = rep.residual_l2;
  doc["residual_max"] = rep.residual_max;
  doc["gram_max_offdiag"] = rep.gram_max_offdiag;
  doc["gram_max_diag_err"] = rep.gram_max_diag_err;
  doc["energy_numeric"] = rep.energy_numeric;
  doc["energy_closed_form"] = rep.energy_closed_form;
  doc["energy_drift"] = rep.energy_drift;
  ordered_json det;
  for (const auto& [k, v] : rep.details) det[k] = v;
  doc["details"] = det;
  return doc.dump(2) + "\n";
}

std::string fit_result_json(const FitResult& fr) {
  ordered_json doc;
  doc["A"] = fr.params.A;
  doc["B"] = fr.params.B;
  doc["alpha"] = fr.params.alpha;
  doc["beta"] = fr.params.beta;
  doc["b0"] = fr.b0;
  doc["c0"] = classical_c0(fr.params);
  if (fr.lx_microns) doc["lx_microns"] = *fr.lx_microns;
  ordered_json res;
  for (const auto& [k, v] : fr.residuals) res[k] = v;
  doc["residuals"] = res;
  doc["converged"] = fr.converged;
  return doc.dump(2) + "\n";
}

std::vector<std::string> run_scenario(const Scenario& s, const std::string& out_dir) {
  validate(s.params);
  validate(s.train);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir))
    throw std::runtime_error("run_scenario: cannot create output directory '" + out_dir + "'");

  std::vector<std::string> manifest;
  const double lr_ratio = std::sqrt(s.train.omega_r);
  const double lr = 1.0 / lr_ratio;

  std::vector<double> xs(s.grid.points);
  const double hx = (s.grid.x_max - s.grid.x_min) / (s.grid.points - 1);
  for (int i = 0; i < s.grid.points; ++i) xs[i] = s.grid.x_min + i * hx;

  auto open_csv = [&](const std::string& kind, const std::string& header) {
    const std::string path = out_dir + "/" + s.name + "_" + kind + ".csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("run_scenario: cannot write '" + path + "'");
    f << header << "\n";
    manifest.push_back(path);
    return f;
  };

  for (const std::string& kind : s.outputs) {
    if (kind == "report") {
      const std::string path = out_dir + "/" + s.name + "_report.json";
      std::ofstream f(path, std::ios::binary);
      f << report_json(full_report(s.params, s.train));
      manifest.push_back(path);
      continue;
    }

    std::ofstream f = open_csv(
        kind, kind == "density_xy" ? "t,x,y,density" : "t,x,density");
    for (const double t : s.times) {
      const auto psi = psi_axial_grid(xs, t, s.params, s.train);
      if (kind == "density_xy") {
        const double hy = (s.y_grid.max - s.y_grid.min) / (s.y_grid.count - 1);
        for (int i = 0; i < s.grid.points; ++i) {
          const double ax = std::norm(psi[i]);
          for (int j = 0; j < s.y_grid.count; ++j) {
            const double y = s.y_grid.min + j * hy;
            const double d = ax * std::exp(-y * y / (lr * lr)) / (kPi * lr * lr);
            f << fmt17(t) << "," << fmt17(xs[i]) << "," << fmt17(y) << "," << fmt17(d) << "\n";
          }
        }
      } else if (kind == "density_profile") {
        for (int i = 0; i < s.grid.points; ++i)
          f << fmt17(t) << "," << fmt17(xs[i]) << "," << fmt17(std::norm(psi[i])) << "\n";
      } else {  // vertical_view: density through the trap axis, y = z = 0
        const double transverse = 1.0 / (kPi * lr * lr);
        for (int i = 0; i < s.grid.points; ++i)
          f << fmt17(t) << "," << fmt17(xs[i]) << ","
            << fmt17(std::norm(psi[i]) * transverse) << "\n";
      }
    }
  }

  {
    const std::string path = out_dir + "/" + s.name + "_metadata.json";
    std::ofstream f(path, std::ios::binary);
    f << metadata_json(s);
    manifest.push_back(path);
  }
  return manifest;
}

int count_local_maxima(const std::vector<double>& density, double rel_threshold) {
  double peak = 0.0;
  for (double d : density) peak = std::max(peak, d);
  const double thr = rel_threshold * peak;
  int count = 0;
  for (std::size_t i = 1; i + 1 < density.size(); ++i)
    if (density[i] > density[i - 1] && density[i] > density[i + 1] && density[i] > thr) ++count;
  return count;
}

double support_width(const std::vector<double>& xs, const std::vector<double>& density,
                     double rel_threshold) {
  if (xs.size() != density.size() || xs.empty())
    throw std::invalid_argument("support_width: mismatched or empty input");
  double peak = 0.0;
  for (double d : density) peak = std::max(peak, d);
  const double thr = rel_threshold * peak;
  std::size_t lo = 0, hi = 0;
  bool found = false;
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (density[i] > thr) {
      if (!found) lo = i;
      hi = i;
      found = true;
    }
  }
  return found ? xs[hi] - xs[lo] : 0.0;
}

std::vector<double> peak_positions(const std::vector<double>& xs,
                                   const std::vector<double>& density, double rel_threshold) {
  double peak = 0.0;
  for (double d : density) peak = std::max(peak, d);
  const double thr = rel_threshold * peak;
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < density.size(); ++i) {
    if (density[i] > density[i - 1] && density[i] > density[i + 1] && density[i] > thr) {
      const double denom = density[i - 1] - 2.0 * density[i] + density[i + 1];
      const double h = xs[i + 1] - xs[i];
      const double shift = (denom != 0.0) ? 0.5 * h * (density[i - 1] - density[i + 1]) / denom : 0.0;
      out.push_back(xs[i] + shift);
    }
  }
  return out;
}

}  // namespace wavetrain
