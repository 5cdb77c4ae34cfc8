#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavetrain {

// Uniform axis: count samples from min to max inclusive.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double spacing() const { return (max - min) / (count - 1); }
  double coord(int i) const { return min + i * spacing(); }
};

// Sampled complex wavefunction on a 1D spatial grid.
struct ComplexField {
  Axis x;
  std::vector<std::complex<double>> values;
  std::string units = "natural";

  void check_consistent() const {
    if (x.count < 2 || values.size() != static_cast<std::size_t>(x.count))
      throw std::invalid_argument("ComplexField: sample count does not match axis");
  }

  double norm_sq() const {
    double acc = 0.0;
    for (const auto& v : values) acc += std::norm(v);
    return acc * x.spacing();
  }
};

}  // namespace wavetrain
