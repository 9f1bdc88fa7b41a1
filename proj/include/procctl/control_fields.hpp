#pragma once

#include <functional>
#include <string>
#include <vector>

#include "procctl/types.hpp"

namespace procctl {

/// Uniform grid on [0, t_f]; states live at grid points t_k = k*dt,
/// fields at interval midpoints t_{k+1/2}.
struct TimeGrid {
  double t_f = 0.0; // ns
  int n_steps = 0;

  TimeGrid() = default;
  TimeGrid(double tf, int steps);

  double dt() const { return t_f / n_steps; }
  double point(int k) const { return k * dt(); }
  double midpoint(int k) const { return (k + 0.5) * dt(); }
};

/// Blackman-style envelope [1 - g - cos(k pi t/t_f) + g cos(l pi t/t_f)] / 2.
double blackman_shape(double t, double t_f, double g, int k, int l);

struct ShapeFunction {
  enum class Kind { BlackmanPaper, Constant, CustomSamples };

  Kind kind = Kind::Constant;
  double g = 0.16;
  int k = 0, l = 0;                   // BlackmanPaper
  double value = 1.0;                 // Constant
  std::vector<double> samples;        // CustomSamples, at midpoints

  static ShapeFunction blackman(double g, int k, int l);
  static ShapeFunction constant(double value = 1.0);

  double eval(double t, double t_f) const;
  double eval_mid(const TimeGrid& grid, int k_step) const;
};

struct ControlField {
  std::string name;
  std::vector<double> samples;    // rad/ns, at midpoints, size n_steps
  ShapeFunction shape;
  double weight = 1.0;            // w_m > 0
  std::vector<double> reference;  // eps_m^(ref), same layout as samples
};

using ControlFieldSet = std::vector<ControlField>;

/// Guess pulse eps_m(t_{k+1/2}) = peak * f_m(t_{k+1/2}); reference = samples.
ControlField guess_pulse(const std::string& name, const ShapeFunction& shape,
                         double peak, double weight, const TimeGrid& grid);

/// J_f = sum_m int w_m (eps_m - eps_m^ref)^2 / f_m dt, midpoint quadrature.
/// Points with f_m = 0 are pinned; a nonzero deviation there is an error.
double field_cost(const ControlFieldSet& fields, const TimeGrid& grid);

struct SpectrumPoint {
  double omega;     // rad/ns
  double magnitude;
};

/// Centered DFT magnitude of the midpoint samples.
std::vector<SpectrumPoint> pulse_spectrum(const ControlField& field, const TimeGrid& grid);

} // namespace procctl
