#include "procctl/control_fields.hpp"

#include <cmath>
#include <stdexcept>

namespace procctl {

TimeGrid::TimeGrid(double tf, int steps) : t_f(tf), n_steps(steps) {
  if (steps < 2) throw std::invalid_argument("invalid-grid: n_steps must be >= 2");
  if (!(tf > 0)) throw std::invalid_argument("invalid-grid: t_f must be positive");
}

double blackman_shape(double t, double t_f, double g, int k, int l) {
  if (t < 0.0 || t > t_f) throw std::domain_error("domain-error: t outside [0, t_f]");
  double v = (1.0 - g - std::cos(k * kPi * t / t_f) + g * std::cos(l * kPi * t / t_f)) / 2.0;
  return v < 0.0 ? 0.0 : v; // clip rounding noise
}

ShapeFunction ShapeFunction::blackman(double g, int k, int l) {
  ShapeFunction s;
  s.kind = Kind::BlackmanPaper;
  s.g = g;
  s.k = k;
  s.l = l;
  return s;
}

ShapeFunction ShapeFunction::constant(double value) {
  ShapeFunction s;
  s.kind = Kind::Constant;
  s.value = value;
  return s;
}

double ShapeFunction::eval(double t, double t_f) const {
  switch (kind) {
    case Kind::BlackmanPaper: return blackman_shape(t, t_f, g, k, l);
    case Kind::Constant: return value;
    case Kind::CustomSamples:
      throw std::logic_error("custom-samples shape has no continuous form; use eval_mid");
  }
  return 0.0;
}

double ShapeFunction::eval_mid(const TimeGrid& grid, int k_step) const {
  if (kind == Kind::CustomSamples) {
    if (k_step < 0 || k_step >= static_cast<int>(samples.size()))
      throw std::out_of_range("shape sample index out of range");
    return samples[k_step];
  }
  return eval(grid.midpoint(k_step), grid.t_f);
}

ControlField guess_pulse(const std::string& name, const ShapeFunction& shape,
                         double peak, double weight, const TimeGrid& grid) {
  if (peak < 0.0) throw std::invalid_argument("guess_pulse: peak must be nonnegative");
  ControlField f;
  f.name = name;
  f.shape = shape;
  f.weight = weight;
  f.samples.resize(grid.n_steps);
  for (int k = 0; k < grid.n_steps; ++k) f.samples[k] = peak * shape.eval_mid(grid, k);
  f.reference = f.samples;
  return f;
}

double field_cost(const ControlFieldSet& fields, const TimeGrid& grid) {
  const double dt = grid.dt();
  double total = 0.0;
  for (const auto& f : fields) {
    if (!(f.weight > 0.0)) throw std::invalid_argument("field_cost: weight must be positive");
    for (int k = 0; k < grid.n_steps; ++k) {
      double dev = f.samples[k] - f.reference[k];
      if (dev == 0.0) continue;
      double fm = f.shape.eval_mid(grid, k);
      if (fm <= 0.0)
        throw std::domain_error("pinned-point-violation: field deviates where shape vanishes");
      total += f.weight * dev * dev / fm * dt;
    }
  }
  return total;
}

std::vector<SpectrumPoint> pulse_spectrum(const ControlField& field, const TimeGrid& grid) {
  const int n = grid.n_steps;
  if (static_cast<int>(field.samples.size()) != n)
    throw std::invalid_argument("pulse_spectrum: sample count does not match grid");
  const double dt = grid.dt();
  std::vector<SpectrumPoint> out(n);
  // frequency bins centered around zero: omega_j = 2 pi j / (n dt), j in [-n/2, n/2)
  for (int idx = 0; idx < n; ++idx) {
    int j = idx - n / 2;
    cx acc(0, 0);
    for (int k = 0; k < n; ++k)
      acc += field.samples[k] * std::exp(cx(0, -2.0 * kPi * j * k / n));
    out[idx] = {2.0 * kPi * j / (n * dt), std::abs(acc)};
  }
  return out;
}

} // namespace procctl
