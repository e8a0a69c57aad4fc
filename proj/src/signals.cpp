#include "sihd/signals.hpp"

#include <cmath>
#include <stdexcept>

namespace sihd {

double signal_derivative(const SignalSpec& spec, double t, int order) {
  if (order < 0 || order > 3) {
    throw std::invalid_argument("derivative order must be in 0..3");
  }
  const double w = spec.angular_freq;
  const double phase = t * w + order * 3.14159265358979323846 / 2.0;
  return spec.amplitude * std::pow(w, order) * std::sin(phase);
}

SignalSampler::SignalSampler(const SignalSpec& spec)
    : spec_(spec), rng_(spec.seed) {
  if (spec.noise_eta0 < 0.0) {
    throw std::invalid_argument("noise_eta0 must be non-negative");
  }
}

double SignalSampler::clean(double t) const {
  return signal_derivative(spec_, t, 0);
}

double SignalSampler::sample(double t) {
  double v = clean(t);
  if (spec_.noise_eta0 > 0.0) {
    const double u = uniform_(rng_);
    v += spec_.noise_eta0 * (spec_.zero_mean_noise ? u - 0.5 : u);
  }
  return v;
}

}  // namespace sihd
