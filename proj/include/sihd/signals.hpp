#pragma once

#include <cstdint>
#include <random>

namespace sihd {

/// Sine test signal with optional additive uniform noise.
/// Noise follows the classic `eta0 * rand()` pattern: one uniform [0,1)
/// draw per sample, scaled by noise_eta0, added to the clean value.
/// A zero-mean variant (eta0 * (U - 1/2)) is available but off by default.
struct SignalSpec {
  double amplitude = 1.0;
  double angular_freq = 2.0 * 3.14159265358979323846;  // rad/s
  double noise_eta0 = 0.0;
  std::uint64_t seed = 42;
  bool zero_mean_noise = false;
};

/// Clean d^order/dt^order of the sine, order in 0..3:
/// amplitude * w^order * sin(w t + order * pi/2).
double signal_derivative(const SignalSpec& spec, double t, int order);

/// Stateful sampler. The noise stream (std::mt19937_64, fixed seed) makes
/// sampling sequential per instance; clean evaluation stays pure.
class SignalSampler {
 public:
  explicit SignalSampler(const SignalSpec& spec);

  /// Clean value plus the next noise draw (when noise_eta0 > 0).
  double sample(double t);

  double clean(double t) const;

  const SignalSpec& spec() const { return spec_; }

 private:
  SignalSpec spec_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace sihd
