#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "sihd/correction_terms.hpp"

namespace sihd {

/// Switching-domain bound selection for the projector.
///
/// `continuous` uses the per-line bound (lambda_q (mu h)^q)^(1/(q(1-alpha))),
/// which makes the line-q injection continuous across the switching surface.
/// `shared` uses the line-1 bound (lambda_1 mu h)^(1/(q(1-alpha))) for every
/// line.
enum class SdMode { continuous, shared };

/// Tuning surface of the SIHD-3 differentiator.
struct DiffParams {
  double lambda1 = 1e3;
  double lambda2 = 1e6;
  double lambda3 = 1e9;
  double lambda4 = 1e9;
  double alpha = 0.95;  // homogeneity exponent, in (0,1)
  double mu = 1.0;      // scale
  double h = 1e-3;      // time step [s]
  SdMode sd_mode = SdMode::continuous;

  double lambda(int q) const;

  /// Throws std::invalid_argument if any gain, mu or h is non-positive,
  /// or alpha is outside (0,1).
  void validate() const;
};

/// Differentiator state: the four estimates plus the gate outcomes of the
/// most recent step.
struct DiffState {
  double z1 = 0.0;  // signal estimate
  double z2 = 0.0;  // 1st derivative estimate
  double z3 = 0.0;  // 2nd derivative estimate
  double z4 = 0.0;  // 3rd derivative estimate
  bool gate1 = true;
  bool gate2 = true;
  bool gate3 = true;
};

struct ProjectorResult {
  double n_value = 0.0;
  bool inside_sd = false;
};

/// Thrown when a differentiator line produces a non-finite value
/// (divergence or mis-tuning).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Signed power |x|^a * sign(x). Odd in x; returns 0 at x = 0.
double signed_power(double x, double a);

/// Convergence-domain bound for line q (1..4) under the params' SdMode.
double sd_bound(int q, const DiffParams& p);

/// Per-line projector: scaled signed power inside the convergence domain,
/// sign function outside. inside_sd is the gate value E_q for this line.
ProjectorResult projector(int q, double eps1, const DiffParams& p);

/// One discrete update of the four-line recurrence, top line first.
/// The semi-implicit references resolve by forward substitution
/// (z4+ -> z3+ -> z2+ -> z1+); no fixed-point iteration is needed.
DiffState step(const DiffState& s, double x1_sample, const DiffParams& p);

/// Current estimates (z1, z2, z3, z4).
std::array<double, 4> estimate(const DiffState& s);

/// State whose estimates match the given signal value and derivatives.
DiffState state_from_derivatives(double y, double dy, double d2y, double d3y);

}  // namespace sihd
