#pragma once

#include "sihd/correction_terms.hpp"

namespace sihd {

/// Signal value and first four derivatives at one instant, with the step
/// used to predict the next instant. x5 is held constant across a step.
struct TaylorStack {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;
  double x5 = 0.0;
  double h = 1e-3;
};

/// Remainder carried by a corrected line; fifth-order content only.
struct Residual {
  double value = 0.0;
};

struct CorrectedValue {
  double value = 0.0;
  Residual residual;
};

// Residual coefficients: residual = k * h^n * x5 with n = 3 (line 2)
// and n = 4 (line 1). The line-1 constant is frozen from the brute-force
// expansion exercised in the test suite.
inline constexpr double kResidualLine2 = 1.0 / 6.0;
inline constexpr double kResidualLine1 = -1.0 / 24.0;

/// Next-instant stack per the five-line multi-step Taylor expansion
/// (orders 4, 3, 2, 1, 0 on the five lines respectively).
TaylorStack multistep_predict(const TaylorStack& t);

/// x3 + h x4+ - (h^2/2) x5+. Exact for degree-<=4 signals.
double corrected_line3(const TaylorStack& t, const TaylorStack& next);

/// x2 + h x3+ - (h^2/2) x4+, with the residual next.x2 - value.
CorrectedValue corrected_line2(const TaylorStack& t, const TaylorStack& next);

/// x1 + h x2+ - (h^2/2) x3+ + (h^3/6) x4+, with the residual next.x1 - value.
CorrectedValue corrected_line1(const TaylorStack& t, const TaylorStack& next);

}  // namespace sihd
