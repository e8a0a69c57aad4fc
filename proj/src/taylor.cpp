#include "sihd/taylor.hpp"

namespace sihd {

TaylorStack multistep_predict(const TaylorStack& t) {
  const double h = t.h;
  TaylorStack n;
  n.h = h;
  n.x1 = t.x1 + h * t.x2 + h * h / 2.0 * t.x3 + h * h * h / 6.0 * t.x4 +
         h * h * h * h / 24.0 * t.x5;
  n.x2 = t.x2 + h * t.x3 + h * h / 2.0 * t.x4 + h * h * h / 6.0 * t.x5;
  n.x3 = t.x3 + h * t.x4 + h * h / 2.0 * t.x5;
  n.x4 = t.x4 + h * t.x5;
  n.x5 = t.x5;
  return n;
}

double corrected_line3(const TaylorStack& t, const TaylorStack& next) {
  const double h = t.h;
  return t.x3 + h * next.x4 - h * h / 2.0 * next.x5;
}

CorrectedValue corrected_line2(const TaylorStack& t, const TaylorStack& next) {
  const double h = t.h;
  CorrectedValue out;
  out.value = t.x2 + h * next.x3 + kCorrLine2Z4 * h * h * next.x4;
  out.residual.value = next.x2 - out.value;
  return out;
}

CorrectedValue corrected_line1(const TaylorStack& t, const TaylorStack& next) {
  const double h = t.h;
  CorrectedValue out;
  out.value = t.x1 + h * next.x2 + kCorrLine1Z3 * h * h * next.x3 +
              kCorrLine1Z4 * h * h * h * next.x4;
  out.residual.value = next.x1 - out.value;
  return out;
}

}  // namespace sihd
