#include "sihd/differentiator.hpp"

#include <cmath>
#include <sstream>

namespace sihd {

double DiffParams::lambda(int q) const {
  switch (q) {
    case 1: return lambda1;
    case 2: return lambda2;
    case 3: return lambda3;
    case 4: return lambda4;
    default: throw std::invalid_argument("line index must be in 1..4");
  }
}

void DiffParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
  };
  positive(lambda1, "lambda1");
  positive(lambda2, "lambda2");
  positive(lambda3, "lambda3");
  positive(lambda4, "lambda4");
  positive(mu, "mu");
  positive(h, "h");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
}

double signed_power(double x, double a) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), a), x);
}

double sd_bound(int q, const DiffParams& p) {
  const double inv_exp = 1.0 / (static_cast<double>(q) * (1.0 - p.alpha));
  if (p.sd_mode == SdMode::shared) {
    return std::pow(p.lambda1 * p.mu * p.h, inv_exp);
  }
  return std::pow(p.lambda(q) * std::pow(p.mu * p.h, q), inv_exp);
}

ProjectorResult projector(int q, double eps1, const DiffParams& p) {
  const double bound = sd_bound(q, p);
  if (std::abs(eps1) <= bound) {
    const double n = signed_power(eps1, q * (1.0 - p.alpha)) /
                     (p.lambda(q) * std::pow(p.mu * p.h, q));
    return {n, true};
  }
  // sign(0) = 0, though eps1 = 0 always lands in the branch above.
  const double s = (eps1 > 0.0) ? 1.0 : (eps1 < 0.0 ? -1.0 : 0.0);
  return {s, false};
}

namespace {

// Line-q injection lambda_q mu^q |e1|^(q alpha - (q-1)) N_q.  Inside the
// convergence domain the powers cancel and the whole term reduces to
// e1 / h^q; the saturated branch keeps the explicit form.
double injection(int q, double e1, const ProjectorResult& n, const DiffParams& p) {
  if (e1 == 0.0) return 0.0;
  if (n.inside_sd) {
    return e1 / std::pow(p.h, q);
  }
  const double mag = p.lambda(q) * std::pow(p.mu, q) *
                     std::pow(std::abs(e1), q * p.alpha - (q - 1));
  return mag * n.n_value;
}

[[noreturn]] void throw_divergence(int line, double value, double e1) {
  std::ostringstream os;
  os << "non-finite value " << value << " on differentiator line " << line
     << " (e1 = " << e1 << ")";
  throw DivergenceError(os.str());
}

}  // namespace

DiffState step(const DiffState& s, double x1_sample, const DiffParams& p) {
  if (!std::isfinite(x1_sample)) {
    throw DivergenceError("non-finite input sample");
  }
  const double h = p.h;
  const double e1 = x1_sample - s.z1;

  const ProjectorResult n1 = projector(1, e1, p);
  const ProjectorResult n2 = projector(2, e1, p);
  const ProjectorResult n3 = projector(3, e1, p);
  const ProjectorResult n4 = projector(4, e1, p);
  const double g1 = n1.inside_sd ? 1.0 : 0.0;
  const double g2 = n2.inside_sd ? 1.0 : 0.0;
  const double g3 = n3.inside_sd ? 1.0 : 0.0;

  const double z4p = s.z4 + g1 * g2 * g3 * h * injection(4, e1, n4, p);
  if (!std::isfinite(z4p)) throw_divergence(4, z4p, e1);

  const double z3p = s.z3 + g1 * g2 * h * (z4p + injection(3, e1, n3, p));
  if (!std::isfinite(z3p)) throw_divergence(3, z3p, e1);

  const double z2p = s.z2 + g1 * h * (z3p + g3 * h * kCorrLine2Z4 * z4p +
                                      injection(2, e1, n2, p));
  if (!std::isfinite(z2p)) throw_divergence(2, z2p, e1);

  const double z1p = s.z1 + h * (z2p + g2 * h * kCorrLine1Z3 * z3p +
                                 g3 * g2 * h * h * kCorrLine1Z4 * z4p +
                                 injection(1, e1, n1, p));
  if (!std::isfinite(z1p)) throw_divergence(1, z1p, e1);

  return {z1p, z2p, z3p, z4p, n1.inside_sd, n2.inside_sd, n3.inside_sd};
}

std::array<double, 4> estimate(const DiffState& s) {
  return {s.z1, s.z2, s.z3, s.z4};
}

DiffState state_from_derivatives(double y, double dy, double d2y, double d3y) {
  DiffState s;
  s.z1 = y;
  s.z2 = dy;
  s.z3 = d2y;
  s.z4 = d3y;
  return s;
}

}  // namespace sihd
