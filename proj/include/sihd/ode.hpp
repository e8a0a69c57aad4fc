#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sihd/differentiator.hpp"

namespace sihd {

/// Scalar first-order problem dy/dt = f(y, u(t), t) on [t0, t_end].
struct OdeProblem {
  std::string name;
  std::function<double(double y, double u, double t)> rhs;
  std::function<double(double t)> input_u;  // null means u(t) = 0
  double y0 = 0.0;
  double t0 = 0.0;
  double t_end = 1.0;
  std::function<double(double t)> exact;  // optional reference solution

  double input_at(double t) const { return input_u ? input_u(t) : 0.0; }
};

/// NSFD denominator function psi(h) = h + O(h^2).
enum class PsiKind { linear, exponential };

struct PsiRule {
  PsiKind kind = PsiKind::linear;
  double rate = 1.0;  // exponential mode only

  void validate() const;
};

double psi_eval(const PsiRule& r, double h);

/// How the observer estimates advance the solution.
///   smoothed: y+ = y + psi * F1
///   taylor:   y+ = y + psi * (F1 + psi/2 F2 [E1] + psi^2/6 F3 [E1 E2])
enum class AdvanceMode { taylor, smoothed };

struct SihdSchemeConfig {
  DiffParams diff_params;
  PsiRule psi;
  AdvanceMode mode = AdvanceMode::taylor;
};

enum class Scheme { euler, rk4, nsfd_sihd };

double euler_step(const OdeProblem& p, double y, double t, double h);
double rk4_step(const OdeProblem& p, double y, double t, double h);

/// One step of the observer-based scheme: feed the computable sample
/// f(y_k, u_k, t_k) to the SIHD-3 instance, then advance with the
/// filtered estimates per cfg.mode.
std::pair<double, DiffState> nsfd_sihd_step(const SihdSchemeConfig& cfg,
                                            const DiffState& diff_state,
                                            const OdeProblem& p, double y,
                                            double t);

/// Uniform-grid trajectory with an error channel when the problem carries
/// an exact solution.
struct IntegrationResult {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> err;  // empty when no exact solution
};

IntegrationResult integrate(const OdeProblem& p, Scheme scheme, double h,
                            const SihdSchemeConfig* cfg = nullptr);

/// The three benchmark problems, addressable as "ex1", "ex2", "ex3".
std::vector<OdeProblem> catalog();
OdeProblem find_problem(const std::string& name);

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

}  // namespace sihd
