#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sihd/differentiator.hpp"
#include "sihd/ode.hpp"
#include "sihd/record.hpp"
#include "sihd/signals.hpp"

namespace sihd {

// Process exit codes shared by the CLI and the harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitViolation = 4;

/// Flat option set mirroring the CLI flags; every field is addressable by
/// key for config files and sweep grids.
struct BenchOptions {
  // differentiator
  double lambda1 = 1e3;
  double lambda2 = 1e6;
  double lambda3 = 1e9;
  double lambda4 = 1e9;
  double alpha = 0.95;
  double mu = 1.0;
  double h = 1e-3;
  std::string sd_mode = "continuous";  // continuous | shared
  std::string ic = "analytic";         // analytic | unit

  // signal
  double amplitude = 1.0;
  double omega = 2.0 * 3.14159265358979323846;  // rad/s
  double eta0 = 0.0;
  std::uint64_t seed = 42;
  double duration = 10.0;
  double t_skip = 1.0;

  // ode
  std::string problem = "ex1";
  std::string schemes = "euler,rk4,nsfd_sihd";
  std::string psi = "linear";  // linear | exponential
  double psi_rate = 1.0;
  std::string mode = "taylor";  // taylor | smoothed

  std::string out;

  DiffParams diff_params() const;
  SignalSpec signal_spec() const;
  SihdSchemeConfig scheme_config() const;
  std::vector<Scheme> scheme_list() const;
  DiffState initial_state() const;
};

/// Sets one field by key ("alpha", "psi", ...). Throws
/// std::invalid_argument on unknown keys or unparsable values.
void apply_option(BenchOptions& o, const std::string& key,
                  const std::string& value);

struct DiffRunResult {
  Metadata meta;
  DataTable table;
  ErrorSummary summary;
};

struct OdeRunResult {
  Metadata meta;
  DataTable table;
};

/// Sine-differentiation experiment: one SIHD-3 step per sample over the
/// uniform grid, estimates recorded against the analytic derivatives.
DiffRunResult run_diff(const BenchOptions& o);

/// ODE experiment: every requested scheme on the shared grid, with error
/// channels against the validated reference solution.
OdeRunResult run_ode(const BenchOptions& o);

/// Taylor-refinement exactness check over random derivative stacks.
/// Returns true when every trial passes; violations go to `report`.
bool verify_taylor(int trials, std::uint64_t seed, std::ostream& report);

/// One axis of a sweep grid.
struct GridAxis {
  std::string key;
  std::vector<std::string> values;
};

struct SweepPoint {
  std::size_t index = 0;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::string file;    // relative to the sweep directory
  std::string status;  // "ok" or the error message
};

/// Cartesian-product sweep over `grid`, one CSV per point plus an
/// index.csv in `out_dir`. Per-point failures are recorded and the sweep
/// continues. Points run on `jobs` worker threads with per-point seeds
/// derived from (o.seed, point index).
std::vector<SweepPoint> sweep(const BenchOptions& o,
                              const std::string& experiment,
                              const std::vector<GridAxis>& grid,
                              const std::string& out_dir, int jobs = 1);

/// Deterministic per-point seed derivation (splitmix64 over master ^ index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace sihd
