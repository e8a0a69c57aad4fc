// Benchmark harness: sine differentiation, ODE scheme comparison,
// parameter sweeps and the Taylor-refinement verification command.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sihd/bench.hpp"

namespace {

void add_diff_flags(CLI::App* cmd, sihd::BenchOptions& o) {
  // --h is a real flag here, so help is long-form only.
  cmd->set_help_flag("--help", "print help");
  cmd->add_option("--lambda1", o.lambda1, "gain of line 1");
  cmd->add_option("--lambda2", o.lambda2, "gain of line 2");
  cmd->add_option("--lambda3", o.lambda3, "gain of line 3");
  cmd->add_option("--lambda4", o.lambda4, "gain of line 4");
  cmd->add_option("--alpha", o.alpha, "homogeneity exponent in (0,1)");
  cmd->add_option("--mu", o.mu, "scale");
  cmd->add_option("--h", o.h, "time step [s]");
  cmd->add_option("--sd-mode", o.sd_mode,
                  "switching-domain bound: continuous|shared");
  cmd->add_option("--ic", o.ic,
                  "initial state: analytic|unit (unit-sine stack 0,1,0,-1)");
  cmd->add_option("--seed", o.seed, "noise generator seed");
  cmd->set_config("--config", "", "flat key=value config file; flags override");
}

void add_signal_flags(CLI::App* cmd, sihd::BenchOptions& o) {
  cmd->add_option("--amplitude", o.amplitude, "sine amplitude");
  cmd->add_option("--omega", o.omega, "sine angular frequency [rad/s]");
  cmd->add_option("--eta0", o.eta0, "uniform noise amplitude");
  cmd->add_option("--duration", o.duration, "run length [s]");
  cmd->add_option("--t-skip", o.t_skip, "steady-state window start [s]");
}

void add_ode_flags(CLI::App* cmd, sihd::BenchOptions& o) {
  cmd->add_option("--problem", o.problem, "catalog problem: ex1|ex2|ex3");
  cmd->add_option("--schemes", o.schemes,
                  "comma list of euler,rk4,nsfd_sihd");
  cmd->add_option("--psi", o.psi, "NSFD denominator: linear|exponential");
  cmd->add_option("--psi-rate", o.psi_rate, "exponential psi rate");
  cmd->add_option("--mode", o.mode, "scheme advance: taylor|smoothed");
}

void emit(const sihd::Metadata& meta, const sihd::DataTable& table,
          const std::string& out) {
  if (out.empty()) {
    sihd::write_csv(std::cout, meta, table);
  } else {
    sihd::write_csv_file(out, meta, table);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIHD-3 differentiation and NSFD integration benchmarks"};
  app.require_subcommand(1);

  sihd::BenchOptions opt;

  auto* diff = app.add_subcommand("diff", "differentiate a sine test signal");
  add_diff_flags(diff, opt);
  add_signal_flags(diff, opt);
  diff->add_option("--out", opt.out, "output CSV path (default stdout)");

  auto* ode = app.add_subcommand("ode", "compare ODE integration schemes");
  add_diff_flags(ode, opt);
  add_ode_flags(ode, opt);
  ode->add_option("--out", opt.out, "output CSV path (default stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid");
  std::string experiment = "diff";
  std::string out_dir = "sweep_out";
  int jobs = 1;
  std::vector<std::string> grid_specs;
  add_diff_flags(sweep_cmd, opt);
  add_signal_flags(sweep_cmd, opt);
  add_ode_flags(sweep_cmd, opt);
  sweep_cmd->add_option("--experiment", experiment, "diff|ode");
  sweep_cmd->add_option("--grid", grid_specs,
                        "axis as key=v1,v2,... (repeatable)");
  sweep_cmd->add_option("--out-dir", out_dir, "sweep output directory");
  sweep_cmd->add_option("--jobs", jobs, "worker threads");

  auto* verify = app.add_subcommand("verify-taylor",
                                    "check the Taylor refinement algebra");
  int trials = 100;
  std::uint64_t vseed = 42;
  verify->add_option("--trials", trials, "number of random stacks");
  verify->add_option("--seed", vseed, "stack generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sihd::kExitConfig;
  }

  try {
    if (*diff) {
      const sihd::DiffRunResult r = sihd::run_diff(opt);
      emit(r.meta, r.table, opt.out);
      std::cerr << "mean|e1| = " << r.summary.mean_abs_e1
                << ", mean|e2| = " << r.summary.mean_abs_e2
                << ", mean|e3| = " << r.summary.mean_abs_e3 << " over ["
                << r.summary.t_skip << ", " << r.summary.t_end << "] s\n";
    } else if (*ode) {
      const sihd::OdeRunResult r = sihd::run_ode(opt);
      emit(r.meta, r.table, opt.out);
    } else if (*sweep_cmd) {
      std::vector<sihd::GridAxis> grid;
      for (const auto& spec : grid_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
          throw std::invalid_argument("grid axis needs key=v1,v2,...: " + spec);
        }
        sihd::GridAxis axis;
        axis.key = spec.substr(0, eq);
        std::string vals = spec.substr(eq + 1);
        std::size_t pos = 0;
        while (pos <= vals.size()) {
          const auto comma = vals.find(',', pos);
          const auto end = comma == std::string::npos ? vals.size() : comma;
          if (end > pos) axis.values.push_back(vals.substr(pos, end - pos));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        grid.push_back(std::move(axis));
      }
      const auto points = sihd::sweep(opt, experiment, grid, out_dir, jobs);
      std::size_t failures = 0;
      for (const auto& pt : points) {
        if (pt.status != "ok") {
          ++failures;
          std::cerr << "point " << pt.index << " failed: " << pt.status << "\n";
        }
      }
      std::cerr << points.size() - failures << "/" << points.size()
                << " sweep points succeeded; index at " << out_dir
                << "/index.csv\n";
      if (failures == points.size()) return sihd::kExitDivergence;
    } else if (*verify) {
      if (!sihd::verify_taylor(trials, vseed, std::cout)) {
        return sihd::kExitViolation;
      }
    }
  } catch (const sihd::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return sihd::kExitDivergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sihd::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sihd::kExitDivergence;
  }
  return sihd::kExitOk;
}
