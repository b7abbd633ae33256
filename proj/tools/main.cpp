#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "ctinform/errors.hpp"

using namespace ctinform::cli;

int main(int argc, char** argv) {
  CLI::App app{"ctinform: informativity analysis of continuous-time trajectory data"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "key = value config file with [subcommand] sections");
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "simulate an LTI system and write a trajectory CSV");
  simulate->add_flag("--paper-example", sim.paper_example, "built-in scalar benchmark");
  simulate->add_option("--A", sim.A, "state matrix, rows separated by ';'");
  simulate->add_option("--B", sim.B, "input matrix");
  simulate->add_option("--x0", sim.x0, "initial state, comma separated");
  simulate->add_option("--T", sim.horizon, "horizon");
  simulate->add_option("--h", sim.h, "grid step");
  simulate->add_option("--u", sim.u, "input spec: zero, constant:, ramp:, sine:, pwl:, random-pwl:");
  simulate->add_option("--w", sim.w, "noise spec, same forms as --u");
  simulate->add_option("--out", sim.out, "output CSV");

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "decide informativity and synthesize a gain");
  analyze->add_option("--traj", an.traj, "trajectory CSV");
  analyze->add_option("--mode", an.mode, "cont, sampled or sampled-sufficient")
      ->check(CLI::IsMember({"cont", "sampled", "sampled-sufficient"}));
  analyze->add_option("--delta", an.delta, "sampling stepsize");
  analyze->add_option("--Q", an.Q, "noise budget (default identity)");
  analyze->add_option("--L", an.L, "assumed square Lipschitz constant");
  analyze->add_option("--V", an.V, "assumed total square variation");
  analyze->add_option("--out", an.out, "certificate file");

  SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "verdicts over a list of stepsizes");
  sweep->add_option("--traj", sw.traj, "trajectory CSV");
  sweep->add_option("--deltas", sw.deltas, "comma separated stepsizes, fractions allowed");
  sweep->add_option("--Q", sw.Q, "noise budget (default identity)");
  sweep->add_option("--L", sw.L, "assumed square Lipschitz constant");
  sweep->add_option("--V", sw.V, "assumed total square variation");
  sweep->add_option("--out", sw.out, "output CSV (default stdout)");

  RegionOptions rg;
  auto* region = app.add_subcommand("region", "membership grid of the consistent-system sets");
  region->add_option("--traj", rg.traj, "trajectory CSV (scalar)");
  region->add_option("--delta", rg.delta, "sampling stepsize");
  region->add_option("--Q", rg.Q, "noise budget (default 1)");
  region->add_option("--L", rg.L, "square Lipschitz constant for the inflated layer");
  region->add_option("--a-min", rg.a_min);
  region->add_option("--a-max", rg.a_max);
  region->add_option("--b-min", rg.b_min);
  region->add_option("--b-max", rg.b_max);
  region->add_option("--na", rg.na, "cells along a")->check(CLI::PositiveNumber);
  region->add_option("--nb", rg.nb, "cells along b")->check(CLI::PositiveNumber);
  region->add_option("--workers", rg.workers, "worker threads")->check(CLI::PositiveNumber);
  region->add_option("--out", rg.out, "output CSV (default stdout)");
  region->add_option("--svg", rg.svg, "optional SVG rendering");

  ReproduceOptions rp;
  auto* reproduce = app.add_subcommand("reproduce-paper", "rerun the scalar benchmark and compare with reference values");
  reproduce->add_option("--tolerance", rp.tolerance, "entrywise matrix tolerance");
  reproduce->add_option("--workers", rp.workers, "worker threads for region scans")->check(CLI::PositiveNumber);
  reproduce->add_option("--out-dir", rp.out_dir, "directory for trajectory and region files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::cout.precision(9);
  try {
    if (*simulate) return cmd_simulate(sim, std::cout);
    if (*analyze) return cmd_analyze(an, std::cout);
    if (*sweep) return cmd_sweep(sw, std::cout);
    if (*region) return cmd_region(rg, std::cout);
    if (*reproduce) return cmd_reproduce(rp, std::cout);
  } catch (const ctinform::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
