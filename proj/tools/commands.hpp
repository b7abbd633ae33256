#pragma once

#include <iosfwd>
#include <string>

namespace ctinform::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

struct SimulateOptions {
  bool paper_example = false;
  std::string A, B, x0;
  std::string horizon = "1";
  std::string h;  // default 1/16384 for the built-in benchmark, 1e-3 otherwise
  std::string u = "zero";
  std::string w = "zero";
  std::string out;
};

struct AnalyzeOptions {
  std::string traj;
  std::string mode = "cont";
  std::string delta;
  std::string Q;  // default identity
  std::string L, V;
  std::string out;
};

struct SweepOptions {
  std::string traj;
  std::string deltas = "1/2,1/4,1/8,1/16,1/32,1/64";
  std::string Q;
  std::string L, V;
  std::string out;  // stdout when empty
};

struct RegionOptions {
  std::string traj;
  std::string delta;
  std::string Q;
  std::string L;
  double a_min = -6.0, a_max = 6.0, b_min = -6.0, b_max = 6.0;
  int na = 241, nb = 241;
  int workers = 1;
  std::string out;  // stdout when empty
  std::string svg;
};

struct ReproduceOptions {
  double tolerance = 2e-3;
  int workers = 1;
  std::string out_dir;  // optional: writes the trajectory and region files here
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out);
int cmd_analyze(const AnalyzeOptions& o, std::ostream& out);
int cmd_sweep(const SweepOptions& o, std::ostream& out);
int cmd_region(const RegionOptions& o, std::ostream& out);
int cmd_reproduce(const ReproduceOptions& o, std::ostream& out);

}  // namespace ctinform::cli
