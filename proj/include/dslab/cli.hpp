#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dslab/flows.hpp"
#include "dslab/surfaces.hpp"

namespace dslab {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInconsistent = 3,
  kExitStepRejected = 4,
  kExitIo = 5,
};

struct RunConfig {
  std::string command;
  std::string surface;
  std::map<std::string, double> params;
  std::filesystem::path input;
  int n1 = 32, n2 = 32;
  double tol_stat = 1e-6;
  double umbilic_eps = 1e-6;
  double tol_solv = kTolSolv;
  double dt = 1e-3;
  int steps = 100;
  Scheme scheme = Scheme::RK4;
  std::filesystem::path out, dump_fields, trace, final_surface;
  std::optional<Ambient> ambient;
  bool stamp = false;
};

/// Parses "k=v[,k=v]".
std::map<std::string, double> parse_params(const std::string& s);

/// Parses "N1xN2" (both even, >= 8).
std::pair<int, int> parse_grid(const std::string& s);

/// Checks RunConfig invariants; throws InvalidArgument.
void validate(const RunConfig& cfg);

/// Builds or loads the surface named by cfg.
LiftField build_surface(const RunConfig& cfg);

int cmd_analyze(const RunConfig& cfg, std::ostream& out);
int cmd_stationary(const RunConfig& cfg, std::ostream& out);
int cmd_flow(const RunConfig& cfg, std::ostream& out);
int cmd_quartic(const RunConfig& cfg, std::ostream& out);
int cmd_make_surface(const RunConfig& cfg, std::ostream& out);

/// Full command line (without the program name). Errors are reported on
/// `err` as a single "error[tag]: message" line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dslab
