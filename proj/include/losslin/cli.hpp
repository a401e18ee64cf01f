#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "losslin/bounds.hpp"
#include "losslin/loss.hpp"

namespace losslin::cli {

enum class Format { json, csv, lp, plot };

struct CliConfig {
  std::string subcommand;
  int segments = 5;
  int max_segments = 11;
  double x = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
  Target target = Target::closs;
  Format format = Format::json;
  BoundKind lp_kind = BoundKind::lower;
  double tol = 1e-10;
  int points = 1001;
  int digits = 6;
  bool resolve = false;
  std::string var_x = "x";
  std::string var_l = "L";
  std::optional<std::string> out;
};

/// Default solver tolerance, honouring LOSSLIN_TOL when set to a positive number.
double default_tolerance();

/// Partition for `segments` lower-bound segments: the embedded constants
/// when available and `resolve` is false, otherwise a fresh solve.
Partition partition_for(int segments, double tol, bool resolve);

int cmd_eval(const CliConfig& config, std::ostream& out);
int cmd_table(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_bounds(const CliConfig& config, std::ostream& out);

/// Parses argv and dispatches. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace losslin::cli
