#include "losslin/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "losslin/errors.hpp"
#include "losslin/export.hpp"
#include "losslin/partition.hpp"
#include "losslin/table1.hpp"
#include "losslin/version.hpp"

namespace losslin::cli {

namespace {

constexpr int kMaxTableSegments = 30;

// Writes `text` to the configured path, or to `out` when no path was given.
void emit(const CliConfig& config, const std::string& text, std::ostream& out) {
  if (!config.out) {
    out << text;
    return;
  }
  std::ofstream file(*config.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + *config.out + "'");
  file << text;
  file.close();
  if (!file) throw std::runtime_error("failed writing '" + *config.out + "'");
}

void validate(const CliConfig& config) {
  NormalParams{config.mu, config.sigma}.validate();
  if (!(config.tol > 0.0)) throw InvalidParameter("--tol must be positive");
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("LOSSLIN_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && *end == '\0' && value > 0.0) return value;
  }
  return SolverOptions{}.tol;
}

Partition partition_for(int segments, double tol, bool resolve) {
  if (segments < 2) throw InvalidParameter("segment count must be at least 2");
  if (!resolve) {
    if (auto embedded = embedded_partition(segments)) return *std::move(embedded);
  }
  SolverOptions options;
  options.tol = tol;
  return solve_minimax(segments - 1, options);
}

int cmd_eval(const CliConfig& config, std::ostream& out) {
  validate(config);
  const double value = evaluate_loss(config.target, config.x, {config.mu, config.sigma});
  out << format_real(value, 12) << '\n';
  return 0;
}

int cmd_table(const CliConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  if (config.max_segments < 2 || config.max_segments > kMaxTableSegments) {
    throw InvalidParameter("--max must lie in [2, " + std::to_string(kMaxTableSegments) + "]");
  }
  std::vector<std::future<Partition>> rows;
  for (int segments = 2; segments <= config.max_segments; ++segments) {
    rows.push_back(std::async(std::launch::async, [segments, &config] {
      return partition_for(segments, config.tol, config.resolve);
    }));
  }
  std::vector<Partition> solved;
  bool failed = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      solved.push_back(rows[i].get());
    } catch (const SolverError& e) {
      err << "segments=" << i + 2 << ": " << e.what() << '\n';
      failed = true;
    }
  }
  if (!solved.empty()) emit(config, to_csv_table(solved, config.digits), out);
  return failed ? 1 : 0;
}

int cmd_bounds(const CliConfig& config, std::ostream& out) {
  validate(config);
  const Partition partition = partition_for(config.segments, config.tol, config.resolve);
  const BoundReport report = build_report(partition, {config.mu, config.sigma}, config.target);
  std::string text;
  switch (config.format) {
    case Format::json:
      text = to_json(report);
      break;
    case Format::csv:
      text = to_csv_table({partition});
      break;
    case Format::lp:
      text = to_lp_constraints(report, config.var_x, config.var_l, config.lp_kind);
      break;
    case Format::plot:
      text = plot_data(report, config.points);
      break;
  }
  emit(config, text, out);
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise-linear bounds of the normal first-order loss function", "losslin"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CliConfig config;
  config.tol = default_tolerance();

  const std::map<std::string, Target> targets{{"loss", Target::loss}, {"closs", Target::closs}};
  const std::map<std::string, Format> formats{
      {"json", Format::json}, {"csv", Format::csv}, {"lp", Format::lp}, {"plot", Format::plot}};
  const std::map<std::string, BoundKind> kinds{{"lower", BoundKind::lower}, {"upper", BoundKind::upper}};

  const auto add_scale = [&](CLI::App* sub) {
    sub->add_option("--mu", config.mu, "Mean of the normal variable");
    sub->add_option("--sigma", config.sigma, "Standard deviation (> 0)");
    sub->add_option("--target", config.target, "loss or closs")
        ->transform(CLI::CheckedTransformer(targets, CLI::ignore_case));
  };
  const auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--tol", config.tol, "Gauss-Newton residual tolerance (env LOSSLIN_TOL)");
    sub->add_flag("--resolve", config.resolve, "Re-solve instead of using the embedded partitions");
    sub->add_option("-o,--out", config.out, "Output path (default stdout)");
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate the exact loss function at a point");
  eval->add_option("--x", config.x, "Evaluation point")->required();
  add_scale(eval);

  CLI::App* table = app.add_subcommand("table", "Minimax partition parameters as CSV");
  table->add_option("--max", config.max_segments, "Largest segment count (2..30)");
  table->add_option("--digits", config.digits, "Significant digits")->check(CLI::Range(1, 17));
  add_solver(table);

  CLI::App* bounds = app.add_subcommand("bounds", "Lower and upper bounds for one segment count");
  bounds->add_option("--segments", config.segments, "Lower-bound segment count (>= 2)");
  add_scale(bounds);
  bounds->add_option("--format", config.format, "json, csv, lp or plot")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  bounds->add_option("--kind", config.lp_kind, "Bound exported by --format lp: lower or upper")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  bounds->add_option("--points", config.points, "Grid size for --format plot")->check(CLI::Range(2, 10000000));
  bounds->add_option("--var-x", config.var_x, "LP name of the decision variable");
  bounds->add_option("--var-l", config.var_l, "LP name of the loss variable");
  add_solver(bounds);

  std::vector<const char*> argv{"losslin"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (eval->parsed()) return cmd_eval(config, out);
    if (table->parsed()) return cmd_table(config, out, err);
    return cmd_bounds(config, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace losslin::cli
