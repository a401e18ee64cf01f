#include "losslin/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include "json.hpp"
#include <regex>
#include <sstream>

#include "losslin/errors.hpp"
#include "losslin/gaussian.hpp"
#include "losslin/version.hpp"

namespace losslin {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();

Json encode_location(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  return x;
}

double decode_location(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw InvalidParameter("bad location string '" + s + "'");
  }
  return j.get<double>();
}

Json encode_bound(const BoundCoefficients& b) {
  Json segments = Json::array();
  for (const Segment& s : b.segments) {
    Json seg;
    seg["slope"] = s.slope;
    seg["intercept"] = s.intercept;
    seg["domain_low"] = std::isinf(s.domain_low) ? Json(nullptr) : Json(s.domain_low);
    seg["domain_high"] = std::isinf(s.domain_high) ? Json(nullptr) : Json(s.domain_high);
    segments.push_back(std::move(seg));
  }
  Json locations = Json::array();
  for (double x : b.error_locations) locations.push_back(encode_location(x));

  Json out;
  out["kind"] = to_string(b.kind);
  out["breakpoints"] = b.breakpoints;
  out["segments"] = std::move(segments);
  out["error_locations"] = std::move(locations);
  return out;
}

BoundCoefficients decode_bound(const Json& j) {
  BoundCoefficients b;
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "lower" && kind != "upper") throw InvalidParameter("bad bound kind '" + kind + "'");
  b.kind = kind == "lower" ? BoundKind::lower : BoundKind::upper;
  b.breakpoints = j.at("breakpoints").get<std::vector<double>>();
  for (const Json& seg : j.at("segments")) {
    const Json& lo = seg.at("domain_low");
    const Json& hi = seg.at("domain_high");
    b.segments.push_back({seg.at("slope").get<double>(), seg.at("intercept").get<double>(),
                          lo.is_null() ? -kInf : lo.get<double>(), hi.is_null() ? kInf : hi.get<double>()});
  }
  for (const Json& x : j.at("error_locations")) b.error_locations.push_back(decode_location(x));
  return b;
}

BoundCoefficients coefficients(const PiecewiseLinear& pl, std::vector<double> locations) {
  return {pl.kind(), pl.breakpoints(), pl.segments(), std::move(locations)};
}

bool valid_lp_name(std::string_view name) {
  static const std::regex pattern(R"([A-Za-z_][A-Za-z0-9_.\[\]]*)");
  return std::regex_match(name.begin(), name.end(), pattern);
}

// "L - 0.5 x >= 0.39" : the epigraph of one affine piece with x moved left.
std::string epigraph_row(std::string_view var_l, std::string_view var_x, double slope, double intercept) {
  std::string row(var_l);
  if (slope != 0.0) {
    row += slope > 0 ? " - " : " + ";
    const double magnitude = std::abs(slope);
    if (magnitude != 1.0) row += format_real(magnitude) + " ";
    row += var_x;
  }
  row += " >= " + format_real(intercept);
  return row;
}

}  // namespace

bool operator==(const BoundCoefficients& a, const BoundCoefficients& b) {
  return a.kind == b.kind && a.breakpoints == b.breakpoints && a.segments == b.segments &&
         a.error_locations == b.error_locations;
}

bool operator==(const ExportBundle& a, const ExportBundle& b) {
  return a.segments == b.segments && a.target == b.target && a.mu == b.mu && a.sigma == b.sigma &&
         a.max_error == b.max_error && a.version == b.version && a.boundaries == b.boundaries &&
         a.masses == b.masses && a.cond_means == b.cond_means && a.lower == b.lower && a.upper == b.upper;
}

std::string format_real(double value, int significant_digits) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
  return buffer;
}

ExportBundle make_bundle(const BoundReport& report) {
  ExportBundle bundle;
  const Partition& p = report.partition;
  bundle.segments = static_cast<int>(p.n_segments());
  bundle.target = report.lower.target();
  bundle.mu = report.lower.scale().mu;
  bundle.sigma = report.lower.scale().sigma;
  bundle.max_error = report.max_error;
  bundle.version = kVersion;
  const auto interior = p.interior_boundaries();
  bundle.boundaries.assign(interior.begin(), interior.end());
  bundle.masses = p.masses;
  bundle.cond_means = p.cond_means;
  bundle.lower = coefficients(report.lower, report.lower_error_locations);
  bundle.upper = coefficients(report.upper, report.upper_error_locations);
  return bundle;
}

std::string to_json(const ExportBundle& bundle) {
  Json doc;
  Json meta;
  meta["segments"] = bundle.segments;
  meta["target"] = to_string(bundle.target);
  meta["mu"] = bundle.mu;
  meta["sigma"] = bundle.sigma;
  meta["max_error"] = bundle.max_error;
  meta["version"] = bundle.version;
  doc["metadata"] = std::move(meta);

  Json partition;
  partition["b"] = bundle.boundaries;
  partition["p"] = bundle.masses;
  partition["m"] = bundle.cond_means;
  doc["partition"] = std::move(partition);

  doc["lower"] = encode_bound(bundle.lower);
  doc["upper"] = encode_bound(bundle.upper);
  return doc.dump(2) + "\n";
}

std::string to_json(const BoundReport& report) { return to_json(make_bundle(report)); }

ExportBundle parse_json(std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    ExportBundle bundle;
    const Json& meta = doc.at("metadata");
    bundle.segments = meta.at("segments").get<int>();
    bundle.target = parse_target(meta.at("target").get<std::string>().c_str());
    bundle.mu = meta.at("mu").get<double>();
    bundle.sigma = meta.at("sigma").get<double>();
    bundle.max_error = meta.at("max_error").get<double>();
    bundle.version = meta.at("version").get<std::string>();
    const Json& partition = doc.at("partition");
    bundle.boundaries = partition.at("b").get<std::vector<double>>();
    bundle.masses = partition.at("p").get<std::vector<double>>();
    bundle.cond_means = partition.at("m").get<std::vector<double>>();
    bundle.lower = decode_bound(doc.at("lower"));
    bundle.upper = decode_bound(doc.at("upper"));
    return bundle;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("malformed bundle JSON: ") + e.what());
  }
}

std::string to_csv_table(const std::vector<Partition>& partitions, int significant_digits) {
  if (partitions.empty()) throw InvalidParameter("to_csv_table needs at least one partition");
  std::size_t width = 0;
  for (const Partition& p : partitions) width = std::max(width, p.n_regions());

  std::ostringstream out;
  out << "segments,error,param";
  for (std::size_t i = 1; i <= width; ++i) out << ',' << i;
  out << '\n';

  const auto row = [&](const Partition& p, const char* name, const std::vector<double>& values) {
    out << p.n_segments() << ',' << format_real(p.max_error, significant_digits) << ',' << name;
    for (std::size_t i = 0; i < width; ++i) {
      out << ',';
      if (i < values.size()) out << format_real(values[i], significant_digits);
    }
    out << '\n';
  };
  for (const Partition& p : partitions) {
    row(p, "b", p.upper_limits);
    row(p, "p", p.masses);
    row(p, "m", p.cond_means);
  }
  return out.str();
}

std::string to_lp_constraints(const BoundReport& report, std::string_view var_x, std::string_view var_l,
                              BoundKind kind) {
  if (!valid_lp_name(var_x) || !valid_lp_name(var_l) || var_x == var_l) {
    throw InvalidParameter("LP variable names must be distinct identifiers");
  }
  const PiecewiseLinear& bound = kind == BoundKind::lower ? report.lower : report.upper;
  const NormalParams& scale = bound.scale();
  std::ostringstream out;
  out << "\\ losslin " << kVersion << ": " << to_string(kind) << " bound of " << to_string(bound.target())
      << ", segments=" << bound.segment_count() << " mu=" << format_real(scale.mu)
      << " sigma=" << format_real(scale.sigma) << " max_error=" << format_real(report.max_error) << '\n';

  if (kind == BoundKind::lower) {
    out << "\\ " << var_l << " >= slope * " << var_x << " + intercept for every segment\n";
    out << "Subject To\n";
    const auto segments = bound.segments();
    for (std::size_t i = 0; i < segments.size(); ++i) {
      out << " lb_" << i + 1 << ": "
          << epigraph_row(var_l, var_x, segments[i].slope, segments[i].intercept) << '\n';
    }
    out << "Bounds\n " << var_x << " free\n " << var_l << " free\nEnd\n";
    return out.str();
  }

  const auto breakpoints = bound.breakpoints();
  if (breakpoints.empty()) throw InvalidParameter("upper bound has no breakpoints to export");
  const auto segments = bound.segments();
  out << "\\ An over-estimator of a convex function is not a max of affine pieces;\n"
         "\\ the consuming model must pick a formulation (e.g. SOS2 lambda below).\n";
  out << "\\ breakpoints (" << var_x << ", " << var_l << "):\n";
  for (double x : breakpoints) {
    out << "\\   " << format_real(x) << ", " << format_real(bound.evaluate(x)) << '\n';
  }
  out << "\\ left tail: " << var_l << " = " << format_real(segments.front().slope) << " * " << var_x << " + "
      << format_real(segments.front().intercept) << '\n';
  out << "\\ right tail: " << var_l << " = " << format_real(segments.back().slope) << " * " << var_x << " + "
      << format_real(segments.back().intercept) << '\n';

  const auto [lo, hi] = default_window(bound);
  out << "\\ lambda formulation over [" << format_real(lo) << ", " << format_real(hi) << "]:\n"
      << "\\   " << var_x << " = sum_j lambda_j X_j, " << var_l
      << " = sum_j lambda_j Y_j, sum_j lambda_j = 1, lambda SOS2\n"
      << "\\   j, X_j, Y_j\n";
  std::vector<double> xs{lo};
  xs.insert(xs.end(), breakpoints.begin(), breakpoints.end());
  xs.push_back(hi);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    out << "\\   " << j << ", " << format_real(xs[j]) << ", " << format_real(bound.evaluate(xs[j])) << '\n';
  }
  return out.str();
}

std::string plot_data(const BoundReport& report, int n_points) {
  if (n_points < 2) throw InvalidParameter("plot_data needs at least 2 points");
  const auto [lo, hi] = default_window(report.lower);
  const NormalParams& scale = report.lower.scale();
  const Target target = report.lower.target();
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n_points) + report.lower.segment_count());
  for (int k = 0; k < n_points; ++k) xs.push_back(lo + (hi - lo) * k / (n_points - 1));
  // Include the kinks so the error peaks of the lower bound are plotted exactly.
  for (double x : report.lower.breakpoints()) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::ostringstream out;
  out << "x,exact,lower,upper,gap_lower,gap_upper\n";
  for (double x : xs) {
    const double exact = evaluate_loss(target, x, scale);
    const double lower = report.lower.evaluate(x);
    const double upper = report.upper.evaluate(x);
    out << format_real(x) << ',' << format_real(exact) << ',' << format_real(lower) << ','
        << format_real(upper) << ',' << format_real(exact - lower) << ',' << format_real(upper - exact)
        << '\n';
  }
  return out.str();
}

}  // namespace losslin
