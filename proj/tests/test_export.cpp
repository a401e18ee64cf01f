#include <cmath>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "losslin/errors.hpp"
#include "losslin/export.hpp"
#include "losslin/table1.hpp"
#include "table1_reference.hpp"

using namespace losslin;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Accepts the subset of the LP-file grammar the exporter emits: comments,
// section keywords, "name: expr op rhs" rows and free-variable bounds.
bool valid_lp(const std::string& text, int* constraint_count) {
  static const std::regex comment(R"(\\.*)");
  static const std::regex section(R"((Subject To|Bounds|End))");
  static const std::regex number(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex row(
      R"( [A-Za-z_][\w.]*: [A-Za-z_][\w.\[\]]*( [+-] ((\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)? )?[A-Za-z_][\w.\[\]]*)* (>=|<=|=) [+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex bound(R"( [A-Za-z_][\w.\[\]]* free)");
  std::string state = "header";
  *constraint_count = 0;
  for (const auto& line : lines(text)) {
    if (std::regex_match(line, comment)) continue;
    if (std::regex_match(line, section)) {
      state = line;
      continue;
    }
    if (state == "Subject To" && std::regex_match(line, row)) {
      ++*constraint_count;
      continue;
    }
    if (state == "Bounds" && std::regex_match(line, bound)) continue;
    return false;
  }
  return state == "End";
}

std::vector<double> slopes_from_lp(const std::string& text) {
  static const std::regex term(R"(: L(?: ([+-]) (?:(\S+) )?x)? >= )");
  std::vector<double> out;
  for (const auto& line : lines(text)) {
    std::smatch m;
    if (!std::regex_search(line, m, term)) continue;
    if (!m[1].matched) {
      out.push_back(0.0);
      continue;
    }
    const double magnitude = m[2].matched ? std::stod(m[2].str()) : 1.0;
    out.push_back(m[1].str() == "-" ? magnitude : -magnitude);
  }
  return out;
}

}  // namespace

TEST_CASE("format_real") {
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(0.398942280401432677, 6) == "0.398942");
  CHECK(format_real(INFINITY) == "inf");
}

TEST_CASE("json bundle contents") {
  const auto r1 = build_report(*embedded_partition(2), NormalParams::standard(), Target::closs);
  const auto doc = nlohmann::json::parse(to_json(r1));
  CHECK(doc["lower"]["segments"].size() == 2);
  CHECK(doc["lower"]["segments"][0]["slope"] == 0.0);
  CHECK(doc["lower"]["segments"][1]["slope"] == 1.0);
  CHECK(doc["lower"]["segments"][0]["domain_low"].is_null());
  CHECK(doc["upper"]["error_locations"][0] == "-inf");
  CHECK(doc["metadata"]["segments"] == 2);

  const auto r4 = build_report(*embedded_partition(5), {20.0, 5.0}, Target::closs);
  const auto doc4 = nlohmann::json::parse(to_json(r4));
  CHECK(std::abs(doc4["metadata"]["max_error"].get<double>() - 0.169526) <= 1e-6);
  CHECK(doc4["lower"]["breakpoints"].size() == 4);

  // Key order is fixed.
  const std::string text = to_json(r4);
  CHECK(text.find("\"metadata\"") < text.find("\"partition\""));
  CHECK(text.find("\"partition\"") < text.find("\"lower\""));
  CHECK(text == to_json(r4));
}

TEST_CASE("json round trip is bit-exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mu(-100.0, 100.0);
  std::uniform_real_distribution<double> log_sigma(-6.0, 6.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int segments = 2 + trial % 10;
    const NormalParams scale{mu(rng), std::exp(log_sigma(rng))};
    const Target target = trial % 2 ? Target::loss : Target::closs;
    const auto bundle = make_bundle(build_report(*embedded_partition(segments), scale, target));
    const auto parsed = parse_json(to_json(bundle));
    CHECK(parsed == bundle);
    CHECK(to_json(parsed) == to_json(bundle));
  }
  CHECK_THROWS_AS(parse_json("{}"), InvalidParameter);
  CHECK_THROWS_AS(parse_json("not json"), InvalidParameter);
}

TEST_CASE("segment domains tile the line") {
  const auto bundle = make_bundle(build_report(*embedded_partition(7), {1.0, 2.0}, Target::loss));
  for (const auto* b : {&bundle.lower, &bundle.upper}) {
    REQUIRE(!b->segments.empty());
    CHECK(std::isinf(b->segments.front().domain_low));
    CHECK(std::isinf(b->segments.back().domain_high));
    for (std::size_t i = 1; i < b->segments.size(); ++i) {
      CHECK(b->segments[i].domain_low == b->segments[i - 1].domain_high);
      CHECK(b->segments[i].domain_low == b->breakpoints[i - 1]);
    }
  }
}

TEST_CASE("csv table") {
  std::vector<Partition> parts;
  for (int s = 2; s <= 11; ++s) parts.push_back(*embedded_partition(s));
  const auto rows = lines(to_csv_table(parts, 6));
  REQUIRE(rows.size() == 1 + 3 * 10);
  CHECK(rows[0] == "segments,error,param,1,2,3,4,5,6,7,8,9,10");
  CHECK(rows[1] == "2,0.398942,b,inf,,,,,,,,,");
  CHECK(rows[2] == "2,0.398942,p,1,,,,,,,,,");
  CHECK(rows[3] == "2,0.398942,m,0,,,,,,,,,");

  // Every printed value matches the reference table to 6 significant figures.
  const auto& reference = testing::table1_reference();
  for (std::size_t r = 0; r < reference.size(); ++r) {
    const auto& want = reference[r];
    std::vector<double> b = want.b;
    const auto check_row = [&](const std::string& row, const std::vector<double>& values) {
      std::vector<std::string> cells;
      std::stringstream ss(row);
      for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
      CHECK(std::stod(cells[1]) == want.error);
      for (std::size_t i = 0; i < values.size(); ++i) CHECK(std::stod(cells[3 + i]) == values[i]);
    };
    check_row(rows[1 + 3 * r], b);
    check_row(rows[2 + 3 * r], want.p);
    check_row(rows[3 + 3 * r], want.m);
  }
  CHECK_THROWS_AS(to_csv_table({}), InvalidParameter);
}

TEST_CASE("lp constraints for the lower bound") {
  int count = 0;
  const auto r1 = build_report(*embedded_partition(2), NormalParams::standard(), Target::closs);
  const std::string lp1 = to_lp_constraints(r1, "x", "L");
  CHECK(valid_lp(lp1, &count));
  CHECK(count == 2);
  CHECK(lp1.find(" lb_1: L >= 0\n") != std::string::npos);
  CHECK(lp1.find(" lb_2: L - x >= 0\n") != std::string::npos);

  const auto r4 = build_report(*embedded_partition(5), NormalParams::standard(), Target::closs);
  const std::string lp4 = to_lp_constraints(r4, "x", "L");
  CHECK(valid_lp(lp4, &count));
  CHECK(count == 5);
  const auto slopes = slopes_from_lp(lp4);
  const std::vector<double> expected{0.0, 0.187555, 0.5, 0.812445, 1.0};
  REQUIRE(slopes.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(slopes[i] - expected[i]) <= 1e-5);

  const auto scaled = build_report(*embedded_partition(5), {20.0, 5.0}, Target::closs);
  const auto scaled_slopes = slopes_from_lp(to_lp_constraints(scaled, "x", "L"));
  for (int i = 0; i < 5; ++i) CHECK(scaled_slopes[i] == slopes[i]);
  const auto s4 = r4.lower.segments();
  const auto s20 = scaled.lower.segments();
  for (int i = 0; i < 5; ++i) CHECK(s20[i].intercept == doctest::Approx(5.0 * s4[i].intercept - s4[i].slope * 20.0));

  const auto loss = build_report(*embedded_partition(5), {20.0, 5.0}, Target::loss);
  CHECK(valid_lp(to_lp_constraints(loss, "order_qty", "shortage"), &count));
  CHECK(count == 5);

  CHECK_THROWS_AS(to_lp_constraints(r4, "1x", "L"), InvalidParameter);
  CHECK_THROWS_AS(to_lp_constraints(r4, "x", "x"), InvalidParameter);
}

TEST_CASE("lp export of the upper bound is a breakpoint table") {
  const auto r = build_report(*embedded_partition(5), {20.0, 5.0}, Target::closs);
  const std::string text = to_lp_constraints(r, "x", "L", BoundKind::upper);
  int count = -1;
  CHECK_FALSE(valid_lp(text, &count));  // no sections: comments only
  for (const auto& line : lines(text)) CHECK(line.rfind("\\", 0) == 0);
  CHECK(text.find("SOS2") != std::string::npos);
  CHECK(text.find(format_real(r.upper.breakpoints()[0])) != std::string::npos);
}

TEST_CASE("plot data") {
  const auto r = build_report(*embedded_partition(5), NormalParams::standard(), Target::closs);
  const auto rows = lines(plot_data(r, 20001));
  REQUIRE(rows.size() == 1 + 20001 + 4);
  CHECK(rows[0] == "x,exact,lower,upper,gap_lower,gap_upper");
  double max_lower = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<double> v;
    std::stringstream ss(rows[i]);
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 6);
    CHECK(v[4] >= -1e-9);
    CHECK(v[5] >= -1e-9);
    max_lower = std::max(max_lower, v[4]);
  }
  CHECK(std::abs(max_lower - 0.0339052) <= 1e-5);
  CHECK(plot_data(r, 50) == plot_data(r, 50));
  CHECK_THROWS_AS(plot_data(r, 1), InvalidParameter);

  // The error envelope shrinks with the segment count.
  double previous = INFINITY;
  for (int s = 2; s <= 11; ++s) {
    const auto rs = build_report(*embedded_partition(s), NormalParams::standard(), Target::closs);
    double peak = 0.0;
    const auto data = lines(plot_data(rs, 4001));
    for (std::size_t i = 1; i < data.size(); ++i) {
      std::vector<double> v;
      std::stringstream ss(data[i]);
      for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
      peak = std::max(peak, v[4]);
    }
    CHECK(peak < previous);
    previous = peak;
  }
}
