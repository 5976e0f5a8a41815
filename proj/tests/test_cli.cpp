#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "dilute/asymptotics.hpp"
#include "dilute/constants.hpp"
#include "gen.hpp"
#include "table.hpp"

using namespace dilute;
using namespace dilute::cli;

namespace {

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "dilute2d");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

Table load(const std::string& path, bool json) {
  std::ifstream in(path);
  REQUIRE(in);
  return json ? read_json(in) : read_csv(in);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int shell(const std::string& args) {
  const int rc = std::system((std::string(DILUTE2D_EXE) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("property: CSV and JSON round trips are bit exact") {
  for_all(20, 61, [&](Gen& g, int) {
    Table t;
    t.columns = {"name", "x", "y"};
    const int n = g.integer(1, 30);
    for (int i = 0; i < n; ++i) {
      double x = g.uniform(-1, 1) * std::pow(10.0, g.integer(-300, 300));
      if (i == 0) x = std::numeric_limits<double>::denorm_min();
      t.add_row({std::string("row") + std::to_string(i), x, g.log_uniform(1e-20, 1e20)});
    }
    std::stringstream csv, json;
    write_csv(t, csv);
    write_json(t, json);
    Table a = read_csv(csv), b = read_json(json);
    REQUIRE(a.rows.size() == t.rows.size());
    REQUIRE(b.rows.size() == t.rows.size());
    CHECK(a.columns == t.columns);
    CHECK(b.columns == t.columns);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      CHECK(a.rows[r] == t.rows[r]);
      CHECK(b.rows[r] == t.rows[r]);
    }
  });
}

TEST_CASE("trend check") {
  CHECK(residual_trend_ok({}));
  CHECK(residual_trend_ok({0.3}));
  CHECK(residual_trend_ok({0.4, 0.3, 0.2, 0.1}));
  CHECK_FALSE(residual_trend_ok({0.4, 0.3, 0.25}));  // not halved
  CHECK_FALSE(residual_trend_ok({0.1, 0.4, 0.03}));  // not monotone
}

TEST_CASE("cnu footer") {
  CHECK(run_args({"cnu", "--nu", exact(8 * kPi), "--d-grid", "0", "--d-grid", "0.1", "--d-grid", "5",
                  "--out", "cnu_test.csv"}) == 0);
  Table t = load("cnu_test.csv", false);
  CHECK(t.rows.size() == 4);
  const std::size_t last = t.rows.size() - 1;
  CHECK(t.text(last, "kind") == "argmin");
  CHECK(t.number(last, "d") == 0.0);
  CHECK(t.number(last, "c_nu") == doctest::Approx(35.1752972452290).epsilon(1e-12));

  CHECK(run_args({"cnu", "--nu", exact(10 * kPi), "--out", "cnu_test.csv"}) == 0);
  t = load("cnu_test.csv", false);
  CHECK(t.rows.size() == 201);  // default grid of 200 points plus the footer
  CHECK(t.number(200, "d") >= 0);
  double best = 1e300;
  for (double d = 0; d <= 50; d += 1e-3) best = std::min(best, c_nu_of_d(10 * kPi, d));
  CHECK(t.number(200, "c_nu") <= best + 1e-10);
  std::remove("cnu_test.csv");
}

TEST_CASE("logft report and its negative control") {
  CHECK(run_args({"logft", "--out", "logft_test.csv"}) == 0);
  Table t = load("logft_test.csv", false);
  int scaling = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    CHECK(t.number(r, "pass") == 1.0);
    if (t.text(r, "check") == "p_scaling") ++scaling;
  }
  CHECK(scaling == 2);
  CHECK(run_args({"logft", "--corrupt-eps", "1e-3", "--out", "logft_test.csv"}) == 1);
  t = load("logft_test.csv", false);
  bool delta_failed = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    if (t.text(r, "check") == "delta_cancellation" && t.number(r, "pass") == 0.0) delta_failed = true;
  CHECK(delta_failed);
  std::remove("logft_test.csv");
}

TEST_CASE("scatter on bump and tabulated potentials") {
  CHECK(run_args({"scatter", "--out", "scatter_test.csv"}) == 0);
  Table t = load("scatter_test.csv", false);
  CHECK(std::abs(t.number(0, "vw0_over_8pib") - 1) <= 1e-8);

  {
    std::ofstream tab("scatter_table.txt");
    for (int i = 0; i <= 200; ++i) {
      const double r = i / 200.0;
      tab << r << " " << (r < 1 ? 10 * std::exp(-1 / (1 - r * r)) : 0.0) << "\n";
    }
  }
  CHECK(run_args({"scatter", "--potential", "table", "--table", "scatter_table.txt", "--out", "scatter_test2.csv"}) ==
        0);
  Table u = load("scatter_test2.csv", false);
  CHECK(u.columns == t.columns);
  {
    std::ofstream tab("scatter_table.txt");
    tab << "0 1\n0.5 -1\n1 0\n";
  }
  CHECK(run_args({"scatter", "--potential", "table", "--table", "scatter_table.txt"}) == 2);
  std::remove("scatter_table.txt");
  std::remove("scatter_test.csv");
  std::remove("scatter_test2.csv");
}

TEST_CASE("energy single row, config file and JSON mirror") {
  {
    std::ofstream cfg("energy_test.ini");
    cfg << "# energy run\nb = [0.01]\nnu = " << exact(8 * kPi) << "\nrho = 1.0\n";
  }
  CHECK(run_args({"energy", "--config", "energy_test.ini", "--out", "energy_test.csv"}) == 0);
  CHECK(run_args({"energy", "--config", "energy_test.ini", "--format", "json", "--out", "energy_test.json"}) == 0);
  Table c = load("energy_test.csv", false), j = load("energy_test.json", true);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.columns == j.columns);
  for (std::size_t i = 0; i < c.columns.size(); ++i) {
    const double x = std::get<double>(c.rows[0][i]), y = std::get<double>(j.rows[0][i]);
    if (std::isnan(x))
      CHECK(std::isnan(y));
    else
      CHECK(x == y);
  }
  const double b = c.number(0, "b");
  CHECK(b == 0.01);
  const double pred = 1 - c_of_d(c.number(0, "d_star_numeric")) * b;
  CHECK(std::abs(c.number(0, "rho0_over_rho") - pred) <= 5 * b * b);
  CHECK(std::abs(c.number(0, "f_min") - (c.number(0, "leading") + c.number(0, "log_term") + c.number(0, "const_term") +
                                          c.number(0, "residual"))) <= 1e-15);
  // same config, same bytes
  CHECK(run_args({"energy", "--config", "energy_test.ini", "--out", "energy_test2.csv"}) == 0);
  CHECK(slurp("energy_test.csv") == slurp("energy_test2.csv"));
  for (const char* f : {"energy_test.ini", "energy_test.csv", "energy_test.json", "energy_test2.csv"}) std::remove(f);
}

TEST_CASE("exit codes of the executable") {
  CHECK(shell("ideal") == 0);
  CHECK(shell("logft --kappa 2 --kappa 5") == 0);
  CHECK(shell("logft --corrupt-eps 0.01") == 1);
  CHECK(shell("energy --temperature 0.5") == 2);
  CHECK(shell("energy --b 1.5") == 2);
  CHECK(shell("cnu --format xml") == 2);
  CHECK(shell("cnu --config does_not_exist.ini") == 2);
  CHECK(shell("") == 2);
  CHECK(shell("ideal --mu 0.5") == 2);
}
