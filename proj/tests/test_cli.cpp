#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "susy/run.hpp"

using namespace susy::cli;
using nlohmann::json;

namespace {

RunResult exec(const std::string& doc) { return execute(parse_config(json::parse(doc))); }

double cell(const Table& t, std::size_t row, std::size_t col) { return std::get<double>(t.rows.at(row).at(col)); }

std::filesystem::path scratch(const std::string& name) {
  const char* env = std::getenv("SUSYKIT_TEST_TMP");
  const auto dir = std::filesystem::path(env ? env : std::filesystem::temp_directory_path().string()) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int shell(const std::string& args, const std::string& prefix = "") {
  const std::string cmd = prefix + "\"" SUSYKIT_CLI "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("spectrum of sech^2 with B = 2") {
    const auto r = exec(R"({"subcommand": "spectrum", "potential": {"catalog": "sech2", "params": {"B": 2}}})");
    const auto& t = r.tables.at(0);
    REQUIRE(t.rows.size() == 2);
    CHECK(cell(t, 0, 1) == doctest::Approx(0.0).scale(1.0));
    CHECK(cell(t, 1, 1) == doctest::Approx(3.0));
    CHECK(r.diagnostics["numeric_max_deviation"].get<double>() < 1e-5);
  }

  TEST_CASE("numeric spectrum of an expression potential") {
    const auto r = exec(R"({"subcommand": "spectrum", "potential": {"potential": "x^2"}, "options": {"levels": 3}})");
    for (int n = 0; n < 3; ++n) CHECK(cell(r.tables[0], n, 1) == doctest::Approx(2.0 * n + 1.0).epsilon(1e-6));
  }

  TEST_CASE("Lame a = 1 band edges") {
    const auto r = exec(R"({"subcommand": "bands", "options": {"lame": {"a": 1, "m": 0.5}, "partner": true}})");
    const auto& t = r.tables.at(0);
    REQUIRE(t.rows.size() == 3);
    const double expect[] = {0.5, 1.0, 1.5};
    for (int i = 0; i < 3; ++i) CHECK(cell(t, i, 1) == doctest::Approx(expect[i]).epsilon(1e-6));
    CHECK(std::get<std::string>(t.rows[1][2]) == "2L");
    CHECK(r.diagnostics["partner"]["shift_scan_related"].get<bool>());
  }

  TEST_CASE("square-well hierarchy member") {
    const auto r = exec(R"({"subcommand": "partner", "potential": {"catalog": "well", "params": {"L": "pi"}},
                            "options": {"hierarchy": 3}})");
    const auto& t = r.tables.at(0);
    CHECK(t.columns[1] == "V3");
    for (std::size_t i = 50; i < t.rows.size(); i += 400) {
      const double x = cell(t, i, 0);
      CHECK(cell(t, i, 1) == doctest::Approx(6.0 / std::pow(std::sin(x), 2) - 4.0).epsilon(1e-10));
    }
  }

  TEST_CASE("partner table from a superpotential expression") {
    const auto r = exec(R"({"subcommand": "partner", "potential": {"superpotential": "x"}, "grid": {"n_points": 201}})");
    const auto& t = r.tables.at(0);
    CHECK(t.columns == std::vector<std::string>{"x", "W", "V1", "V2"});
    CHECK(cell(t, 0, 2) == doctest::Approx(99.0));
    CHECK(r.diagnostics["susy"]["broken"] == false);
    CHECK(r.diagnostics["levels_v2"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("scatter table with the shape-invariant chain") {
    const auto r = exec(R"({"subcommand": "scatter", "potential": {"catalog": "sech2", "params": {"B": 2}}})");
    const auto& t = r.tables.at(0);
    REQUIRE(t.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(cell(t, i, 6) < 1e-10);
      CHECK(cell(t, i, 8) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("isospectral tables") {
    const auto r = exec(R"({"subcommand": "isospectral", "potential": {"catalog": "shifted_oscillator"},
                            "options": {"lambda": [0, 1, "inf"], "levels": 3}})");
    CHECK(r.tables.size() == 2);
    CHECK(r.tables[0].columns.size() == 5);
    CHECK(r.tables[1].columns.size() == 4);  // no normalizable ground state at lambda = 0
  }

  TEST_CASE("csv formatting round-trips doubles") {
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(1.0) == "1");
    std::ostringstream os;
    write_csv(os, Table{"t", {"a", "b"}, {{1.5, std::string("x,y")}}});
    CHECK(os.str() == "a,b\n1.5,\"x,y\"\n");
  }

  TEST_CASE("plot data") {
    const auto figs = figure_data();
    CHECK(figs.size() == 4);
    const auto dir = scratch("plots");
    const auto files = emit_plot_data(figs, dir);
    CHECK(files.size() == 5);
    std::ifstream in(dir / "manifest.json");
    const auto m = json::parse(in);
    CHECK(m["figures"].size() == 4);
  }

  TEST_CASE("binary: exit codes and output directory") {
    CHECK(shell("spectrum --potential sech2 --params B=2") == kExitOk);
    CHECK(shell("spectrum --potential sech2 --params B=-2") == kExitConfig);
    CHECK(shell("spectrum") == kExitConfig);
    CHECK(shell("isospectral --superpotential x --lambda -0.5") == kExitConfig);
    CHECK(shell("spectrum --potential nosuch") == kExitConfig);
    CHECK(shell("--bogus-flag") == kExitConfig);
    CHECK(shell("bands --expr-potential \"cos(x)\" --period 1") == kExitConfig);
    CHECK(shell("bands --expr-potential \"cos(x)\" --period 2*pi") == kExitOk);
    CHECK(shell("partner --expr-potential x") == kExitNumeric);  // no bound state to build W from
    CHECK(shell("scatter --expr-potential \"x^2\"") == kExitConfig);  // tails are not flat
    const auto dir = scratch("out");
    CHECK(shell("bands --lame a=2 --m 0.3 --format json", "SUSYKIT_OUTPUT_DIR=\"" + dir.string() + "\" ") == kExitOk);
    CHECK(std::filesystem::exists(dir / "band_edges.csv"));
    std::ifstream in(dir / "result.json");
    const auto env = json::parse(in);
    CHECK(env["tool"] == "susykit");
    CHECK(env["config"]["options"]["lame"]["a"] == 2);
  }
}
