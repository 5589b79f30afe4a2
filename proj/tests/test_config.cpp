#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "susy/config.hpp"

using namespace susy::cli;
using nlohmann::json;

TEST_SUITE("config") {
  TEST_CASE("minimal documents") {
    const auto c = parse_config(json{{"subcommand", "check"}});
    CHECK(c.subcommand == Subcommand::check);
    CHECK(std::holds_alternative<std::monostate>(c.potential));
    const auto s = parse_config(json::parse(R"({"subcommand": "spectrum", "potential": {"catalog": "morse", "params": {"A": 4}}})"));
    REQUIRE(std::holds_alternative<CatalogSource>(s.potential));
    CHECK(std::get<CatalogSource>(s.potential).params.at("A") == 4.0);
    CHECK(s.source["potential"]["catalog"] == "morse");
  }

  TEST_CASE("numbers may be expressions or infinities") {
    const auto c = parse_config(json::parse(
        R"({"subcommand": "isospectral", "potential": {"superpotential": "x"},
            "grid": {"x_min": "-2*pi", "x_max": "2*pi", "n_points": 101}, "options": {"lambda": [0.5, "inf", 0, -1]}})"));
    CHECK(*c.grid.x_min == doctest::Approx(-2 * M_PI));
    CHECK(std::isinf(c.lambda[1]));
    CHECK(c.lambda.size() == 4);
  }

  TEST_CASE("schema violations") {
    CHECK_THROWS_AS(parse_config(json{{"subcommand", "nope"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"subcommand", "check"}, {"extra", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"subcommand", "spectrum"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"subcommand": "isospectral", "potential": {"superpotential": "x"},
                                                 "options": {"lambda": [-0.5]}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"subcommand": "spectrum", "potential": {"catalog": "morse"},
                                                 "units": {"hbar": 2}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"subcommand": "spectrum", "potential": {"catalog": "morse", "file": "a"}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"subcommand": "bands"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"subcommand": "check", "output": {"format": "xml"}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"subcommand": "check", "grid": {"n_points": 3}})")), ConfigError);
    try {
      parse_config(json::parse(R"({"subcommand": "check", "options": {"levels": "many"}})"));
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "options.levels");
    }
  }

  TEST_CASE("catalog aliases") {
    const auto sech = resolve_catalog({"sech2", {{"B", 2.0}}});
    CHECK(sech.energy(1) == doctest::Approx(3.0));
    CHECK(sech.bound_state_count() == 2);
    const auto well = resolve_catalog({"well", {{"L", M_PI}}});
    CHECK(well.energy(1) == doctest::Approx(3.0));
    CHECK(well.domain().hi == doctest::Approx(M_PI));
    CHECK_THROWS(resolve_catalog({"morse", {{"A", -3.0}}}));
  }

  TEST_CASE("files: syntax errors report line and column") {
    const auto path = std::filesystem::temp_directory_path() / "susykit_bad_config.json";
    std::ofstream(path) << "{\n  \"subcommand\": \"check\",\n  oops\n}\n";
    try {
      load_config(path.string());
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::ofstream(path) << R"({"subcommand": "bands", "options": {"lame": {"a": 2, "m": 0.3}}})";
    const auto c = load_config(path.string());
    CHECK(c.lame->a == 2);
    CHECK(c.lame->m == doctest::Approx(0.3));
    std::filesystem::remove(path);
  }
}
