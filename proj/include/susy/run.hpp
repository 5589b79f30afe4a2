#pragma once

#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "susy/config.hpp"

namespace susy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitConfig = 2;

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RunResult {
  std::vector<Table> tables;
  nlohmann::json diagnostics = nlohmann::json::object();
  bool failed = false;  ///< `check` found a failing criterion
};

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double v);
void write_csv(std::ostream& out, const Table& table);
nlohmann::json to_json(const Table& table);

/// Inputs echo, version, tables and diagnostics.
nlohmann::json envelope(const RunConfig& cfg, const RunResult& result);

/// Runs one subcommand. Throws ConfigError, std::invalid_argument (unsuitable
/// input) or NumericError.
RunResult execute(const RunConfig& cfg, std::ostream* progress = nullptr);

struct Figure {
  int number;
  std::string file;
  std::string caption;
  Table table;
};

/// Curves for the partner-level diagram, the square well and its partner,
/// and the deformed oscillator family with its ground states.
std::vector<Figure> figure_data();

/// One CSV per figure plus manifest.json. Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(const std::vector<Figure>& figures, const std::filesystem::path& dir);

/// output.path, else $SUSYKIT_OUTPUT_DIR, else empty (stdout).
std::string output_directory(const RunConfig& cfg);

/// Executes and writes artifacts. Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace susy::cli
