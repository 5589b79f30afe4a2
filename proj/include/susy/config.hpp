#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "susy/shape_invariance.hpp"
#include "susy/superpotential.hpp"

namespace susy::cli {

/// Schema violation; `field` is a JSON pointer-ish path or "line L, column C".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Subcommand { partner, spectrum, scatter, isospectral, swkb, bands, check };
std::string to_string(Subcommand s);
Subcommand subcommand_from(const std::string& s);

/// Catalog key, label or alias ("sech2": B; "well": L) with parameters.
struct CatalogSource {
  std::string name;
  Params params;
};

struct ExpressionSource {
  std::string text;
  bool superpotential = true;  ///< false: the text is a potential V(x)
  Domain domain{};
  Params params;
};

/// Two-column CSV (x, value) on a uniform grid.
struct FileSource {
  std::string path;
  bool superpotential = true;
};

using PotentialSource = std::variant<std::monostate, CatalogSource, ExpressionSource, FileSource>;

struct GridSpec {
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<std::size_t> n_points;  ///< per-subcommand default when empty
};

enum class OutputFormat { csv, json };

struct LameOptions {
  int a = 1;
  double m = 0.5;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::check;
  PotentialSource potential;
  GridSpec grid;
  Units units;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  ///< directory; empty writes the main table to stdout

  int levels = 6;
  int hierarchy = 0;
  std::vector<double> k{0.5, 1.0, 2.0};
  std::vector<double> lambda{0.5, 1.0, 5.0, std::numeric_limits<double>::infinity()};
  std::optional<LameOptions> lame;
  std::optional<double> period;  ///< periodic expression potentials
  int n_max = 5;
  bool partner = false;  ///< bands: also report the partner edges
  bool plots = false;    ///< write plot tables and a manifest

  nlohmann::json source;  ///< the input document, echoed verbatim
};

/// Validates the document and the catalog parameters. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a JSON file; syntax errors carry line and column.
RunConfig load_config(const std::string& path);

/// Resolves aliases and checks constraints.
SipEntry resolve_catalog(const CatalogSource& src);

}  // namespace susy::cli
