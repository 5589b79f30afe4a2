#include "susy/config.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include "susy/expression.hpp"

namespace susy::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double number(const json& v, const std::string& field, const Params& params = {}) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
    if (s == "-inf" || s == "-infinity") return -kInf;
    try {
      return expr::evaluate_constant(s, params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  }
  throw ConfigError(field, "expected a number or a constant expression");
}

bool boolean(const json& v, const std::string& field) {
  if (!v.is_boolean()) throw ConfigError(field, "expected true or false");
  return v.get<bool>();
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<int>();
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (auto key : keys) ok = ok || key == k;
    if (!ok) throw ConfigError(where + "." + k, "unknown field");
  }
}

Params parse_params(const json& obj, const std::string& field) {
  Params p;
  if (obj.is_null()) return p;
  if (!obj.is_object()) throw ConfigError(field, "expected an object of name: value");
  for (const auto& [k, v] : obj.items()) p[k] = number(v, field + "." + k, p);
  return p;
}

std::vector<double> number_list(const json& v, const std::string& field) {
  std::vector<double> out;
  if (!v.is_array() || v.empty()) throw ConfigError(field, "expected a non-empty array");
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

PotentialSource parse_potential(const json& obj) {
  only_keys(obj, "potential", {"catalog", "superpotential", "potential", "file", "params", "domain", "column"});
  int sources = 0;
  for (const char* k : {"catalog", "superpotential", "potential", "file"}) sources += obj.contains(k) ? 1 : 0;
  if (sources != 1) throw ConfigError("potential", "exactly one of catalog, superpotential, potential, file is required");
  const Params params = parse_params(obj.value("params", json()), "potential.params");
  if (obj.contains("catalog")) {
    if (!obj["catalog"].is_string()) throw ConfigError("potential.catalog", "expected a string");
    CatalogSource src{obj["catalog"].get<std::string>(), params};
    try {
      resolve_catalog(src);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("potential.params", e.what());
    } catch (const NumericError& e) {
      throw ConfigError("potential.params", e.what());
    }
    return src;
  }
  if (obj.contains("file")) {
    if (!obj["file"].is_string()) throw ConfigError("potential.file", "expected a path");
    if (obj.contains("column") && !obj["column"].is_string()) throw ConfigError("potential.column", "expected a string");
    const std::string column = obj.value("column", "superpotential");
    if (column != "superpotential" && column != "potential")
      throw ConfigError("potential.column", "expected \"superpotential\" or \"potential\"");
    return FileSource{obj["file"].get<std::string>(), column == "superpotential"};
  }
  const bool is_w = obj.contains("superpotential");
  const std::string key = is_w ? "superpotential" : "potential";
  if (!obj[key].is_string()) throw ConfigError("potential." + key, "expected an expression string");
  ExpressionSource src{obj[key].get<std::string>(), is_w, Domain::real_line(), params};
  if (obj.contains("domain")) {
    const json& d = obj["domain"];
    if (!d.is_array() || d.size() != 2) throw ConfigError("potential.domain", "expected [lo, hi]");
    src.domain = Domain{number(d[0], "potential.domain[0]", params), number(d[1], "potential.domain[1]", params)};
    if (!(src.domain.lo < src.domain.hi)) throw ConfigError("potential.domain", "lo must be below hi");
  }
  try {
    const auto e = expr::parse(src.text, params);
    if (is_w) e.derivative();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("potential." + key, e.what());
  }
  return src;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::partner: return "partner";
    case Subcommand::spectrum: return "spectrum";
    case Subcommand::scatter: return "scatter";
    case Subcommand::isospectral: return "isospectral";
    case Subcommand::swkb: return "swkb";
    case Subcommand::bands: return "bands";
    default: return "check";
  }
}

Subcommand subcommand_from(const std::string& s) {
  for (auto c : {Subcommand::partner, Subcommand::spectrum, Subcommand::scatter, Subcommand::isospectral,
                 Subcommand::swkb, Subcommand::bands, Subcommand::check})
    if (to_string(c) == s) return c;
  throw ConfigError("subcommand", "unknown subcommand '" + s + "'");
}

SipEntry resolve_catalog(const CatalogSource& src) {
  const std::string name = lower(src.name);
  if (name == "sech2") {
    Params p{{"A", 1.0}, {"B", 0.0}, {"alpha", 1.0}};
    for (const auto& [k, v] : src.params) {
      if (k == "B")
        p["A"] = v;
      else if (k == "alpha")
        p["alpha"] = v;
      else
        throw std::invalid_argument("parameter '" + k + "' is not defined for sech2 (use B, alpha)");
    }
    return sip_lookup(SipName::scarf_ii, p);
  }
  if (name == "well") {
    double L = std::numbers::pi;
    for (const auto& [k, v] : src.params) {
      if (k != "L") throw std::invalid_argument("parameter '" + k + "' is not defined for well (use L)");
      L = v;
    }
    if (!(L > 0.0)) throw std::invalid_argument("well: L must be positive");
    const double a = std::numbers::pi / L;
    return sip_lookup(SipName::rosen_morse_i, {{"A", a}, {"B", 0.0}, {"alpha", a}});
  }
  return sip_lookup(name, src.params);
}

RunConfig parse_config(const json& doc) {
  only_keys(doc, "config", {"subcommand", "potential", "grid", "units", "output", "options"});
  if (!doc.contains("subcommand") || !doc["subcommand"].is_string()) throw ConfigError("subcommand", "required string");
  RunConfig cfg;
  cfg.source = doc;
  cfg.subcommand = subcommand_from(doc["subcommand"].get<std::string>());
  if (doc.contains("potential")) cfg.potential = parse_potential(doc["potential"]);
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    only_keys(g, "grid", {"x_min", "x_max", "n_points"});
    if (g.contains("x_min")) cfg.grid.x_min = number(g["x_min"], "grid.x_min");
    if (g.contains("x_max")) cfg.grid.x_max = number(g["x_max"], "grid.x_max");
    if (g.contains("n_points")) {
      const int n = integer(g["n_points"], "grid.n_points");
      if (n < 9) throw ConfigError("grid.n_points", "need at least 9 points");
      cfg.grid.n_points = static_cast<std::size_t>(n);
    }
    if (cfg.grid.x_min && cfg.grid.x_max && !(*cfg.grid.x_min < *cfg.grid.x_max))
      throw ConfigError("grid", "x_min must be below x_max");
  }
  if (doc.contains("units")) {
    const json& u = doc["units"];
    only_keys(u, "units", {"hbar", "mass2"});
    if (u.contains("hbar")) cfg.units.hbar = number(u["hbar"], "units.hbar");
    if (u.contains("mass2")) cfg.units.mass2 = number(u["mass2"], "units.mass2");
    if (!(cfg.units.hbar > 0.0) || !(cfg.units.mass2 > 0.0)) throw ConfigError("units", "hbar and mass2 must be positive");
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    only_keys(o, "output", {"format", "path"});
    if (o.contains("format") && !o["format"].is_string()) throw ConfigError("output.format", "expected a string");
    const std::string f = o.value("format", "csv");
    if (f == "csv")
      cfg.format = OutputFormat::csv;
    else if (f == "json")
      cfg.format = OutputFormat::json;
    else
      throw ConfigError("output.format", "expected csv or json");
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw ConfigError("output.path", "expected a string");
      cfg.output_path = o["path"].get<std::string>();
    }
  }
  if (doc.contains("options")) {
    const json& o = doc["options"];
    only_keys(o, "options", {"levels", "hierarchy", "k", "lambda", "lame", "period", "n_max", "partner", "plots"});
    if (o.contains("levels")) cfg.levels = integer(o["levels"], "options.levels");
    if (o.contains("hierarchy")) cfg.hierarchy = integer(o["hierarchy"], "options.hierarchy");
    if (o.contains("n_max")) cfg.n_max = integer(o["n_max"], "options.n_max");
    if (o.contains("k")) cfg.k = number_list(o["k"], "options.k");
    if (o.contains("lambda")) cfg.lambda = number_list(o["lambda"], "options.lambda");
    if (o.contains("period")) cfg.period = number(o["period"], "options.period");
    if (o.contains("partner")) cfg.partner = boolean(o["partner"], "options.partner");
    if (o.contains("plots")) cfg.plots = boolean(o["plots"], "options.plots");
    if (o.contains("lame")) {
      const json& l = o["lame"];
      only_keys(l, "options.lame", {"a", "m"});
      LameOptions lame;
      if (l.contains("a")) lame.a = integer(l["a"], "options.lame.a");
      if (l.contains("m")) lame.m = number(l["m"], "options.lame.m");
      if (lame.a < 1) throw ConfigError("options.lame.a", "must be a positive integer");
      if (!(lame.m > 0.0 && lame.m < 1.0)) throw ConfigError("options.lame.m", "must lie in (0, 1)");
      cfg.lame = lame;
    }
  }
  if (cfg.levels < 1) throw ConfigError("options.levels", "must be positive");
  if (cfg.hierarchy < 0) throw ConfigError("options.hierarchy", "must be non-negative");
  if (cfg.n_max < 0) throw ConfigError("options.n_max", "must be non-negative");
  for (double k : cfg.k)
    if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("options.k", "momenta must be positive and finite");
  for (double l : cfg.lambda)
    if (std::isnan(l) || (l > -1.0 && l < 0.0)) throw ConfigError("options.lambda", "lambda must lie outside (-1, 0)");
  if (cfg.period && !(*cfg.period > 0.0)) throw ConfigError("options.period", "must be positive");
  if (std::holds_alternative<CatalogSource>(cfg.potential) && !(cfg.units == Units{}))
    throw ConfigError("units", "catalog entries are tabulated for hbar = 2m = 1");

  const bool has_potential = !std::holds_alternative<std::monostate>(cfg.potential);
  switch (cfg.subcommand) {
    case Subcommand::partner:
    case Subcommand::spectrum:
    case Subcommand::scatter:
    case Subcommand::isospectral:
      if (!has_potential) throw ConfigError("potential", "required for " + to_string(cfg.subcommand));
      break;
    case Subcommand::bands:
      if (!cfg.lame && !(has_potential && cfg.period))
        throw ConfigError("options", "bands needs options.lame or a potential with options.period");
      break;
    default: break;
  }
  if (cfg.subcommand == Subcommand::isospectral || cfg.subcommand == Subcommand::scatter) {
    if (const auto* f = std::get_if<FileSource>(&cfg.potential); f && !f->superpotential)
      throw ConfigError("potential.column", to_string(cfg.subcommand) + " needs a superpotential");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "invalid JSON");
  }
  return parse_config(doc);
}

}  // namespace susy::cli
