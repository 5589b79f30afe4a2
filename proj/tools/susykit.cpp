#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "susy/config.hpp"
#include "susy/run.hpp"

using nlohmann::json;
using namespace susy::cli;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "A=2,B=0.5" or repeated K=V; values stay strings so expressions such as pi/2 work.
json key_values(const std::vector<std::string>& items, const std::string& flag) {
  json obj = json::object();
  for (const auto& item : items)
    for (const auto& kv : split(item, ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError(flag, "expected KEY=VALUE, got '" + kv + "'");
      obj[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  return obj;
}

json list(const std::string& s) {
  json arr = json::array();
  for (const auto& v : split(s, ','))
    if (!v.empty()) arr.push_back(v);
  return arr;
}

struct Flags {
  std::string config;
  std::string catalog, superpotential, expr_potential, file, column, domain;
  std::vector<std::string> params;
  std::string x_min, x_max;
  int points = 0;
  std::string hbar, mass2;
  std::string format, output;
  int levels = 0, hierarchy = -1, n_max = -1;
  std::string k, lambda, lame, m, period;
  bool partner = false, plots = false;
};

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON run configuration; flags override its fields");
  auto* g = app->add_option_group("potential");
  g->add_option("--potential", f.catalog, "catalog entry, e.g. sech2, well, morse, scarf_ii");
  g->add_option("--superpotential", f.superpotential, "expression for W(x)");
  g->add_option("--expr-potential", f.expr_potential, "expression for V(x)");
  g->add_option("--file", f.file, "two-column CSV x,value on a uniform grid");
  app->add_option("--column", f.column, "meaning of the file values: superpotential or potential");
  app->add_option("--params", f.params, "parameters KEY=VALUE (repeatable, comma separated)");
  app->add_option("--domain", f.domain, "LO,HI for expressions; inf allowed, finite ends are walls");
  app->add_option("--x-min", f.x_min);
  app->add_option("--x-max", f.x_max);
  app->add_option("--points", f.points)->check(CLI::Range(9, 10000000));
  app->add_option("--hbar", f.hbar);
  app->add_option("--mass2", f.mass2, "2m");
  app->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output", f.output, "directory for CSV tables and result.json");
  app->add_option("--levels", f.levels);
  app->add_option("--hierarchy", f.hierarchy, "member s of the hierarchy (partner)");
  app->add_option("--n-max", f.n_max);
  app->add_option("--k", f.k, "comma separated wave numbers (scatter)");
  app->add_option("--lambda", f.lambda, "comma separated deformation parameters (isospectral)");
  app->add_option("--lame", f.lame, "Lame order, a=N or N (bands)");
  app->add_option("--m", f.m, "elliptic parameter (bands)");
  app->add_option("--period", f.period, "period of an expression potential (bands)");
  app->add_flag("--partner", f.partner, "bands: partner edges too");
  app->add_flag("--plots", f.plots, "write figure tables");
}

json build_document(const std::string& subcommand, const Flags& f) {
  json doc = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("config", "cannot open " + f.config);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error&) {
      load_config(f.config);  // rethrows with line and column
      throw;
    }
  }
  if (!subcommand.empty()) doc["subcommand"] = subcommand;

  const bool new_source = !f.catalog.empty() || !f.superpotential.empty() || !f.expr_potential.empty() || !f.file.empty();
  if (new_source) {
    json p = json::object();
    if (!f.catalog.empty()) p["catalog"] = f.catalog;
    if (!f.superpotential.empty()) p["superpotential"] = f.superpotential;
    if (!f.expr_potential.empty()) p["potential"] = f.expr_potential;
    if (!f.file.empty()) p["file"] = f.file;
    doc["potential"] = p;
  }
  if (!f.params.empty()) doc["potential"]["params"] = key_values(f.params, "--params");
  if (!f.column.empty()) doc["potential"]["column"] = f.column;
  if (!f.domain.empty()) {
    const json d = list(f.domain);
    if (d.size() != 2) throw ConfigError("--domain", "expected LO,HI");
    doc["potential"]["domain"] = d;
  }
  if (!f.x_min.empty()) doc["grid"]["x_min"] = f.x_min;
  if (!f.x_max.empty()) doc["grid"]["x_max"] = f.x_max;
  if (f.points) doc["grid"]["n_points"] = f.points;
  if (!f.hbar.empty()) doc["units"]["hbar"] = f.hbar;
  if (!f.mass2.empty()) doc["units"]["mass2"] = f.mass2;
  if (!f.format.empty()) doc["output"]["format"] = f.format;
  if (!f.output.empty()) doc["output"]["path"] = f.output;
  if (f.levels) doc["options"]["levels"] = f.levels;
  if (f.hierarchy >= 0) doc["options"]["hierarchy"] = f.hierarchy;
  if (f.n_max >= 0) doc["options"]["n_max"] = f.n_max;
  if (!f.k.empty()) doc["options"]["k"] = list(f.k);
  if (!f.lambda.empty()) doc["options"]["lambda"] = list(f.lambda);
  if (!f.lame.empty()) {
    std::string a = f.lame;
    if (a.rfind("a=", 0) == 0) a = a.substr(2);
    try {
      doc["options"]["lame"]["a"] = std::stoi(a);
    } catch (const std::exception&) {
      throw ConfigError("--lame", "expected a=N");
    }
  }
  if (!f.m.empty()) doc["options"]["lame"]["m"] = f.m;
  if (!f.period.empty()) doc["options"]["period"] = f.period;
  if (f.partner) doc["options"]["partner"] = true;
  if (f.plots) doc["options"]["plots"] = true;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"susykit: supersymmetric quantum mechanics toolkit"};
  app.set_version_flag("--version", std::string(SUSYKIT_VERSION));
  Flags top;
  app.add_option("--config", top.config, "JSON run configuration (its subcommand is used)");

  const std::vector<std::pair<std::string, std::string>> subs{
      {"partner", "superpotential and partner potentials, or a hierarchy member"},
      {"spectrum", "bound-state energies"},
      {"scatter", "reflection and transmission amplitudes"},
      {"isospectral", "one-parameter isospectral deformations"},
      {"swkb", "SWKB and WKB quantization"},
      {"bands", "band edges of periodic potentials"},
      {"check", "acceptance criteria"}};
  std::vector<Flags> flags(subs.size());
  std::vector<CLI::App*> apps;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto* s = app.add_subcommand(subs[i].first, subs[i].second);
    add_flags(s, flags[i]);
    apps.push_back(s);
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    std::string name;
    Flags f = top;
    for (std::size_t i = 0; i < apps.size(); ++i)
      if (apps[i]->parsed()) {
        name = subs[i].first;
        f = flags[i];
        if (f.config.empty()) f.config = top.config;
      }
    if (name.empty() && f.config.empty()) {
      std::cerr << app.help();
      return kExitConfig;
    }
    const RunConfig cfg = parse_config(build_document(name, f));
    return run(cfg, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "susykit: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "susykit: " << e.what() << '\n';
    return kExitConfig;
  }
}
