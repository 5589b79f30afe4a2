#include "susy/run.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "susy/check.hpp"
#include "susy/eigensolver.hpp"
#include "susy/expression.hpp"
#include "susy/isospectral.hpp"
#include "susy/periodic.hpp"
#include "susy/scattering.hpp"
#include "susy/shape_invariance.hpp"
#include "susy/susy_core.hpp"
#include "susy/swkb.hpp"

#ifndef SUSYKIT_VERSION
#define SUSYKIT_VERSION "0.0.0"
#endif

namespace susy::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything a subcommand needs to know about the potential source.
struct Source {
  std::optional<SipEntry> entry;
  std::optional<Superpotential> w;
  RealFunction v;  // V1 when W is known
  Domain domain;
  Units units;
  std::string label;
  std::optional<Grid> file_grid;
};

SampledFunction read_two_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("potential.file", "cannot open " + path);
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("potential.file", "line " + std::to_string(lineno) + ": expected x,value");
    double x = 0.0, y = 0.0;
    const char* b = line.data();
    auto r1 = std::from_chars(b, b + comma, x);
    auto r2 = std::from_chars(b + comma + 1, b + line.size(), y);
    if (r1.ec != std::errc() || r2.ec != std::errc()) {
      if (xs.empty()) continue;  // header
      throw ConfigError("potential.file", "line " + std::to_string(lineno) + ": malformed number");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 9) throw ConfigError("potential.file", "need at least 9 samples");
  const Grid g(xs.front(), xs.back(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - g[i]) > 1e-6 * g.spacing())
      throw ConfigError("potential.file", "samples must lie on a uniform grid (row " + std::to_string(i + 1) + ")");
  return SampledFunction(g, std::move(ys));
}

Source resolve(const RunConfig& cfg) {
  Source s;
  s.units = cfg.units;
  if (const auto* c = std::get_if<CatalogSource>(&cfg.potential)) {
    s.entry = resolve_catalog(*c);
    s.w = s.entry->superpotential();
    s.domain = s.entry->domain();
    s.label = std::string(s.entry->model().label);
  } else if (const auto* e = std::get_if<ExpressionSource>(&cfg.potential)) {
    const auto f = expr::parse(e->text, e->params);
    s.domain = e->domain;
    s.label = e->text;
    if (e->superpotential) {
      const auto df = f.derivative();
      Superpotential::Definition d;
      d.w = [f](double x) { return f(x); };
      d.dw = [df](double x) { return df(x); };
      d.domain = e->domain;
      d.units = cfg.units;
      d.params = e->params;
      d.name = e->text;
      auto saturates = [&](double x) {
        const double a = f(x), b = f(2.0 * x);
        return std::isfinite(a) && std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)) ? std::optional<double>(a)
                                                                                        : std::nullopt;
      };
      if (!e->domain.left_wall()) d.w_minus = saturates(-1e3);
      if (!e->domain.right_wall()) d.w_plus = saturates(1e3);
      s.w = Superpotential(std::move(d));
    } else {
      s.v = [f](double x) { return f(x); };
    }
  } else if (const auto* file = std::get_if<FileSource>(&cfg.potential)) {
    const SampledFunction data = read_two_column(file->path);
    s.file_grid = data.grid();
    s.domain = Domain::real_line();
    s.label = file->path;
    if (file->superpotential) {
      s.w = sampled_superpotential(data, cfg.units, file->path);
    } else {
      s.v = [data](double x) { return data.interpolate(x); };
    }
  }
  if (s.w) s.v = partner_potentials(*s.w).v1;
  return s;
}

Grid make_grid(const RunConfig& cfg, const Source& s, int levels, std::size_t default_n, double half_width = 10.0) {
  std::size_t n = cfg.grid.n_points.value_or(default_n);
  double lo, hi;
  if (s.entry) {
    const Grid g = s.entry->default_grid(levels, n);
    lo = g.x_min();
    hi = g.x_max();
  } else if (s.file_grid) {
    lo = s.file_grid->x_min();
    hi = s.file_grid->x_max();
    if (!cfg.grid.n_points) n = s.file_grid->size();
  } else {
    lo = s.domain.left_wall() ? s.domain.lo : -half_width;
    hi = s.domain.right_wall() ? s.domain.hi : (s.domain.left_wall() ? s.domain.lo + 2.0 * half_width : half_width);
  }
  if (cfg.grid.x_min) lo = *cfg.grid.x_min;
  if (cfg.grid.x_max) hi = *cfg.grid.x_max;
  if ((s.domain.left_wall() && lo < s.domain.lo) || (s.domain.right_wall() && hi > s.domain.hi))
    throw ConfigError("grid", "grid extends beyond the domain walls");
  if (!(lo < hi)) throw ConfigError("grid", "empty interval");
  return Grid(lo, hi, n);
}

PotentialOnGrid sample_v(const Source& s, const Grid& g) {
  if (s.w) return partner_potentials(*s.w).sample_v1(g);
  return PotentialOnGrid::sample(s.v, g, s.domain, s.units);
}

// Rows skip wall nodes, whose samples carry no information.
std::pair<std::size_t, std::size_t> interior(const PotentialOnGrid& v) {
  return {v.left == Edge::wall ? 1 : 0, v.left == Edge::wall || v.right == Edge::wall ? v.size() - (v.right == Edge::wall ? 1 : 0)
                                                                                       : v.size()};
}

json grid_json(const Grid& g) { return {{"x_min", g.x_min()}, {"x_max", g.x_max()}, {"n_points", g.size()}, {"spacing", g.spacing()}}; }

std::string lambda_label(double l) {
  if (std::isinf(l)) return "lambda=inf";
  return "lambda=" + format_number(l);
}

// Superpotential for sources that only give V: W = -c psi0'/psi0 from the numeric ground state.
Superpotential numeric_w(const Source& s, const Grid& g, json& diag) {
  const auto bs = bound_states(PotentialOnGrid::sample(s.v, g, s.domain, s.units), 1);
  if (bs.states.empty()) throw NumericError("partner: the potential has no bound state on this grid");
  diag["ground_energy"] = bs.states[0].energy;
  diag["note"] = "W reconstructed from the numeric ground state; V1 = V - E0";
  return w_from_ground_state(bs.states[0].psi, s.units);
}

RunResult do_partner(const RunConfig& cfg) {
  RunResult res;
  const Source s = resolve(cfg);
  const Grid g = make_grid(cfg, s, cfg.levels, 2001);
  res.diagnostics["grid"] = grid_json(g);
  const Superpotential w = s.w ? *s.w : numeric_w(s, g, res.diagnostics);
  if (cfg.hierarchy >= 1) {
    const auto conv = HierarchyConvention::partner_of_zeroed;
    const PotentialOnGrid vs = s.entry ? hierarchy_potential(*s.entry, cfg.hierarchy, g, conv)
                                       : hierarchy_potential(w, cfg.hierarchy, g, conv);
    Table t{"hierarchy", {"x", "V" + std::to_string(cfg.hierarchy)}, {}};
    const auto [a, b] = interior(vs);
    for (std::size_t i = a; i < b; ++i) t.rows.push_back({g[i], vs.values[i]});
    res.tables.push_back(std::move(t));
    const auto bs = bound_states(vs, 1);
    if (!bs.states.empty()) res.diagnostics["ground_energy_numeric"] = bs.states[0].energy;
    res.diagnostics["convention"] = "partner of the previous member with its ground level shifted to zero";
    return res;
  }
  const auto pair = partner_potentials(w);
  const auto v1 = pair.sample_v1(g);
  const auto v2 = pair.sample_v2(g);
  Table t{"partner", {"x", "W", "V1", "V2"}, {}};
  const auto ws = w.sample(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::isfinite(ws[i])) t.rows.push_back({g[i], ws[i], v1.values[i], v2.values[i]});
  res.tables.push_back(std::move(t));
  try {
    const SusyStatus st = detect_breaking(w);
    res.diagnostics["susy"] = {{"broken", st.broken}, {"ground_state_side", to_string(st.ground_state_side)}, {"note", st.note}};
  } catch (const NumericError& e) {
    res.diagnostics["susy"] = {{"undetermined", e.what()}};
  }
  const auto e1 = bound_states(v1, cfg.levels).energies();
  const auto e2 = bound_states(v2, cfg.levels).energies();
  res.diagnostics["levels_v1"] = e1;
  res.diagnostics["levels_v2"] = e2;
  return res;
}

RunResult do_spectrum(const RunConfig& cfg) {
  RunResult res;
  const Source s = resolve(cfg);
  const Grid g = make_grid(cfg, s, cfg.levels, 2001);
  res.diagnostics["grid"] = grid_json(g);
  Table t{"spectrum", {"n", "energy"}, {}};
  const auto numeric = bound_states(sample_v(s, g), cfg.levels);
  if (s.entry) {
    const auto spec = sip_spectrum(*s.entry, cfg.levels - 1);
    for (std::size_t n = 0; n < spec.energies.size(); ++n) t.rows.push_back({static_cast<long long>(n), spec.energies[n]});
    double worst = 0.0;
    for (std::size_t n = 0; n < std::min(spec.energies.size(), numeric.states.size()); ++n)
      worst = std::max(worst, std::abs(spec.energies[n] - numeric.states[n].energy));
    res.diagnostics["source"] = "closed form (sum of remainders)";
    res.diagnostics["truncated"] = spec.truncated;
    res.diagnostics["numeric_max_deviation"] = worst;
  } else {
    for (std::size_t n = 0; n < numeric.states.size(); ++n)
      t.rows.push_back({static_cast<long long>(n), numeric.states[n].energy});
    res.diagnostics["source"] = "finite differences with Richardson extrapolation";
    res.diagnostics["truncated"] = numeric.truncated;
  }
  res.diagnostics["numeric"] = numeric.energies();
  auto warnings = numeric.warnings;
  if (res.diagnostics.contains("numeric_max_deviation") && res.diagnostics["numeric_max_deviation"].get<double>() > 1e-4)
    warnings.push_back("numeric cross-check deviates from the closed form; raise grid.n_points");
  res.diagnostics["warnings"] = warnings;
  res.tables.push_back(std::move(t));
  return res;
}

RunResult do_scatter(const RunConfig& cfg) {
  RunResult res;
  const Source s = resolve(cfg);
  if (s.domain.left_wall() || s.domain.right_wall())
    throw std::invalid_argument("scatter: the domain must be open on both sides");
  const std::size_t n = cfg.grid.n_points.value_or(8001);
  const Grid g(cfg.grid.x_min.value_or(-25.0), cfg.grid.x_max.value_or(25.0), n);
  res.diagnostics["grid"] = grid_json(g);
  const auto v = sample_v(s, g);
  const double c2 = s.units.kinetic();
  Table t{"scatter", {"k", "k_prime", "R_re", "R_im", "T_re", "T_im", "R2", "T2", "flux", "arg_T"}, {}};
  std::optional<int> steps;
  if (s.entry && !s.entry->model().confining) {
    for (int j = 1; j <= 30 && !steps; ++j) {
      try {
        sip_scatter_recursion(*s.entry, cfg.k.front(), j);
        steps = j;
      } catch (const std::invalid_argument&) {
      }
    }
    if (steps) t.columns.insert(t.columns.end(), {"R_chain_re", "R_chain_im", "T_chain_re", "T_chain_im"});
  }
  json partner = json::array(), skipped = json::array();
  for (double k : cfg.k) {
    const double e = v.values.front() + c2 * k * k;
    if (!(e > v.values.back())) {
      skipped.push_back(k);  // total reflection: no transmitted wave on the right
      continue;
    }
    const auto amp = numeric_rt(v, e);
    std::vector<Cell> row{k, amp.k_prime, amp.r.real(), amp.r.imag(), amp.t.real(), amp.t.imag(),
                          std::norm(amp.r), std::norm(amp.t), amp.flux(), std::arg(amp.t)};
    if (steps) {
      const auto rt = sip_scatter_recursion(*s.entry, k, *steps);
      row.insert(row.end(), {rt.r.real(), rt.r.imag(), rt.t.real(), rt.t.imag()});
    }
    t.rows.push_back(std::move(row));
    if (s.w && s.w->w_minus() && s.w->w_plus()) {
      const auto amp2 = numeric_rt(partner_potentials(*s.w).sample_v2(g), e);
      const auto mapped = partner_rt(amp2, *s.w);
      partner.push_back({{"k", k}, {"delta_r", std::abs(mapped.r - amp.r)}, {"delta_t", std::abs(mapped.t - amp.t)}});
    }
  }
  res.tables.push_back(std::move(t));
  res.diagnostics["partner_relation"] = partner;
  if (!skipped.empty()) {
    res.diagnostics["skipped_k"] = skipped;
    res.diagnostics["note"] = "k is the left wave number; energies below the right asymptote are totally reflected";
  }
  if (steps) res.diagnostics["chain_steps"] = *steps;
  return res;
}

RunResult do_isospectral(const RunConfig& cfg) {
  RunResult res;
  const Source s = resolve(cfg);
  const Grid g = make_grid(cfg, s, cfg.levels, 4001);
  res.diagnostics["grid"] = grid_json(g);
  const Superpotential w = s.w ? *s.w : numeric_w(s, g, res.diagnostics);
  const IsoFamily base = IsoFamily::make(w, g, 1.0);
  const auto v1 = partner_potentials(w).sample_v1(g);
  const auto base_levels = bound_states(v1, cfg.levels).energies();
  res.diagnostics["levels_base"] = base_levels;
  Table pots{"isospectral_potentials", {"x", "V1"}, {}};
  Table states{"isospectral_ground_states", {"x", "psi0"}, {}};
  std::vector<std::vector<double>> pcols, scols;
  json per_lambda = json::array();
  for (double l : cfg.lambda) {
    json d{{"lambda", std::isinf(l) ? json("inf") : json(l)}};
    if (std::isinf(l)) {
      pots.columns.push_back(lambda_label(l));
      pcols.push_back(v1.values);
      states.columns.push_back(lambda_label(l));
      scols.push_back(base.base_psi0().data());
      per_lambda.push_back(d);
      continue;
    }
    const IsoFamily fam = base.with_lambda(l);
    PotentialOnGrid vh = deformed_potential(base, l);
    if (l > 0.0 || l < -1.0) {
      const auto df = deformed_family(fam);
      states.columns.push_back(lambda_label(l));
      scols.push_back(df.psi0_hat.data());
    }
    pots.columns.push_back(lambda_label(l));
    pcols.push_back(vh.values);
    const auto lv = bound_states(vh, cfg.levels).energies();
    d["levels"] = lv;
    try {
      const Charges q = conserved_charges(fam);
      d["q1"] = q.q1;
      d["q2"] = q.q2;
    } catch (const std::invalid_argument& e) {
      d["charges"] = e.what();
    }
    per_lambda.push_back(d);
  }
  const auto [a, b] = interior(v1);
  for (std::size_t i = a; i < b; ++i) {
    std::vector<Cell> row{g[i], v1.values[i]};
    for (const auto& c : pcols) row.push_back(c[i]);
    pots.rows.push_back(std::move(row));
    std::vector<Cell> srow{g[i], base.base_psi0()[i]};
    for (const auto& c : scols) srow.push_back(c[i]);
    states.rows.push_back(std::move(srow));
  }
  res.tables.push_back(std::move(pots));
  res.tables.push_back(std::move(states));
  res.diagnostics["deformations"] = per_lambda;
  return res;
}

RunResult do_swkb(const RunConfig& cfg) {
  RunResult res;
  auto audit_table = [](const std::vector<AuditRow>& rows) {
    Table t{"swkb_audit", {"entry", "n", "exact", "swkb", "swkb_rel_error", "wkb", "wkb_rel_error", "note"}, {}};
    for (const auto& r : rows)
      t.rows.push_back({r.entry, static_cast<long long>(r.n), r.exact, r.swkb, r.swkb_error,
                        r.wkb ? Cell(*r.wkb) : Cell(std::string()), r.wkb_error ? Cell(*r.wkb_error) : Cell(std::string()),
                        r.note});
    return t;
  };
  if (std::holds_alternative<std::monostate>(cfg.potential)) {
    std::vector<SipEntry> all;
    for (const SipModel& m : sip_catalog()) all.push_back(sip_lookup(m.name));
    res.tables.push_back(audit_table(exactness_audit(all, cfg.n_max)));
    return res;
  }
  const Source s = resolve(cfg);
  if (s.entry) {
    res.tables.push_back(audit_table(exactness_audit({*s.entry}, cfg.n_max)));
    return res;
  }
  const Grid g = make_grid(cfg, s, cfg.n_max + 1, 4001);
  res.diagnostics["grid"] = grid_json(g);
  const auto numeric = bound_states(sample_v(s, g), cfg.n_max + 1);
  std::optional<QuantizationProblem> q;
  if (s.w)
    q = QuantizationProblem::swkb(*s.w);
  else
    q = QuantizationProblem::wkb(s.v, s.domain, s.units);
  Table t{"swkb", {"n", s.w ? "swkb" : "wkb", "numeric", "difference"}, {}};
  for (int n = 0; n <= cfg.n_max && n < static_cast<int>(numeric.states.size()); ++n) {
    const double e = quantize(*q, n);
    const double en = numeric.states[static_cast<std::size_t>(n)].energy;
    t.rows.push_back({static_cast<long long>(n), e, en, e - en});
  }
  res.tables.push_back(std::move(t));
  return res;
}

Table edges_table(const std::string& name, const std::vector<BandEdge>& edges, const std::vector<BandEdge>* analytic,
                  double shift = 0.0) {
  Table t{name, {"index", "energy", "period_tag", "nodes_per_L", "boundary", "analytic"}, {}};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Cell an = std::string();
    if (analytic && i < analytic->size()) an = (*analytic)[i].energy - shift;
    t.rows.push_back({static_cast<long long>(i), edges[i].energy, to_string(edges[i].period_tag),
                      static_cast<long long>(edges[i].nodes_per_L), to_string(edges[i].which), an});
  }
  return t;
}

RunResult do_bands(const RunConfig& cfg) {
  RunResult res;
  if (cfg.lame) {
    const LameSpec spec{cfg.lame->a, cfg.lame->m};
    spec.validate();
    const std::size_t n = cfg.grid.n_points.value_or(801);
    const auto edges = lame_numeric_band_edges(spec, n);
    std::optional<std::vector<BandEdge>> analytic;
    if (spec.a <= 2) analytic = lame_band_edges(spec);
    res.tables.push_back(edges_table("band_edges", edges, analytic ? &*analytic : nullptr));
    res.diagnostics["period"] = spec.period();
    res.diagnostics["grid"] = grid_json(Grid(0.0, spec.period(), n));
    res.diagnostics["oscillation_pattern"] = follows_oscillation_pattern(edges);
    if (!analytic) res.diagnostics["note"] = "closed-form edges are not available for a >= 3; numeric only";
    const auto disp = dispersion(lame_potential(spec, n), spec.a + 1);
    Table d{"dispersion", {"kL"}, {}};
    for (int b = 0; b <= spec.a; ++b) d.columns.push_back("E" + std::to_string(b + 1));
    for (const auto& sm : disp) {
      std::vector<Cell> row{sm.kL};
      for (double e : sm.energies) row.push_back(e);
      d.rows.push_back(std::move(row));
    }
    res.tables.push_back(std::move(d));
    if (cfg.partner) {
      if (spec.a > 2) throw std::invalid_argument("bands: partner potentials are available for a = 1, 2");
      const LamePartner p = lame_partner(spec, n);
      auto pe = numeric_band_edges(p.v2, 2 * spec.a + 1);
      pe.back().which = BandBoundary::continuum_bottom;
      res.tables.push_back(edges_table("partner_band_edges", pe, &*analytic, p.shift));
      const ShiftScan scan = shift_scan(p.v1, p.v2);
      res.diagnostics["partner"] = {{"shift", p.shift},
                                    {"classification", to_string(self_isospectral_classify(p.w))},
                                    {"shift_scan_related", scan.related},
                                    {"shift_scan_best_deviation", scan.best_deviation},
                                    {"oscillation_pattern", follows_oscillation_pattern(pe)}};
    }
    return res;
  }
  const Source s = resolve(cfg);
  const double L = *cfg.period;
  const std::size_t n = cfg.grid.n_points.value_or(801);
  const Grid g(cfg.grid.x_min.value_or(0.0), cfg.grid.x_min.value_or(0.0) + L, n);
  const auto v = PotentialOnGrid::sample(s.v, g, Edge::open, Edge::open, s.units);
  double vscale = 1.0;
  for (double t : v.values) vscale = std::max(vscale, std::abs(t));
  for (int i = 0; i < 256; ++i) {
    const double x = g.x_min() + L * i / 256.0;
    if (std::abs(s.v(x + L) - s.v(x)) > 1e-8 * vscale)
      throw ConfigError("options.period", "the potential does not repeat with period " + format_number(L));
  }
  const auto edges = numeric_band_edges(v, cfg.levels);
  res.tables.push_back(edges_table("band_edges", edges, nullptr));
  res.diagnostics["grid"] = grid_json(g);
  res.diagnostics["oscillation_pattern"] = follows_oscillation_pattern(edges);
  if (s.w) {
    const auto& def = s.w->definition();
    const auto pw = PeriodicSuperpotential::make(def.w, L, def.dw, s.units);
    res.diagnostics["phi_L"] = pw.phi_L;
    res.diagnostics["zero_mode"] = to_string(zero_mode_check(pw));
    if (zero_mode_check(pw) == ZeroMode::unbroken) res.diagnostics["classification"] = to_string(self_isospectral_classify(pw));
  }
  return res;
}

RunResult do_check(std::ostream* progress) {
  RunResult res;
  Table t{"check", {"id", "status", "description", "detail"}, {}};
  for (const auto& r : run_acceptance(progress)) {
    t.rows.push_back({r.id, std::string(r.passed ? "PASS" : "FAIL"), r.description, r.detail});
    res.failed = res.failed || !r.passed;
  }
  res.tables.push_back(std::move(t));
  return res;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

json to_json(const Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
    rows.push_back(std::move(r));
  }
  return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

json envelope(const RunConfig& cfg, const RunResult& result) {
  json outputs = json::object();
  for (const auto& t : result.tables) outputs[t.name] = to_json(t);
  return {{"tool", "susykit"},
          {"version", SUSYKIT_VERSION},
          {"subcommand", to_string(cfg.subcommand)},
          {"config", cfg.source},
          {"outputs", std::move(outputs)},
          {"diagnostics", result.diagnostics}};
}

RunResult execute(const RunConfig& cfg, std::ostream* progress) {
  switch (cfg.subcommand) {
    case Subcommand::partner: return do_partner(cfg);
    case Subcommand::spectrum: return do_spectrum(cfg);
    case Subcommand::scatter: return do_scatter(cfg);
    case Subcommand::isospectral: return do_isospectral(cfg);
    case Subcommand::swkb: return do_swkb(cfg);
    case Subcommand::bands: return do_bands(cfg);
    case Subcommand::check: return do_check(progress);
  }
  throw ConfigError("subcommand", "unhandled");
}

std::vector<Figure> figure_data() {
  std::vector<Figure> figs;
  {
    const SipEntry e = sip_lookup(SipName::scarf_ii, {{"A", 3.0}, {"B", 0.0}});
    const auto s1 = sip_spectrum(e, 5).energies;
    const SipEntry e2 = e.next();
    const auto s2 = sip_spectrum(e2, 5).energies;
    Table t{"levels", {"n", "E_V1", "E_V2"}, {}};
    for (std::size_t n = 0; n < s1.size(); ++n) {
      Cell c2 = std::string();
      if (n < s2.size()) c2 = s2[n] + e.remainder();
      t.rows.push_back({static_cast<long long>(n), s1[n], c2});
    }
    figs.push_back({1, "figure1_partner_levels.csv",
                    "Levels of V1 = 9 - 12 sech^2 x and its partner: degenerate except the zero level of V1", std::move(t)});
  }
  {
    const double pi = std::numbers::pi;
    const Grid g(0.0, pi, 403);
    const SipEntry well = sip_lookup(SipName::rosen_morse_i, {{"A", 1.0}, {"B", 0.0}, {"alpha", 1.0}});
    const SipEntry partner = sip_lookup(SipName::rosen_morse_i, {{"A", 2.0}, {"B", 0.0}, {"alpha", 1.0}});
    const auto w0 = sip_eigenfunction(well, 0, g), w1 = sip_eigenfunction(well, 1, g);
    const auto p0 = sip_eigenfunction(partner, 0, g), p1 = sip_eigenfunction(partner, 1, g);
    Table t{"well", {"x", "V_well", "V_partner", "psi0_well", "psi1_well", "psi0_partner", "psi1_partner"}, {}};
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
      const double s = std::sin(g[i]);
      t.rows.push_back({g[i], 0.0, 2.0 / (s * s), w0[i], w1[i], p0[i], p1[i]});
    }
    figs.push_back({2, "figure2_square_well.csv", "Square well V = 0 on (0, pi) and its partner 2 cosec^2 x", std::move(t)});
  }
  {
    const SipEntry osc = sip_lookup(SipName::shifted_oscillator, {{"omega", 2.0}});
    const Grid g(-10.0, 10.0, 4001);
    const IsoFamily base = IsoFamily::make(osc.superpotential(), g, 1.0);
    const std::vector<double> lambdas{0.0, 0.5, 1.0, 5.0, kInf};
    Table pots{"deformed_oscillator", {"x"}, {}}, gs{"deformed_ground_states", {"x"}, {}};
    std::vector<std::vector<double>> pc, sc;
    const auto v1 = partner_potentials(osc.superpotential()).sample_v1(g);
    for (double l : lambdas) {
      pots.columns.push_back(lambda_label(l));
      if (std::isinf(l)) {
        pc.push_back(v1.values);
        gs.columns.push_back(lambda_label(l));
        sc.push_back(base.base_psi0().data());
        continue;
      }
      pc.push_back(deformed_potential(base, l).values);
      if (l > 0.0) {
        gs.columns.push_back(lambda_label(l));
        sc.push_back(deformed_family(base.with_lambda(l)).psi0_hat.data());
      }
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(g[i]) > 5.0 + 1e-12) continue;
      std::vector<Cell> r{g[i]}, q{g[i]};
      for (const auto& c : pc) r.push_back(c[i]);
      for (const auto& c : sc) q.push_back(c[i]);
      pots.rows.push_back(std::move(r));
      gs.rows.push_back(std::move(q));
    }
    figs.push_back({3, "figure3_isospectral_potentials.csv",
                    "Potentials isospectral to the oscillator with omega = 2; lambda = 0 is the Pursey potential",
                    std::move(pots)});
    figs.push_back({4, "figure4_isospectral_ground_states.csv", "Ground states of the same family without the Pursey member",
                    std::move(gs)});
  }
  return figs;
}

std::vector<std::filesystem::path> emit_plot_data(const std::vector<Figure>& figures, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  json manifest = json::array();
  for (const auto& f : figures) {
    const auto path = dir / f.file;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(out, f.table);
    written.push_back(path);
    manifest.push_back({{"figure", f.number}, {"file", f.file}, {"caption", f.caption}, {"columns", f.table.columns}});
  }
  const auto mpath = dir / "manifest.json";
  std::ofstream(mpath) << json{{"figures", manifest}}.dump(2) << '\n';
  written.push_back(mpath);
  return written;
}

std::string output_directory(const RunConfig& cfg) {
  if (!cfg.output_path.empty()) return cfg.output_path;
  if (const char* env = std::getenv("SUSYKIT_OUTPUT_DIR"); env && *env) return env;
  return {};
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string name = to_string(cfg.subcommand);
  RunResult res;
  try {
    res = execute(cfg, cfg.subcommand == Subcommand::check ? &err : nullptr);
  } catch (const ConfigError& e) {
    err << "susykit " << name << ": config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "susykit " << name << ": numeric failure in " << name << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "susykit " << name << ": invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "susykit " << name << ": invalid input: " << e.what() << '\n';
    return kExitConfig;
  }
  const std::string dir = output_directory(cfg);
  try {
    if (!dir.empty()) {
      std::filesystem::create_directories(dir);
      for (const auto& t : res.tables) {
        std::ofstream f(std::filesystem::path(dir) / (t.name + ".csv"));
        write_csv(f, t);
      }
      std::ofstream(std::filesystem::path(dir) / "result.json") << envelope(cfg, res).dump(2) << '\n';
    }
    if (cfg.format == OutputFormat::json)
      out << envelope(cfg, res).dump(2) << '\n';
    else if (dir.empty() && !res.tables.empty())
      write_csv(out, res.tables.front());
    if (cfg.plots) {
      const auto files = emit_plot_data(figure_data(), dir.empty() ? std::filesystem::path("plots") : std::filesystem::path(dir) / "plots");
      for (const auto& f : files) err << "wrote " << f.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "susykit " << name << ": cannot write output: " << e.what() << '\n';
    return kExitNumeric;
  }
  return res.failed ? kExitNumeric : kExitOk;
}

}  // namespace susy::cli
