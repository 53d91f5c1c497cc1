// Command-line front end.  Every subcommand assembles a Report (inputs
// echoed, effective grids, full trails, verdicts) and renders it as a
// human table, one JSON document (--json), or CSV trail blocks (--csv).
// Machine formats print numbers with 17 significant digits.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailaux/auxiliary.hpp"
#include "tailaux/distributions.hpp"
#include "tailaux/estimation.hpp"
#include "tailaux/expr.hpp"
#include "tailaux/numerics.hpp"
#include "tailaux/probes.hpp"
#include "tailaux/validity.hpp"

using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "tailaux 1.0.0";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonOpts {
  bool json_out = false;
  bool csv_out = false;
  double tol = 1e-2;
  std::optional<double> grid_start;
  std::optional<double> grid_ratio;
  std::optional<int> grid_count;
};

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_flag("--json", o.json_out, "emit the whole report as one JSON document");
  cmd->add_flag("--csv", o.csv_out, "emit trails as CSV blocks with header x,value");
}

void add_grid_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--tol", o.tol, "verdict tolerance (default 1e-2)");
  cmd->add_option("--grid-start", o.grid_start, "first probe point");
  cmd->add_option("--grid-ratio", o.grid_ratio, "probe grid growth (or shrink) ratio");
  cmd->add_option("--grid-count", o.grid_count, "number of probe points");
}

tailaux::GridOptions to_grid_options(const CommonOpts& o) {
  tailaux::GridOptions g;
  g.start = o.grid_start;
  g.ratio = o.grid_ratio;
  g.count = o.grid_count;
  return g;
}

struct Report {
  std::string command;
  ordered_json inputs = ordered_json::object();
  std::vector<std::pair<std::string, std::string>> grids;
  std::vector<std::pair<std::string, tailaux::Trail>> trails;
  std::vector<std::pair<std::string, std::string>> verdicts;
  ordered_json values = ordered_json::object();
  std::vector<std::string> notes;
};

ordered_json to_json(const Report& r) {
  ordered_json doc;
  doc["tool_version"] = kToolVersion;
  doc["command"] = r.command;
  doc["inputs"] = r.inputs;
  ordered_json grids = ordered_json::object();
  for (const auto& [k, v] : r.grids) grids[k] = v;
  doc["grids"] = grids;
  doc["values"] = r.values;
  ordered_json verdicts = ordered_json::object();
  for (const auto& [k, v] : r.verdicts) verdicts[k] = v;
  doc["verdicts"] = verdicts;
  ordered_json trails = ordered_json::object();
  for (const auto& [k, t] : r.trails) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < t.x.size(); ++i)
      rows.push_back(ordered_json::array({t.x[i], t.value[i]}));
    trails[k] = std::move(rows);
  }
  doc["trails"] = trails;
  if (!r.notes.empty()) doc["notes"] = r.notes;
  return doc;
}

void print_human(const Report& r) {
  std::printf("%s\n", kToolVersion);
  std::printf("command: %s\n", r.command.c_str());
  for (const auto& [k, v] : r.inputs.items())
    std::printf("input %s = %s\n", k.c_str(),
                v.is_string() ? v.get<std::string>().c_str() : v.dump().c_str());
  for (const auto& [k, v] : r.grids) std::printf("grid %s: %s\n", k.c_str(), v.c_str());
  for (const auto& [k, v] : r.values.items())
    std::printf("%s = %s\n", k.c_str(), v.dump().c_str());
  // Verdicts never travel without their trails.
  for (const auto& [k, t] : r.trails) {
    std::printf("trail %s (%zu points):\n", k.c_str(), t.x.size());
    for (std::size_t i = 0; i < t.x.size(); ++i)
      std::printf("  %-26s%s\n", num(t.x[i]).c_str(), num(t.value[i]).c_str());
  }
  for (const auto& [k, v] : r.verdicts) std::printf("verdict %s: %s\n", k.c_str(), v.c_str());
  for (const auto& n : r.notes) std::printf("note: %s\n", n.c_str());
}

void print_csv(const Report& r) {
  for (const auto& [k, t] : r.trails) {
    std::printf("# trail %s\n", k.c_str());
    std::printf("x,value\n");
    for (std::size_t i = 0; i < t.x.size(); ++i)
      std::printf("%s,%s\n", num(t.x[i]).c_str(), num(t.value[i]).c_str());
  }
}

void emit(const Report& r, const CommonOpts& o) {
  if (o.json_out)
    std::printf("%s\n", to_json(r).dump(2).c_str());
  else if (o.csv_out)
    print_csv(r);
  else
    print_human(r);
}

std::map<std::string, double> parse_bindings(const std::string& text) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--psi-params expects k=v,k=v, got '" + item + "'");
    char* end = nullptr;
    std::string val = item.substr(eq + 1);
    double v = std::strtod(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0')
      throw std::invalid_argument("--psi-params value '" + val + "' is not a number");
    out[item.substr(0, eq)] = v;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

tailaux::AuxiliaryFunction reference_psi_u(const tailaux::DistributionSpec& spec,
                                           const std::string& route) {
  using namespace tailaux;
  if (route == "catalog") {
    try {
      return psi_catalog(spec, CatalogPsi::Universal);
    } catch (const std::invalid_argument&) {
      return psi_integral_universal(spec);  // spec without a catalog entry
    }
  }
  if (route == "integral") return psi_integral_universal(spec);
  if (route == "hazard") return psi_reciprocal_hazard(spec);
  if (route == "zeta") return psi_from_zeta(spec);
  throw std::invalid_argument("unknown route '" + route + "'");
}

// --psi accepts the named constructions or an expression in x; free
// names in an expression bind to the distribution parameters first,
// then to --psi-params.
tailaux::AuxiliaryFunction resolve_candidate(const tailaux::DistributionSpec& spec,
                                             const std::string& text,
                                             const std::map<std::string, double>& extra,
                                             std::optional<double> x_star,
                                             double fallback_x_star) {
  using namespace tailaux;
  if (text == "psi_u") return psi_catalog(spec, CatalogPsi::Universal);
  if (text == "catalog_vr") return psi_catalog(spec, CatalogPsi::VrSimple);
  if (text == "mean_excess") return psi_classic(spec, ClassicForm::MeanExcess);
  if (text == "double_mean_excess") return psi_classic(spec, ClassicForm::DoubleMeanExcess);
  if (text == "linear_gamma") return psi_classic(spec, ClassicForm::LinearGamma);
  PsiExpression expr = parse_psi(text);
  std::map<std::string, double> bindings(spec.params.begin(), spec.params.end());
  bindings["gamma"] = spec.gamma;
  if (std::isfinite(spec.x_e)) bindings["x_e"] = spec.x_e;
  for (const auto& [k, v] : extra) bindings[k] = v;
  return to_auxiliary(expr, bindings, x_star.value_or(fallback_x_star));
}

void echo_common(Report& r, const CommonOpts& o) {
  r.inputs["tol"] = o.tol;
  if (o.grid_start) r.inputs["grid_start"] = *o.grid_start;
  if (o.grid_ratio) r.inputs["grid_ratio"] = *o.grid_ratio;
  if (o.grid_count) r.inputs["grid_count"] = *o.grid_count;
}

// ---------------------------------------------------------------- list

int cmd_list(const CommonOpts& o) {
  auto rows = tailaux::catalog_table();
  if (o.json_out) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
      arr.push_back({{"id", r.id},
                     {"params", r.params},
                     {"gamma", r.gamma},
                     {"x_e", r.x_e},
                     {"psi_u", r.psi_u},
                     {"psi", r.psi_vr}});
    ordered_json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "list";
    doc["catalog"] = arr;
    std::printf("%s\n", doc.dump(2).c_str());
  } else if (o.csv_out) {
    std::printf("id,params,gamma,x_e,psi_u,psi\n");
    for (const auto& r : rows)
      std::printf("%s,\"%s\",%.17g,%s,\"%s\",\"%s\"\n", r.id.c_str(), r.params.c_str(), r.gamma,
                  r.x_e.c_str(), r.psi_u.c_str(), r.psi_vr.c_str());
  } else {
    for (const auto& r : rows)
      std::printf("%-20s params=%-28s gamma=%-10g x_e=%-10s psi_u=%-32s psi=%s\n", r.id.c_str(),
                  r.params.c_str(), r.gamma, r.x_e.c_str(), r.psi_u.c_str(), r.psi_vr.c_str());
  }
  return 0;
}

// ------------------------------------------------------------ validate

struct ValidateOpts {
  std::string dist;
  std::string psi;
  std::string psi_params;
  std::string route = "catalog";
  std::optional<double> z;
  std::optional<double> x_star;
  CommonOpts common;
};

int cmd_validate(const ValidateOpts& vo) {
  using namespace tailaux;
  DistributionSpec spec = parse_distribution(vo.dist);
  AuxiliaryFunction ref = reference_psi_u(spec, vo.route);
  AuxiliaryFunction psi = resolve_candidate(spec, vo.psi, parse_bindings(vo.psi_params),
                                            vo.x_star, ref.x_star);
  double floor_x = std::max(psi.x_star, ref.x_star);
  ProbeGrid grid = default_grid(spec, floor_x, to_grid_options(vo.common));
  double tol = vo.common.tol;

  PGammaResult pg = check_property_p_gamma(psi, spec.gamma, grid, tol);
  VrResult vr = check_vr_validity(psi, ref, grid, tol);
  double z = vo.z.value_or(grid.points.front());
  VmrResult vmr = check_vmr_validity(psi, ref, z, grid, pg.verdict, tol);
  ValidityReport rep = make_validity_report(vo.dist, vo.psi, std::move(pg), std::move(vr),
                                            std::move(vmr));

  Report r;
  r.command = "validate";
  r.inputs["dist"] = vo.dist;
  r.inputs["psi"] = vo.psi;
  r.inputs["route"] = vo.route;
  r.inputs["z"] = z;
  r.inputs["x_star"] = vo.x_star ? *vo.x_star : psi.x_star;
  echo_common(r, vo.common);
  r.grids.emplace_back("probe", grid.rule);
  r.values["gamma"] = spec.gamma;
  r.values["psi_u"] = ref.source_expr.empty() ? to_string(ref.kind) : ref.source_expr;
  if (rep.k_z) r.values["k_z"] = *rep.k_z;
  r.values["exit_code"] = rep.exit_code;
  r.trails.emplace_back("p_gamma", rep.p_gamma.trail);
  r.trails.emplace_back("vr_ratio", rep.vr.ratio_trail);
  r.trails.emplace_back("k", rep.vmr.k_trail);
  r.verdicts.emplace_back("p_gamma", to_string(rep.p_gamma.verdict));
  r.verdicts.emplace_back("vr", to_string(rep.vr.verdict));
  r.verdicts.emplace_back("vmr", to_string(rep.vmr.verdict));
  r.verdicts.emplace_back("classification", rep.classification);
  if (!rep.p_gamma.detail.empty()) r.notes.push_back("p_gamma: " + rep.p_gamma.detail);
  if (!rep.vr.detail.empty()) r.notes.push_back("vr: " + rep.vr.detail);
  if (!rep.vmr.detail.empty()) r.notes.push_back("vmr: " + rep.vmr.detail);
  if (rep.downgraded) r.notes.push_back("subset law enforcement downgraded the vMR verdict");
  if (!psi.note.empty()) r.notes.push_back("psi: " + psi.note);
  emit(r, vo.common);
  return rep.exit_code;
}

// ------------------------------------------------------------ psi-eval

struct PsiEvalOpts {
  std::string dist;
  std::string psi;
  std::string psi_params;
  std::optional<double> x_star;
  CommonOpts common;
};

int cmd_psi_eval(const PsiEvalOpts& po) {
  using namespace tailaux;
  DistributionSpec spec = parse_distribution(po.dist);
  std::vector<std::pair<std::string, AuxiliaryFunction>> routes;
  std::vector<std::string> notes;
  for (const char* route : {"catalog", "integral", "hazard", "zeta"}) {
    try {
      routes.emplace_back(route, reference_psi_u(spec, route));
    } catch (const std::exception& e) {
      notes.push_back(std::string(route) + " route unavailable: " + e.what());
    }
  }
  double floor_x = -kInf;
  for (const auto& [name, f] : routes) floor_x = std::max(floor_x, f.x_star);
  if (!po.psi.empty()) {
    routes.emplace_back("candidate",
                        resolve_candidate(spec, po.psi, parse_bindings(po.psi_params), po.x_star,
                                          floor_x));
    floor_x = std::max(floor_x, routes.back().second.x_star);
  }
  ProbeGrid grid = default_grid(spec, floor_x, to_grid_options(po.common));

  if (po.common.json_out) {
    Report r;
    r.command = "psi-eval";
    r.inputs["dist"] = po.dist;
    if (!po.psi.empty()) r.inputs["psi"] = po.psi;
    echo_common(r, po.common);
    r.grids.emplace_back("probe", grid.rule);
    for (const auto& [name, f] : routes) r.trails.emplace_back(name, sweep(f, grid));
    r.notes = notes;
    emit(r, po.common);
    return 0;
  }
  // Wide table; the CSV and human shapes coincide here.
  std::printf("x");
  for (const auto& [name, f] : routes) std::printf(",%s", name.c_str());
  std::printf("\n");
  std::vector<Trail> cols;
  for (const auto& [name, f] : routes) cols.push_back(sweep(f, grid));
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    std::printf("%s", num(grid.points[i]).c_str());
    for (const auto& t : cols) std::printf(",%s", num(t.value[i]).c_str());
    std::printf("\n");
  }
  for (const auto& n : notes) std::fprintf(stderr, "note: %s\n", n.c_str());
  return 0;
}

// ------------------------------------------------------------ vr-limit

struct VrLimitOpts {
  std::string dist;
  std::string psi = "psi_u";
  std::string psi_params;
  double z = 1.0;
  std::optional<double> x;
  std::optional<double> x_star;
  CommonOpts common;
};

int cmd_vr_limit(const VrLimitOpts& vo) {
  using namespace tailaux;
  DistributionSpec spec = parse_distribution(vo.dist);
  AuxiliaryFunction psi = resolve_candidate(spec, vo.psi, parse_bindings(vo.psi_params),
                                            vo.x_star, -kInf);
  ProbeGrid grid = default_grid(spec, psi.x_star, to_grid_options(vo.common));
  VrProbeResult pr = vr_limit_probe(spec, psi, vo.z, grid, vo.common.tol);

  Report r;
  r.command = "vr-limit";
  r.inputs["dist"] = vo.dist;
  r.inputs["psi"] = vo.psi;
  r.inputs["z"] = vo.z;
  echo_common(r, vo.common);
  r.grids.emplace_back("probe", grid.rule);
  r.values["gpd_tail_target"] = pr.target;
  if (pr.est.limit) r.values["limit"] = *pr.est.limit;
  r.values["matches_target"] = pr.matches_target;
  if (vo.x) {
    r.inputs["x"] = *vo.x;
    r.values["pot_excess_probability"] = pot_excess_probability(spec, psi, *vo.x, vo.z);
  }
  r.trails.emplace_back("vr_ratio", pr.trail);
  r.verdicts.emplace_back("trend", to_string(pr.est.verdict));
  if (!pr.detail.empty()) r.notes.push_back(pr.detail);
  emit(r, vo.common);
  return 0;
}

// ------------------------------------------------------- reconstruct-c

struct ReconstructOpts {
  std::string dist;
  std::string psi = "psi_u";
  std::string psi_params;
  std::optional<double> x_star;
  CommonOpts common;
};

int cmd_reconstruct_c(const ReconstructOpts& ro) {
  using namespace tailaux;
  DistributionSpec spec = parse_distribution(ro.dist);
  AuxiliaryFunction psi = resolve_candidate(spec, ro.psi, parse_bindings(ro.psi_params),
                                            ro.x_star, -kInf);
  ProbeGrid grid = default_grid(spec, psi.x_star, to_grid_options(ro.common));
  double x_star = ro.x_star.value_or(grid.points.front());
  CReconstruction cr = reconstruct_c(spec, psi, x_star, grid, ro.common.tol);

  Report r;
  r.command = "reconstruct-c";
  r.inputs["dist"] = ro.dist;
  r.inputs["psi"] = ro.psi;
  echo_common(r, ro.common);
  r.grids.emplace_back("probe", grid.rule);
  r.values["x_star"] = cr.x_star;
  if (cr.c_limit) r.values["c_limit"] = *cr.c_limit;
  r.trails.emplace_back("ln_c", cr.lnc_trail);
  r.trails.emplace_back("c", cr.c_trail);
  r.verdicts.emplace_back("c_trend", to_string(cr.verdict));
  if (!cr.detail.empty()) r.notes.push_back(cr.detail);
  emit(r, ro.common);
  return 0;
}

// ------------------------------------------------------------ von-mises

struct VonMisesOpts {
  std::string dist;
  CommonOpts common;
};

int cmd_von_mises(const VonMisesOpts& mo) {
  using namespace tailaux;
  DistributionSpec spec = parse_distribution(mo.dist);
  ProbeGrid grid = default_grid(spec, -kInf, to_grid_options(mo.common));
  VonMisesResult vm = check_von_mises_condition(spec, grid, mo.common.tol);

  Report r;
  r.command = "von-mises";
  r.inputs["dist"] = mo.dist;
  echo_common(r, mo.common);
  r.grids.emplace_back("probe", grid.rule);
  if (vm.est.limit) r.values["limit"] = *vm.est.limit;
  r.trails.emplace_back("von_mises_ratio", vm.trail);
  r.verdicts.emplace_back("von_mises_condition", to_string(vm.verdict));
  if (!vm.detail.empty()) r.notes.push_back(vm.detail);
  emit(r, mo.common);
  return 0;
}

// ------------------------------------------------------------- estimate

struct EstimateOpts {
  std::string dist;
  std::size_t n = 100000;
  std::uint64_t seed = 42;
  std::string samples_in;
  std::string samples_out;
  CommonOpts common;
};

int cmd_estimate(const EstimateOpts& eo) {
  using namespace tailaux;
  SampleSet s;
  if (!eo.samples_in.empty()) {
    s = read_samples(eo.samples_in, eo.dist.empty() ? "imported" : eo.dist);
  } else {
    if (eo.dist.empty()) throw std::invalid_argument("estimate needs --dist or --samples-in");
    s = sample(parse_distribution(eo.dist), eo.n, eo.seed);
  }
  if (!eo.samples_out.empty()) write_samples(eo.samples_out, s);

  std::vector<double> thresholds;
  const CommonOpts& o = eo.common;
  if (o.grid_start) {
    // Explicit geometric threshold grid when requested.
    double u = *o.grid_start;
    double ratio = o.grid_ratio.value_or(1.2);
    int m = o.grid_count.value_or(8);
    for (int i = 0; i < m; ++i, u *= ratio) thresholds.push_back(u);
  } else {
    thresholds = default_threshold_grid(s, o.grid_count.value_or(8));
  }
  FitResult fit = fit_power_psi(s, thresholds);

  Report r;
  r.command = "estimate";
  if (!eo.dist.empty()) r.inputs["dist"] = eo.dist;
  if (!eo.samples_in.empty()) r.inputs["samples_in"] = eo.samples_in;
  if (!eo.samples_out.empty()) r.inputs["samples_out"] = eo.samples_out;
  r.inputs["n"] = s.n;
  r.inputs["seed"] = s.seed;
  echo_common(r, eo.common);
  ordered_json tg = ordered_json::array();
  for (double u : fit.threshold_grid) tg.push_back(u);
  r.values["threshold_grid"] = tg;
  r.values["beta_hat"] = fit.beta_hat;
  r.values["c_hat"] = fit.c_hat;
  r.values["residual_rms"] = fit.residual_rms;
  Trail loglog;
  for (const auto& [lx, ly] : fit.log_log_points) {
    loglog.x.push_back(lx);
    loglog.value.push_back(ly);
  }
  r.trails.emplace_back("log_mean_excess_vs_log_u", loglog);
  for (const auto& w : fit.warnings) r.notes.push_back(w);
  emit(r, eo.common);
  return 0;
}

// --------------------------------------------------------------- gamma

struct GammaOpts {
  std::string dist;
  std::string psi = "psi_u";
  std::string psi_params;
  std::optional<double> x_star;
  CommonOpts common;
};

int cmd_gamma(const GammaOpts& go) {
  using namespace tailaux;
  DistributionSpec spec = parse_distribution(go.dist);
  AuxiliaryFunction psi = resolve_candidate(spec, go.psi, parse_bindings(go.psi_params),
                                            go.x_star, -kInf);
  ProbeGrid grid = default_grid(spec, psi.x_star, to_grid_options(go.common));
  GammaEstimate ge = estimate_gamma_from_psi(psi, spec.x_e, grid, go.common.tol);

  Report r;
  r.command = "gamma";
  r.inputs["dist"] = go.dist;
  r.inputs["psi"] = go.psi;
  echo_common(r, go.common);
  r.grids.emplace_back("probe", grid.rule);
  r.values["gamma_true"] = spec.gamma;
  if (ge.value) r.values["gamma_hat"] = *ge.value;
  r.trails.emplace_back("gamma_ratio", ge.trail);
  r.verdicts.emplace_back("trend", to_string(ge.est.verdict));
  if (!ge.est.detail.empty()) r.notes.push_back(ge.est.detail);
  emit(r, go.common);
  return 0;
}

// -------------------------------------------------------------- corpus

int cmd_corpus(const CommonOpts& o) {
  using namespace tailaux;
  CorpusResult corpus = run_corpus_sweep(o.tol);
  if (o.json_out) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : corpus.entries)
      entries.push_back({{"dist", e.dist},
                         {"psi", e.psi},
                         {"classification", e.report.classification},
                         {"exit_code", e.report.exit_code},
                         {"k_z", e.report.k_z ? ordered_json(*e.report.k_z) : ordered_json()}});
    ordered_json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "corpus";
    doc["inputs"] = {{"tol", o.tol}};
    doc["subset_violations"] = corpus.subset_violations;
    doc["downgrades"] = corpus.downgrades;
    doc["entries"] = entries;
    std::printf("%s\n", doc.dump(2).c_str());
  } else if (o.csv_out) {
    std::printf("dist,psi,classification,exit_code\n");
    for (const auto& e : corpus.entries)
      std::printf("%s,\"%s\",%s,%d\n", e.dist.c_str(), e.psi.c_str(),
                  e.report.classification.c_str(), e.report.exit_code);
  } else {
    for (const auto& e : corpus.entries)
      std::printf("%-20s %-30s %s\n", e.dist.c_str(), e.psi.c_str(),
                  e.report.classification.c_str());
    std::printf("entries=%zu subset_violations=%d downgrades=%d\n", corpus.entries.size(),
                corpus.subset_violations, corpus.downgrades);
  }
  return (corpus.subset_violations == 0 && corpus.downgrades == 0) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"auxiliary-function workbench for max-domain-of-attraction tails"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOpts list_common;
  CLI::App* list_cmd = app.add_subcommand("list", "print the distribution catalog");
  add_output_flags(list_cmd, list_common);

  ValidateOpts vo;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "classify a candidate psi (exit 0 vMR-valid, 3 VR-only, "
                                     "4 invalid, 5 inconclusive)");
  validate_cmd->add_option("--dist", vo.dist, "distribution spec name:k=v,...")->required();
  validate_cmd
      ->add_option("--psi", vo.psi,
                   "candidate: expression in x, or psi_u|catalog_vr|mean_excess|"
                   "double_mean_excess|linear_gamma")
      ->required();
  validate_cmd->add_option("--psi-params", vo.psi_params, "extra expression bindings k=v,...");
  validate_cmd->add_option("--route", vo.route, "psi_u construction route")
      ->check(CLI::IsMember({"catalog", "integral", "hazard", "zeta"}));
  validate_cmd->add_option("--z", vo.z, "K integral start (default: first grid point)");
  validate_cmd->add_option("--x-star", vo.x_star, "left domain end of the candidate");
  add_output_flags(validate_cmd, vo.common);
  add_grid_flags(validate_cmd, vo.common);

  PsiEvalOpts po;
  CLI::App* psi_eval_cmd =
      app.add_subcommand("psi-eval", "tabulate psi_u construction routes over a grid");
  psi_eval_cmd->add_option("--dist", po.dist, "distribution spec")->required();
  psi_eval_cmd->add_option("--psi", po.psi, "extra candidate column");
  psi_eval_cmd->add_option("--psi-params", po.psi_params, "extra expression bindings");
  psi_eval_cmd->add_option("--x-star", po.x_star, "left domain end of the candidate");
  add_output_flags(psi_eval_cmd, po.common);
  add_grid_flags(psi_eval_cmd, po.common);

  VrLimitOpts vlo;
  CLI::App* vr_limit_cmd =
      app.add_subcommand("vr-limit", "survival-ratio trail against the GPD tail");
  vr_limit_cmd->add_option("--dist", vlo.dist, "distribution spec")->required();
  vr_limit_cmd->add_option("--psi", vlo.psi, "candidate (default psi_u)");
  vr_limit_cmd->add_option("--psi-params", vlo.psi_params, "extra expression bindings");
  vr_limit_cmd->add_option("--z", vlo.z, "excess size in psi units (default 1)");
  vr_limit_cmd->add_option("--x", vlo.x, "also print the single-point excess probability at x");
  vr_limit_cmd->add_option("--x-star", vlo.x_star, "left domain end of the candidate");
  add_output_flags(vr_limit_cmd, vlo.common);
  add_grid_flags(vr_limit_cmd, vlo.common);

  ReconstructOpts ro;
  CLI::App* reconstruct_cmd =
      app.add_subcommand("reconstruct-c", "recover c(x) = F_bar exp(int 1/psi) and judge its limit");
  reconstruct_cmd->add_option("--dist", ro.dist, "distribution spec")->required();
  reconstruct_cmd->add_option("--psi", ro.psi, "candidate (default psi_u)");
  reconstruct_cmd->add_option("--psi-params", ro.psi_params, "extra expression bindings");
  reconstruct_cmd->add_option("--x-star", ro.x_star,
                              "integration start (default: first grid point)");
  add_output_flags(reconstruct_cmd, ro.common);
  add_grid_flags(reconstruct_cmd, ro.common);

  VonMisesOpts mo;
  CLI::App* von_mises_cmd =
      app.add_subcommand("von-mises", "check F_bar F'' / (F')^2 -> -1 along the tail");
  von_mises_cmd->add_option("--dist", mo.dist, "distribution spec")->required();
  add_output_flags(von_mises_cmd, mo.common);
  add_grid_flags(von_mises_cmd, mo.common);

  EstimateOpts eo;
  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "sample, fit the power psi model to the mean excess");
  estimate_cmd->add_option("--dist", eo.dist, "distribution spec");
  estimate_cmd->add_option("--n", eo.n, "sample size (default 1e5)");
  estimate_cmd->add_option("--seed", eo.seed, "RNG seed (default 42)");
  estimate_cmd->add_option("--samples-in", eo.samples_in, "read samples instead of drawing");
  estimate_cmd->add_option("--samples-out", eo.samples_out, "write the drawn samples");
  add_output_flags(estimate_cmd, eo.common);
  add_grid_flags(estimate_cmd, eo.common);

  GammaOpts go;
  CLI::App* gamma_cmd =
      app.add_subcommand("gamma", "read the extreme value index back from a psi");
  gamma_cmd->add_option("--dist", go.dist, "distribution spec")->required();
  gamma_cmd->add_option("--psi", go.psi, "candidate (default psi_u)");
  gamma_cmd->add_option("--psi-params", go.psi_params, "extra expression bindings");
  gamma_cmd->add_option("--x-star", go.x_star, "left domain end of the candidate");
  add_output_flags(gamma_cmd, go.common);
  add_grid_flags(gamma_cmd, go.common);

  CommonOpts corpus_common;
  CLI::App* corpus_cmd =
      app.add_subcommand("corpus", "sweep the whole catalog against candidate families");
  add_output_flags(corpus_cmd, corpus_common);
  corpus_cmd->add_option("--tol", corpus_common.tol, "verdict tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list_cmd->parsed()) return cmd_list(list_common);
    if (validate_cmd->parsed()) return cmd_validate(vo);
    if (psi_eval_cmd->parsed()) return cmd_psi_eval(po);
    if (vr_limit_cmd->parsed()) return cmd_vr_limit(vlo);
    if (reconstruct_cmd->parsed()) return cmd_reconstruct_c(ro);
    if (von_mises_cmd->parsed()) return cmd_von_mises(mo);
    if (estimate_cmd->parsed()) return cmd_estimate(eo);
    if (gamma_cmd->parsed()) return cmd_gamma(go);
    if (corpus_cmd->parsed()) return cmd_corpus(corpus_common);
  } catch (const tailaux::ParseError& e) {
    std::fprintf(stderr, "error: %s at offset %zu (expected %s)\n", e.what(), e.offset,
                 e.expected.c_str());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
