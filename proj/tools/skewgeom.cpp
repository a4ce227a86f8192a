// skewgeom: verification suites, reports, parameter scans and the gauge probe from the shell.
//
// Exit codes: 0 success, 1 a verified residual exceeded --tol, 2 usage or parameter error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "skew/charts.hpp"
#include "skew/connections.hpp"
#include "skew/decomposition.hpp"
#include "skew/errors.hpp"
#include "skew/instanton.hpp"
#include "skew/json_out.hpp"
#include "skew/moduli_cx.hpp"
#include "skew/parallel.hpp"
#include "skew/topology.hpp"

using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string chart = "bonneau";
  double k = 0.0;
  double b0 = 1.0;
  double L = 1.0;
  std::uint64_t seed = 0;
  int grid = 64;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
  // scan
  double k_min = -1.0;
  double k_max = 1.0;
  double k_step = 0.25;
  // rcoord
  double x0 = NAN;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& c) {
  if (c.grid < 16) throw UsageError("--grid must be at least 16");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.command == "scan" && !(c.k_step > 0.0)) throw UsageError("--k-step must be positive");
  if (c.command == "scan" && !(c.k_max >= c.k_min)) throw UsageError("--k-max must not be below --k-min");
}

skew::ChartWithTorsion build(const RunConfig& c) {
  using namespace skew;
  if (c.chart == "bonneau") {
    const BonneauModel m = bonneau_chart(c.k, std::max(c.grid, 256));
    return {m.chart, m.torsion};
  }
  if (c.chart == "round") return {round_s4_chart(), zero_field(3)};
  if (c.chart == "product") {
    const ProductModel m = product_chart(c.b0, c.L);
    return {m.chart, m.flat_torsion(1)};
  }
  if (c.chart == "flat") return {flat_torus_chart(c.L), zero_field(3)};
  const RandomDraw d = random_draw(c.seed);
  return {d.chart, d.torsion};
}

json chart_json(const skew::InvariantChart& chart) { return skew::to_json(chart.descriptor()); }

// --- verify -------------------------------------------------------------------

struct Check {
  std::string name;
  double value;
};

std::vector<Check> verify_checks(const skew::ChartWithTorsion& cw, int grid) {
  using namespace skew;
  const IdentityResiduals r = identity_suite(cw.chart, cw.torsion, grid);
  const auto nodes = cw.chart.grid(grid);
  const auto rec = parallel_map(nodes.size(), [&](std::size_t i) {
    return decompose(cw.chart, cw.torsion, nodes[i].x).reconstruction_residual();
  });
  return {{"metric_antisymmetry", r.metric_antisymmetry},
          {"torsion_recovery", r.torsion_recovery},
          {"curvature_cross_path", r.curvature_cross_path},
          {"bianchi", r.bianchi},
          {"pair_swap", r.swap},
          {"ricci_torsion", r.ricci_torsion},
          {"ricci_antisymmetric", r.ricci_antisymmetric},
          {"scalar_curvature", r.scalar},
          {"ricci_in_h", r.ricci_in_h_flipped},
          {"same_derivative", r.same_derivative},
          {"z_nabla", r.z_nabla},
          {"exterior_calculus", r.exterior},
          {"block_reconstruction", *std::max_element(rec.begin(), rec.end())}};
}

// --- report -------------------------------------------------------------------

json report_json(const skew::ChartWithTorsion& cw, const RunConfig& c) {
  using namespace skew;
  const TopologyReport top = hitchin_thorpe_report(cw.chart, cw.torsion, c.grid, c.tol);
  const FormField minus = scale_field(cw.torsion, -1.0);
  const AffineConnection lc = levi_civita(cw.chart);
  const AffineConnection plus_conn = with_skew_torsion(lc, cw.torsion);
  const AffineConnection minus_conn = with_skew_torsion(lc, minus);
  const auto nodes = cw.chart.grid(c.grid);
  const auto sd = parallel_map(nodes.size(), [&](std::size_t i) {
    return std::pair{self_duality_residual(induced_lambda_plus(plus_conn, nodes[i].x)),
                     self_duality_residual(induced_lambda_plus(minus_conn, nodes[i].x))};
  });
  double sd_plus = 0.0, sd_minus = 0.0;
  for (const auto& [p, m] : sd) {
    sd_plus = std::max(sd_plus, p);
    sd_minus = std::max(sd_minus, m);
  }
  const KillingCheck kc = killing_residual(cw.chart, cw.torsion, c.grid);
  const json dec = decomposition_json(cw.chart, cw.torsion, c.grid);
  return {{"topology", to_json(top)},
          {"einstein_residual", {{"plus", einstein_residual(cw.chart, cw.torsion, c.grid).tensor},
                                 {"minus", einstein_residual(cw.chart, minus, c.grid).tensor}}},
          {"killing", {{"residual", kc.residual}, {"dH", kc.dH}, {"closed", kc.closed}}},
          {"self_duality", {{"plus", sd_plus}, {"minus", sd_minus}}},
          {"decomposition", dec["sup"]}};
}

// --- scan ---------------------------------------------------------------------

struct ScanRow {
  double k = 0.0;
  bool admissible = false;
  std::string problem;
  double einstein_plus = NAN, einstein_minus = NAN, identities = NAN;
  double chi = NAN, tau = NAN, margin = NAN;
  std::string verdict;
};

ScanRow scan_row(double k, int grid, double tol) {
  using namespace skew;
  ScanRow r;
  r.k = k;
  try {
    const BonneauModel m = bonneau_chart(k, std::max(grid, 256));
    r.admissible = true;
    r.einstein_plus = einstein_residual(m.chart, m.torsion, grid).tensor;
    r.einstein_minus = einstein_residual(m.chart, scale_field(m.torsion, -1.0), grid).tensor;
    r.identities = identity_suite(m.chart, m.torsion, grid).worst();
    const TopologyReport t = hitchin_thorpe_report(m.chart, m.torsion, grid, tol);
    r.chi = t.chi;
    r.tau = t.tau;
    r.margin = t.inequality_margin;
    r.verdict = gauge_equivalence_probe(m.chart, m.torsion, grid).verdict;
  } catch (const ParameterRangeError& e) {
    r.admissible = false;
    r.problem = e.what();
  }
  return r;
}

std::vector<double> k_values(const RunConfig& c) {
  std::vector<double> ks;
  const long n = static_cast<long>(std::floor((c.k_max - c.k_min) / c.k_step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) ks.push_back(c.k_min + static_cast<double>(i) * c.k_step);
  return ks;
}

// --- output -------------------------------------------------------------------

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + c.out);
  f << text;
}

json envelope(const RunConfig& c) {
  return {{"schema", skew::kJsonSchema},
          {"command", c.command},
          {"grid", c.grid},
          {"tolerance", c.tol}};
}

int run(const RunConfig& c) {
  using skew::format_double;
  validate(c);

  if (c.command == "scan") {
    const std::vector<double> ks = k_values(c);
    const auto rows = skew::parallel_map(ks.size(), [&](std::size_t i) { return scan_row(ks[i], c.grid, c.tol); });
    std::size_t admissible = 0;
    for (const ScanRow& r : rows) {
      if (r.admissible)
        ++admissible;
      else
        std::cerr << "warning: k = " << format_double(r.k) << " inadmissible: " << r.problem << "\n";
    }
    if (admissible == 0) std::cerr << "warning: no admissible k in the scan range\n";
    if (c.format == "csv") {
      std::ostringstream os;
      os << "k,einstein_plus,einstein_minus,identities,chi,tau,margin,probe_verdict\n";
      for (const ScanRow& r : rows) {
        if (!r.admissible) continue;
        os << format_double(r.k) << ',' << format_double(r.einstein_plus) << ',' << format_double(r.einstein_minus)
           << ',' << format_double(r.identities) << ',' << format_double(r.chi) << ',' << format_double(r.tau) << ','
           << format_double(r.margin) << ',' << r.verdict << '\n';
      }
      emit(c, os.str());
    } else {
      json j = envelope(c);
      json out = json::array(), rejected = json::array();
      for (const ScanRow& r : rows) {
        if (!r.admissible) {
          rejected.push_back({{"k", r.k}, {"reason", r.problem}});
          continue;
        }
        out.push_back({{"k", r.k},
                       {"einstein_plus", r.einstein_plus},
                       {"einstein_minus", r.einstein_minus},
                       {"identities", r.identities},
                       {"chi", r.chi},
                       {"tau", r.tau},
                       {"margin", r.margin},
                       {"probe_verdict", r.verdict}});
      }
      j["rows"] = out;
      j["inadmissible"] = rejected;
      emit(c, skew::dump_json(j));
    }
    return 0;
  }

  const skew::ChartWithTorsion cw = build(c);

  if (c.command == "verify") {
    const std::vector<Check> checks = verify_checks(cw, c.grid);
    std::vector<std::string> failing;
    for (const Check& ch : checks)
      if (!(ch.value <= c.tol)) failing.push_back(ch.name);
    if (c.format == "csv") {
      std::ostringstream os;
      os << "check,residual,passed\n";
      for (const Check& ch : checks) os << ch.name << ',' << format_double(ch.value) << ',' << (ch.value <= c.tol) << '\n';
      emit(c, os.str());
    } else {
      json j = envelope(c);
      j["chart"] = chart_json(cw.chart);
      json res = json::object();
      for (const Check& ch : checks) res[ch.name] = ch.value;
      j["residuals"] = res;
      j["failing"] = failing;
      j["passed"] = failing.empty();
      emit(c, skew::dump_json(j));
    }
    for (const std::string& f : failing) std::cerr << "failed: " << f << "\n";
    return failing.empty() ? 0 : 1;
  }

  if (c.command == "report") {
    json j = envelope(c);
    j["chart"] = chart_json(cw.chart);
    j.update(report_json(cw, c));
    if (c.format == "csv") {
      std::ostringstream os;
      os << "quantity,value\n";
      const json flat = j.flatten();
      for (auto it = flat.begin(); it != flat.end(); ++it)
        if (it->is_number()) os << it.key() << ',' << (it->is_number_float() ? format_double(it->get<double>()) : it->dump()) << '\n';
      emit(c, os.str());
    } else {
      emit(c, skew::dump_json(j));
    }
    return 0;
  }

  if (c.command == "probe") {
    const skew::GaugeProbeReport rep = skew::gauge_equivalence_probe(cw.chart, cw.torsion, c.grid);
    if (c.format == "csv") {
      std::ostringstream os;
      os << "x,kernel_dimension,gap,parallel_norm";
      for (int i = 0; i < 9; ++i) os << ",sigma" << i;
      os << '\n';
      for (const auto& n : rep.nodes) {
        os << format_double(n.x) << ',' << n.kernel_dimension << ',' << format_double(n.gap) << ','
           << format_double(n.parallel_norm);
        for (double s : n.singular_values) os << ',' << format_double(s);
        os << '\n';
      }
      emit(c, os.str());
    } else {
      json j = envelope(c);
      j["chart"] = chart_json(cw.chart);
      j["probe"] = skew::to_json(rep);
      emit(c, skew::dump_json(j));
    }
    return 0;
  }

  // rcoord
  std::vector<skew::RSample> samples;
  json asym = nullptr;
  if (c.chart == "bonneau") {
    const double x0 = std::isnan(c.x0) ? c.k - 1.0 : c.x0;
    samples = skew::r_profile(c.k, x0, c.grid);
    asym = skew::to_json(skew::asymptotic_check(c.k));
  } else {
    const skew::Domain& d = cw.chart.domain();
    const double x0 = std::isnan(c.x0) ? 0.5 * (d.lo + d.hi) : c.x0;
    samples = skew::r_profile(cw.chart, x0, c.grid);
  }
  if (c.format == "csv") {
    emit(c, skew::r_profile_csv(samples));
  } else {
    json j = envelope(c);
    j["chart"] = chart_json(cw.chart);
    json rows = json::array();
    for (const auto& s : samples) rows.push_back({{"x", s.x}, {"R", s.R}});
    j["samples"] = rows;
    j["asymptotics"] = asym;
    emit(c, skew::dump_json(j));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewgeom: skew-torsion geometry on cohomogeneity-one charts"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--chart", cfg.chart, "bonneau | round | product | flat | random")
        ->check(CLI::IsMember({"bonneau", "round", "product", "flat", "random"}));
    sub->add_option("--k", cfg.k, "Bonneau parameter");
    sub->add_option("--b0", cfg.b0, "S^3 radius of the product chart");
    sub->add_option("--L", cfg.L, "circle length of the product and flat charts");
    sub->add_option("--seed", cfg.seed, "seed of the random chart");
    sub->add_option("--grid", cfg.grid, "quadrature nodes (>= 16)");
    sub->add_option("--tol", cfg.tol, "residual tolerance (> 0)");
    sub->add_option("--out", cfg.out, "output file, stdout if absent");
    sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "identity suite and block reconstruction on one chart");
  CLI::App* report = app.add_subcommand("report", "topology, Einstein, Killing and self-duality summary");
  CLI::App* scan = app.add_subcommand("scan", "Bonneau parameter scan over a k grid");
  CLI::App* probe = app.add_subcommand("probe", "gauge-equivalence probe of the connections with torsion +H and -H");
  CLI::App* rcoord = app.add_subcommand("rcoord", "radial coordinate R with log R = integral of a/c");
  for (CLI::App* s : {verify, report, scan, probe, rcoord}) common(s);
  scan->add_option("--k-min", cfg.k_min, "first k");
  scan->add_option("--k-max", cfg.k_max, "last k");
  scan->add_option("--k-step", cfg.k_step, "k increment");
  rcoord->add_option("--x0", cfg.x0, "normalization point, R(x0) = 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (CLI::App* s : {verify, report, scan, probe, rcoord})
    if (s->parsed()) cfg.command = s->get_name();

  try {
    return run(cfg);
  } catch (const std::exception& e) {
    // Usage, parameter-range and domain errors alike.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
