#include "skew/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "skew/connections.hpp"
#include "skew/decomposition.hpp"
#include "skew/errors.hpp"
#include "skew/parallel.hpp"

namespace skew {

using std::numbers::pi;

namespace {

std::string scheme_name(const InvariantChart& chart) {
  return chart.domain().kind == DomainKind::lower_half_line ? "gauss-legendre, x = hi - tan(u)" : "gauss-legendre";
}

// Weighted samples f(x) · w · a b² c, summed in node order.
double weighted_sum(const InvariantChart& chart, const std::vector<GridNode>& grid, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(f[i])) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand at x = " << grid[i].x;
      throw EvaluationError(os.str());
    }
    s += f[i] * grid[i].weight * chart.volume_density(grid[i].x);
  }
  return s * chart.orbit_volume();
}

std::vector<double> sample(const std::vector<GridNode>& grid, const std::function<double(double)>& f) {
  return parallel_map(grid.size(), [&](std::size_t i) { return f(grid[i].x); });
}

// Euler, signature and p1 samples on one grid, evaluated once per node.
struct DensitySamples {
  std::vector<double> euler, signature, p1;
};

DensitySamples density_samples(const InvariantChart& chart, const FormField& H, const std::vector<GridNode>& grid) {
  const auto d = parallel_map(grid.size(), [&](std::size_t i) { return curvature_densities(chart, H, grid[i].x); });
  DensitySamples s;
  for (const auto& v : d) {
    s.euler.push_back(v.euler);
    s.signature.push_back(v.signature);
    s.p1.push_back(v.p1_plus);
  }
  return s;
}

}  // namespace

double integrate_on(const InvariantChart& chart, const std::function<double(double)>& f, int nodes) {
  const auto grid = chart.grid(nodes);
  return weighted_sum(chart, grid, sample(grid, f));
}

Integral integrate_invariant(const InvariantChart& chart, const std::function<double(double)>& f, int nodes) {
  const double coarse = integrate_on(chart, f, nodes);
  const double fine = integrate_on(chart, f, 2 * nodes);
  // Report the n-node value; the 2n-node value only estimates its error.
  return {coarse, std::abs(fine - coarse), nodes, scheme_name(chart)};
}

CurvatureDensities curvature_densities(const Mat6& m) {
  CurvatureDensities d;
  double e = 0.0, t = 0.0, p = 0.0;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) {
      const double sr = r < 3 ? 1.0 : -1.0;
      const double sc = c < 3 ? 1.0 : -1.0;
      const double v = m(r, c) * m(r, c);
      e += sr * sc * v;
      t += sc * v;
      if (r < 3) p += sc * v;
    }
  d.euler = e / (8.0 * pi * pi);
  d.signature = t / (12.0 * pi * pi);
  d.p1_plus = p / (2.0 * pi * pi);
  return d;
}

CurvatureDensities curvature_densities(const InvariantChart& chart, const FormField& H, double x) {
  return curvature_densities(curvature_to_operator(curvature(with_skew_torsion(levi_civita(chart), H), x)));
}

EulerSignature euler_and_signature(const InvariantChart& chart, const FormField& H, int nodes) {
  const auto g1 = chart.grid(nodes);
  const auto g2 = chart.grid(2 * nodes);
  const DensitySamples s1 = density_samples(chart, H, g1);
  const DensitySamples s2 = density_samples(chart, H, g2);
  EulerSignature es;
  const double chi1 = weighted_sum(chart, g1, s1.euler), chi2 = weighted_sum(chart, g2, s2.euler);
  const double tau1 = weighted_sum(chart, g1, s1.signature), tau2 = weighted_sum(chart, g2, s2.signature);
  es.chi = {chi1, std::abs(chi2 - chi1), nodes, scheme_name(chart)};
  es.tau = {tau1, std::abs(tau2 - tau1), nodes, scheme_name(chart)};
  return es;
}

Integral pontryagin_lambda_plus(const InvariantChart& chart, const FormField& H, int nodes) {
  return integrate_invariant(
      chart, [&](double x) { return curvature_densities(chart, H, x).p1_plus; }, nodes);
}

TopologyReport hitchin_thorpe_report(const InvariantChart& chart, const FormField& H, int nodes, double tolerance,
                                     double einstein_threshold) {
  const auto g1 = chart.grid(nodes);
  const auto g2 = chart.grid(2 * nodes);
  const DensitySamples s1 = density_samples(chart, H, g1);
  const DensitySamples s2 = density_samples(chart, H, g2);

  TopologyReport r;
  const double chi1 = weighted_sum(chart, g1, s1.euler), chi2 = weighted_sum(chart, g2, s2.euler);
  const double tau1 = weighted_sum(chart, g1, s1.signature), tau2 = weighted_sum(chart, g2, s2.signature);
  const double p1 = weighted_sum(chart, g1, s1.p1), p2 = weighted_sum(chart, g2, s2.p1);
  r.chi_integral = {chi1, std::abs(chi2 - chi1), nodes, scheme_name(chart)};
  r.tau_integral = {tau1, std::abs(tau2 - tau1), nodes, scheme_name(chart)};
  r.p1_integral = {p1, std::abs(p2 - p1), nodes, scheme_name(chart)};
  r.chi = chi1;
  r.tau = tau1;
  r.p1_lambda_plus = p1;
  r.inequality_margin = 2.0 * r.chi - 3.0 * std::abs(r.tau);
  r.satisfied = r.inequality_margin >= -tolerance;
  r.min_p1_density = *std::min_element(s1.p1.begin(), s1.p1.end());
  r.einstein_residual = einstein_residual(chart, H, nodes).tensor;
  r.einstein_warning = !(r.einstein_residual <= einstein_threshold);
  return r;
}

nlohmann::json to_json(const Integral& i) {
  return {{"value", i.value}, {"estimated_error", i.error}, {"nodes", i.nodes}, {"scheme", i.scheme}};
}

nlohmann::json to_json(const TopologyReport& r) {
  return {{"chi", r.chi},
          {"tau", r.tau},
          {"p1_lambda_plus", r.p1_lambda_plus},
          {"margin", r.inequality_margin},
          {"satisfied", r.satisfied},
          {"einstein_warning", r.einstein_warning},
          {"einstein_residual", r.einstein_residual},
          {"min_p1_density", r.min_p1_density},
          {"quadrature", {{"chi", to_json(r.chi_integral)}, {"tau", to_json(r.tau_integral)}, {"p1", to_json(r.p1_integral)}}}};
}

}  // namespace skew
