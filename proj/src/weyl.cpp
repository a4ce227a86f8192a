#include "skew/weyl.hpp"

#include <algorithm>

#include "skew/decomposition.hpp"
#include "skew/errors.hpp"
#include "skew/parallel.hpp"

namespace skew {

AffineConnection weyl_connection(const InvariantChart& chart, FormField omega) {
  const AffineConnection lc = levi_civita(chart);
  return AffineConnection(
      chart,
      [lc, omega = std::move(omega)](const FramePoint& fp) {
        Tensor3<Jet1> g = lc.coefficients(fp);
        const Form<Jet1> w = omega(fp.x);
        if (w.degree() != 1) throw DegreeError("Weyl connection needs a 1-form");
        for (int i = 0; i < kDim; ++i)
          for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k) {
              Jet1 extra(0.0);
              if (j == k) extra -= 0.5 * w[i];
              if (i == k) extra -= 0.5 * w[j];
              if (i == j) extra += 0.5 * w[k];
              g(i, j, k) += extra;
            }
        return g;
      },
      false);
}

WeylPoint weyl_point(const InvariantChart& chart, const FormField& omega, double x) {
  const ConnectionPoint lc = levi_civita(chart).at(x);
  const ConnectionPoint D = weyl_connection(chart, omega).at(x);
  const Form<Jet1> wj = omega(x);
  const KForm w = values(wj);

  WeylPoint p;
  const Tensor3<double> T = torsion(D);
  const Tensor3<double> Dg = metric_derivative(D);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        p.torsion = std::max(p.torsion, std::abs(T(i, j, k)));
        p.metricity = std::max(p.metricity, std::abs(Dg(i, j, k) - (j == k ? w[i] : 0.0)));
      }

  const RicciData rd = ricci_and_scalar(curvature(D));
  p.sym_ric_direct = symmetric_part(rd.ric);
  p.s_direct = rd.scalar;

  const RicciData rg = ricci_and_scalar(curvature(lc));
  const double w2 = norm2(w);
  const double dstar_w = codifferential(lc.frame, wj)[0];
  const Mat4 I = Mat4::Identity();
  p.sym_ric_formula = rg.ric - 0.5 * (w2 * I - outer(w)) + symmetric_part(covariant_derivative_matrix(lc, wj)) -
                      0.5 * dstar_w * I;
  p.s_formula = rg.scalar - 1.5 * w2 - 3.0 * dstar_w;
  return p;
}

EinsteinWeylCheck einstein_weyl_residual(const InvariantChart& chart, const FormField& omega, int nodes) {
  const auto grid = chart.grid(nodes);
  const auto pts = parallel_map(grid.size(), [&](std::size_t i) { return weyl_point(chart, omega, grid[i].x); });
  EinsteinWeylCheck c;
  for (const WeylPoint& p : pts) {
    c.route_direct = std::max(c.route_direct, trace_free(p.sym_ric_direct).cwiseAbs().maxCoeff());
    c.route_formula = std::max(c.route_formula, trace_free(p.sym_ric_formula).cwiseAbs().maxCoeff());
    c.route_gap = std::max(c.route_gap, (p.sym_ric_direct - p.sym_ric_formula).cwiseAbs().maxCoeff());
    c.scalar_gap = std::max(c.scalar_gap, std::abs(p.s_direct - p.s_formula));
    c.torsion = std::max(c.torsion, p.torsion);
    c.metricity = std::max(c.metricity, p.metricity);
  }
  return c;
}

RoundTrip torsion_weyl_roundtrip(const InvariantChart& chart, const FormField& H, int nodes) {
  const FormField omega = star_field(H);
  const FormField h_prime = scale_field(star_field(omega), -1.0);
  RoundTrip rt;
  // ** = −1 on odd degrees in dimension four, so the loop closes on +H.
  const auto grid = chart.grid(nodes);
  double plus = 0.0, minus = 0.0;
  for (const GridNode& n : grid) {
    const KForm a = values(H(n.x));
    const KForm b = values(h_prime(n.x));
    for (int s = 0; s < 4; ++s) {
      plus = std::max(plus, std::abs(b[s] - a[s]));
      minus = std::max(minus, std::abs(b[s] + a[s]));
    }
    rt.norm_gap = std::max(rt.norm_gap, std::abs(std::sqrt(norm2(b)) - std::sqrt(norm2(a))));
  }
  rt.sign = plus <= minus ? 1 : -1;
  rt.loop_residual = std::min(plus, minus);
  rt.einstein_h = einstein_residual(chart, H, nodes).tensor;
  rt.einstein_h_prime = einstein_residual(chart, h_prime, nodes).tensor;
  rt.einstein_minus_h_prime = einstein_residual(chart, scale_field(h_prime, -1.0), nodes).tensor;
  return rt;
}

}  // namespace skew
