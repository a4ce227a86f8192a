#include "skew/connections.hpp"

#include <algorithm>
#include <cmath>

#include "skew/errors.hpp"

namespace skew {

AffineConnection::AffineConnection(InvariantChart chart, CoefficientFn gamma, bool metric_compatible)
    : chart_(std::move(chart)), gamma_(std::move(gamma)), metric_(metric_compatible) {}

ConnectionPoint AffineConnection::at(double x) const {
  ConnectionPoint p;
  p.frame = frame_point(chart_, x);
  p.gamma = gamma_(p.frame);
  return p;
}

AffineConnection levi_civita(const InvariantChart& chart) {
  return AffineConnection(
      chart,
      [](const FramePoint& fp) {
        Tensor3<Jet1> g;
        for (int i = 0; i < kDim; ++i)
          for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k)
              g(i, j, k) = 0.5 * (fp.c(i, j, k) - fp.c(i, k, j) - fp.c(j, k, i));
        return g;
      },
      true);
}

AffineConnection with_skew_torsion(const AffineConnection& lc, FormField H) {
  if (H(lc.chart().grid(1).front().x).degree() != 3)
    throw DomainError("skew torsion must be a 3-form");
  AffineConnection base = lc;
  return AffineConnection(
      lc.chart(),
      [base, H = std::move(H)](const FramePoint& fp) {
        Tensor3<Jet1> g = base.coefficients(fp);
        const Form<Jet1> h = H(fp.x);
        if (h.degree() != 3) throw DomainError("skew torsion must be a 3-form");
        for (int i = 0; i < kDim; ++i)
          for (int j = 0; j < kDim; ++j)
            for (int k = 0; k < kDim; ++k) g(i, j, k) += 0.5 * h.at({i, j, k});
        return g;
      },
      lc.metric_compatible());
}

Tensor3<double> torsion(const ConnectionPoint& p) {
  Tensor3<double> t;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        t(i, j, k) = p.gamma(i, j, k).value() - p.gamma(j, i, k).value() - p.frame.c(i, j, k).value();
  return t;
}

KForm three_form_from_components(const Tensor3<double>& t, double tol) {
  KForm f(3);
  const auto& tab = multi_index::table(3);
  for (int s = 0; s < 4; ++s) f[s] = t(tab[s][0], tab[s][1], tab[s][2]);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        if (std::abs(t(i, j, k) - f.at({i, j, k})) > tol)
          throw DomainError("rank-3 array is not totally antisymmetric");
  return f;
}

Tensor3<double> metric_derivative(const ConnectionPoint& p) {
  Tensor3<double> d;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) d(i, j, k) = -p.gamma(i, j, k).value() - p.gamma(i, k, j).value();
  return d;
}

Rank4 curvature(const ConnectionPoint& p) {
  const FramePoint& fp = p.frame;
  auto G = [&p](int i, int j, int k) { return p.gamma(i, j, k).value(); };
  Rank4 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      if (i == j) continue;
      for (int l = 0; l < kDim; ++l)
        for (int n = 0; n < kDim; ++n) {
          // n-component of R(e_i,e_j) e_l
          double v = frame_derivative(fp, i, p.gamma(j, l, n)) - frame_derivative(fp, j, p.gamma(i, l, n));
          for (int m = 0; m < kDim; ++m) {
            v += G(j, l, m) * G(i, m, n) - G(i, l, m) * G(j, m, n);
            v -= fp.c(i, j, m).value() * G(m, l, n);
          }
          r(i, j, n, l) = v;
        }
    }
  return r;
}

Rank4 curvature(const AffineConnection& conn, double x) { return curvature(conn.at(x)); }

// --- Exterior calculus ---------------------------------------------------------

KForm exterior_derivative(const FramePoint& fp, const Form<Jet1>& a) {
  const int k = a.degree();
  if (k >= kDim) throw DegreeError("exterior derivative of a top-degree form");
  KForm r(k + 1);
  const auto& tab = multi_index::table(k + 1);
  for (int s = 0; s < r.size(); ++s) {
    const auto& idx = tab[s];
    double sum = 0.0;
    std::array<int, 4> rest{};
    for (int j = 0; j <= k; ++j) {
      int n = 0;
      for (int t = 0; t <= k; ++t)
        if (t != j) rest[n++] = idx[t];
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      sum += sign * frame_derivative(fp, idx[j], a.at(std::span<const int>(rest.data(), k)));
    }
    for (int j = 0; j <= k; ++j)
      for (int l = j + 1; l <= k; ++l) {
        const double sign = ((j + l) % 2 == 0) ? 1.0 : -1.0;
        std::array<int, 4> arg{};
        int n = 1;
        for (int t = 0; t <= k; ++t)
          if (t != j && t != l) arg[n++] = idx[t];
        for (int m = 0; m < kDim; ++m) {
          const double cm = fp.c(idx[j], idx[l], m).value();
          if (cm == 0.0) continue;
          arg[0] = m;
          sum += sign * cm * a.at(std::span<const int>(arg.data(), k)).value();
        }
      }
    r[s] = sum;
  }
  return r;
}

KForm codifferential(const FramePoint& fp, const Form<Jet1>& a) {
  if (a.degree() == 0) throw DegreeError("codifferential of a 0-form");
  return -hodge_star(exterior_derivative(fp, hodge_star(a)));
}

std::array<KForm, 4> covariant_derivative(const ConnectionPoint& p, const Form<Jet1>& a) {
  const int k = a.degree();
  const auto& tab = multi_index::table(k);
  std::array<KForm, 4> out{KForm(k), KForm(k), KForm(k), KForm(k)};
  for (int i = 0; i < kDim; ++i)
    for (int s = 0; s < a.size(); ++s) {
      double v = frame_derivative(p.frame, i, a[s]);
      for (int t = 0; t < k; ++t) {
        std::array<int, 4> idx = tab[s];
        for (int m = 0; m < kDim; ++m) {
          const double gm = p.gamma(i, tab[s][t], m).value();
          if (gm == 0.0) continue;
          idx[t] = m;
          v -= gm * a.at(std::span<const int>(idx.data(), k)).value();
        }
      }
      out[i][s] = v;
    }
  return out;
}

KForm codifferential_via_connection(const ConnectionPoint& lc, const Form<Jet1>& a) {
  if (a.degree() == 0) throw DegreeError("codifferential of a 0-form");
  const auto nabla = covariant_derivative(lc, a);
  KForm r(a.degree() - 1);
  for (int i = 0; i < kDim; ++i) r -= interior(i, nabla[i]);
  return r;
}

Mat4 covariant_derivative_matrix(const ConnectionPoint& p, const Form<Jet1>& one_form) {
  if (one_form.degree() != 1) throw DegreeError("covariant_derivative_matrix expects a 1-form");
  const auto nabla = covariant_derivative(p, one_form);
  Mat4 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = nabla[i][j];
  return m;
}

// --- Curvature expansions and Ricci -------------------------------------------

namespace {

// g(H(X,Y), H(Z,W)) with H(X,Y) the vector g(H(X,Y),V) = H(X,Y,V).
double hh(const KForm& H, int x, int y, int z, int w) {
  double s = 0.0;
  for (int m = 0; m < kDim; ++m) s += H.at({x, y, m}) * H.at({z, w, m});
  return s;
}

double nabla_at(const std::array<KForm, 4>& nH, int x, int y, int z, int w) { return nH[x].at({y, z, w}); }

double sup(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Rank4 curvature_via_expansion(const InvariantChart& chart, const FormField& H, double x) {
  const ConnectionPoint lc = levi_civita(chart).at(x);
  const Form<Jet1> Hj = H(x);
  const KForm Hv = values(Hj);
  const auto nH = covariant_derivative(lc, Hj);
  Rank4 r = curvature(lc);
  for (int X = 0; X < kDim; ++X)
    for (int Y = 0; Y < kDim; ++Y)
      for (int Z = 0; Z < kDim; ++Z)
        for (int W = 0; W < kDim; ++W)
          r(X, Y, Z, W) += 0.25 * hh(Hv, X, W, Y, Z) - 0.25 * hh(Hv, Y, W, X, Z) -
                           0.5 * nabla_at(nH, X, Y, Z, W) + 0.5 * nabla_at(nH, Y, X, Z, W);
  return r;
}

RicciData ricci_and_scalar(const Rank4& r) {
  RicciData d;
  d.ric = Mat4::Zero();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) d.ric(i, j) += r(k, i, k, j);
  d.scalar = d.ric.trace();
  return d;
}

ExteriorData exterior_ops(const InvariantChart& chart, const FormField& H, double x) {
  const ConnectionPoint lc = levi_civita(chart).at(x);
  const Form<Jet1> Hj = H(x);
  if (Hj.degree() != 3) throw DegreeError("exterior_ops expects a 3-form");
  const Form<Jet1> hj = hodge_star(Hj);
  ExteriorData e;
  e.dH = exterior_derivative(lc.frame, Hj);
  e.star_dH = hodge_star(e.dH)[0];
  e.dstar_H = codifferential(lc.frame, Hj);
  e.h = values(hj);
  e.nabla_h = covariant_derivative_matrix(lc, hj);
  e.dh = exterior_derivative(lc.frame, hj);
  e.dstar_h = codifferential(lc.frame, hj)[0];
  e.trace_identity = std::abs(e.nabla_h.trace() + e.dstar_h);
  e.cancellation = std::abs(e.dstar_h - e.star_dH);
  const KForm alt = codifferential_via_connection(lc, Hj);
  double worst = 0.0;
  for (int s = 0; s < 6; ++s) worst = std::max(worst, std::abs(alt[s] - e.dstar_H[s]));
  e.codifferential_routes = worst;
  return e;
}

// --- Identity suite ----------------------------------------------------------

void IdentityResiduals::absorb(const IdentityResiduals& o) {
  auto up = [](double& a, double b) { a = std::max(a, b); };
  up(metric_antisymmetry, o.metric_antisymmetry);
  up(torsion_recovery, o.torsion_recovery);
  up(curvature_cross_path, o.curvature_cross_path);
  up(bianchi, o.bianchi);
  up(bianchi_flipped, o.bianchi_flipped);
  up(swap, o.swap);
  up(swap_flipped, o.swap_flipped);
  up(ricci_torsion, o.ricci_torsion);
  up(ricci_antisymmetric, o.ricci_antisymmetric);
  up(scalar, o.scalar);
  up(ricci_in_h, o.ricci_in_h);
  up(ricci_in_h_flipped, o.ricci_in_h_flipped);
  up(same_derivative, o.same_derivative);
  up(z_nabla, o.z_nabla);
  up(exterior, o.exterior);
}

double IdentityResiduals::worst() const {
  return std::max({metric_antisymmetry, torsion_recovery, curvature_cross_path, bianchi, swap, ricci_torsion,
                   ricci_antisymmetric, scalar, ricci_in_h_flipped, same_derivative, z_nabla, exterior});
}

IdentityResiduals identity_residuals(const InvariantChart& chart, const FormField& H, double x) {
  const AffineConnection lc_conn = levi_civita(chart);
  const ConnectionPoint lc = lc_conn.at(x);
  const ConnectionPoint plus = with_skew_torsion(lc_conn, H).at(x);
  const ConnectionPoint minus = with_skew_torsion(lc_conn, scale_field(H, -1.0)).at(x);

  const Form<Jet1> Hj = H(x);
  const KForm Hv = values(Hj);
  const auto nH = covariant_derivative(lc, Hj);
  const ExteriorData ext = exterior_ops(chart, H, x);

  const Rank4 Rg = curvature(lc);
  const Rank4 Rp = curvature(plus);
  const Rank4 Rm = curvature(minus);
  const Rank4 R1 = curvature_via_expansion(chart, H, x);

  IdentityResiduals res;
  res.curvature_cross_path = (Rp - R1).max_abs();

  const Tensor3<double> T = torsion(plus);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) res.torsion_recovery = std::max(res.torsion_recovery, std::abs(T(i, j, k) - Hv.at({i, j, k})));

  for (int X = 0; X < kDim; ++X)
    for (int Y = 0; Y < kDim; ++Y)
      for (int Z = 0; Z < kDim; ++Z)
        for (int W = 0; W < kDim; ++W) {
          res.metric_antisymmetry = std::max(res.metric_antisymmetry, std::abs(Rp(X, Y, Z, W) + Rp(X, Y, W, Z)));
          res.metric_antisymmetry = std::max(res.metric_antisymmetry, std::abs(Rp(X, Y, Z, W) + Rp(Y, X, Z, W)));

          const double dH = ext.dH.at({X, Y, Z, W});
          const double lhs = Rp(X, Y, Z, W) + Rp(Y, Z, X, W) + Rp(Z, X, Y, W);
          const double quad = 0.5 * (hh(Hv, X, Y, Z, W) + hh(Hv, Y, Z, X, W) + hh(Hv, Z, X, Y, W));
          const double nab = nabla_at(nH, W, X, Y, Z);
          res.bianchi = std::max(res.bianchi, std::abs(lhs - (-dH - nab + quad)));
          res.bianchi_flipped = std::max(res.bianchi_flipped, std::abs(lhs - (dH - nab + quad)));

          const double swapped = Rm(Z, W, X, Y);
          res.swap = std::max(res.swap, std::abs(Rp(X, Y, Z, W) - (swapped - 0.5 * dH)));
          res.swap_flipped = std::max(res.swap_flipped, std::abs(Rp(X, Y, Z, W) - (swapped + 0.5 * dH)));
        }

  const RicciData ricg = ricci_and_scalar(Rg);
  const RicciData ricp = ricci_and_scalar(Rp);
  const Mat4 dstarH = to_matrix(ext.dstar_H);

  Mat4 tt = Mat4::Zero();  // Σ_a g(T(e_i,e_a), T(e_j,e_a))
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int a = 0; a < kDim; ++a) tt(i, j) += hh(Hv, i, a, j, a);
  res.ricci_torsion = sup(ricp.ric - (ricg.ric - 0.25 * tt - 0.5 * dstarH));
  res.ricci_antisymmetric = sup(antisymmetric_part(ricp.ric) + 0.5 * dstarH);
  res.scalar = std::abs(ricp.scalar - ricg.scalar + 1.5 * norm2(Hv));

  const Mat4 I = Mat4::Identity();
  const double h2 = norm2(ext.h);
  const Mat4 hh_outer = outer(ext.h);
  const Mat4 star_dh = to_matrix(hodge_star(ext.dh));
  const Mat4 base = ricg.ric - 0.5 * h2 * I + 0.5 * hh_outer;
  res.ricci_in_h = sup(ricp.ric - (base - 0.5 * star_dh));
  res.ricci_in_h_flipped = sup(ricp.ric - (base + 0.5 * star_dh));

  const Form<Jet1> hj = hodge_star(Hj);
  res.same_derivative = sup(covariant_derivative_matrix(plus, hj) - ext.nabla_h);

  const Mat4 zp = trace_free(symmetric_part(ricp.ric));
  const Mat4 zg = trace_free(ricg.ric);
  res.z_nabla = sup(zp - (zg + 0.5 * hh_outer - 0.125 * h2 * I));

  res.exterior = std::max({ext.trace_identity, ext.cancellation, ext.codifferential_routes});
  return res;
}

IdentityResiduals identity_suite(const InvariantChart& chart, const FormField& H, int nodes) {
  IdentityResiduals acc;
  for (const GridNode& node : chart.grid(nodes)) acc.absorb(identity_residuals(chart, H, node.x));
  return acc;
}

}  // namespace skew
