#include "skew/instanton.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "skew/decomposition.hpp"
#include "skew/parallel.hpp"
#include "skew/topology.hpp"

namespace skew {

namespace {

const std::array<Mat3, 3>& lie_basis() {
  static const std::array<Mat3, 3> l = [] {
    std::array<Mat3, 3> out;
    for (int s = 0; s < 3; ++s) out[s] = sd_form_as_operator(sd_basis()[s]);
    return out;
  }();
  return l;
}

// ω(p,q) = <E_p, ∇E_q> with ∇E_q = −G E_q − E_q Gᵀ for G(a,m) = Γ(i,a,m), 2-forms as matrices.
Mat3 connection_matrix(const Mat4& G) {
  const auto& basis = sd_basis();
  Mat3 w;
  for (int q = 0; q < 3; ++q) {
    const Mat4 eq = to_matrix(basis[q]);
    const Mat4 d = -G * eq - eq * G.transpose();
    for (int p = 0; p < 3; ++p) w(p, q) = 0.5 * (to_matrix(basis[p]).cwiseProduct(d)).sum();
  }
  return w;
}

double frob(const Mat3& m) { return m.squaredNorm(); }

}  // namespace

InducedConnection induced_lambda_plus(const AffineConnection& conn, double x) {
  const ConnectionPoint p = conn.at(x);
  InducedConnection ic;
  ic.x = x;
  for (int i = 0; i < kDim; ++i) {
    Mat4 G, dG;
    for (int a = 0; a < kDim; ++a)
      for (int m = 0; m < kDim; ++m) {
        G(a, m) = p.gamma(i, a, m).value();
        dG(a, m) = p.gamma(i, a, m).derivative(1);
      }
    ic.omega[i] = connection_matrix(G);
    ic.omega_dx[i] = connection_matrix(dG);
  }
  const double a = p.frame.a;
  auto radial = [&](int i, int j) -> Mat3 { return i == 0 ? Mat3(ic.omega_dx[j] / a) : Mat3(Mat3::Zero()); };
  std::array<std::array<Mat3, 4>, 4> F;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      Mat3 f = radial(i, j) - radial(j, i) + ic.omega[i] * ic.omega[j] - ic.omega[j] * ic.omega[i];
      for (int m = 0; m < kDim; ++m) f -= p.frame.c(i, j, m).value() * ic.omega[m];
      F[i][j] = f;
    }
  const auto& basis = sd_basis();
  const auto& L = lie_basis();
  const auto& tab = multi_index::table(2);
  for (int r = 0; r < 6; ++r) {
    Mat3 fr = Mat3::Zero();
    for (int s = 0; s < 6; ++s) fr += basis[r][s] * F[tab[s][0]][tab[s][1]];
    ic.curvature[r] = fr;
    Mat3 rebuilt = Mat3::Zero();
    for (int s = 0; s < 3; ++s) {
      ic.coordinates(s, r) = 0.25 * fr.cwiseProduct(L[s]).sum();
      rebuilt += ic.coordinates(s, r) * L[s];
    }
    ic.outside_span = std::max(ic.outside_span, (fr - rebuilt).cwiseAbs().maxCoeff());
  }
  return ic;
}

double self_duality_residual(const InducedConnection& ic) {
  double worst = 0.0;
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) {
      double s = 0.0;
      for (int r = 3; r < 6; ++r) s += ic.curvature[r](p, q) * ic.curvature[r](p, q);
      worst = std::max(worst, std::sqrt(s));
    }
  return worst;
}

double yang_mills_density(const InducedConnection& ic) { return ic.coordinates.squaredNorm(); }

YangMillsCheck yang_mills_density_check(const InvariantChart& chart, const FormField& H, int nodes) {
  const AffineConnection lc = levi_civita(chart);
  const AffineConnection plus = with_skew_torsion(lc, H);
  const AffineConnection minus = with_skew_torsion(lc, scale_field(H, -1.0));
  const auto grid = chart.grid(nodes);
  struct Row {
    double plus, minus, formula;
  };
  const auto rows = parallel_map(grid.size(), [&](std::size_t i) {
    const double x = grid[i].x;
    const DecompositionReport d = decompose(chart, H, x);
    const double formula = frob(d.Wplus_g) + 3.0 * (d.s_nabla / 12.0) * (d.s_nabla / 12.0) + 0.25 * norm2(d.dstarH_plus);
    return Row{yang_mills_density(induced_lambda_plus(plus, x)), yang_mills_density(induced_lambda_plus(minus, x)),
               formula};
  });
  YangMillsCheck c;
  std::vector<double> rp, rm;
  for (const Row& r : rows) {
    c.plus_minus_gap = std::max(c.plus_minus_gap, std::abs(r.plus - r.minus));
    c.formula_gap = std::max({c.formula_gap, std::abs(r.plus - r.formula), std::abs(r.minus - r.formula)});
    rp.push_back(r.plus);
    rm.push_back(r.minus);
  }
  double sp = 0.0, sm = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid[i].weight * chart.volume_density(grid[i].x);
    sp += rp[i] * w;
    sm += rm[i] * w;
  }
  c.action_plus = sp * chart.orbit_volume();
  c.action_minus = sm * chart.orbit_volume();
  return c;
}

KillingCheck killing_residual(const InvariantChart& chart, const FormField& H, int nodes, double closed_tolerance) {
  KillingCheck k;
  for (const GridNode& n : chart.grid(nodes)) {
    const ExteriorData e = exterior_ops(chart, H, n.x);
    k.residual = std::max(k.residual, symmetric_part(e.nabla_h).cwiseAbs().maxCoeff());
    k.dH = std::max(k.dH, std::abs(e.dH[0]));
  }
  k.closed = k.dH <= closed_tolerance;
  return k;
}

// --- Gauge probe --------------------------------------------------------------

namespace {

using System = Eigen::Matrix<double, 54, 9>;
using Section = Eigen::Matrix<double, 9, 1>;

System intertwiner_system(const InducedConnection& p, const InducedConnection& m) {
  System S = System::Zero();
  const Mat3 I = Mat3::Identity();
  for (int r = 0; r < 6; ++r) {
    // vec(F+ g − g F-) = (I ⊗ F+ − F-ᵀ ⊗ I) vec g, column-major vec.
    const Mat3& fp = p.curvature[r];
    const Mat3 fmt = m.curvature[r].transpose();
    for (int bi = 0; bi < 3; ++bi)
      for (int bj = 0; bj < 3; ++bj)
        S.block<3, 3>(9 * r + 3 * bi, 3 * bj) = I(bi, bj) * fp - fmt(bi, bj) * I;
  }
  return S;
}

struct Kernel {
  Eigen::Matrix<double, 9, 1> sigma;  // descending
  Section last;                       // right singular vector of the smallest singular value
};

Kernel kernel_of(const System& S) {
  Eigen::JacobiSVD<System> svd(S, Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixV().col(8)};
}

Mat3 as_matrix(const Section& v) { return Eigen::Map<const Mat3>(v.data()); }

}  // namespace

GaugeProbeReport gauge_equivalence_probe(const InvariantChart& chart, const FormField& H, int nodes) {
  const AffineConnection lc = levi_civita(chart);
  const AffineConnection plus = with_skew_torsion(lc, H);
  const AffineConnection minus = with_skew_torsion(lc, scale_field(H, -1.0));
  const auto grid = chart.grid(nodes);

  GaugeProbeReport rep;
  const double ratio = rep.singular_threshold_ratio;

  auto solve = [&](double x) {
    return kernel_of(intertwiner_system(induced_lambda_plus(plus, x), induced_lambda_plus(minus, x)));
  };

  std::vector<ProbeNode> out = parallel_map(grid.size(), [&](std::size_t idx) {
    const double x = grid[idx].x;
    const InducedConnection ip = induced_lambda_plus(plus, x);
    const InducedConnection im = induced_lambda_plus(minus, x);
    const Kernel k = kernel_of(intertwiner_system(ip, im));
    ProbeNode n;
    n.x = x;
    for (int i = 8; i >= 0; --i) n.singular_values.push_back(k.sigma(i));
    const double smax = k.sigma(0);
    int dim = 0;
    if (smax <= rep.flat_threshold)
      dim = 9;
    else
      for (int i = 0; i < 9; ++i)
        if (k.sigma(i) <= ratio * smax) ++dim;
    n.kernel_dimension = dim;
    if (dim >= 1 && dim <= 8) n.gap = k.sigma(8 - dim) / std::max(k.sigma(9 - dim), 1e-16 * smax);
    if (dim != 1) return n;

    Section g = k.last.normalized();
    for (int i = 0; i < 9; ++i) n.section[static_cast<std::size_t>(i)] = g(i);
    // Radial derivative by re-solving the kernel at x ± δ.
    double room = chart.domain().kind == DomainKind::periodic ? 1.0 : std::min(x - chart.domain().lo, chart.domain().hi - x);
    if (!std::isfinite(room)) room = 1.0;
    const double delta = 1e-4 * std::min({1.0, room / 4.0}) * std::max(1.0, std::abs(x));
    Section gp = solve(x + delta).last.normalized();
    Section gm = solve(x - delta).last.normalized();
    if (gp.dot(g) < 0) gp = -gp;
    if (gm.dot(g) < 0) gm = -gm;
    const Mat3 G = as_matrix(g);
    const Mat3 dG = as_matrix((gp - gm) / (2.0 * delta));
    double total = 0.0;
    for (int i = 0; i < kDim; ++i) {
      Mat3 d = ip.omega[i] * G - G * im.omega[i];
      if (i == 0) d += dG / frame_point(chart, x).a;
      total += d.squaredNorm();
    }
    n.parallel_norm = std::sqrt(total);
    return n;
  });

  // Sign continuation in x for the reported sections.
  const std::array<double, 9>* prev = nullptr;
  for (auto& n : out) {
    if (n.kernel_dimension != 1) continue;
    if (prev) {
      double dot = 0.0;
      for (int i = 0; i < 9; ++i) dot += n.section[i] * (*prev)[i];
      if (dot < 0)
        for (double& v : n.section) v = -v;
    }
    prev = &n.section;
  }

  const std::size_t total = out.size();
  std::size_t ones = 0, nines = 0;
  rep.min_gap = INFINITY;
  for (const auto& n : out) {
    if (n.kernel_dimension == 1) {
      ++ones;
      rep.min_gap = std::min(rep.min_gap, n.gap);
      rep.sup_parallel = std::max(rep.sup_parallel, n.parallel_norm);
    }
    if (n.kernel_dimension == 9) ++nines;
  }
  if (ones == 0) rep.min_gap = 0.0;
  rep.kernel_one_fraction = static_cast<double>(ones) / static_cast<double>(total);
  // Both verdicts are judged on the middle half of the nodes. The outer nodes crowd the ends of the
  // domain, where ∇⊗g comes from differencing kernels resolved only to about 1e-12.
  rep.inf_parallel_middle = INFINITY;
  rep.sup_parallel_middle = 0.0;
  for (std::size_t i = total / 4; i < 3 * total / 4; ++i)
    if (out[i].kernel_dimension == 1) {
      rep.inf_parallel_middle = std::min(rep.inf_parallel_middle, out[i].parallel_norm);
      rep.sup_parallel_middle = std::max(rep.sup_parallel_middle, out[i].parallel_norm);
    }
  if (!std::isfinite(rep.inf_parallel_middle)) rep.inf_parallel_middle = 0.0;

  if (nines == total) {
    rep.verdict = "equivalent";
    rep.reason = "both connections are flat: every g intertwines the curvatures";
  } else if (rep.kernel_one_fraction >= 0.95) {
    if (rep.inf_parallel_middle > 10.0 * rep.parallel_threshold) {
      rep.verdict = "inequivalent";
      rep.reason = "the unique curvature intertwiner is not parallel on the middle half of the grid";
    } else if (rep.sup_parallel_middle <= rep.parallel_threshold) {
      rep.verdict = "equivalent";
      rep.reason = "the unique curvature intertwiner is parallel on the middle half of the grid";
    } else {
      rep.verdict = "inconclusive";
      rep.reason = "intertwiner parallel on part of the middle half only";
    }
  } else {
    rep.verdict = "inconclusive";
    rep.reason = "kernel dimension differs from 1 on more than 5% of the nodes";
  }
  rep.nodes = std::move(out);
  return rep;
}

nlohmann::json to_json(const GaugeProbeReport& r) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : r.nodes)
    nodes.push_back({{"x", n.x},
                     {"singular_values", n.singular_values},
                     {"kernel_dimension", n.kernel_dimension},
                     {"gap", n.gap},
                     {"parallel_norm", n.parallel_norm}});
  return {{"verdict", r.verdict},
          {"reason", r.reason},
          {"kernel_one_fraction", r.kernel_one_fraction},
          {"min_gap", r.min_gap},
          {"sup_parallel", r.sup_parallel},
          {"inf_parallel_middle", r.inf_parallel_middle},
          {"sup_parallel_middle", r.sup_parallel_middle},
          {"singular_threshold_ratio", r.singular_threshold_ratio},
          {"parallel_threshold", r.parallel_threshold},
          {"flat_threshold", r.flat_threshold},
          {"nodes", nodes}};
}

}  // namespace skew
