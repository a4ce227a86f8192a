// One PASS/FAIL line per acceptance criterion. Exits 1 if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "skew/charts.hpp"
#include "skew/connections.hpp"
#include "skew/decomposition.hpp"
#include "skew/instanton.hpp"
#include "skew/moduli_cx.hpp"
#include "skew/parallel.hpp"
#include "skew/topology.hpp"
#include "skew/weyl.hpp"
#include "support.hpp"

using namespace skew;

namespace {

// Pinned tolerances.
constexpr int kDraws = 100;
constexpr int kGrid = 64;
constexpr double kIdentityTol = 1e-9;
constexpr double kBlockTol = 1e-9;
constexpr double kEinsteinTol = 1e-8;
constexpr double kChiTol = 1e-6;
constexpr double kTauTol = 1e-8;
constexpr double kP1Tol = 1e-4;
constexpr double kP1DensityFloor = -1e-10;
constexpr double kMarginTol = 1e-5;
constexpr double kRoundChiTol = 1e-8;
constexpr double kFlatCurvatureTol = 1e-12;
constexpr double kFlatTopologyTol = 1e-12;
constexpr double kScalarTol = 1e-12;
constexpr double kWeylTol = 1e-8;
constexpr double kWeylRouteTol = 1e-9;
constexpr double kSelfDualTol = 1e-8;
constexpr double kYangMillsTol = 1e-9;
constexpr double kKillingTol = 1e-8;
constexpr double kKernelOneFraction = 0.95;
constexpr double kMinGap = 1e3;
constexpr int kProbeGrid = 128;
constexpr double kNijenhuisTol = 1e-9;
constexpr double kSlopeTol = 0.01;
constexpr int kJetCompositions = 20;
constexpr double kRefinementFactor = 4.0;
constexpr double kChiFloor = 1e-12;

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

void identities_and_blocks() {
  const auto results = parallel_map(kDraws, [](std::size_t seed) {
    const RandomDraw d = random_draw(seed);
    const IdentityResiduals id = identity_suite(d.chart, d.torsion, kGrid);
    double blocks = 0.0;
    for (const GridNode& node : d.chart.grid(kGrid)) {
      const DecompositionReport r = decompose(d.chart, d.torsion, node.x);
      blocks = std::max({blocks, r.residual_a, r.residual_b, r.residual_c, r.residual_d});
    }
    return std::pair{id.worst(), blocks};
  });
  double worst = 0.0, blocks = 0.0;
  for (const auto& [w, b] : results) {
    worst = std::max(worst, w);
    blocks = std::max(blocks, b);
  }
  report(1, worst <= kIdentityTol,
         fmt("identity suite, %d random draws on %d nodes: worst residual %.3e (tol %.0e)", kDraws, kGrid, worst,
             kIdentityTol));
  report(2, blocks <= kBlockTol,
         fmt("block formulas against the direct operator: worst entry %.3e (tol %.0e)", blocks, kBlockTol));
}

void bonneau_einstein() {
  double worst = 0.0;
  for (double k : {-1.0, 0.0, 0.5, 1.0}) {
    const BonneauModel m = bonneau_chart(k);
    for (double s : {1.0, -1.0}) {
      const EinsteinCheck e = einstein_residual(m.chart, scale_field(m.torsion, s));
      worst = std::max({worst, e.tensor, e.block});
    }
  }
  report(3, worst <= kEinsteinTol,
         fmt("Bonneau Einstein residual over k in {-1,0,0.5,1} and both signs of H: %.3e (tol %.0e)", worst,
             kEinsteinTol));
}

void topology() {
  const BonneauModel m = bonneau_chart(0.0);
  const TopologyReport r = hitchin_thorpe_report(m.chart, m.torsion);
  double min_density = INFINITY;
  for (const GridNode& node : m.chart.grid(256))
    min_density = std::min(min_density, curvature_densities(m.chart, m.torsion, node.x).p1_plus);
  const double round_chi = euler_and_signature(round_s4_chart(), zero_field(3)).chi.value;
  const bool ok = std::abs(r.chi - 2.0) <= kChiTol && std::abs(r.tau) <= kTauTol &&
                  std::abs(r.p1_lambda_plus - 4.0) <= kP1Tol && min_density >= kP1DensityFloor &&
                  std::abs(r.inequality_margin - 4.0) <= kMarginTol && std::abs(round_chi - 2.0) <= kRoundChiTol;
  report(4, ok,
         fmt("chi %.12f, tau %.2e, p1 %.10f, min p1 density %.2e, margin %.12f, round chi %.12f", r.chi, r.tau,
             r.p1_lambda_plus, min_density, r.inequality_margin, round_chi));
}

void equality_case() {
  double curv = 0.0, top = 0.0, scal = 0.0;
  for (double b0 : {1.0, 0.6}) {
    const ProductModel p = product_chart(b0, 1.0);
    for (int sign : {1, -1}) {
      const FormField H = p.flat_torsion(sign);
      const AffineConnection conn = with_skew_torsion(levi_civita(p.chart), H);
      for (const GridNode& node : p.chart.grid(16)) {
        curv = std::max(curv, curvature(conn, node.x).max_abs());
        const double sg = ricci_and_scalar(curvature(levi_civita(p.chart), node.x)).scalar;
        scal = std::max(scal, std::abs(sg - 1.5 / (b0 * b0)));
      }
      const EulerSignature es = euler_and_signature(p.chart, H, 32);
      top = std::max({top, std::abs(es.chi.value), std::abs(es.tau.value),
                      std::abs(2.0 * es.chi.value - 3.0 * std::abs(es.tau.value))});
    }
  }
  report(5, curv <= kFlatCurvatureTol && top <= kFlatTopologyTol && scal <= kScalarTol,
         fmt("S1 x S3 flat torsion: |R| %.2e, |chi|,|tau| %.2e, |s_g - 3/(2 b0^2)| %.2e", curv, top, scal));
}

void einstein_weyl() {
  double direct = 0.0, gap = 0.0;
  for (double k : {-1.0, 0.0, 0.5, 1.0}) {
    const BonneauModel m = bonneau_chart(k);
    const EinsteinWeylCheck e = einstein_weyl_residual(m.chart, star_field(m.torsion));
    direct = std::max({direct, e.route_direct, e.route_formula});
    gap = std::max({gap, e.route_gap, e.scalar_gap});
  }
  report(6, direct <= kWeylTol && gap <= kWeylRouteTol,
         fmt("Einstein-Weyl with omega = *H: trace-free Ricci %.3e (tol %.0e), route gap %.3e (tol %.0e)", direct,
             kWeylTol, gap, kWeylRouteTol));
}

void instantons() {
  const BonneauModel m = bonneau_chart(0.0);
  double sd = 0.0;
  for (double s : {1.0, -1.0}) {
    const AffineConnection conn = with_skew_torsion(levi_civita(m.chart), scale_field(m.torsion, s));
    for (const GridNode& node : m.chart.grid(256))
      sd = std::max(sd, self_duality_residual(induced_lambda_plus(conn, node.x)));
  }
  const YangMillsCheck ym = yang_mills_density_check(m.chart, m.torsion);
  const KillingCheck kc = killing_residual(m.chart, m.torsion);
  report(7,
         sd <= kSelfDualTol && ym.plus_minus_gap <= kYangMillsTol && ym.formula_gap <= kYangMillsTol &&
             kc.closed && kc.residual <= kKillingTol,
         fmt("self-duality %.2e, density gap +/- %.2e, closed formula gap %.2e, Killing %.2e", sd, ym.plus_minus_gap,
             ym.formula_gap, kc.residual));
}

void gauge_probe() {
  const BonneauModel m = bonneau_chart(0.0);
  const GaugeProbeReport r = gauge_equivalence_probe(m.chart, m.torsion, kProbeGrid);
  const bool ok = r.kernel_one_fraction >= kKernelOneFraction && r.min_gap >= kMinGap &&
                  r.inf_parallel_middle > 10.0 * r.parallel_threshold && r.verdict == "inequivalent";
  report(8, ok,
         fmt("probe k=0: kernel-1 fraction %.3f, min gap %.2e, parallel norm on middle half in [%.2e, %.2e] "
             "against 10 x %.0e, verdict %s (%s)",
             r.kernel_one_fraction, r.min_gap, r.inf_parallel_middle, r.sup_parallel_middle, r.parallel_threshold,
             r.verdict.c_str(), r.reason.c_str()));
}

void complex_structures() {
  const double nb = nijenhuis_norm(bonneau_chart(0.0).chart, acs_bonneau());
  const double nr = nijenhuis_norm(round_s4_chart(), acs_round());
  double slope_dev = 0.0;
  bool monotone = true;
  for (double k : {0.0, 1.0}) {
    const AsymptoticReport a = asymptotic_check(k);
    slope_dev = std::max({slope_dev, std::abs(a.slope_k_end - 1.0), std::abs(a.slope_minus_inf - 1.0)});
    monotone = monotone && a.monotone;
  }
  report(9, nb <= kNijenhuisTol && nr <= kNijenhuisTol && slope_dev <= kSlopeTol && monotone,
         fmt("Nijenhuis J_B %.2e, J_r %.2e; R slopes within %.2e of 1 at both ends for k in {0,1}", nb, nr,
             slope_dev));
}

void oracles() {
  int jets_ok = 0;
  for (int seed = 0; seed < kJetCompositions; ++seed) {
    testing::Gen g(static_cast<std::uint64_t>(seed));
    const auto prog = testing::random_program(g);
    const double x = g.uniform(-0.8, 0.8);
    const Jet2 j = testing::compose(prog, Jet2::variable(x));
    auto err = [&](double h, int d) {
      const double fp = testing::compose(prog, x + h), f0 = testing::compose(prog, x),
                   fm = testing::compose(prog, x - h);
      return d == 1 ? std::abs((fp - fm) / (2 * h) - j.derivative(1))
                    : std::abs((fp - 2 * f0 + fm) / (h * h) - j.derivative(2));
    };
    bool ok = true;
    for (int d : {1, 2}) {
      const double e1 = err(2e-2, d), e2 = err(1e-2, d);
      ok = ok && (e1 < 1e-9 || (e1 / e2 > 3.0 && e1 / e2 < 5.0));
    }
    jets_ok += ok;
  }
  const BonneauModel m = bonneau_chart(0.0);
  std::vector<double> errs;
  for (int n : {2, 4, 8, 16}) errs.push_back(std::abs(euler_and_signature(m.chart, m.torsion, n).chi.value - 2.0));
  bool refine = true;
  for (std::size_t i = 1; i < errs.size(); ++i)
    refine = refine && (errs[i] <= kChiFloor || errs[i] * kRefinementFactor <= errs[i - 1]);
  report(10, jets_ok == kJetCompositions && refine,
         fmt("jets O(h^2) on %d/%d compositions; chi error at 2,4,8,16 nodes: %.2e %.2e %.2e %.2e", jets_ok,
             kJetCompositions, errs[0], errs[1], errs[2], errs[3]));
}

}  // namespace

int main() {
  identities_and_blocks();
  bonneau_einstein();
  topology();
  equality_case();
  einstein_weyl();
  instantons();
  gauge_probe();
  complex_structures();
  oracles();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
