#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skew/charts.hpp"
#include "skew/connections.hpp"
#include "skew/decomposition.hpp"
#include "skew/errors.hpp"
#include "skew/topology.hpp"
#include "support.hpp"

using namespace skew;
using skew::testing::Gen;

namespace {

// Λ+ ↔ Λ- swap of the basis ordering: the operator seen with the opposite orientation.
Mat6 swap_orientation(const Mat6& m) {
  Eigen::PermutationMatrix<6> p;
  p.indices() << 3, 4, 5, 0, 1, 2;
  return p * m * p.transpose();
}

}  // namespace

TEST_CASE("integrate_invariant volumes") {
  const Integral v = integrate_invariant(round_s4_chart(), [](double) { return 1.0; });
  CHECK(v.value == doctest::Approx(8.0 * M_PI * M_PI / 3.0).epsilon(1e-10));
  CHECK(v.error <= 1e-8);
  const Integral p = integrate_invariant(product_chart(1.0, 1.0).chart, [](double) { return 1.0; });
  CHECK(p.value == doctest::Approx(16.0 * M_PI * M_PI).epsilon(1e-12));
  const Integral p2 = integrate_invariant(product_chart(2.0, 0.5).chart, [](double) { return 1.0; });
  CHECK(p2.value == doctest::Approx(0.5 * 8.0 * 16.0 * M_PI * M_PI).epsilon(1e-12));
  CHECK(integrate_invariant(random_draw(3).chart, [](double) { return 0.0; }).value == 0.0);
  CHECK_THROWS_AS(integrate_invariant(round_s4_chart(), [](double) { return NAN; }), EvaluationError);
}

TEST_CASE("euler and signature") {
  for (double k : {0.0, 1.0}) {
    const BonneauModel m = bonneau_chart(k);
    const EulerSignature es = euler_and_signature(m.chart, m.torsion);
    CAPTURE(k);
    CHECK(es.chi.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(es.tau.value) <= 1e-8);
  }
  // constant integrand: χ is 6/8π² times the quadrature volume at every node count
  for (int n : {4, 16, 64, 256}) {
    const EulerSignature r = euler_and_signature(round_s4_chart(), zero_field(3), n);
    const double vol = integrate_on(round_s4_chart(), [](double) { return 1.0; }, n);
    CHECK(r.chi.value == doctest::Approx(6.0 / (8.0 * M_PI * M_PI) * vol).epsilon(1e-12));
    CHECK(std::abs(r.tau.value) <= 1e-12);
    if (n >= 16) CHECK(r.chi.value == doctest::Approx(2.0).epsilon(1e-10));
  }
  const ProductModel p = product_chart(1.0, 1.0);
  const EulerSignature f = euler_and_signature(p.chart, p.flat_torsion(1));
  CHECK(std::abs(f.chi.value) <= 1e-12);
  CHECK(std::abs(f.tau.value) <= 1e-12);
}

TEST_CASE("curvature densities under orientation reversal") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Gen g(seed);
    const Mat6 m = g.general_operator();
    const CurvatureDensities a = curvature_densities(m), b = curvature_densities(swap_orientation(m));
    CHECK(b.euler == doctest::Approx(a.euler).epsilon(1e-13));
    CHECK(b.signature == doctest::Approx(-a.signature).epsilon(1e-13));
  }
  // an oriented chart with its Λ± roles exchanged by flipping H: χ, τ of the ∇± pair
  const RandomDraw d = random_draw(2);
  const CurvatureDensities x = curvature_densities(d.chart, d.torsion, 0.4);
  const Mat6 op = decompose(d.chart, d.torsion, 0.4).op;
  const CurvatureDensities y = curvature_densities(swap_orientation(op));
  CHECK(y.euler == doctest::Approx(x.euler));
  CHECK(y.signature == doctest::Approx(-x.signature));
}

TEST_CASE("round S4 densities are constant") {
  const CurvatureDensities c = curvature_densities(Mat6::Identity());
  CHECK(c.euler == doctest::Approx(6.0 / (8.0 * M_PI * M_PI)));
  CHECK(c.signature == doctest::Approx(0.0));
  CHECK(c.p1_plus == doctest::Approx(3.0 / (2.0 * M_PI * M_PI)));
}

TEST_CASE("pontryagin class of the plus bundle") {
  const BonneauModel m = bonneau_chart(0.0);
  const Integral p = pontryagin_lambda_plus(m.chart, m.torsion);
  const EulerSignature es = euler_and_signature(m.chart, m.torsion);
  CHECK(p.value == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(p.value == doctest::Approx(2.0 * es.chi.value + 3.0 * es.tau.value).epsilon(1e-8));
  for (const GridNode& node : m.chart.grid(256))
    CHECK(curvature_densities(m.chart, m.torsion, node.x).p1_plus >= -1e-10);
  CHECK(pontryagin_lambda_plus(round_s4_chart(), zero_field(3)).value == doctest::Approx(4.0).epsilon(1e-8));
  const ProductModel f = product_chart(1.0, 1.0);
  CHECK(std::abs(pontryagin_lambda_plus(f.chart, f.flat_torsion(1)).value) <= 1e-12);
}

TEST_CASE("hitchin-thorpe report") {
  const BonneauModel m = bonneau_chart(0.0);
  const TopologyReport r = hitchin_thorpe_report(m.chart, m.torsion);
  CHECK(r.inequality_margin == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(r.satisfied);
  CHECK_FALSE(r.einstein_warning);
  const ProductModel f = product_chart(1.0, 1.0);
  const TopologyReport z = hitchin_thorpe_report(f.chart, f.flat_torsion(1));
  CHECK(std::abs(z.inequality_margin) <= 1e-10);
  CHECK(z.satisfied);
  const RandomDraw d = random_draw(6);
  const TopologyReport w = hitchin_thorpe_report(d.chart, d.torsion, 64);
  CHECK(w.einstein_warning);
  CHECK(to_json(w).contains("chi"));
}

TEST_CASE("chi converges quickly under refinement") {
  // Bonneau χ error shrinks at least fourfold per doubling of the node count until the floor.
  const BonneauModel m = bonneau_chart(0.0);
  double prev = std::abs(euler_and_signature(m.chart, m.torsion, 2).chi.value - 2.0);
  for (int n : {4, 8, 16}) {
    const double e = std::abs(euler_and_signature(m.chart, m.torsion, n).chi.value - 2.0);
    CAPTURE(n);
    CHECK((e <= 1e-12 || e <= prev / 4.0));
    prev = e;
  }
}
