#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skew/charts.hpp"
#include "skew/connections.hpp"
#include "skew/errors.hpp"
#include "support.hpp"

using namespace skew;
using skew::testing::interior_point;
using skew::testing::max_abs;

namespace {

double max_abs_gamma(const Tensor3<Jet1>& g) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(g(i, j, k).value()));
  return m;
}

}  // namespace

TEST_CASE("levi-civita examples") {
  CHECK(max_abs_gamma(levi_civita(flat_torus_chart()).at(0.2).gamma) == 0.0);

  // bi-invariant: ∇_X Y = ½[X, Y], and [e_1, e_2] = −e_3
  const ConnectionPoint p = levi_civita(product_chart(1.0, 1.0).chart).at(0.2);
  CHECK(p.gamma(1, 2, 3).value() == doctest::Approx(-0.5));
  CHECK(p.gamma(2, 3, 1).value() == doctest::Approx(-0.5));
  CHECK(p.gamma(2, 1, 3).value() == doctest::Approx(0.5));

  const InvariantChart round = round_s4_chart();
  for (double x : {0.3, 1.0, 2.5}) {
    const Rank4 r = curvature(levi_civita(round), x);
    CHECK(r(0, 1, 0, 1) == doctest::Approx(1.0));
    CHECK(r(2, 3, 2, 3) == doctest::Approx(1.0));
    CHECK(r(0, 2, 2, 0) == doctest::Approx(-1.0));
    CHECK(r(0, 1, 2, 3) == doctest::Approx(0.0));
    const RicciData rd = ricci_and_scalar(r);
    CHECK((rd.ric - 3.0 * Mat4::Identity()).cwiseAbs().maxCoeff() <= 1e-11);
    CHECK(rd.scalar == doctest::Approx(12.0));
  }
}

TEST_CASE("levi-civita is torsion free and metric") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomDraw d = random_draw(seed);
    const ConnectionPoint p = levi_civita(d.chart).at(0.4);
    const Tensor3<double> T = torsion(p);
    const Tensor3<double> Dg = metric_derivative(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          CHECK(std::abs(T(i, j, k)) <= 1e-12);
          CHECK(std::abs(Dg(i, j, k)) <= 1e-12);
        }
  }
}

TEST_CASE("skew torsion connection") {
  const RandomDraw d = random_draw(3);
  const AffineConnection lc = levi_civita(d.chart);
  const ConnectionPoint same = with_skew_torsion(lc, zero_field(3)).at(0.5);
  const ConnectionPoint ref = lc.at(0.5);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) CHECK(same.gamma(i, j, k).value() == ref.gamma(i, j, k).value());

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomDraw r = random_draw(seed);
    const ConnectionPoint p = with_skew_torsion(levi_civita(r.chart), r.torsion).at(0.35);
    CHECK(max_abs(three_form_from_components(torsion(p)) - values(r.torsion(0.35))) <= 1e-12);
  }
  CHECK_THROWS_AS(with_skew_torsion(lc, zero_field(2)), DomainError);

  Tensor3<double> notskew;
  notskew(0, 1, 2) = 1.0;
  CHECK_THROWS_AS(three_form_from_components(notskew), DomainError);
}

TEST_CASE("product chart with flat torsion") {
  for (int sign : {1, -1}) {
    const ProductModel m = product_chart(1.0, 1.0);
    const FormField H = m.flat_torsion(sign);
    CHECK(norm2(values(H(0.1))) == doctest::Approx(1.0));
    CHECK(std::abs(H(0.1).at({1, 2, 3}).value()) == doctest::Approx(1.0));
    for (double x : {0.1, 0.5, 0.9}) {
      const Rank4 R = curvature(with_skew_torsion(levi_civita(m.chart), H), x);
      CHECK(R.max_abs() <= 1e-12);
      CHECK(curvature_via_expansion(m.chart, H, x).max_abs() <= 1e-12);
      CHECK(ricci_and_scalar(R).scalar == doctest::Approx(0.0));
      const double sg = ricci_and_scalar(curvature(levi_civita(m.chart), x)).scalar;
      CHECK(sg == doctest::Approx(1.5));
    }
  }
  const ProductModel m = product_chart(0.5, 3.0);
  CHECK(std::abs(m.flat_torsion(1)(0.0).at({1, 2, 3}).value()) == doctest::Approx(2.0));
  CHECK(curvature(with_skew_torsion(levi_civita(m.chart), m.flat_torsion(-1)), 1.0).max_abs() <= 1e-12);
  // without torsion the curvature is the Riemannian one
  CHECK(curvature(levi_civita(product_chart(1.0, 1.0).chart), 0.3).max_abs() > 0.1);
}

TEST_CASE("curvature routes agree and keep metric antisymmetry") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomDraw r = random_draw(seed);
    const double x = 0.05 + 0.9 * static_cast<double>(seed % 17) / 16.0;
    const Rank4 direct = curvature(with_skew_torsion(levi_civita(r.chart), r.torsion), x);
    const Rank4 eq = curvature_via_expansion(r.chart, r.torsion, x);
    CAPTURE(seed);
    CHECK((direct - eq).max_abs() <= 1e-10);
    double anti = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            anti = std::max({anti, std::abs(direct(i, j, k, l) + direct(j, i, k, l)),
                             std::abs(direct(i, j, k, l) + direct(i, j, l, k))});
    CHECK(anti <= 1e-12);
  }
  CHECK(curvature(levi_civita(flat_torus_chart()), 0.5).max_abs() == 0.0);
  const InvariantChart round = round_s4_chart();
  CHECK((curvature_via_expansion(round, zero_field(3), 1.1) - curvature(levi_civita(round), 1.1)).max_abs() <= 1e-14);
}

TEST_CASE("ricci and scalar identities on random draws") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const RandomDraw r = random_draw(seed);
    const IdentityResiduals id = identity_suite(r.chart, r.torsion, 24);
    CAPTURE(seed);
    CHECK(id.ricci_antisymmetric <= 1e-9);
    CHECK(id.scalar <= 1e-10);
    CHECK(id.same_derivative <= 1e-10);
    CHECK(id.ricci_torsion <= 1e-9);
    CHECK(id.z_nabla <= 1e-9);
    CHECK(id.metric_antisymmetry <= 1e-12);
    CHECK(id.torsion_recovery <= 1e-12);
    CHECK(id.exterior <= 1e-10);
    CHECK(id.worst() <= 1e-9);
  }
}

TEST_CASE("signs of the Bianchi analogue, swap symmetry and the Ricci-in-h identity") {
  // The Bianchi analogue holds with −dH and fails with +dH. The Ricci
  // identity in h holds with +½*dh and fails with −½*dh.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RandomDraw r = random_draw(seed);
    const IdentityResiduals id = identity_suite(r.chart, r.torsion, 16);
    CHECK(id.bianchi <= 1e-9);
    CHECK(id.swap <= 1e-9);
    CHECK(id.bianchi_flipped > 1e-3);
    CHECK(id.swap_flipped > 1e-3);
    CHECK(id.ricci_in_h_flipped <= 1e-9);
    CHECK(id.ricci_in_h > 1e-3);
  }
  const IdentityResiduals none = identity_suite(random_draw(4).chart, zero_field(3), 16);
  CHECK(none.bianchi <= 1e-12);
  CHECK(none.worst() <= 1e-12);
}

TEST_CASE("bonneau exterior data") {
  const BonneauModel m = bonneau_chart(0.0);
  const IdentityResiduals id = identity_suite(m.chart, m.torsion, 64);
  CHECK(id.swap <= 1e-9);
  CHECK(id.bianchi <= 1e-9);
  for (double x : {-5.0, -1.0, -0.2}) {
    const ExteriorData e = exterior_ops(m.chart, m.torsion, x);
    CHECK(max_abs(e.dH) <= 1e-12);
    CHECK(std::abs(e.h[3]) > 1e-3);
    CHECK(std::abs(e.h[0]) + std::abs(e.h[1]) + std::abs(e.h[2]) <= 1e-14);
    CHECK(max_abs(e.dh) > 1e-3);
  }
  const ExteriorData flat = exterior_ops(flat_torus_chart(), product_chart(1.0, 1.0).flat_torsion(1), 0.3);
  CHECK(max_abs(flat.dH) == 0.0);
  CHECK(max_abs(flat.dstar_H) == 0.0);
}
