#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skew/charts.hpp"
#include "skew/errors.hpp"
#include "skew/moduli_cx.hpp"
#include "support.hpp"

using namespace skew;

namespace {

// e_0 → e_3, e_1 → −e_2: the same pairs with the opposite orientation on the orbit plane.
Mat4 reversed() {
  Mat4 J = Mat4::Zero();
  J(3, 0) = 1.0;
  J(0, 3) = -1.0;
  J(2, 1) = -1.0;
  J(1, 2) = 1.0;
  return J;
}

}  // namespace

TEST_CASE("almost complex structures validate") {
  for (const InvariantACS& a : {acs_bonneau(), acs_round(), acs_crossed()}) {
    CHECK((a.J * a.J + Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.J.transpose() * a.J - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(make_acs("identity", Mat4::Identity()), DomainError);
  CHECK_THROWS_AS(make_acs("scaled", 2.0 * acs_bonneau().J), DomainError);
}

TEST_CASE("integrability") {
  for (double k : {-1.0, 0.0, 0.5, 1.0}) CHECK(nijenhuis_norm(bonneau_chart(k).chart, acs_bonneau()) <= 1e-9);
  CHECK(nijenhuis_norm(round_s4_chart(), acs_round()) <= 1e-9);
  CHECK(ideal_closure_residual(bonneau_chart(0.0).chart) <= 1e-9);
  CHECK(ideal_closure_residual(round_s4_chart()) <= 1e-9);
  CHECK(nijenhuis_norm(bonneau_chart(0.0).chart, acs_crossed()) > 0.1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const InvariantChart c = random_draw(seed).chart;
    CHECK(nijenhuis_norm(c, acs_crossed(), 32) > 1e-3);
    // on a diagonal U(2) chart the reversed pairing is integrable as well
    CHECK(nijenhuis_norm(c, make_acs("reversed", reversed()), 32) <= 1e-9);
  }
}

TEST_CASE("r coordinate") {
  for (double k : {0.0, 1.0}) {
    const double x0 = k - 1.0;
    CHECK(r_coordinate(k, x0, x0) == 1.0);
    double prev = 0.0;
    for (double x : {-1e4, -100.0, -3.0, x0, k - 0.1, k - 1e-3}) {
      const double R = r_coordinate(k, x, x0);
      CHECK(R > prev);
      prev = R;
    }
    CHECK_THROWS_AS(r_coordinate(k, k, x0), DomainError);
    CHECK_THROWS_AS(r_coordinate(k, x0, k + 1.0), DomainError);
    // two quadratures of the same integral
    const InvariantChart chart = bonneau_chart(k).chart;
    for (double x : {-4.0, -0.5, k - 0.3})
      CHECK(r_coordinate(chart, x, x0) == doctest::Approx(r_coordinate(k, x, x0)).epsilon(1e-9));
  }
}

TEST_CASE("r coordinate on the round chart") {
  // a/c = 2/sin x, so R = tan²(x/2) / tan²(x0/2)
  const InvariantChart round = round_s4_chart();
  const double x0 = 1.0;
  for (double x : {0.05, 0.5, 1.7, 3.0}) {
    const double t = std::tan(0.5 * x) / std::tan(0.5 * x0);
    CHECK(r_coordinate(round, x, x0) == doctest::Approx(t * t).epsilon(1e-10));
  }
  const auto prof = r_profile(round, x0, 32);
  for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i].R > prof[i - 1].R);
}

TEST_CASE("asymptotics at both ends") {
  for (double k : {0.0, 1.0}) {
    const AsymptoticReport r = asymptotic_check(k);
    CAPTURE(k);
    CHECK(r.slope_k_end == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r.slope_minus_inf == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r.monotone);
    CHECK(r.within(0.01));
    CHECK(std::isfinite(r.limit_k_end));
    CHECK(r.limit_k_end > 0.0);
    CHECK(std::isfinite(r.limit_minus_inf));
    CHECK(r.limit_minus_inf > 0.0);
    CHECK(to_json(r).at("monotone").get<bool>());
  }
}

TEST_CASE("r profile csv") {
  const auto samples = r_profile(0.0, -1.0, 16);
  CHECK(samples.size() == 16);
  const std::string csv = r_profile_csv(samples);
  CHECK(csv.rfind("x,R\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}
