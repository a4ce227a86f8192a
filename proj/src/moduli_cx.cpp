#include "skew/moduli_cx.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "skew/errors.hpp"
#include "skew/parallel.hpp"

namespace skew {

namespace {

using cplx = std::complex<double>;
using CVec4 = Eigen::Matrix<cplx, 4, 1>;

Mat4 pairing(int a, int b, int c, int d) {
  Mat4 J = Mat4::Zero();
  J(b, a) = 1.0;
  J(a, b) = -1.0;
  J(d, c) = 1.0;
  J(c, d) = -1.0;
  return J;
}

Mat4 brackets(const FramePoint& fp, int k) {
  Mat4 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = fp.c(i, j, k).value();
  return m;
}

// [X, Y] for constant-coefficient combinations X = Σ x_i e_i, Y = Σ y_j e_j.
template <class V>
V bracket(const std::array<Mat4, 4>& c, const V& x, const V& y) {
  V out;
  for (int k = 0; k < kDim; ++k) out(k) = x.dot(c[k] * y);  // dot conjugates its first argument
  return out;
}

constexpr double kGkTolerance = 1e-12;
constexpr unsigned kGkDepth = 15;

// a/c = 1/(q (1 + t²)) with q = Ω²/(k − t), whose (k − t) factor is cancelled inside
// bonneau_gap_ratio. The integrand in s = log(k − t) is (k − t) a/c, finite at both ends.
double weighted_ratio(const BonneauParams& p, double s) {
  const double u = std::exp(s);
  const double t = p.k - u;
  const double q = bonneau_gap_ratio(p, t);
  if (!(q > 0.0) || !std::isfinite(q)) {
    std::ostringstream os;
    os.precision(17);
    os << "Bonneau k = " << p.k << ": Omega^2 <= 0 at x = " << t;
    throw ParameterRangeError(os.str(), t);
  }
  return u / (q * (1.0 + t * t));
}

}  // namespace

InvariantACS make_acs(std::string name, const Mat4& J) {
  if (!(J * J + Mat4::Identity()).isZero(1e-12)) throw DomainError(name + ": J² ≠ −Id");
  if (!(J.transpose() * J - Mat4::Identity()).isZero(1e-12)) throw DomainError(name + ": J is not orthogonal");
  return {std::move(name), J};
}

InvariantACS acs_bonneau() { return make_acs("J_B", pairing(0, 3, 1, 2)); }
InvariantACS acs_round() { return make_acs("J_r", pairing(0, 3, 1, 2)); }
InvariantACS acs_crossed() { return make_acs("crossed", pairing(0, 1, 2, 3)); }

double nijenhuis_at(const InvariantChart& chart, const InvariantACS& acs, double x) {
  const FramePoint fp = frame_point(chart, x);
  std::array<Mat4, 4> c;
  for (int k = 0; k < kDim; ++k) c[k] = brackets(fp, k);
  const Mat4& J = acs.J;
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      const Vec4 ei = Vec4::Unit(i), ej = Vec4::Unit(j);
      const Vec4 Jei = J * ei, Jej = J * ej;
      const Vec4 n = bracket(c, Jei, Jej) - J * bracket(c, Jei, ej) - J * bracket(c, ei, Jej) - bracket(c, ei, ej);
      worst = std::max(worst, n.cwiseAbs().maxCoeff());
    }
  return worst;
}

double nijenhuis_norm(const InvariantChart& chart, const InvariantACS& J, int nodes) {
  const auto grid = chart.grid(nodes);
  const auto v = parallel_map(grid.size(), [&](std::size_t i) { return nijenhuis_at(chart, J, grid[i].x); });
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double ideal_closure_residual(const InvariantChart& chart, int nodes) {
  const cplx I(0.0, 1.0);
  double worst = 0.0;
  for (const GridNode& node : chart.grid(nodes)) {
    const FramePoint fp = frame_point(chart, node.x);
    std::array<Mat4, 4> c;
    for (int k = 0; k < kDim; ++k) c[k] = brackets(fp, k);
    CVec4 v1 = CVec4::Zero(), v2 = CVec4::Zero();
    v1(0) = 1.0;
    v1(3) = I;
    v2(1) = 1.0;
    v2(2) = I;
    // dθ(v̄₁, v̄₂) = −θ([v̄₁, v̄₂]) for constant-coefficient fields; conj undoes dot's conjugation.
    const CVec4 br = bracket(c, CVec4(v1.conjugate()), v2);
    const cplx theta1 = br(0) + I * br(3);
    const cplx theta2 = br(1) + I * br(2);
    worst = std::max({worst, std::abs(theta1), std::abs(theta2)});
  }
  return worst;
}

double r_coordinate(double k, double x, double x0) {
  if (!(x < k) || !(x0 < k)) throw DomainError("r_coordinate needs x, x0 < k");
  const BonneauParams p = bonneau_params(k);
  if (x == x0) return 1.0;
  const double s = std::log(k - x), s0 = std::log(k - x0);
  // dt = −(k − t) ds, so ∫_{x0}^{x} a/c dt = ∫_{s}^{s0} (k − t) a/c ds. The gap ratio switches
  // evaluation branch at k − t = 1 and t = −10; each piece is integrated separately.
  std::vector<double> cuts{std::min(s, s0), std::max(s, s0)};
  for (double b : {0.0, k + 10.0 > 0.0 ? std::log(k + 10.0) : NAN})
    if (b > cuts.front() && b < cuts.back()) cuts.insert(cuts.end() - 1, b);
  std::sort(cuts.begin(), cuts.end());
  double log_r = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    log_r += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&p](double si) { return weighted_ratio(p, si); }, cuts[i], cuts[i + 1], kGkDepth, kGkTolerance);
  return std::exp(s0 >= s ? log_r : -log_r);
}

double r_coordinate(const InvariantChart& chart, double x, double x0) {
  if (!chart.interior(x) || !chart.interior(x0)) throw DomainError("r_coordinate: point outside the open domain");
  if (x == x0) return 1.0;
  const double log_r = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&chart](double t) {
        const Profiles pr = chart.profiles(t);
        return pr.a.value() / pr.c.value();
      },
      x0, x, kGkDepth, kGkTolerance);
  return std::exp(log_r);
}

std::vector<RSample> r_profile(const InvariantChart& chart, double x0, int nodes) {
  const auto grid = chart.grid(nodes);
  return parallel_map(grid.size(), [&](std::size_t i) {
    return RSample{grid[i].x, r_coordinate(chart, grid[i].x, x0)};
  });
}

std::vector<RSample> r_profile(double k, double x0, int nodes) {
  const auto grid = bonneau_chart(k, nodes).chart.grid(nodes);
  return parallel_map(grid.size(), [&](std::size_t i) { return RSample{grid[i].x, r_coordinate(k, grid[i].x, x0)}; });
}

std::string r_profile_csv(const std::vector<RSample>& samples) {
  std::string out = "x,R\n";
  char buf[64];
  for (const RSample& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.x, s.R);
    out += buf;
  }
  return out;
}

namespace {

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

bool AsymptoticReport::within(double tolerance) const {
  return std::abs(slope_k_end - 1.0) <= tolerance && std::abs(slope_minus_inf - 1.0) <= tolerance && monotone;
}

AsymptoticReport asymptotic_check(double k, int samples) {
  const double x0 = k - 1.0;
  AsymptoticReport r;
  r.k = k;

  // Last decade before each endpoint, log-spaced.
  std::vector<double> lx, lr, fx, fr;
  for (int i = 0; i < samples; ++i) {
    const double e = -6.0 + static_cast<double>(i) / (samples - 1);  // k − x from 1e-6 to 1e-5
    const double u = std::pow(10.0, e);
    lx.push_back(-std::log(u));
    lr.push_back(std::log(r_coordinate(k, k - u, x0)));
    const double ax = std::pow(10.0, 5.0 + static_cast<double>(i) / (samples - 1));  // |x| from 1e5 to 1e6
    fx.push_back(-std::log(ax));
    fr.push_back(std::log(r_coordinate(k, -ax, x0)));
  }
  r.slope_k_end = ls_slope(lx, lr);
  r.slope_minus_inf = ls_slope(fx, fr);
  r.limit_k_end = 1e-6 * r_coordinate(k, k - 1e-6, x0);
  r.limit_minus_inf = 1e6 * r_coordinate(k, -1e6, x0);

  // Monotone over the whole line: log-spaced in k − x from 1e-6 to 1e6.
  r.monotone = true;
  double prev = 0.0;
  for (int i = 0; i <= 48; ++i) {
    const double u = std::pow(10.0, 6.0 - 0.25 * i);
    const double R = r_coordinate(k, k - u, x0);
    if (!(R > prev)) r.monotone = false;
    prev = R;
  }
  return r;
}

nlohmann::json to_json(const AsymptoticReport& r) {
  return {{"k", r.k},
          {"slope_k_end", r.slope_k_end},
          {"slope_minus_infinity", r.slope_minus_inf},
          {"limit_k_end", r.limit_k_end},
          {"limit_minus_infinity", r.limit_minus_inf},
          {"monotone", r.monotone}};
}

}  // namespace skew
