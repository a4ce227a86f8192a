#include "skew/charts.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

#include "skew/errors.hpp"
#include "skew/quadrature.hpp"

namespace skew {

using std::numbers::pi;

// --- Descriptors -----------------------------------------------------------

namespace {

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::interval: return "interval";
    case DomainKind::lower_half_line: return "lower_half_line";
    case DomainKind::periodic: return "periodic";
  }
  return "interval";
}

DomainKind kind_from_name(const std::string& s) {
  if (s == "interval") return DomainKind::interval;
  if (s == "lower_half_line") return DomainKind::lower_half_line;
  if (s == "periodic") return DomainKind::periodic;
  throw std::invalid_argument("unknown domain kind: " + s);
}

}  // namespace

nlohmann::json to_json(const ChartDescriptor& d) {
  nlohmann::json j;
  j["type"] = d.type;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : d.params) j["params"][k] = v;
  j["domain"] = {{"kind", kind_name(d.domain.kind)}, {"lo", d.domain.lo}, {"hi", d.domain.hi}};
  if (d.domain.kind == DomainKind::lower_half_line) j["domain"]["lo"] = nullptr;
  j["grid"] = d.grid;
  return j;
}

ChartDescriptor descriptor_from_json(const nlohmann::json& j) {
  ChartDescriptor d;
  d.type = j.at("type").get<std::string>();
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) d.params[k] = v.get<double>();
  if (j.contains("domain")) {
    const auto& dom = j.at("domain");
    d.domain.kind = kind_from_name(dom.at("kind").get<std::string>());
    d.domain.lo = dom.at("lo").is_null() ? -INFINITY : dom.at("lo").get<double>();
    d.domain.hi = dom.at("hi").get<double>();
  }
  if (j.contains("grid")) d.grid = j.at("grid").get<int>();
  return d;
}

// --- Fields ------------------------------------------------------------------

FormField zero_field(int degree) {
  return [degree](double) { return Form<Jet1>(degree); };
}

FormField scale_field(FormField f, double s) {
  return [f = std::move(f), s](double x) {
    Form<Jet1> v = f(x);
    v *= s;
    return v;
  };
}

FormField star_field(FormField f) {
  return [f = std::move(f)](double x) { return hodge_star(f(x)); };
}

// --- InvariantChart --------------------------------------------------------

InvariantChart::InvariantChart(ChartDescriptor descriptor, ProfileFn profiles, double orbit_volume,
                               StructureMode mode)
    : descriptor_(std::move(descriptor)), profiles_(std::move(profiles)), orbit_volume_(orbit_volume), mode_(mode) {
  if (!(orbit_volume_ > 0.0)) throw DomainError("orbit volume must be positive");
}

bool InvariantChart::interior(double x) const {
  const Domain& d = domain();
  if (!std::isfinite(x)) return false;
  switch (d.kind) {
    case DomainKind::interval: return x > d.lo && x < d.hi;
    case DomainKind::lower_half_line: return x < d.hi;
    case DomainKind::periodic: return true;
  }
  return false;
}

Profiles InvariantChart::profiles(double x) const {
  if (!interior(x)) {
    std::ostringstream os;
    os << "chart '" << name() << "': x = " << x << " is not an interior point";
    throw DomainError(os.str());
  }
  return profiles_(Jet2::variable(x));
}

double InvariantChart::volume_density(double x) const {
  const Profiles p = profiles(x);
  return p.a.value() * p.b.value() * p.b.value() * p.c.value();
}

std::vector<GridNode> InvariantChart::grid(int n) const {
  const QuadratureRule& rule = gauss_legendre(n);
  const Domain& d = domain();
  std::vector<GridNode> out;
  out.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double w = rule.weights[i];
    if (d.kind == DomainKind::lower_half_line) {
      const double u = 0.25 * pi * (t + 1.0);
      const double sec = 1.0 / std::cos(u);
      out.push_back({d.hi - std::tan(u), w * 0.25 * pi * sec * sec});
    } else {
      const double half = 0.5 * (d.hi - d.lo);
      out.push_back({d.lo + half * (t + 1.0), w * half});
    }
  }
  std::sort(out.begin(), out.end(), [](const GridNode& l, const GridNode& r) { return l.x < r.x; });
  return out;
}

// --- Frame structure -------------------------------------------------------

Tensor3<Jet1> structure_functions(const InvariantChart& chart, double x) {
  const Profiles p = chart.profiles(x);
  const Jet1 a = truncate<1>(p.a);
  const Jet1 b = truncate<1>(p.b);
  const Jet1 c = truncate<1>(p.c);
  const Jet1 db = differentiate(p.b);
  const Jet1 dc = differentiate(p.c);

  Tensor3<Jet1> s;
  auto put = [&s](int i, int j, int k, const Jet1& v) {
    s(i, j, k) = v;
    s(j, i, k) = -v;
  };
  // [e_0, e_i] from differentiating 1/b and 1/c along ∂_x.
  const Jet1 rb = -db / (a * b);
  const Jet1 rc = -dc / (a * c);
  put(0, 1, 1, rb);
  put(0, 2, 2, rb);
  put(0, 3, 3, rc);
  if (chart.mode() == StructureMode::su2) {
    // σ^i([X_j, X_k]) = -dσ^i(X_j, X_k) = -ε_ijk.
    put(2, 3, 1, -Jet1(1.0) / c);
    put(3, 1, 2, -Jet1(1.0) / c);
    put(1, 2, 3, -c / (b * b));
  }
  return s;
}

FramePoint frame_point(const InvariantChart& chart, double x) {
  FramePoint fp;
  fp.x = x;
  fp.a = chart.profiles(x).a.value();
  fp.c = structure_functions(chart, x);
  return fp;
}

double jacobi_residual(const FramePoint& fp) {
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int n = 0; n < kDim; ++n) {
          double sum = 0.0;
          const std::array<std::array<int, 3>, 3> cyc{{{i, j, k}, {j, k, i}, {k, i, j}}};
          for (const auto& t : cyc) {
            // [[e_a, e_b], e_c] = Σ_m c(a,b,m) [e_m, e_c] - e_c(c(a,b,n)) e_n
            for (int m = 0; m < kDim; ++m) sum += fp.c(t[0], t[1], m).value() * fp.c(m, t[2], n).value();
            sum -= frame_derivative(fp, t[2], fp.c(t[0], t[1], n));
          }
          worst = std::max(worst, std::abs(sum));
        }
  return worst;
}

// --- Bonneau family ----------------------------------------------------------

BonneauParams bonneau_params(double k) {
  BonneauParams p;
  p.k = k;
  p.n = 1.0 / (k + (1.0 + k * k) * (0.5 * pi + std::atan(k)));
  return p;
}

double bonneau_omega2_direct(const BonneauParams& p, double x) {
  const double k = p.k;
  return 1.0 + p.n * (x * x - 1.0 - 2.0 * k * x) * (0.5 * pi + std::atan(x)) + p.n * (x - 2.0 * k);
}

namespace {

// dΩ²/dx = -2n (k - x) g(x) with g(t) = π/2 + arctan t + t/(1+t²) > 0 and Ω²(k) = 0, so
// Ω²(x)/(k-x) = 2n u ∫_0^1 τ g(k - uτ) dτ with u = k - x.
template <class T>
T gap_ratio_impl(const BonneauParams& p, const T& x) {
  using std::atan;
  const double k = p.k;
  const T u = T(k) - x;
  const double uv = value_of(u);
  if (uv <= 1.0) {
    const QuadratureRule& rule = gauss_legendre(24);
    T acc(0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double tau = 0.5 * (rule.nodes[i] + 1.0);
      const T t = T(k) - u * tau;
      const T g = T(0.5 * pi) + atan(t) + t / (T(1.0) + t * t);
      acc += g * (0.5 * rule.weights[i] * tau);
    }
    return 2.0 * p.n * u * acc;
  }
  if (value_of(x) < -10.0) {
    // Expansion in w = -1/x of (x²-1-2kx)(π/2 + arctan x) + x - 2k.
    const T w = T(-1.0) / x;
    const T w2 = w * w;
    T odd(0.0);
    T even(0.0);
    T wpow = w;  // w^{2m-1}
    for (int m = 1; m <= 14; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      odd += wpow * (sign * 4.0 * m / (4.0 * m * m - 1.0));
      even += (wpow * w) * (sign / (2.0 * m + 1.0));
      wpow = wpow * w2;
    }
    return (T(1.0) + p.n * (odd + 2.0 * k * even)) / u;
  }
  const T omega2 = T(1.0) + p.n * (x * x - 1.0 - 2.0 * k * x) * (T(0.5 * pi) + atan(x)) + p.n * (x - 2.0 * k);
  return omega2 / u;
}

Profiles bonneau_profiles(const BonneauParams& p, const Jet2& x) {
  const Jet2 u = Jet2(p.k) - x;
  const Jet2 q = gap_ratio_impl(p, x);
  const Jet2 s = Jet2(1.0) + x * x;
  return {Jet2(1.0) / (sqrt(q) * s), sqrt(u / s), sqrt(q)};
}

}  // namespace

Jet2 bonneau_gap_ratio(const BonneauParams& p, const Jet2& x) { return gap_ratio_impl(p, x); }
double bonneau_gap_ratio(const BonneauParams& p, double x) { return gap_ratio_impl(p, x); }

void bonneau_positivity_scan(const BonneauParams& p, int nodes) {
  if (!std::isfinite(p.n) || !(p.n > 0.0)) {
    throw ParameterRangeError("Bonneau normalization n is not a positive finite number", p.k);
  }
  ChartDescriptor d{"bonneau", {{"k", p.k}}, {DomainKind::lower_half_line, -INFINITY, p.k}, nodes};
  InvariantChart probe(d, [p](const Jet2& x) { return bonneau_profiles(p, x); }, 16.0 * pi * pi);
  for (const GridNode& node : probe.grid(nodes)) {
    const double u = p.k - node.x;
    const double q = gap_ratio_impl(p, node.x);
    std::ostringstream os;
    os.precision(17);
    if (!(u > 0.0)) {
      os << "Bonneau k = " << p.k << ": k - x <= 0 at x = " << node.x;
      throw ParameterRangeError(os.str(), node.x);
    }
    if (!(q > 0.0) || !std::isfinite(q)) {
      os << "Bonneau k = " << p.k << ": Omega^2 <= 0 at x = " << node.x;
      throw ParameterRangeError(os.str(), node.x);
    }
    // Where Ω² comes from the direct formula, 1 + n(...) must not cancel below double resolution.
    const double x = node.x;
    if (u > 1.0 && x >= -10.0) {
      const double scale =
          1.0 + p.n * (std::abs(x * x - 1.0 - 2.0 * p.k * x) * (0.5 * pi + std::atan(x)) + std::abs(x - 2.0 * p.k));
      if (q * u < 1e-8 * scale) {
        os << "Bonneau k = " << p.k << ": Omega^2 = " << q * u << " is not resolved in double precision at x = " << x;
        throw ParameterRangeError(os.str(), x);
      }
    }
    const Profiles pr = bonneau_profiles(p, Jet2::variable(node.x));
    for (const Jet2* f : {&pr.a, &pr.b, &pr.c})
      for (std::size_t i = 0; i <= 2; ++i)
        if (!std::isfinite(f->coeff(i))) {
          os << "Bonneau k = " << p.k << ": non-finite profile jet at x = " << node.x;
          throw ParameterRangeError(os.str(), node.x);
        }
  }
}

BonneauModel bonneau_chart(double k, int scan_nodes) {
  const BonneauParams p = bonneau_params(k);
  bonneau_positivity_scan(p, scan_nodes);
  ChartDescriptor d{"bonneau", {{"k", k}}, {DomainKind::lower_half_line, -INFINITY, k}, scan_nodes};
  InvariantChart chart(d, [p](const Jet2& x) { return bonneau_profiles(p, x); }, 16.0 * pi * pi);
  FormField torsion = [chart, p](double x) {
    const Jet2 xj = Jet2::variable(x);
    const Profiles pr = chart.profiles(x);
    const Jet2 s = Jet2(1.0) + xj * xj;
    const Jet2 coefficient = 2.0 * (Jet2(p.k) - xj) / (s * s);
    // dx ∧ σ¹ ∧ σ² = e^0 ∧ e^1 ∧ e^2 / (a b²)
    Form<Jet1> h(3);
    h.set({0, 1, 2}, truncate<1>(coefficient / (pr.a * pr.b * pr.b)));
    return h;
  };
  return {chart, torsion, p};
}

InvariantChart round_s4_chart() {
  ChartDescriptor d{"round", {}, {DomainKind::interval, 0.0, pi}, 256};
  return InvariantChart(
      d,
      [](const Jet2& x) {
        const Jet2 r = 0.5 * sin(x);
        return Profiles{Jet2(1.0), r, r};
      },
      16.0 * pi * pi);
}

ProductModel product_chart(double b0, double length) {
  if (!(b0 > 0.0) || !(length > 0.0)) throw DomainError("product chart needs b0 > 0 and L > 0");
  ChartDescriptor d{"product", {{"b0", b0}, {"L", length}}, {DomainKind::periodic, 0.0, length}, 64};
  InvariantChart chart(d, [b0](const Jet2&) { return Profiles{Jet2(1.0), Jet2(b0), Jet2(b0)}; }, 16.0 * pi * pi);
  return {chart, b0, length};
}

FormField ProductModel::flat_torsion(int sign) const {
  const double v = (sign >= 0 ? 1.0 : -1.0) / b0;
  return [v](double) {
    Form<Jet1> h(3);
    h.set({1, 2, 3}, Jet1(v));
    return h;
  };
}

InvariantChart flat_torus_chart(double length) {
  ChartDescriptor d{"flat", {{"L", length}}, {DomainKind::periodic, 0.0, length}, 64};
  return InvariantChart(
      d, [](const Jet2&) { return Profiles{Jet2(1.0), Jet2(1.0), Jet2(1.0)}; }, 1.0, StructureMode::abelian);
}

namespace {

struct Wave {
  double c0, c1, c2, freq, phase;
  template <class T>
  T operator()(const T& x) const {
    using std::sin;
    return T(c0) + c1 * x + c2 * sin(freq * x + T(phase));
  }
};

Wave draw_wave(std::mt19937_64& rng, double amp) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> f(0.5, 3.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * pi);
  return {amp * u(rng), amp * u(rng), amp * u(rng), f(rng), ph(rng)};
}

}  // namespace

RandomDraw random_draw(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Wave wa = draw_wave(rng, 0.3), wb = draw_wave(rng, 0.3), wc = draw_wave(rng, 0.3);
  std::array<Wave, 4> wh{}, ww{};
  for (auto& w : wh) w = draw_wave(rng, 1.0);
  for (auto& w : ww) w = draw_wave(rng, 1.0);

  ChartDescriptor d{"random", {{"seed", static_cast<double>(seed)}}, {DomainKind::interval, 0.0, 1.0}, 64};
  InvariantChart chart(
      d, [wa, wb, wc](const Jet2& x) { return Profiles{exp(wa(x)), exp(wb(x)), exp(wc(x))}; }, 16.0 * pi * pi);
  FormField torsion = [wh](double x) {
    Form<Jet1> h(3);
    for (int s = 0; s < 4; ++s) h[s] = wh[s](Jet1::variable(x));
    return h;
  };
  FormField one_form = [ww](double x) {
    Form<Jet1> w(1);
    for (int s = 0; s < 4; ++s) w[s] = ww[s](Jet1::variable(x));
    return w;
  };
  return {chart, torsion, one_form};
}

InvariantChart make_chart(const ChartDescriptor& d) {
  auto param = [&d](const char* key, double fallback) {
    auto it = d.params.find(key);
    return it == d.params.end() ? fallback : it->second;
  };
  if (d.type == "bonneau") return bonneau_chart(param("k", 0.0), d.grid).chart;
  if (d.type == "round") return round_s4_chart();
  if (d.type == "product") return product_chart(param("b0", 1.0), param("L", 1.0)).chart;
  if (d.type == "flat") return flat_torus_chart(param("L", 1.0));
  if (d.type == "random") return random_draw(static_cast<std::uint64_t>(param("seed", 0.0))).chart;
  throw std::invalid_argument("unknown chart type: " + d.type);
}

}  // namespace skew
