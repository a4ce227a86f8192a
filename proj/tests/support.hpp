#pragma once

// Hand-rolled generators for property tests. Every generator takes an explicit seed so a
// failure can be replayed by its seed alone.

#include <cstdint>
#include <random>
#include <vector>

#include "skew/charts.hpp"
#include "skew/frame_algebra.hpp"

namespace skew::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  KForm form(int degree) {
    KForm f(degree);
    for (int i = 0; i < f.size(); ++i) f[i] = uniform();
    return f;
  }

  KForm self_dual() {
    KForm f(2);
    for (int s = 0; s < 3; ++s) f = f + uniform() * sd_basis()[s];
    return f;
  }

  KForm anti_self_dual() {
    KForm f(2);
    for (int s = 3; s < 6; ++s) f = f + uniform() * sd_basis()[s];
    return f;
  }

  Mat4 symmetric() {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) m(i, j) = m(j, i) = uniform();
    return m;
  }

  Mat4 trace_free_symmetric() { return trace_free(symmetric()); }

  /// Operator with symmetric 6×6 matrix (pair symmetry) and otherwise arbitrary entries.
  Mat6 symmetric_operator() {
    Mat6 m;
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) m(i, j) = m(j, i) = uniform();
    return m;
  }

  Mat6 general_operator() {
    Mat6 m;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = uniform();
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs(const KForm& f) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

inline double max_abs(const Rank4& r) { return r.max_abs(); }

/// A random smooth composition, run both on doubles and on jets.
struct Step {
  int op;
  double c;
};

template <class T>
T compose(const std::vector<Step>& prog, const T& x) {
  using std::atan;
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  T acc = x;
  for (const Step& s : prog) {
    switch (s.op) {
      case 0: acc = acc + s.c * x; break;
      case 1: acc = acc * (s.c + x * x); break;
      case 2: acc = acc / (1.5 + s.c * cos(x)); break;
      case 3: acc = exp(s.c * acc); break;
      case 4: acc = sin(acc + s.c); break;
      case 5: acc = cos(s.c * acc); break;
      case 6: acc = atan(acc * s.c); break;
      case 7: acc = sqrt(1.0 + acc * acc); break;
      default: acc = log(2.0 + sin(acc)) * s.c; break;
    }
  }
  return acc;
}

inline std::vector<Step> random_program(Gen& g) {
  std::vector<Step> p(static_cast<std::size_t>(g.integer(2, 6)));
  for (Step& s : p) s = {g.integer(0, 8), g.uniform(-0.9, 0.9)};
  return p;
}

/// An interior point of a chart, away from the ends.
inline double interior_point(const InvariantChart& chart, double t) {
  const Domain& d = chart.domain();
  if (d.kind == DomainKind::lower_half_line) return d.hi - std::tan(0.5 * M_PI * t);
  return d.lo + t * (d.hi - d.lo);
}

}  // namespace skew::testing
