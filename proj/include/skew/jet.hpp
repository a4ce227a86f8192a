#pragma once

// Truncated Taylor jets in one real variable.
//
// A Jet<N> carries the normalized Taylor coefficients f(x), f'(x), f''(x)/2, ...
// up to order N. Arithmetic and the elementary functions below propagate the
// chain rule exactly to that order, which is what the curvature code needs:
// profiles are carried as Jet<2>, everything derived from one derivative of
// them (structure functions, connection coefficients) as Jet<1>.

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>

namespace skew {

template <std::size_t N>
class Jet {
 public:
  static constexpr std::size_t order = N;

  constexpr Jet() = default;
  constexpr Jet(double value) { c_[0] = value; }  // NOLINT: constants promote implicitly

  /// Independent variable at x: value x, first derivative 1.
  static constexpr Jet variable(double x) {
    Jet j(x);
    if constexpr (N >= 1) j.c_[1] = 1.0;
    return j;
  }

  /// Build from derivatives f, f', f'', ... (not Taylor coefficients).
  static Jet from_derivatives(const std::array<double, N + 1>& d) {
    Jet j;
    double fact = 1.0;
    for (std::size_t k = 0; k <= N; ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      j.c_[k] = d[k] / fact;
    }
    return j;
  }

  constexpr double value() const { return c_[0]; }
  constexpr double coeff(std::size_t k) const { return c_[k]; }
  constexpr double& coeff(std::size_t k) { return c_[k]; }

  /// k-th derivative with respect to the jet variable.
  double derivative(std::size_t k = 1) const {
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return c_[k] * fact;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator-(const Jet& a) {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) r.c_[k] = -a.c_[k];
    return r;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == 0.0) throw std::domain_error("Jet division by a jet with zero value");
    Jet q;
    for (std::size_t k = 0; k <= N; ++k) {
      double s = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

  friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const Jet& j) {
    os << '[';
    for (std::size_t k = 0; k <= N; ++k) os << (k ? ", " : "") << j.c_[k];
    return os << ']';
  }

 private:
  std::array<double, N + 1> c_{};
};

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;

/// d/dx, losing one order.
template <std::size_t N>
Jet<N - 1> differentiate(const Jet<N>& f) {
  static_assert(N >= 1);
  Jet<N - 1> r;
  for (std::size_t k = 0; k + 1 <= N; ++k) r.coeff(k) = static_cast<double>(k + 1) * f.coeff(k + 1);
  return r;
}

/// Drop coefficients above order M.
template <std::size_t M, std::size_t N>
Jet<M> truncate(const Jet<N>& f) {
  static_assert(M <= N);
  Jet<M> r;
  for (std::size_t k = 0; k <= M; ++k) r.coeff(k) = f.coeff(k);
  return r;
}

namespace detail {
// Antiderivative with prescribed constant term.
template <std::size_t N>
Jet<N> integrate(const Jet<N - 1>& f, double constant) {
  Jet<N> r(constant);
  for (std::size_t k = 1; k <= N; ++k) r.coeff(k) = f.coeff(k - 1) / static_cast<double>(k);
  return r;
}
}  // namespace detail

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> e(std::exp(a.value()));
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.coeff(j) * e.coeff(k - j);
    e.coeff(k) = s / static_cast<double>(k);
  }
  return e;
}

template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
  if (!(a.value() > 0.0)) throw std::domain_error("Jet log of non-positive value");
  Jet<N> l(std::log(a.value()));
  for (std::size_t k = 1; k <= N; ++k) {
    double s = a.coeff(k);
    for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) * l.coeff(j) * a.coeff(k - j) / static_cast<double>(k);
    l.coeff(k) = s / a.value();
  }
  return l;
}

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
  if (!(a.value() > 0.0)) throw std::domain_error("Jet sqrt needs a positive value");
  Jet<N> s(std::sqrt(a.value()));
  for (std::size_t k = 1; k <= N; ++k) {
    double t = a.coeff(k);
    for (std::size_t j = 1; j < k; ++j) t -= s.coeff(j) * s.coeff(k - j);
    s.coeff(k) = t / (2.0 * s.value());
  }
  return s;
}

template <std::size_t N>
std::array<Jet<N>, 2> sincos(const Jet<N>& a) {
  Jet<N> s(std::sin(a.value()));
  Jet<N> c(std::cos(a.value()));
  for (std::size_t k = 1; k <= N; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      ss += static_cast<double>(j) * a.coeff(j) * c.coeff(k - j);
      cc -= static_cast<double>(j) * a.coeff(j) * s.coeff(k - j);
    }
    s.coeff(k) = ss / static_cast<double>(k);
    c.coeff(k) = cc / static_cast<double>(k);
  }
  return {s, c};
}

template <std::size_t N>
Jet<N> sin(const Jet<N>& a) {
  return sincos(a)[0];
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& a) {
  return sincos(a)[1];
}

template <std::size_t N>
Jet<N> atan(const Jet<N>& a) {
  if constexpr (N == 0) {
    return Jet<0>(std::atan(a.value()));
  } else {
    const Jet<N - 1> lower = truncate<N - 1>(a);
    const Jet<N - 1> rate = differentiate(a) / (Jet<N - 1>(1.0) + lower * lower);
    return detail::integrate<N>(rate, std::atan(a.value()));
  }
}

template <std::size_t N>
Jet<N> tan(const Jet<N>& a) {
  const auto sc = sincos(a);
  return sc[0] / sc[1];
}

/// Integer power by repeated multiplication.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, int p) {
  if (p < 0) return Jet<N>(1.0) / pow(a, -p);
  Jet<N> r(1.0);
  for (int i = 0; i < p; ++i) r = r * a;
  return r;
}

inline constexpr double value_of(double v) { return v; }
template <std::size_t N>
constexpr double value_of(const Jet<N>& j) {
  return j.value();
}

}  // namespace skew
