#include "skew/frame_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace skew {

namespace multi_index {

const std::array<std::array<int, 4>, 6>& table(int degree) {
  static const std::array<std::array<std::array<int, 4>, 6>, 5> tables = {{
      {{{0, 0, 0, 0}}},
      {{{0}, {1}, {2}, {3}}},
      {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}},
      {{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}},
      {{{0, 1, 2, 3}}},
  }};
  if (degree < 0 || degree > kDim) throw DegreeError("multi-index degree out of range");
  return tables[static_cast<std::size_t>(degree)];
}

int slot(int degree, std::span<const int> increasing) {
  const auto& tab = table(degree);
  for (int s = 0; s < count(degree); ++s) {
    if (std::equal(increasing.begin(), increasing.end(), tab[s].begin())) return s;
  }
  throw DomainError("not an increasing multi-index");
}

int sort_with_sign(std::span<int> idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

}  // namespace multi_index

KForm basis_form(std::initializer_list<int> idx) {
  KForm f(static_cast<int>(idx.size()));
  f.set(idx, 1.0);
  return f;
}

KForm covector(int i) { return basis_form({i}); }

KForm wedge(const KForm& a, const KForm& b) {
  const int k = a.degree() + b.degree();
  if (k > kDim) throw DegreeError("wedge product of total degree above 4");
  KForm r(k);
  const auto& ta = multi_index::table(a.degree());
  const auto& tb = multi_index::table(b.degree());
  for (int s = 0; s < a.size(); ++s) {
    if (a[s] == 0.0) continue;
    for (int t = 0; t < b.size(); ++t) {
      if (b[t] == 0.0) continue;
      std::array<int, 4> idx{};
      for (int i = 0; i < a.degree(); ++i) idx[i] = ta[s][i];
      for (int i = 0; i < b.degree(); ++i) idx[a.degree() + i] = tb[t][i];
      std::span<int> sp(idx.data(), static_cast<std::size_t>(k));
      const int sign = multi_index::sort_with_sign(sp);
      if (sign == 0) continue;
      r[multi_index::slot(k, sp)] += sign * a[s] * b[t];
    }
  }
  return r;
}

Mat4 to_matrix(const KForm& w) {
  if (w.degree() != 2) throw DegreeError("to_matrix expects a 2-form");
  Mat4 m = Mat4::Zero();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = w.at({i, j});
  return m;
}

KForm from_matrix(const Mat4& m) {
  KForm w(2);
  const auto& tab = multi_index::table(2);
  for (int s = 0; s < 6; ++s) w[s] = 0.5 * (m(tab[s][0], tab[s][1]) - m(tab[s][1], tab[s][0]));
  return w;
}

const std::array<KForm, 6>& sd_basis() {
  static const std::array<KForm, 6> basis = [] {
    const double r = 1.0 / std::sqrt(2.0);
    const KForm e01 = basis_form({0, 1}), e02 = basis_form({0, 2}), e03 = basis_form({0, 3});
    const KForm e12 = basis_form({1, 2}), e13 = basis_form({1, 3}), e23 = basis_form({2, 3});
    return std::array<KForm, 6>{r * (e01 + e23), r * (e02 - e13), r * (e03 + e12),
                                r * (e01 - e23), r * (e02 + e13), r * (e03 - e12)};
  }();
  return basis;
}

SdSplit sd_split(const KForm& w) {
  if (w.degree() != 2) throw DegreeError("sd_split expects a 2-form");
  const KForm s = hodge_star(w);
  return {0.5 * (w + s), 0.5 * (w - s)};
}

Eigen::Matrix<double, 6, 1> sd_coordinates(const KForm& w) {
  if (w.degree() != 2) throw DegreeError("sd_coordinates expects a 2-form");
  Eigen::Matrix<double, 6, 1> v;
  const auto& basis = sd_basis();
  for (int p = 0; p < 6; ++p) v(p) = inner(basis[p], w);
  return v;
}

Mat6 curvature_to_operator(const Rank4& r) {
  const auto& basis = sd_basis();
  const auto& tab = multi_index::table(2);
  Mat6 m = Mat6::Zero();
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      double s = 0.0;
      for (int u = 0; u < 6; ++u) {
        if (basis[p][u] == 0.0) continue;
        for (int v = 0; v < 6; ++v) {
          if (basis[q][v] == 0.0) continue;
          s += basis[p][u] * basis[q][v] * r(tab[u][0], tab[u][1], tab[v][0], tab[v][1]);
        }
      }
      m(q, p) = s;  // column p is the image of E_p
    }
  return m;
}

Rank4 operator_to_curvature(const Mat6& m) {
  const auto& basis = sd_basis();
  Rank4 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          double s = 0.0;
          for (int p = 0; p < 6; ++p) {
            const double ep = basis[p].at({i, j});
            if (ep == 0.0) continue;
            for (int q = 0; q < 6; ++q) s += m(q, p) * ep * basis[q].at({k, l});
          }
          r(i, j, k, l) = s;
        }
  return r;
}

Blocks blocks(const Mat6& m) {
  return {m.block<3, 3>(0, 0), m.block<3, 3>(0, 3), m.block<3, 3>(3, 0), m.block<3, 3>(3, 3)};
}

Mat6 assemble(const Blocks& b) {
  Mat6 m;
  m.block<3, 3>(0, 0) = b.a;
  m.block<3, 3>(0, 3) = b.b;
  m.block<3, 3>(3, 0) = b.c;
  m.block<3, 3>(3, 3) = b.d;
  return m;
}

namespace {

Mat3 commutator_action(const KForm& phi, int offset, double sign) {
  const auto& basis = sd_basis();
  const Mat4 f = to_matrix(phi);
  Mat3 m;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      const Mat4 eq = to_matrix(basis[offset + q]);
      m(p, q) = sign * inner(basis[offset + p], from_matrix(f * eq - eq * f));
    }
  return m;
}

double star_defect(const KForm& w, double sign) {
  const KForm d = hodge_star(w) - sign * w;
  return std::sqrt(norm2(d));
}

}  // namespace

Mat3 sd_form_as_operator(const KForm& phi) {
  if (phi.degree() != 2) throw DegreeError("sd_form_as_operator expects a 2-form");
  if (star_defect(phi, 1.0) > 1e-12 * (1.0 + std::sqrt(norm2(phi))))
    throw DomainError("sd_form_as_operator: form is not self-dual");
  return commutator_action(phi, 0, 1.0);
}

Mat3 asd_form_as_operator(const KForm& phi) {
  if (phi.degree() != 2) throw DegreeError("asd_form_as_operator expects a 2-form");
  if (star_defect(phi, -1.0) > 1e-12 * (1.0 + std::sqrt(norm2(phi))))
    throw DomainError("asd_form_as_operator: form is not anti-self-dual");
  return commutator_action(phi, 3, -1.0);
}

Mat3 ricci_contraction(const Mat4& t, double trace_tolerance) {
  if (std::abs(t.trace()) > trace_tolerance * (1.0 + t.norm()))
    throw DomainError("ricci_contraction: tensor is not trace-free");
  const auto& basis = sd_basis();
  const Mat4 ts = symmetric_part(t);
  Mat3 m;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) m(p, q) = -0.5 * (to_matrix(basis[p]) * ts * to_matrix(basis[3 + q])).trace();
  return m;
}

Rank4 kulkarni_nomizu(const Mat4& s, const Mat4& t) {
  Rank4 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l)
          r(i, j, k, l) = s(i, k) * t(j, l) + s(j, l) * t(i, k) - s(i, l) * t(j, k) - s(j, k) * t(i, l);
  return r;
}

Mat4 outer(const KForm& h) {
  if (h.degree() != 1) throw DegreeError("outer expects a 1-form");
  Vec4 v(h[0], h[1], h[2], h[3]);
  return v * v.transpose();
}

}  // namespace skew
