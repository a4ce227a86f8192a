#pragma once

// Exterior and tensor algebra over an oriented orthonormal frame e_1..e_4
// (stored zero-based as e_0..e_3). Volume form e^1 ∧ e^2 ∧ e^3 ∧ e^4.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <utility>

#include "skew/errors.hpp"
#include "skew/jet.hpp"

namespace skew {

inline constexpr int kDim = 4;

using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

namespace multi_index {

constexpr int count(int degree) {
  constexpr std::array<int, 5> binom{1, 4, 6, 4, 1};
  return binom[static_cast<std::size_t>(degree)];
}

/// Increasing multi-indices of the given degree, lexicographic order.
const std::array<std::array<int, 4>, 6>& table(int degree);

/// Slot of an increasing multi-index of length `degree`.
int slot(int degree, std::span<const int> increasing);

/// Sorts `idx` in place, returns the sign of the sorting permutation, or 0 on a repeated index.
int sort_with_sign(std::span<int> idx);

}  // namespace multi_index

/// Invariant k-form given by its frame components over increasing multi-indices.
/// T is double for pointwise algebra or a Jet for fields carrying x-derivatives.
template <class T>
class Form {
 public:
  explicit Form(int degree = 0) : degree_(degree) {
    if (degree < 0 || degree > kDim) throw DegreeError("form degree must lie in 0..4");
    c_.fill(T(0.0));
  }

  int degree() const { return degree_; }
  int size() const { return multi_index::count(degree_); }

  T& operator[](int slot) { return c_[static_cast<std::size_t>(slot)]; }
  const T& operator[](int slot) const { return c_[static_cast<std::size_t>(slot)]; }

  /// Component α(e_{i1}, ..., e_{ik}) for an arbitrary index order.
  T at(std::span<const int> idx) const {
    std::array<int, 4> tmp{};
    for (std::size_t i = 0; i < idx.size(); ++i) tmp[i] = idx[i];
    std::span<int> s(tmp.data(), idx.size());
    const int sign = multi_index::sort_with_sign(s);
    if (sign == 0) return T(0.0);
    const T& v = c_[static_cast<std::size_t>(multi_index::slot(degree_, s))];
    return sign > 0 ? v : T(-v);
  }
  T at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

  /// Assigns α(e_{i1}, ..., e_{ik}) = v, fixing all permuted components.
  void set(std::initializer_list<int> idx, const T& v) {
    std::array<int, 4> tmp{};
    std::size_t n = 0;
    for (int i : idx) tmp[n++] = i;
    std::span<int> s(tmp.data(), n);
    const int sign = multi_index::sort_with_sign(s);
    if (sign == 0) throw DomainError("repeated index in form component");
    c_[static_cast<std::size_t>(multi_index::slot(degree_, s))] = sign > 0 ? v : T(-v);
  }

  Form& operator+=(const Form& o) {
    check_degree(o);
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_degree(o);
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Form& operator*=(double s) {
    for (int i = 0; i < size(); ++i) c_[i] = c_[i] * s;
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(double s, Form a) { return a *= s; }
  friend Form operator*(Form a, double s) { return a *= s; }
  friend Form operator-(Form a) { return a *= -1.0; }

 private:
  void check_degree(const Form& o) const {
    if (o.degree_ != degree_) throw DegreeError("form degrees differ");
  }

  int degree_;
  std::array<T, 6> c_{};
};

using KForm = Form<double>;

/// Basis form e^{i1} ∧ ... ∧ e^{ik}.
KForm basis_form(std::initializer_list<int> idx);

/// Unit covector e^i.
KForm covector(int i);

KForm wedge(const KForm& a, const KForm& b);

template <class T>
Form<T> hodge_star(const Form<T>& a) {
  const int k = a.degree();
  Form<T> r(kDim - k);
  const auto& tab = multi_index::table(k);
  for (int s = 0; s < a.size(); ++s) {
    std::array<int, 4> perm{};
    std::array<bool, 4> used{};
    for (int i = 0; i < k; ++i) {
      perm[i] = tab[s][i];
      used[tab[s][i]] = true;
    }
    int n = k;
    for (int i = 0; i < kDim; ++i)
      if (!used[i]) perm[n++] = i;
    std::array<int, 4> sorted = perm;
    const int sign = multi_index::sort_with_sign(std::span<int>(sorted.data(), 4));
    const int target = multi_index::slot(kDim - k, std::span<const int>(perm.data() + k, kDim - k));
    r[target] = sign > 0 ? a[s] : T(-a[s]);
  }
  return r;
}

template <class T>
T inner(const Form<T>& a, const Form<T>& b) {
  if (a.degree() != b.degree()) throw DegreeError("inner product of forms of different degree");
  T s(0.0);
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// ‖α‖² summed over increasing multi-indices (‖e^{123}‖ = 1).
inline double norm2(const KForm& a) { return inner(a, a); }

/// Interior product e_i ⌟ α.
template <class T>
Form<T> interior(int i, const Form<T>& a) {
  if (a.degree() == 0) throw DegreeError("interior product of a 0-form");
  Form<T> r(a.degree() - 1);
  const auto& tab = multi_index::table(r.degree());
  for (int s = 0; s < r.size(); ++s) {
    std::array<int, 4> idx{};
    idx[0] = i;
    for (int j = 0; j < r.degree(); ++j) idx[j + 1] = tab[s][j];
    r[s] = a.at(std::span<const int>(idx.data(), a.degree()));
  }
  return r;
}

template <class T>
KForm values(const Form<T>& a) {
  KForm r(a.degree());
  for (int i = 0; i < a.size(); ++i) r[i] = value_of(a[i]);
  return r;
}

// --- Two-forms ---------------------------------------------------------------

/// Antisymmetric matrix with entries M(i,j) = ω(e_i, e_j).
Mat4 to_matrix(const KForm& two_form);
KForm from_matrix(const Mat4& m);

/// Ordered orthonormal basis E1+, E2+, E3+, E1-, E2-, E3- of Λ² (self-dual first).
const std::array<KForm, 6>& sd_basis();

struct SdSplit {
  KForm plus;
  KForm minus;
};
SdSplit sd_split(const KForm& two_form);

/// Coordinates of a 2-form in the SD basis; first three self-dual.
Eigen::Matrix<double, 6, 1> sd_coordinates(const KForm& two_form);

// --- Curvature tensors and operators ---------------------------------------

/// Rank-3 frame array, index order (i, j, k).
template <class T>
class Tensor3 {
 public:
  Tensor3() { d_.fill(T(0.0)); }
  T& operator()(int i, int j, int k) { return d_[static_cast<std::size_t>(16 * i + 4 * j + k)]; }
  const T& operator()(int i, int j, int k) const { return d_[static_cast<std::size_t>(16 * i + 4 * j + k)]; }

 private:
  std::array<T, 64> d_;
};

/// R_{ijkl} in frame components.
class Rank4 {
 public:
  Rank4() { d_.fill(0.0); }
  double& operator()(int i, int j, int k, int l) { return d_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return d_[idx(i, j, k, l)]; }
  Rank4& operator+=(const Rank4& o) {
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
    return *this;
  }
  Rank4& operator-=(const Rank4& o) {
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
    return *this;
  }
  friend Rank4 operator+(Rank4 a, const Rank4& b) { return a += b; }
  friend Rank4 operator-(Rank4 a, const Rank4& b) { return a -= b; }
  double max_abs() const {
    double m = 0.0;
    for (double v : d_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  static std::size_t idx(int i, int j, int k, int l) { return static_cast<std::size_t>(64 * i + 16 * j + 4 * k + l); }
  std::array<double, 256> d_;
};

/// Matrix of the map 𝓡 with g(𝓡(X∧Y), Z∧W) = R(X,Y,Z,W) in the SD basis, so that
/// column q is 𝓡(E_q) and entry (p,q) = R(E_q, E_p).
Mat6 curvature_to_operator(const Rank4& r);

/// Inverse of curvature_to_operator on tensors antisymmetric in (i,j) and in (k,l).
Rank4 operator_to_curvature(const Mat6& m);

struct Blocks {
  Mat3 a;  // Λ+ × Λ+
  Mat3 b;  // Λ+ × Λ-
  Mat3 c;  // Λ- × Λ+
  Mat3 d;  // Λ- × Λ-
};
Blocks blocks(const Mat6& m);
Mat6 assemble(const Blocks& b);

/// Commutator action of a self-dual 2-form on Λ+: M(p,q) = <E_p+, [φ, E_q+]>, 2-forms
/// read as matrices. Antisymmetric, with |M(1,2)| = √2 |φ| for φ along E_3+.
Mat3 sd_form_as_operator(const KForm& self_dual);

/// On Λ- for an anti-self-dual form, with the opposite bracket: M(p,q) = <E_p-, [E_q-, φ]>.
Mat3 asd_form_as_operator(const KForm& anti_self_dual);

/// The Λ+ → Λ- block of the curvature tensor ½ t ⊙ g for a trace-free symmetric t,
/// computed as -½ tr(E_p+ · t · E_q-) with 2-forms read as matrices.
Mat3 ricci_contraction(const Mat4& trace_free_symmetric, double trace_tolerance = 1e-9);

/// Kulkarni–Nomizu product (s ⊙ t)_{ijkl} = s_ik t_jl + s_jl t_ik - s_il t_jk - s_jk t_il.
Rank4 kulkarni_nomizu(const Mat4& s, const Mat4& t);

inline Mat4 symmetric_part(const Mat4& m) { return 0.5 * (m + m.transpose()); }
inline Mat4 antisymmetric_part(const Mat4& m) { return 0.5 * (m - m.transpose()); }
inline Mat4 trace_free(const Mat4& m) { return m - (m.trace() / 4.0) * Mat4::Identity(); }
inline Mat3 trace_free(const Mat3& m) { return m - (m.trace() / 3.0) * Mat3::Identity(); }

/// h ⊗ h for a 1-form.
Mat4 outer(const KForm& one_form);

}  // namespace skew
