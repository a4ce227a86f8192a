#pragma once

// Frame connections on invariant charts. Coefficients Γ(i,j,k) = g(∇_{e_i} e_j, e_k).
// Curvature components follow R(X,Y,Z,W) = g(R(X,Y)W, Z), so that
// R(e_1,e_2,e_1,e_2) = +1 on the unit sphere and the torsion expansion of R^∇
// carries the signs written below.

#include <array>
#include <functional>

#include "skew/charts.hpp"
#include "skew/frame_algebra.hpp"

namespace skew {

struct ConnectionPoint {
  FramePoint frame;
  Tensor3<Jet1> gamma;
};

class AffineConnection {
 public:
  using CoefficientFn = std::function<Tensor3<Jet1>(const FramePoint&)>;

  AffineConnection(InvariantChart chart, CoefficientFn gamma, bool metric_compatible);

  const InvariantChart& chart() const { return chart_; }
  bool metric_compatible() const { return metric_; }
  ConnectionPoint at(double x) const;
  Tensor3<Jet1> coefficients(const FramePoint& fp) const { return gamma_(fp); }

 private:
  InvariantChart chart_;
  CoefficientFn gamma_;
  bool metric_;
};

/// Koszul formula in the frame: Γ_ijk = ½(c_ijk − c_ikj − c_jki), c_ijk = g([e_i,e_j], e_k).
AffineConnection levi_civita(const InvariantChart& chart);

/// ∇ = ∇^g + ½H. Throws DomainError unless H has degree 3.
AffineConnection with_skew_torsion(const AffineConnection& lc, FormField H);

/// Torsion T(i,j,k) = g(T(e_i,e_j), e_k).
Tensor3<double> torsion(const ConnectionPoint& p);

/// Packs a totally antisymmetric rank-3 array into a 3-form; DomainError otherwise.
KForm three_form_from_components(const Tensor3<double>& t, double tol = 1e-12);

/// (Dg)(i; j,k) = −Γ(i,j,k) − Γ(i,k,j).
Tensor3<double> metric_derivative(const ConnectionPoint& p);

Rank4 curvature(const ConnectionPoint& p);
Rank4 curvature(const AffineConnection& conn, double x);

/// R^g plus the quadratic and ∇^g H terms of the skew-torsion expansion.
Rank4 curvature_via_expansion(const InvariantChart& chart, const FormField& H, double x);

struct RicciData {
  Mat4 ric;  // Ric(e_i, e_j) = Σ_k R(e_k, e_i, e_k, e_j)
  double scalar = 0.0;
};

RicciData ricci_and_scalar(const Rank4& r);

// --- Invariant exterior calculus -----------------------------------------

KForm exterior_derivative(const FramePoint& fp, const Form<Jet1>& a);

/// d* = −*d* (dimension four, every degree).
KForm codifferential(const FramePoint& fp, const Form<Jet1>& a);

/// Entry i is ∇_{e_i} α.
std::array<KForm, 4> covariant_derivative(const ConnectionPoint& p, const Form<Jet1>& a);

/// −Σ_i e_i ⌟ ∇^g_{e_i} α, for cross-checking `codifferential`.
KForm codifferential_via_connection(const ConnectionPoint& lc, const Form<Jet1>& a);

/// M(i,j) = (∇_{e_i} h)(e_j).
Mat4 covariant_derivative_matrix(const ConnectionPoint& p, const Form<Jet1>& one_form);

struct ExteriorData {
  KForm dH{4};
  double star_dH = 0.0;
  KForm dstar_H{2};
  KForm h{1};        // *H
  Mat4 nabla_h;      // ∇^g h
  KForm dh{2};
  double dstar_h = 0.0;
  double trace_identity = 0.0;   // |tr S(∇^g h) + d*h|
  double cancellation = 0.0;     // |d*h − *dH|
  double codifferential_routes = 0.0;  // −*d*H against −Σ e_i⌟∇_i H
};

ExteriorData exterior_ops(const InvariantChart& chart, const FormField& H, double x);

// --- Identity suite ----------------------------------------------------------

struct IdentityResiduals {
  double metric_antisymmetry = 0.0;  // R_ijkl + R_ijlk
  double torsion_recovery = 0.0;
  double curvature_cross_path = 0.0;
  double bianchi = 0.0;
  double bianchi_flipped = 0.0;  // same with +dH
  double swap = 0.0;
  double swap_flipped = 0.0;     // same with +½dH
  double ricci_torsion = 0.0;
  double ricci_antisymmetric = 0.0;
  double scalar = 0.0;
  double ricci_in_h = 0.0;          // with −½ *dh
  double ricci_in_h_flipped = 0.0;  // +½ *dh
  double same_derivative = 0.0;
  double z_nabla = 0.0;
  double exterior = 0.0;  // worst of the ExteriorData consistency residuals

  void absorb(const IdentityResiduals& o);
  /// Every identity in the form that holds under the module's conventions.
  double worst() const;
  bool bianchi_minus_dh_holds(double tol) const { return bianchi <= tol; }
  bool ricci_in_h_minus_sign_holds(double tol) const { return ricci_in_h <= tol; }
};

IdentityResiduals identity_residuals(const InvariantChart& chart, const FormField& H, double x);

/// Sup of the pointwise residuals over an n-node grid.
IdentityResiduals identity_suite(const InvariantChart& chart, const FormField& H, int nodes = 64);

}  // namespace skew
