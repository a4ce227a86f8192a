#pragma once

// Λ+ ⊕ Λ- block structure of the curvature operator of ∇ = ∇^g + ½H, and the
// Einstein-with-skew-torsion tensor
//   E = Z^∇ + S(∇*H) + (*dH/4) g,
// which the Ricci contraction carries onto the upper right block B.

#include "json.hpp"
#include "skew/charts.hpp"
#include "skew/connections.hpp"

namespace skew {

struct DecompositionReport {
  double x = 0.0;
  Mat6 op = Mat6::Zero();
  Mat3 A, B, C, D;
  Mat3 Wplus, Wminus;       // operational: trace-free part of A ∓ ¼ (d*H)± term
  Mat3 Wplus_g, Wminus_g;   // from the Levi-Civita operator
  double s_nabla = 0.0;
  double s_g = 0.0;
  double star_dH = 0.0;
  KForm dstarH_plus{2};
  KForm dstarH_minus{2};
  Mat4 Z_nabla;
  Mat4 einstein_tensor;

  double residual_a = 0.0;  // block minus closed formula, max entry
  double residual_b = 0.0;
  double residual_c = 0.0;
  double residual_d = 0.0;
  double weyl_independence = 0.0;  // |W± − W±^g|
  double core_asymmetry = 0.0;     // asymmetry left after removing the (d*H)± terms
  double trace_a = 0.0;            // |tr A − 3(s/12 − *dH/4)|
  double einstein_trace = 0.0;     // |tr E|

  double reconstruction_residual() const;
  /// max |E_ij|
  double einstein_residual() const;
  /// Frobenius norm of B; equals ½|E| through the Ricci contraction.
  double einstein_block_norm() const { return B.norm(); }
};

DecompositionReport decompose(const InvariantChart& chart, const FormField& H, double x);

struct EinsteinCheck {
  double tensor = 0.0;        // sup_x max |E_ij|
  double block = 0.0;         // sup_x |B|
  double scale_mismatch = 0.0;  // sup_x | |B| − ½|E| |
};

EinsteinCheck einstein_residual(const InvariantChart& chart, const FormField& H, int nodes = 256);

struct ZNablaCheck {
  double h_formula = 0.0;    // Z^∇ − (Z^g + ½ h⊗h − ⅛|h|² g)
  double z_nabla = 0.0;  // |Z^∇| itself
};

ZNablaCheck z_nabla_check(const InvariantChart& chart, const FormField& H, int nodes = 256);

/// Per-node block norms and sup residuals.
nlohmann::json decomposition_json(const InvariantChart& chart, const FormField& H, int nodes);

}  // namespace skew
