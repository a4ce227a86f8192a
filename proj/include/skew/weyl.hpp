#pragma once

// Weyl connections D = ∇^g − ½ω(X)Y − ½ω(Y)X + ½g(X,Y)ω♯ with Dg = ω ⊗ g,
// and the link ω = *H to skew-torsion data.

#include "skew/charts.hpp"
#include "skew/connections.hpp"

namespace skew {

AffineConnection weyl_connection(const InvariantChart& chart, FormField omega);

struct WeylPoint {
  double torsion = 0.0;          // max |T^D|
  double metricity = 0.0;        // max |Dg − ω⊗g|
  Mat4 sym_ric_direct;           // S(Ric^D) from the curvature of D
  Mat4 sym_ric_formula;          // Ric^g − ½(|ω|² g − ω⊗ω) + S(∇^g ω) − ½(d*ω) g
  double s_direct = 0.0;
  double s_formula = 0.0;        // s^g − (3/2)|ω|² − 3 d*ω
};

WeylPoint weyl_point(const InvariantChart& chart, const FormField& omega, double x);

struct EinsteinWeylCheck {
  double route_direct = 0.0;    // sup |S₀(Ric^D)| via the curvature of D
  double route_formula = 0.0;   // same via the closed formulas
  double route_gap = 0.0;       // sup |S(Ric^D)_direct − S(Ric^D)_formula|
  double scalar_gap = 0.0;
  double torsion = 0.0;
  double metricity = 0.0;
};

EinsteinWeylCheck einstein_weyl_residual(const InvariantChart& chart, const FormField& omega, int nodes = 256);

struct RoundTrip {
  int sign = 0;                     // H′ = sign · H for ω = *H, H′ = −*ω
  double loop_residual = 0.0;       // sup |H′ − sign·H|
  double norm_gap = 0.0;            // sup | |H′| − |H| |
  double einstein_h = 0.0;          // Einstein tensor residual for H
  double einstein_h_prime = 0.0;    // for H′
  double einstein_minus_h_prime = 0.0;  // for −H′
};

RoundTrip torsion_weyl_roundtrip(const InvariantChart& chart, const FormField& H, int nodes = 256);

}  // namespace skew
