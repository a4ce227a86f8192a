#pragma once

// The connection induced on Λ+ by a metric connection, its curvature from the structure
// equation, and the ∇+ / ∇- comparison on Hom(Λ+, Λ+).
//
// so(3) ≅ Λ+ through E_s ↦ L_s = sd_form_as_operator(E_s) (|L_s|² = 4 entrywise), so a
// curvature endomorphism F(E_r) has Λ+ coordinates <F(E_r), L_s>/4, which are the rows
// (A | B) of the curvature operator.

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "skew/connections.hpp"

namespace skew {

struct InducedConnection {
  double x = 0.0;
  std::array<Mat3, 4> omega;       // ∇_{e_i} E_q = Σ_p omega[i](p,q) E_p
  std::array<Mat3, 4> omega_dx;    // x-derivatives of omega
  std::array<Mat3, 6> curvature;   // F(E_r), r over the SD basis
  Eigen::Matrix<double, 3, 6> coordinates;  // (s, r) = <F(E_r), L_s>/4
  double outside_span = 0.0;       // part of F(E_r) not spanned by the L_s; zero for metric ∇
};

InducedConnection induced_lambda_plus(const AffineConnection& conn, double x);

/// max over (p,q) of the norm of the anti-self-dual part of the 2-form F^{pq}.
double self_duality_residual(const InducedConnection& ic);

/// |F|² in the Λ+ identification: Σ coordinates².
double yang_mills_density(const InducedConnection& ic);

struct YangMillsCheck {
  double plus_minus_gap = 0.0;  // sup |ρ(∇+) − ρ(∇-)|
  double formula_gap = 0.0;     // sup |ρ(∇±) − (|W+|² + 3(s/12)² + |(d*H)+/2|²)|
  double action_plus = 0.0;
  double action_minus = 0.0;
};

YangMillsCheck yang_mills_density_check(const InvariantChart& chart, const FormField& H, int nodes = 256);

struct KillingCheck {
  double residual = 0.0;  // sup |S(∇^g h)|, h = *H
  double dH = 0.0;        // sup |dH|, the precondition
  bool closed = false;
};

KillingCheck killing_residual(const InvariantChart& chart, const FormField& H, int nodes = 256,
                              double closed_tolerance = 1e-9);

struct ProbeNode {
  double x = 0.0;
  std::vector<double> singular_values;  // ascending
  int kernel_dimension = 0;
  double gap = 0.0;             // first nonzero singular value over the largest kernel one
  double parallel_norm = -1.0;  // |∇⊗g| for the normalized kernel section; −1 when undefined
  std::array<double, 9> section{};
};

struct GaugeProbeReport {
  std::vector<ProbeNode> nodes;
  double singular_threshold_ratio = 1e-7;
  double parallel_threshold = 1e-6;
  double flat_threshold = 1e-10;     // largest singular value below this: both curvatures vanish
  double kernel_one_fraction = 0.0;
  double min_gap = 0.0;
  double sup_parallel = 0.0;
  double inf_parallel_middle = 0.0;  // inf over the middle half of the nodes
  double sup_parallel_middle = 0.0;
  std::string verdict;               // equivalent | inequivalent | inconclusive
  std::string reason;
};

/// Compares the Λ+ connections of ∇^g ± ½H.
GaugeProbeReport gauge_equivalence_probe(const InvariantChart& chart, const FormField& H, int nodes = 128);

nlohmann::json to_json(const GaugeProbeReport& r);

}  // namespace skew
