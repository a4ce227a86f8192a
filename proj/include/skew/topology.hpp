#pragma once

// Chern–Weil integrals of the curvature operator of ∇ = ∇^g + ½H over a chart.
// With the operator matrix m (column q = 𝓡(E_q)) and ε = diag(1,1,1,−1,−1,−1):
//   Euler density      Σ_pq ε_p ε_q m_pq² / 8π²  = (|A|² − |B|² − |C|² + |D|²) / 8π²
//   signature density  Σ_pq ε_q m_pq² / 12π²     = (|A|² − |B|² + |C|² − |D|²) / 12π²
//   p₁(Λ+) density     Σ_{p≤3,q} ε_q m_pq² / 2π² = (|A|² − |B|²) / 2π²
// For the Levi-Civita operator these reduce to Tr(*𝓡*𝓡)/8π² and Tr(𝓡*𝓡)/12π².

#include <functional>
#include <string>

#include "json.hpp"
#include "skew/charts.hpp"

namespace skew {

struct Integral {
  double value = 0.0;
  double error = 0.0;  // |I(2n) − I(n)|
  int nodes = 0;
  std::string scheme;
};

/// ∫ f · a b² c · orbit_volume dx by Gauss–Legendre on n and 2n nodes.
/// Throws EvaluationError on a non-finite integrand.
Integral integrate_invariant(const InvariantChart& chart, const std::function<double(double)>& f, int nodes = 256);

/// Single-rule value, no refinement.
double integrate_on(const InvariantChart& chart, const std::function<double(double)>& f, int nodes);

struct CurvatureDensities {
  double euler = 0.0;
  double signature = 0.0;
  double p1_plus = 0.0;
};

CurvatureDensities curvature_densities(const Mat6& op);
CurvatureDensities curvature_densities(const InvariantChart& chart, const FormField& H, double x);

struct EulerSignature {
  Integral chi;
  Integral tau;
};

EulerSignature euler_and_signature(const InvariantChart& chart, const FormField& H, int nodes = 256);

Integral pontryagin_lambda_plus(const InvariantChart& chart, const FormField& H, int nodes = 256);

struct TopologyReport {
  double chi = 0.0;
  double tau = 0.0;
  double p1_lambda_plus = 0.0;
  double inequality_margin = 0.0;  // 2χ − 3|τ|
  bool satisfied = false;
  bool einstein_warning = false;   // input is not Einstein with skew torsion
  double einstein_residual = 0.0;
  double min_p1_density = 0.0;
  Integral chi_integral;
  Integral tau_integral;
  Integral p1_integral;
};

TopologyReport hitchin_thorpe_report(const InvariantChart& chart, const FormField& H, int nodes = 256,
                                     double tolerance = 1e-6, double einstein_threshold = 1e-6);

nlohmann::json to_json(const Integral& i);
nlohmann::json to_json(const TopologyReport& r);

}  // namespace skew
