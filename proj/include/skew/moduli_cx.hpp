#pragma once

// Invariant almost complex structures on the cohomogeneity-one charts and the radial
// coordinate R with log R = ∫ a/c dx.
//
// J_B pairs e_0 with e_3 and e_1 with e_2: its (1,0)-forms are θ¹ = e⁰ + i e³ and
// θ² = e¹ + i e², i.e. a dx + i c σ³ and b(σ¹ + i σ²).

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"
#include "skew/charts.hpp"

namespace skew {

struct InvariantACS {
  std::string name;
  Mat4 J;  // J e_j = Σ_i J(i,j) e_i, constant in the invariant frame
};

/// Validates J² = −Id and JᵀJ = Id; throws DomainError otherwise.
InvariantACS make_acs(std::string name, const Mat4& J);

/// e_0 → e_3, e_1 → e_2. On the Bonneau chart this is J_B, on the round chart J_r.
InvariantACS acs_bonneau();
InvariantACS acs_round();
/// e_0 → e_1, e_2 → e_3: mixes the radial direction with the orbit, a negative control.
InvariantACS acs_crossed();

/// sup over i, j, k of |N(e_i, e_j)^k| at x.
double nijenhuis_at(const InvariantChart& chart, const InvariantACS& J, double x);
/// sup over an n-node grid.
double nijenhuis_norm(const InvariantChart& chart, const InvariantACS& J, int nodes = 64);

/// sup over a grid of |dθ^a(v̄₁, v̄₂)| for θ¹ = e⁰ + i e³, θ² = e¹ + i e², with v̄₁ = e_0 + i e_3 and
/// v̄₂ = e_1 + i e_2 spanning the (0,1) vectors: the (0,2) part of dθ^a.
double ideal_closure_residual(const InvariantChart& chart, int nodes = 64);

/// R(x) = exp ∫_{x0}^{x} a/c dt on the Bonneau chart with parameter k, integrated adaptively in
/// s = log(k − t). Throws DomainError unless x, x0 < k and ParameterRangeError where Ω² ≤ 0.
double r_coordinate(double k, double x, double x0);

/// Same quadrature on any chart, directly in x. x and x0 must be interior.
double r_coordinate(const InvariantChart& chart, double x, double x0);

struct RSample {
  double x;
  double R;
};

/// R on the chart's n-node grid, normalized at x0, evaluated in parallel.
std::vector<RSample> r_profile(const InvariantChart& chart, double x0, int nodes);
std::vector<RSample> r_profile(double k, double x0, int nodes);

/// "x,R" header then one row per sample, 17 significant digits.
std::string r_profile_csv(const std::vector<RSample>& samples);

struct AsymptoticReport {
  double k = 0.0;
  double slope_k_end = 0.0;      // d log R / d(−log(k−x)) over k − x ∈ [1e-6, 1e-5]
  double slope_minus_inf = 0.0;  // d log R / d(−log|x|) over |x| ∈ [1e5, 1e6]
  double limit_k_end = 0.0;      // (k − x) R at k − x = 1e-6
  double limit_minus_inf = 0.0;  // |x| R at x = −1e6
  bool monotone = false;
  bool within(double tolerance = 0.01) const;
};

AsymptoticReport asymptotic_check(double k, int samples = 16);

nlohmann::json to_json(const AsymptoticReport& r);

}  // namespace skew
