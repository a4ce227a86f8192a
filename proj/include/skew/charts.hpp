#pragma once

// Cohomogeneity-one charts I × SU(2) with diagonal metric
//   ds² = a² dx² + b² [(σ¹)² + (σ²)²] + c² (σ³)²,   dσ^i = ½ ε_ijk σ^j ∧ σ^k,
// and the orthonormal frame e_0 = ∂_x / a, e_1 = X_1 / b, e_2 = X_2 / b, e_3 = X_3 / c
// (X_i dual to σ^i). Every field handled here is invariant: its frame components
// depend on x only.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "skew/frame_algebra.hpp"
#include "skew/jet.hpp"

namespace skew {

struct Profiles {
  Jet2 a;
  Jet2 b;
  Jet2 c;
};

enum class StructureMode { su2, abelian };

enum class DomainKind {
  interval,         // (lo, hi)
  lower_half_line,  // (-inf, hi), integrated through x = hi - tan(u), u in (0, pi/2)
  periodic,         // [lo, hi) with hi identified to lo
};

struct Domain {
  DomainKind kind = DomainKind::interval;
  double lo = 0.0;
  double hi = 1.0;
};

/// ∫ f dx ≈ Σ f(x) · weight over the nodes (open rule, endpoints never sampled).
struct GridNode {
  double x;
  double weight;
};

struct ChartDescriptor {
  std::string type;
  std::map<std::string, double> params;
  Domain domain;
  int grid = 256;
};

nlohmann::json to_json(const ChartDescriptor& d);
ChartDescriptor descriptor_from_json(const nlohmann::json& j);

/// Invariant frame form field: x ↦ frame components with their first x-derivative.
using FormField = std::function<Form<Jet1>(double x)>;

FormField zero_field(int degree);
FormField scale_field(FormField f, double s);
/// Applies the Hodge star pointwise.
FormField star_field(FormField f);

class InvariantChart {
 public:
  using ProfileFn = std::function<Profiles(const Jet2&)>;

  InvariantChart(ChartDescriptor descriptor, ProfileFn profiles, double orbit_volume,
                 StructureMode mode = StructureMode::su2);

  const ChartDescriptor& descriptor() const { return descriptor_; }
  const std::string& name() const { return descriptor_.type; }
  const Domain& domain() const { return descriptor_.domain; }
  double orbit_volume() const { return orbit_volume_; }
  StructureMode mode() const { return mode_; }

  bool interior(double x) const;

  /// Profiles and their first two x-derivatives. Throws DomainError off the open domain.
  Profiles profiles(double x) const;

  /// a b² c: the metric volume density against dx ∧ σ¹ ∧ σ² ∧ σ³.
  double volume_density(double x) const;

  std::vector<GridNode> grid(int n) const;

 private:
  ChartDescriptor descriptor_;
  ProfileFn profiles_;
  double orbit_volume_;
  StructureMode mode_;
};

/// Frame brackets [e_i, e_j] = Σ_k c(i,j,k) e_k, carried with their first x-derivative.
Tensor3<Jet1> structure_functions(const InvariantChart& chart, double x);

/// Everything a pointwise frame computation needs at one x.
struct FramePoint {
  double x = 0.0;
  double a = 1.0;
  Tensor3<Jet1> c;
};

FramePoint frame_point(const InvariantChart& chart, double x);

/// e_i(f) for an invariant scalar f(x): only the radial direction differentiates.
inline double frame_derivative(const FramePoint& fp, int i, const Jet1& f) {
  return i == 0 ? f.derivative(1) / fp.a : 0.0;
}

/// Σ_cyclic [[e_i, e_j], e_k]: components n for every (i, j, k).
double jacobi_residual(const FramePoint& fp);

// --- Concrete charts -------------------------------------------------------

struct BonneauParams {
  double k = 0.0;
  double gamma = 2.0;
  double n = 0.0;
};

BonneauParams bonneau_params(double k);

/// Ω²(x) from the direct formula 1 + n(...), for reference and tests.
double bonneau_omega2_direct(const BonneauParams& p, double x);

/// Ω²(x) / (k - x), evaluated without cancellation near either end of (-inf, k).
Jet2 bonneau_gap_ratio(const BonneauParams& p, const Jet2& x);
double bonneau_gap_ratio(const BonneauParams& p, double x);

struct ChartWithTorsion {
  InvariantChart chart;
  FormField torsion;
};

struct BonneauModel {
  InvariantChart chart;
  FormField torsion;  // H = 2 (k-x)/(1+x²)² dx ∧ σ¹ ∧ σ²
  BonneauParams params;
  ChartWithTorsion with_torsion(double sign = 1.0) const { return {chart, scale_field(torsion, sign)}; }
};

/// Checks k - x > 0 and Ω² > 0 (and finite profiles) at every node of an n-point grid.
/// Throws ParameterRangeError naming the first violating x.
void bonneau_positivity_scan(const BonneauParams& p, int nodes);

BonneauModel bonneau_chart(double k, int scan_nodes = 256);

/// Unit round S⁴: a = 1, b = c = sin(x)/2 on (0, π).
InvariantChart round_s4_chart();

struct ProductModel {
  InvariantChart chart;
  double b0;
  double length;
  /// Left (+1) or right (-1) trivialization torsion, H_{234} = ±1/b0 (one-based).
  FormField flat_torsion(int sign = 1) const;
};

/// S¹ × S³ with a = 1, b = c = b0, x periodic of circumference L.
ProductModel product_chart(double b0, double length);

/// Flat T⁴: a = b = c = 1 with abelian orbit brackets.
InvariantChart flat_torus_chart(double length = 1.0);

struct RandomDraw {
  InvariantChart chart;
  FormField torsion;
  FormField one_form;
};

/// Smooth random profiles on (0, 1), random invariant 3-form and 1-form.
RandomDraw random_draw(std::uint64_t seed);

/// Re-creates a chart from its descriptor (bonneau, round, product, flat, random).
InvariantChart make_chart(const ChartDescriptor& d);

}  // namespace skew
