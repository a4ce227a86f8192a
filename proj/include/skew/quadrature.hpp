#pragma once

#include <vector>

namespace skew {

/// Gauss–Legendre rule on (-1, 1). Nodes ascending.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss–Legendre rule; safe to call concurrently.
const QuadratureRule& gauss_legendre(int n);

}  // namespace skew
