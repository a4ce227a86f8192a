#include "skew/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace skew {

namespace {

QuadratureRule build_rule(int n) {
  const std::vector<double> positive = boost::math::legendre_p_zeros<double>(n);
  QuadratureRule rule;
  for (double z : positive) {
    const double dp = boost::math::legendre_p_prime<double>(n, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes.push_back(z);
    rule.weights.push_back(w);
    if (z != 0.0) {
      rule.nodes.push_back(-z);
      rule.weights.push_back(w);
    }
  }
  std::vector<std::size_t> order(rule.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rule.nodes[a] < rule.nodes[b]; });
  QuadratureRule sorted;
  for (std::size_t i : order) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  return sorted;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_rule(n));
  return *slot;
}

}  // namespace skew
