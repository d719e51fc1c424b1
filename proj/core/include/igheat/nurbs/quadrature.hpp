#pragma once

#include <vector>

namespace igheat::nurbs {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> node;
  std::vector<double> weight;
};

/// Cached rule with n points (n >= 1). Nodes computed by Newton iteration
/// on the Legendre polynomial; accurate to machine precision.
const GaussRule& gauss_rule(int n);

}  // namespace igheat::nurbs
