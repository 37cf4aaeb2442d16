#pragma once

// Product rules on U3 built from one-dimensional Gauss rules.

#include <vector>

#include "sphcub/rule.hpp"

namespace sphcub {

/// Nodes strictly increasing, with matching positive weights.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [-1, 1] by Newton iteration on the
/// three-term recurrence.
Rule1D gauss_legendre(int m);

/// m-point Gauss-Chebyshev rule of the first kind: nodes cos((2i-1)pi/2m),
/// weights pi/m.
Rule1D chebyshev_first(int m);

/// 2m^2-point rule of degree 2m-1 on U3 with weights (pi/m) A_i, where A_i
/// are the Gauss-Legendre weights in z.
PointRule u3_product_rule(int m);

}  // namespace sphcub
