#pragma once

#include <utility>
#include <vector>

#include "polydisc/types.hpp"

namespace polydisc {

/// Finite list of monomials in n variables.
struct Polynomial {
  int vars = 0;
  std::vector<std::pair<std::vector<int>, Complex>> terms;

  Complex eval(const std::vector<Complex>& z) const;
  int degree() const;
  /// sum |c_k| * |k|, a Lipschitz bound of the polynomial on the closed
  /// polydisc with respect to torus angles.
  double lipschitz() const;
};

}  // namespace polydisc
