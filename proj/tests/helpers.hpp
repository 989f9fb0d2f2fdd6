#pragma once

#include <complex>
#include <random>
#include <vector>

#include "polydisc/operator_core.hpp"

namespace testutil {

using polydisc::Complex;
using polydisc::Matrix;
using polydisc::OperatorTuple;

inline Matrix random_gaussian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  return g;
}

// strict contraction with norm about `norm_target`
inline Matrix random_contraction(int dim, double norm_target, std::mt19937& rng) {
  Matrix g = random_gaussian(dim, rng);
  return g * (norm_target / polydisc::op_norm(g));
}

inline OperatorTuple random_diagonal_tuple(int n, int dim, double rho_max,
                                           std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Matrix> ops;
  for (int i = 0; i < n; ++i) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j)
      m(j, j) = std::polar(rho_max * std::sqrt(unif(rng)),
                           2.0 * M_PI * unif(rng));
    ops.emplace_back(std::move(m));
  }
  return OperatorTuple(std::move(ops));
}

// simultaneously diagonalizable non-normal commuting contractions
inline OperatorTuple random_conjugated_tuple(int n, int dim, double rho_max,
                                             std::mt19937& rng) {
  OperatorTuple diag = random_diagonal_tuple(n, dim, rho_max, rng);
  const Matrix s = random_gaussian(dim, rng) +
                   3.0 * Matrix::Identity(dim, dim);
  const Matrix sinv = s.inverse();
  double worst = 0.0;
  std::vector<Matrix> ops;
  for (const Matrix& d : diag.ops) {
    ops.push_back(s * d * sinv);
    worst = std::max(worst, polydisc::op_norm(ops.back()));
  }
  if (worst > rho_max)
    for (Matrix& m : ops) m *= rho_max / worst;
  return OperatorTuple(std::move(ops));
}

}  // namespace testutil
