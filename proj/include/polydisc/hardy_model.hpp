#pragma once

#include <map>
#include <vector>

#include "polydisc/colligation.hpp"
#include "polydisc/operator_core.hpp"
#include "polydisc/types.hpp"

namespace polydisc {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& k);

/// Sparse element of a truncated vector-valued Hardy space: multi-index to
/// coefficient vector. Absent indices are zero.
struct HardyVector {
  int vars = 0;
  int coeff_dim = 0;
  int cutoff = 0;
  std::map<MultiIndex, Vector> coeffs;

  double squared_norm() const;
  Vector coeff(const MultiIndex& k) const;
  void set(const MultiIndex& k, Vector v);
};

/// Truncated canonical isometry h -> sum_k z^k D T^{*k} h for a pure
/// Szego-positive tuple, with coefficients compressed through the defect
/// basis and optionally pushed through a fixed post-isometry.
struct CanonicalEmbedding {
  OperatorTuple tuple;
  DefectData defect;
  Matrix post;  // 0x0 means identity
  int cutoff = 8;

  int vars() const { return tuple.n(); }
  int coeff_dim() const {
    return post.size() > 0 ? static_cast<int>(post.rows()) : defect.rank;
  }
  /// Single coefficient, computed on demand.
  Vector coefficient(const MultiIndex& k, const Vector& h) const;
  Vector compress(const Vector& x) const;
};

HardyVector embed(const CanonicalEmbedding& e, const Vector& h);
HardyVector embed(const CanonicalEmbedding& e, const Vector& h, int cutoff);

/// ||h||^2 minus the truncated coefficient mass; nonnegative and
/// nonincreasing in the cutoff.
double embedding_residual(const CanonicalEmbedding& e, const Vector& h, int cutoff);

/// Upper bound on the coefficient mass outside the cutoff hypercube for a
/// unit vector: sum over variables of sum_{j > cutoff} ||T_i^{*j}||^2.
double embedding_tail_bound(const CanonicalEmbedding& e, int cutoff);

HardyVector shift_adjoint(const HardyVector& v, int slot);
HardyVector shift_forward(const HardyVector& v, int slot, int cutoff);

/// Coefficientwise convolution with the symbol's Taylor coefficients along
/// its slot, truncated at the cutoff.
HardyVector symbol_mult(const HardyVector& v, const AnalyticSymbol& phi,
                        int cutoff);
HardyVector symbol_mult_adjoint(const HardyVector& v, const AnalyticSymbol& phi,
                                int cutoff);

/// Enumerates the hypercube of multi-indices with each component <= cutoff.
std::vector<MultiIndex> index_hypercube(int vars, int cutoff);

}  // namespace polydisc
