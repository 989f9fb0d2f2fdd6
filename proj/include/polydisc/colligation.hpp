#pragma once

#include <optional>
#include <vector>

#include "polydisc/operator_core.hpp"
#include "polydisc/types.hpp"

namespace polydisc {

/// Block unitary U = [A B; C D] : E (+) F -> E (+) F with declared partition
/// size dim_E. pad_dim records coordinates appended by unitary completion.
struct UnitaryColligation {
  Matrix U;
  int dim_E = 0;
  int pad_dim = 0;

  int total() const { return static_cast<int>(U.rows()); }
  int dim_F() const { return total() - dim_E; }
  Matrix A() const { return U.topLeftCorner(dim_E, dim_E); }
  Matrix B() const { return U.topRightCorner(dim_E, dim_F()); }
  Matrix C() const { return U.bottomLeftCorner(dim_F(), dim_E); }
  Matrix D() const { return U.bottomRightCorner(dim_F(), dim_F()); }
  UnitaryColligation adjoint() const;

  double unitarity_residual() const;
};

/// One-variable matrix function bound to a polydisc coordinate slot, either
/// a finite Taylor list or the transfer function of a colligation
/// (coefficients c0 = A, c_{m+1} = B D^m C, generated on demand).
struct AnalyticSymbol {
  int slot = 1;  // 1-based coordinate of the polydisc
  std::vector<Matrix> taylor;
  std::optional<UnitaryColligation> realization;

  bool rational() const { return realization.has_value(); }
  int value_dim() const;
  /// -1 means an infinite Taylor expansion (rational form).
  int degree() const;
  Matrix coefficient(int m) const;
  Matrix eval(Complex z) const;
};

/// Extends the isometric correspondence x_j -> y_j (columns of X and Y) to a
/// full unitary. The range part is the canonical map Y X^+; the orthogonal
/// complements on both sides are matched in SVD order with each complement
/// column phase-normalized (largest-modulus entry real positive), so the
/// completion is deterministic and, for one-dimensional complements,
/// independent of the factorization backend.
UnitaryColligation complete_to_unitary(const Matrix& X, const Matrix& Y,
                                       bool allow_padding, int extra_pad,
                                       const ToleranceConfig& tol);

/// tau_U(z) = A + z B (I - z D)^{-1} C by direct linear solve.
Matrix transfer_eval(const UnitaryColligation& u, Complex z);

/// || (I - tau^* tau) - (1-|z|^2) C^* (I - zbar D^*)^{-1} (I - z D)^{-1} C ||.
double schur_identity_residual(const UnitaryColligation& u, Complex z);

/// Taylor coefficients [A, BC, BDC, ...] of tau_U up to the given order.
std::vector<Matrix> transfer_taylor(const UnitaryColligation& u, int order);

/// Max over sampled boundary angles of ||Phi(e^{i theta})^* Phi - I||;
/// singular boundary points are nudged by 1e-9 in angle.
double inner_check(const AnalyticSymbol& phi, int samples);

struct CanonicalDecomposition {
  Matrix basis_u;
  Matrix basis_c;
  Matrix A_u;
  Matrix A_c;
};

/// Splits a contraction into its unitary and completely non-unitary parts by
/// subspace iteration on S_0 = ker(I - A^*A) cap ker(I - AA^*).
CanonicalDecomposition canonical_decomposition(const Matrix& a,
                                               const ToleranceConfig& tol);

/// U' = [A_c B; C|_{H_c} D] on H_c (+) F, verified unitary.
UnitaryColligation reduced_colligation(const UnitaryColligation& u,
                                       const Matrix& basis_c);

/// Residual of the series identity
///   D_p T_p^* = A D_p + sum_{i=0}^m B D^i C D_p T_q^{*(i+1)},
/// with U the Lemma-pair unitary on the compressed defect spaces of T.
double lemma32_series_check(const OperatorTuple& t, int p, int q,
                            const UnitaryColligation& u, int order,
                            const ToleranceConfig& tol);

}  // namespace polydisc
