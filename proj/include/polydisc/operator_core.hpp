#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polydisc/types.hpp"

namespace polydisc {

/// An ordered n-tuple of commuting d x d complex contraction matrices.
struct OperatorTuple {
  std::vector<Matrix> ops;

  OperatorTuple() = default;
  explicit OperatorTuple(std::vector<Matrix> operators);

  int n() const { return static_cast<int>(ops.size()); }
  int dim() const { return ops.empty() ? 0 : static_cast<int>(ops[0].rows()); }
  const Matrix& op(int i) const { return ops.at(static_cast<size_t>(i - 1)); }
};

/// Hermitian defect, its PSD square root and an orthonormal basis of the
/// defect space (eigenvectors above the relative rank cutoff, descending).
struct DefectData {
  Matrix gram;
  Matrix sqrt;
  Matrix basis;
  int rank = 0;

  /// Coordinates of D h in the defect basis: basis^H * sqrt (rank x dim).
  Matrix coord_map() const { return basis.adjoint() * sqrt; }
};

struct ClassReport {
  bool is_contractive = false;
  bool is_commuting = false;
  double max_norm = 0.0;
  double max_commutator = 0.0;
  std::vector<bool> pure_flags;  // one per operator of the full tuple
  std::map<std::string, double> szego_min_eig;
  bool in_class = false;
  int p = 0;
  int q = 0;
};

ClassReport validate_tuple(const OperatorTuple& t, const ToleranceConfig& tol);

/// Alternating Szego sum, computed by the two-term recursion
/// S(T_1..T_k) = S(T_1..T_{k-1}) - T_k S(T_1..T_{k-1}) T_k^*,
/// symmetrized to kill rounding.
Matrix szego_defect(const OperatorTuple& t);

DefectData defect_sqrt(const Matrix& s, const ToleranceConfig& tol);

/// Per-operator purity. In finite dimension purity is equivalent to
/// spectral radius < 1; decided with margin rho_pure plus a confirming
/// power check when the predicted power stays within the iteration cap.
std::vector<bool> is_pure(const OperatorTuple& t, const ToleranceConfig& tol);

OperatorTuple subtuple(const OperatorTuple& t, int drop);
OperatorTuple subtuple_pq(const OperatorTuple& t, int p, int q);

/// Removes T_q and replaces T_p by the product T_p T_q.
OperatorTuple product_tuple(const OperatorTuple& t, int p, int q);

ClassReport class_membership(const OperatorTuple& t, int p, int q,
                             const ToleranceConfig& tol);

OperatorTuple scale_tuple(const OperatorTuple& t, double r);

/// Residuals of the two defect identities
///   D^2_{pq} = D_p^2 + T_q D_q^2 T_q^*  and  D^2_{pq} = T_p D_p^2 T_p^* + D_q^2.
std::pair<double, double> defect_identity_check(const OperatorTuple& t, int p,
                                                int q,
                                                const ToleranceConfig& tol);

}  // namespace polydisc
