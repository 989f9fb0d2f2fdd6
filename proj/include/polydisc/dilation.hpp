#pragma once

#include <optional>
#include <vector>

#include "polydisc/colligation.hpp"
#include "polydisc/hardy_model.hpp"
#include "polydisc/operator_core.hpp"
#include "polydisc/polynomial.hpp"

namespace polydisc {

enum class DilationMode { FiniteRank, General };

/// Per original coordinate, one model operator on the (n-1)-variable space:
/// either the shift in a slot or multiplication by a symbol.
struct CoordinateAssignment {
  bool is_symbol = false;
  int shift_slot = 0;
  std::optional<AnalyticSymbol> symbol;
};

struct DilationPackage {
  DilationMode mode = DilationMode::FiniteRank;
  int p = 0;
  int q = 0;
  CanonicalEmbedding embedding;
  std::vector<CoordinateAssignment> coords;  // index i-1 for coordinate i
  std::vector<UnitaryColligation> colligations;
};

/// Dilation with one rational inner symbol in slot q-1, built from the
/// lemma-pair unitary on the compressed defect spaces of T_hat_p, T_hat_q.
DilationPackage build_finite_rank_dilation(const OperatorTuple& t, int p, int q,
                                           const ToleranceConfig& tol, int cutoff);

/// Dilation with two degree-1 symbols in slot p forming a commuting
/// isometric pair with product z_p I, over the embedding of the product
/// subtuple composed with the isometry V into the padded space.
DilationPackage build_general_dilation(const OperatorTuple& t, int p, int q,
                                       const ToleranceConfig& tol, int cutoff,
                                       int extra_pad = 0);

struct DilationReport {
  std::vector<double> coordinate_residuals;
  double isometry_residual = 0.0;
  double symbol_form_residual = 0.0;  // degree-1 / column-isometry check
  double max_coordinate_residual() const;
};

/// Coefficientwise intertwining residuals Pi T_i^* = V_i^* Pi, computed on
/// demand so the comparison carries no truncation leakage; rational symbol
/// series are extended to a tail below eps_residual using rho(T_q).
DilationReport verify_dilation(const DilationPackage& pkg, const OperatorTuple& t,
                               int cutoff, const ToleranceConfig& tol);

/// Pi^* (model operator for coordinate i) Pi as a matrix on H.
Matrix compress_coordinate(const DilationPackage& pkg, int i, int cutoff);

/// Pi^* p(model operators) Pi.
Matrix compress_polynomial(const DilationPackage& pkg, const Polynomial& poly,
                           int cutoff);

}  // namespace polydisc
