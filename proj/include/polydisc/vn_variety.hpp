#pragma once

#include <string>
#include <vector>

#include "polydisc/colligation.hpp"
#include "polydisc/operator_core.hpp"
#include "polydisc/polynomial.hpp"

namespace polydisc {

/// One boundary point of the variety: z_1 = lambda, z_2 = e^{i theta1};
/// the remaining coordinates range over the attached torus grid.
struct VarietySample {
  char part = 'c';  // 'u' or 'c'
  Complex lambda;
  double theta1 = 0.0;
};

struct VarietySampleSet {
  std::vector<VarietySample> samples;
  int grid = 64;  // per-variable resolution, reused for the free angles
};

Matrix eval_poly_tuple(const Polynomial& p, const OperatorTuple& t);

/// Max of |p| over the G^n torus grid. A lower estimate of the true
/// supremum; the gap is at most lipschitz(p) * pi * sqrt(n) / G.
double torus_sup(const Polynomial& p, int grid);

/// Boundary samples of the variety attached to a rational inner symbol:
/// the constant term splits as unitary (+) c.n.u.; the u-part contributes
/// its fixed spectrum, the c-part the eigenvalues of the reduced transfer
/// function at each grid angle.
VarietySampleSet variety_from_symbol(const AnalyticSymbol& phi, int grid,
                                     const ToleranceConfig& tol);

double variety_sup(const Polynomial& p, const VarietySampleSet& samples);

struct VNReport {
  double op_norm = 0.0;
  double torus_sup = 0.0;
  double slack = 0.0;
  bool has_variety = false;
  double variety_sup = 0.0;
  bool classical_ok = true;
  bool refined_ok = true;
  int grid = 0;
  std::string notice;
};

/// One report per polynomial: operator norm against the grid supremum, and
/// against the variety supremum when the refined mode applies. Refined
/// evaluation is implemented for (p,q) = (1,2); other pairs fall back to
/// the classical comparison with a notice.
std::vector<VNReport> vn_report(const OperatorTuple& t, int p_idx, int q_idx,
                                const std::vector<Polynomial>& polys, int grid,
                                bool refined, const ToleranceConfig& tol);

}  // namespace polydisc
