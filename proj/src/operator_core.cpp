#include "polydisc/operator_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace polydisc {

double op_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_radius(const Matrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

OperatorTuple::OperatorTuple(std::vector<Matrix> operators)
    : ops(std::move(operators)) {
  if (ops.empty()) throw InputError("tuple must contain at least one operator");
  const auto d = ops[0].rows();
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != ops[i].cols())
      throw InputError("operator " + std::to_string(i + 1) + " is not square");
    if (ops[i].rows() != d)
      throw InputError("operator " + std::to_string(i + 1) +
                       " has mismatched dimension");
  }
}

ClassReport validate_tuple(const OperatorTuple& t, const ToleranceConfig& tol) {
  ClassReport rep;
  rep.max_norm = 0.0;
  for (const auto& a : t.ops) rep.max_norm = std::max(rep.max_norm, op_norm(a));
  rep.is_contractive = rep.max_norm <= 1.0 + tol.eps_contraction;

  rep.max_commutator = 0.0;
  for (int i = 0; i < t.n(); ++i)
    for (int j = i + 1; j < t.n(); ++j)
      rep.max_commutator = std::max(
          rep.max_commutator, op_norm(t.ops[i] * t.ops[j] - t.ops[j] * t.ops[i]));
  rep.is_commuting = rep.max_commutator <= tol.eps_commute * t.dim();
  return rep;
}

Matrix szego_defect(const OperatorTuple& t) {
  Matrix s = Matrix::Identity(t.dim(), t.dim());
  for (const auto& a : t.ops) s -= (a * s * a.adjoint()).eval();
  return 0.5 * (s + s.adjoint().eval());
}

DefectData defect_sqrt(const Matrix& s, const ToleranceConfig& tol) {
  const Matrix sym = 0.5 * (s + s.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = 1.0 + ev.cwiseAbs().maxCoeff();
  const double eps_psd = tol.eps_psd * scale;
  if (ev.minCoeff() < -eps_psd)
    throw NotSzegoPositive("defect has eigenvalue " +
                           std::to_string(ev.minCoeff()) + " below -eps_psd");
  ev = ev.cwiseMax(0.0);

  DefectData d;
  d.gram = sym;
  d.sqrt = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
  const double ev_max = ev.maxCoeff();
  const double cutoff = tol.eps_rank * ev_max;
  // eigenvalues ascending; collect the significant ones in descending order
  std::vector<int> keep;
  for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i)
    if (ev_max > 0.0 && ev(i) > cutoff) keep.push_back(i);
  d.rank = static_cast<int>(keep.size());
  d.basis = Matrix(s.rows(), d.rank);
  for (int c = 0; c < d.rank; ++c) d.basis.col(c) = es.eigenvectors().col(keep[c]);
  // pin the eigenvector phases: largest-modulus entry real positive
  for (int c = 0; c < d.rank; ++c) {
    int idx = 0;
    d.basis.col(c).cwiseAbs().maxCoeff(&idx);
    const Complex v = d.basis(idx, c);
    if (std::abs(v) > 0.0) d.basis.col(c) *= std::conj(v) / std::abs(v);
  }
  return d;
}

std::vector<bool> is_pure(const OperatorTuple& t, const ToleranceConfig& tol) {
  constexpr int kMaxPower = 512;
  std::vector<bool> flags;
  flags.reserve(t.ops.size());
  for (const auto& a : t.ops) {
    const double rho = spectral_radius(a);
    bool pure = rho <= 1.0 - tol.rho_pure;
    if (pure) {
      const double base = rho + tol.rho_pure;
      const int m = (base <= 0.0)
                        ? 1
                        : static_cast<int>(
                              std::ceil(std::log(tol.eps_residual) / std::log(base)));
      if (m >= 1 && m <= kMaxPower) {
        Matrix power = Matrix::Identity(a.rows(), a.cols());
        const Matrix adj = a.adjoint();
        for (int i = 0; i < m; ++i) power = adj * power;
        // the power check confirms; non-normal transients may need slack
        if (op_norm(power) >= std::sqrt(tol.eps_residual)) pure = false;
      }
    }
    flags.push_back(pure);
  }
  return flags;
}

OperatorTuple subtuple(const OperatorTuple& t, int drop) {
  if (drop < 1 || drop > t.n()) throw InputError("subtuple index out of range");
  std::vector<Matrix> out;
  for (int i = 1; i <= t.n(); ++i)
    if (i != drop) out.push_back(t.op(i));
  return OperatorTuple(std::move(out));
}

OperatorTuple subtuple_pq(const OperatorTuple& t, int p, int q) {
  if (p < 1 || q > t.n() || p >= q) throw InputError("require 1 <= p < q <= n");
  std::vector<Matrix> out;
  for (int i = 1; i <= t.n(); ++i)
    if (i != p && i != q) out.push_back(t.op(i));
  return OperatorTuple(std::move(out));
}

OperatorTuple product_tuple(const OperatorTuple& t, int p, int q) {
  if (p < 1 || q > t.n() || p >= q) throw InputError("require 1 <= p < q <= n");
  std::vector<Matrix> out;
  for (int i = 1; i <= t.n(); ++i) {
    if (i == q) continue;
    out.push_back(i == p ? Matrix(t.op(p) * t.op(q)) : t.op(i));
  }
  return OperatorTuple(std::move(out));
}

ClassReport class_membership(const OperatorTuple& t, int p, int q,
                             const ToleranceConfig& tol) {
  if (t.n() < 3) throw InputError("class membership needs n >= 3");
  if (p < 1 || q > t.n() || p >= q) throw InputError("require 1 <= p < q <= n");
  ClassReport rep = validate_tuple(t, tol);
  rep.p = p;
  rep.q = q;
  rep.pure_flags = is_pure(t, tol);

  const OperatorTuple hat_p = subtuple(t, p);
  const OperatorTuple hat_q = subtuple(t, q);
  bool hat_p_pure = true;
  for (int i = 1; i <= t.n(); ++i)
    if (i != p && !rep.pure_flags[static_cast<size_t>(i - 1)]) hat_p_pure = false;

  bool szego_ok = true;
  for (const auto& [label, sub] :
       {std::pair<std::string, const OperatorTuple*>{"T_hat_p", &hat_p},
        {"T_hat_q", &hat_q}}) {
    const Matrix s = szego_defect(*sub);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    rep.szego_min_eig[label] = lo;
    if (lo < -tol.eps_psd * (1.0 + op_norm(s))) szego_ok = false;
  }

  rep.in_class = rep.is_contractive && rep.is_commuting && hat_p_pure && szego_ok;
  return rep;
}

OperatorTuple scale_tuple(const OperatorTuple& t, double r) {
  if (!(r > 0.0 && r < 1.0)) throw InputError("scale factor must lie in (0,1)");
  std::vector<Matrix> out;
  out.reserve(t.ops.size());
  for (const auto& a : t.ops) out.push_back(r * a);
  return OperatorTuple(std::move(out));
}

std::pair<double, double> defect_identity_check(const OperatorTuple& t, int p,
                                                int q,
                                                const ToleranceConfig& /*tol*/) {
  const Matrix dpq2 = szego_defect(product_tuple(t, p, q));
  const Matrix dp2 = szego_defect(subtuple(t, p));
  const Matrix dq2 = szego_defect(subtuple(t, q));
  const Matrix& tp = t.op(p);
  const Matrix& tq = t.op(q);
  const double r1 = op_norm(dpq2 - (dp2 + tq * dq2 * tq.adjoint()));
  const double r2 = op_norm(dpq2 - (tp * dp2 * tp.adjoint() + dq2));
  return {r1, r2};
}

}  // namespace polydisc
