#include "polydisc/colligation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace polydisc {

namespace {

// Make the largest-modulus entry of each column real positive. Complement
// columns are only defined up to phase; this pins them down.
void normalize_column_phases(Matrix& m) {
  for (int c = 0; c < m.cols(); ++c) {
    int idx = 0;
    m.col(c).cwiseAbs().maxCoeff(&idx);
    const Complex v = m(idx, c);
    if (std::abs(v) > 0.0) m.col(c) *= std::conj(v) / std::abs(v);
  }
}

Matrix orthonormal_complement(const Matrix& q, int ambient) {
  if (q.cols() == 0) return Matrix::Identity(ambient, ambient);
  Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeFullU);
  Matrix comp = svd.matrixU().rightCols(ambient - q.cols());
  normalize_column_phases(comp);
  return comp;
}

Matrix null_basis(const Matrix& m, double thresh) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues();
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) <= thresh) keep.push_back(i);
  Matrix out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return out;
}

}  // namespace

UnitaryColligation UnitaryColligation::adjoint() const {
  UnitaryColligation out;
  out.U = Matrix(total(), total());
  out.U.topLeftCorner(dim_E, dim_E) = A().adjoint();
  out.U.topRightCorner(dim_E, dim_F()) = C().adjoint();
  out.U.bottomLeftCorner(dim_F(), dim_E) = B().adjoint();
  out.U.bottomRightCorner(dim_F(), dim_F()) = D().adjoint();
  out.dim_E = dim_E;
  out.pad_dim = pad_dim;
  return out;
}

double UnitaryColligation::unitarity_residual() const {
  const Matrix id = Matrix::Identity(total(), total());
  return std::max(op_norm(U.adjoint() * U - id), op_norm(U * U.adjoint() - id));
}

int AnalyticSymbol::value_dim() const {
  if (!taylor.empty()) return static_cast<int>(taylor[0].rows());
  if (realization) return realization->dim_E;
  return 0;
}

int AnalyticSymbol::degree() const {
  if (rational()) return -1;
  return static_cast<int>(taylor.size()) - 1;
}

Matrix AnalyticSymbol::coefficient(int m) const {
  if (m < 0) throw InputError("Taylor order must be nonnegative");
  if (!taylor.empty()) {
    if (m < static_cast<int>(taylor.size())) return taylor[static_cast<size_t>(m)];
    return Matrix::Zero(taylor[0].rows(), taylor[0].cols());
  }
  if (!realization) throw InputError("symbol has no form");
  if (m == 0) return realization->A();
  Matrix acc = realization->B();
  const Matrix d = realization->D();
  for (int i = 1; i < m; ++i) acc = acc * d;
  return acc * realization->C();
}

Matrix AnalyticSymbol::eval(Complex z) const {
  if (!taylor.empty()) {
    Matrix acc = taylor.back();
    for (int m = static_cast<int>(taylor.size()) - 2; m >= 0; --m)
      acc = taylor[static_cast<size_t>(m)] + z * acc;
    return acc;
  }
  if (!realization) throw InputError("symbol has no form");
  return transfer_eval(*realization, z);
}

UnitaryColligation complete_to_unitary(const Matrix& X, const Matrix& Y,
                                       bool allow_padding, int extra_pad,
                                       const ToleranceConfig& tol) {
  if (X.cols() != Y.cols())
    throw InputError("domain and image lists have different lengths");
  const Matrix gx = X.adjoint() * X;
  const Matrix gy = Y.adjoint() * Y;
  if (op_norm(gx - gy) > tol.eps_mat * (1.0 + op_norm(gx)))
    throw NotIsometric("Gram matrices of domain and image differ");

  const int da = static_cast<int>(X.rows());
  const int db = static_cast<int>(Y.rows());
  if ((da != db || extra_pad > 0) && !allow_padding)
    throw NeedsPadding("ambient dimensions differ and padding is disabled");
  const int dim = std::max(da, db) + extra_pad;

  Matrix xp = Matrix::Zero(dim, X.cols());
  xp.topRows(da) = X;
  Matrix yp = Matrix::Zero(dim, Y.cols());
  yp.topRows(db) = Y;

  UnitaryColligation out;
  out.pad_dim = dim - std::min(da, db);

  Eigen::JacobiSVD<Matrix> svd(xp, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol.eps_rank * sv(0)) ++rank;

  if (rank == 0) {
    out.U = Matrix::Identity(dim, dim);
    return out;
  }

  const Matrix qx = svd.matrixU().leftCols(rank);
  Matrix w = yp * svd.matrixV().leftCols(rank) *
             sv.head(rank).cwiseInverse().asDiagonal();
  {
    // nudge the image frame back to exact orthonormality
    Eigen::JacobiSVD<Matrix> pol(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    w = pol.matrixU() * pol.matrixV().adjoint();
  }

  out.U = w * qx.adjoint();
  if (rank < dim) {
    Matrix qcx = svd.matrixU().rightCols(dim - rank);
    normalize_column_phases(qcx);
    const Matrix qcy = orthonormal_complement(w, dim);
    out.U += qcy * qcx.adjoint();
  }

  if (out.unitarity_residual() > 100.0 * tol.eps_unitary)
    throw DecompositionError("unitary completion failed the unitarity check");
  if (op_norm(out.U * xp - yp) > 1e4 * tol.eps_residual * (1.0 + op_norm(xp)))
    throw NotIsometric("completed unitary does not reproduce the pairs");
  return out;
}

Matrix transfer_eval(const UnitaryColligation& u, Complex z) {
  const Matrix a = u.A();
  if (u.dim_F() == 0) return a;
  const Matrix d = u.D();
  const Matrix m =
      Matrix::Identity(u.dim_F(), u.dim_F()) - z * d;
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw BoundarySingular("I - zD is numerically singular");
  return a + z * u.B() * lu.solve(u.C());
}

double schur_identity_residual(const UnitaryColligation& u, Complex z) {
  const Matrix tau = transfer_eval(u, z);
  const int e = u.dim_E;
  const Matrix lhs = Matrix::Identity(e, e) - tau.adjoint() * tau;
  if (u.dim_F() == 0) return op_norm(lhs);
  const Matrix d = u.D();
  const Matrix id = Matrix::Identity(u.dim_F(), u.dim_F());
  const Matrix inner = Eigen::FullPivLU<Matrix>(id - z * d).solve(u.C());
  const Matrix rhs = (1.0 - std::norm(z)) *
                     inner.adjoint() * inner;
  return op_norm(lhs - rhs);
}

std::vector<Matrix> transfer_taylor(const UnitaryColligation& u, int order) {
  if (order < 0) throw InputError("Taylor order must be nonnegative");
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(order) + 1);
  out.push_back(u.A());
  if (u.dim_F() == 0) {
    for (int m = 1; m <= order; ++m)
      out.push_back(Matrix::Zero(u.dim_E, u.dim_E));
    return out;
  }
  Matrix lead = u.B();
  for (int m = 1; m <= order; ++m) {
    out.push_back(lead * u.C());
    lead = lead * u.D();
  }
  return out;
}

double inner_check(const AnalyticSymbol& phi, int samples) {
  if (samples < 1) throw InputError("need at least one boundary sample");
  const int e = phi.value_dim();
  const Matrix id = Matrix::Identity(e, e);
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    double theta = 2.0 * M_PI * j / samples;
    Matrix v;
    try {
      v = phi.eval(std::polar(1.0, theta));
    } catch (const BoundarySingular&) {
      v = phi.eval(std::polar(1.0, theta + 1e-9));
    }
    worst = std::max(worst, op_norm(v.adjoint() * v - id));
  }
  return worst;
}

CanonicalDecomposition canonical_decomposition(const Matrix& a,
                                               const ToleranceConfig& tol) {
  const int d = static_cast<int>(a.rows());
  if (op_norm(a) > 1.0 + tol.eps_contraction)
    throw InputError("canonical decomposition expects a contraction");
  const Matrix id = Matrix::Identity(d, d);
  const double thresh = tol.eps_rank * std::max(1.0, d * 1.0);

  Matrix q = null_basis((id - a.adjoint() * a) + (id - a * a.adjoint()), thresh);
  for (int step = 0; step < d && q.cols() > 0; ++step) {
    const Matrix pc = id - q * q.adjoint();
    const Matrix m = pc + a.adjoint() * pc * a + a * pc * a.adjoint();
    Matrix qn = null_basis(m, thresh);
    const bool converged = qn.cols() == q.cols();
    q = std::move(qn);
    if (converged) break;
  }

  CanonicalDecomposition out;
  out.basis_u = q;
  out.basis_c = orthonormal_complement(q, d);
  out.A_u = out.basis_u.adjoint() * a * out.basis_u;
  out.A_c = out.basis_c.adjoint() * a * out.basis_c;

  if (out.basis_u.cols() > 0) {
    const Matrix iu = Matrix::Identity(out.basis_u.cols(), out.basis_u.cols());
    if (op_norm(out.A_u.adjoint() * out.A_u - iu) > 100.0 * tol.eps_unitary)
      throw DecompositionError("unitary part failed the unitarity check");
  }
  return out;
}

UnitaryColligation reduced_colligation(const UnitaryColligation& u,
                                       const Matrix& basis_c) {
  const int ec = static_cast<int>(basis_c.cols());
  const int f = u.dim_F();
  UnitaryColligation out;
  out.dim_E = ec;
  out.pad_dim = u.pad_dim;
  out.U = Matrix(ec + f, ec + f);
  out.U.topLeftCorner(ec, ec) = basis_c.adjoint() * u.A() * basis_c;
  out.U.topRightCorner(ec, f) = basis_c.adjoint() * u.B();
  out.U.bottomLeftCorner(f, ec) = u.C() * basis_c;
  out.U.bottomRightCorner(f, f) = u.D();
  if (out.unitarity_residual() > 1e-6)
    throw DecompositionError("reduced colligation is not unitary");
  return out;
}

double lemma32_series_check(const OperatorTuple& t, int p, int q,
                            const UnitaryColligation& u, int order,
                            const ToleranceConfig& tol) {
  const DefectData dp = defect_sqrt(szego_defect(subtuple(t, p)), tol);
  const DefectData dq = defect_sqrt(szego_defect(subtuple(t, q)), tol);
  if (u.dim_E != dp.rank || u.dim_F() != dq.rank)
    throw InputError("colligation partition does not match the defect ranks");
  const Matrix cp = dp.coord_map();
  const Matrix lhs = cp * t.op(p).adjoint();

  Matrix acc = u.A() * cp;
  Matrix lead = u.B();
  Matrix tq_pow = t.op(q).adjoint();
  const Matrix c = u.C();
  const Matrix d_block = u.D();
  const Matrix tq_adj = t.op(q).adjoint();
  for (int i = 0; i <= order; ++i) {
    acc += lead * c * cp * tq_pow;
    lead = lead * d_block;
    tq_pow = tq_pow * tq_adj;
  }
  return op_norm(lhs - acc);
}

}  // namespace polydisc
