#include "polydisc/dilation.hpp"

#include <algorithm>
#include <cmath>

namespace polydisc {

namespace {

constexpr int kMaxSeriesTerms = 2000;

Matrix stack_pair(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

HardyVector apply_forward(const CoordinateAssignment& ca, const HardyVector& v,
                          int cutoff) {
  if (ca.is_symbol) return symbol_mult(v, *ca.symbol, cutoff);
  return shift_forward(v, ca.shift_slot, cutoff);
}

}  // namespace

double DilationReport::max_coordinate_residual() const {
  double m = 0.0;
  for (double r : coordinate_residuals) m = std::max(m, r);
  return m;
}

DilationPackage build_finite_rank_dilation(const OperatorTuple& t, int p, int q,
                                           const ToleranceConfig& tol,
                                           int cutoff) {
  const ClassReport rep = class_membership(t, p, q, tol);
  if (!rep.in_class)
    throw NotInClass("tuple is not in the dilation class for (p,q)");

  const OperatorTuple hat_p = subtuple(t, p);
  const DefectData def_p = defect_sqrt(szego_defect(hat_p), tol);
  const DefectData def_q = defect_sqrt(szego_defect(subtuple(t, q)), tol);
  const Matrix cp = def_p.coord_map();
  const Matrix cq = def_q.coord_map();

  // lemma pairs (D_p h, D_q T_q^* h) -> (D_p T_p^* h, D_q h) over the basis
  const Matrix x = stack_pair(cp, cq * t.op(q).adjoint());
  const Matrix y = stack_pair(cp * t.op(p).adjoint(), cq);
  UnitaryColligation u = complete_to_unitary(x, y, false, 0, tol);
  u.dim_E = def_p.rank;

  AnalyticSymbol phi;
  phi.slot = q - 1;
  phi.realization = u.adjoint();  // Phi_p = tau_{U^*}

  DilationPackage pkg;
  pkg.mode = DilationMode::FiniteRank;
  pkg.p = p;
  pkg.q = q;
  pkg.embedding = CanonicalEmbedding{hat_p, def_p, Matrix(), cutoff};
  pkg.colligations = {u};
  pkg.coords.resize(static_cast<size_t>(t.n()));
  for (int i = 1; i <= t.n(); ++i) {
    CoordinateAssignment& ca = pkg.coords[static_cast<size_t>(i - 1)];
    if (i == p) {
      ca.is_symbol = true;
      ca.symbol = phi;
    } else {
      ca.shift_slot = i < p ? i : i - 1;
    }
  }
  return pkg;
}

DilationPackage build_general_dilation(const OperatorTuple& t, int p, int q,
                                       const ToleranceConfig& tol, int cutoff,
                                       int extra_pad) {
  const ClassReport rep = class_membership(t, p, q, tol);
  if (!rep.in_class)
    throw NotInClass("tuple is not in the dilation class for (p,q)");

  const OperatorTuple hat_pq = product_tuple(t, p, q);
  const DefectData def_pq = defect_sqrt(szego_defect(hat_pq), tol);
  const DefectData def_p = defect_sqrt(szego_defect(subtuple(t, p)), tol);
  const DefectData def_q = defect_sqrt(szego_defect(subtuple(t, q)), tol);
  const Matrix cpq = def_pq.coord_map();
  const Matrix cp = def_p.coord_map();
  const Matrix cq = def_q.coord_map();
  const int pad = extra_pad;
  const int dim_e = pad + def_q.rank + def_p.rank;
  const int d = t.dim();

  auto into_e = [&](const Matrix& q_part, const Matrix& p_part) {
    Matrix out = Matrix::Zero(dim_e, d);
    out.middleRows(pad, def_q.rank) = q_part;
    out.bottomRows(def_p.rank) = p_part;
    return out;
  };

  // U extends (0, D_q T_q^* h, D_p h) -> (0, D_q h, D_p T_p^* h)
  const Matrix x = into_e(cq * t.op(q).adjoint(), cp);
  const Matrix y = into_e(cq, cp * t.op(p).adjoint());
  UnitaryColligation u = complete_to_unitary(x, y, true, 0, tol);
  u.pad_dim = pad;
  u.dim_E = dim_e;

  // isometry V : defect of the product subtuple -> E
  const Matrix v_images = into_e(cq, cp * t.op(p).adjoint());
  Eigen::JacobiSVD<Matrix> svd(cpq, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix pinv = svd.matrixV() *
                      svd.singularValues().cwiseInverse().asDiagonal() *
                      svd.matrixU().adjoint();
  const Matrix v = v_images * pinv;
  if (op_norm(v.adjoint() * v - Matrix::Identity(def_pq.rank, def_pq.rank)) >
      1e-6)
    throw DecompositionError("V is not an isometry on the product defect");

  Matrix proj_p = Matrix::Zero(dim_e, dim_e);
  proj_p.bottomRightCorner(def_p.rank, def_p.rank) =
      Matrix::Identity(def_p.rank, def_p.rank);
  const Matrix proj_perp = Matrix::Identity(dim_e, dim_e) - proj_p;

  AnalyticSymbol phi_p;
  phi_p.slot = p;
  phi_p.taylor = {proj_p * u.U.adjoint(), proj_perp * u.U.adjoint()};
  AnalyticSymbol phi_q;
  phi_q.slot = p;
  phi_q.taylor = {u.U * proj_perp, u.U * proj_p};

  DilationPackage pkg;
  pkg.mode = DilationMode::General;
  pkg.p = p;
  pkg.q = q;
  pkg.embedding = CanonicalEmbedding{hat_pq, def_pq, v, cutoff};
  pkg.colligations = {u};
  pkg.coords.resize(static_cast<size_t>(t.n()));
  for (int i = 1; i <= t.n(); ++i) {
    CoordinateAssignment& ca = pkg.coords[static_cast<size_t>(i - 1)];
    if (i == p || i == q) {
      ca.is_symbol = true;
      ca.symbol = (i == p) ? phi_p : phi_q;
    } else {
      ca.shift_slot = i < q ? i : i - 1;
    }
  }
  return pkg;
}

DilationReport verify_dilation(const DilationPackage& pkg, const OperatorTuple& t,
                               int cutoff, const ToleranceConfig& tol) {
  const CanonicalEmbedding& emb = pkg.embedding;
  const int d = t.dim();
  const int m = emb.vars();
  const int cmp_cutoff = std::min(cutoff, 4);

  DilationReport rep;
  rep.coordinate_residuals.assign(static_cast<size_t>(t.n()), 0.0);

  const auto cube = index_hypercube(m, cmp_cutoff);

  for (int j = 0; j < d; ++j) {
    const Vector h = Vector::Unit(d, j);
    rep.isometry_residual = std::max(
        rep.isometry_residual, std::abs(embedding_residual(emb, h, cutoff)));

    // raw states T_hat^{*k} h over the comparison cube plus one extra layer
    std::map<MultiIndex, Vector> state;
    for (const auto& k : index_hypercube(m, cmp_cutoff + 1)) {
      if (total_degree(k) == 0) {
        state[k] = h;
        continue;
      }
      int i = 0;
      while (k[static_cast<size_t>(i)] == 0) ++i;
      MultiIndex prev = k;
      --prev[static_cast<size_t>(i)];
      state[k] = emb.tuple.ops[static_cast<size_t>(i)].adjoint() * state.at(prev);
    }

    for (int i = 1; i <= t.n(); ++i) {
      const CoordinateAssignment& ca = pkg.coords[static_cast<size_t>(i - 1)];
      const Vector th = t.op(i).adjoint() * h;
      double worst = 0.0;
      for (const auto& k : cube) {
        const Vector lhs = emb.coefficient(k, th);
        Vector rhs;
        if (!ca.is_symbol) {
          MultiIndex up = k;
          ++up[static_cast<size_t>(ca.shift_slot - 1)];
          rhs = emb.compress(state.at(up));
        } else {
          const AnalyticSymbol& phi = *ca.symbol;
          const Matrix slot_adj =
              emb.tuple.ops[static_cast<size_t>(phi.slot - 1)].adjoint();
          rhs = Vector::Zero(lhs.size());
          Vector cur = state.at(k);
          // rhs = sum_m coefficient(m)^H * f(k + m e_slot)
          int mm = 0;
          Matrix lead;  // for rational form: running B D^{m-1}
          while (true) {
            Matrix cm;
            if (!phi.rational()) {
              if (mm > phi.degree()) break;
              cm = phi.taylor[static_cast<size_t>(mm)];
            } else {
              const UnitaryColligation& col = *phi.realization;
              if (mm == 0) {
                cm = col.A();
              } else {
                if (mm == 1)
                  lead = col.B();
                else
                  lead = lead * col.D();
                cm = lead * col.C();
              }
            }
            rhs += cm.adjoint() * emb.compress(cur);
            ++mm;
            if (phi.rational()) {
              if (cur.norm() < 1e-16 * (1.0 + h.norm())) break;
              if (mm > kMaxSeriesTerms) break;
            }
            cur = slot_adj * cur;
          }
        }
        worst = std::max(worst, (lhs - rhs).norm());
      }
      rep.coordinate_residuals[static_cast<size_t>(i - 1)] =
          std::max(rep.coordinate_residuals[static_cast<size_t>(i - 1)], worst);
    }
  }

  // symbol structure checks
  double form = 0.0;
  for (const auto& ca : pkg.coords) {
    if (!ca.is_symbol) continue;
    const AnalyticSymbol& phi = *ca.symbol;
    if (phi.rational()) {
      form = std::max(form, phi.realization->unitarity_residual());
    } else {
      const int e = phi.value_dim();
      Matrix g = Matrix::Zero(e, e);
      for (const auto& c : phi.taylor) g += c.adjoint() * c;
      form = std::max(form, op_norm(g - Matrix::Identity(e, e)));
      if (phi.degree() > 1) form = std::max(form, 1.0);
    }
  }
  rep.symbol_form_residual = form;
  (void)tol;
  return rep;
}

Matrix compress_coordinate(const DilationPackage& pkg, int i, int cutoff) {
  if (i < 1 || i > static_cast<int>(pkg.coords.size()))
    throw InputError("coordinate index out of range");
  const int d = pkg.embedding.tuple.dim();
  std::vector<HardyVector> w;
  w.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    w.push_back(embed(pkg.embedding, Vector::Unit(d, j), cutoff));

  Matrix out(d, d);
  for (int j = 0; j < d; ++j) {
    const HardyVector mw =
        apply_forward(pkg.coords[static_cast<size_t>(i - 1)], w[static_cast<size_t>(j)],
                      cutoff);
    for (int l = 0; l < d; ++l) {
      Complex s = 0.0;
      for (const auto& [k, c] : mw.coeffs)
        s += w[static_cast<size_t>(l)].coeff(k).dot(c);
      out(l, j) = s;
    }
  }
  return out;
}

Matrix compress_polynomial(const DilationPackage& pkg, const Polynomial& poly,
                           int cutoff) {
  if (poly.vars != static_cast<int>(pkg.coords.size()))
    throw InputError("polynomial variable count does not match the tuple");
  const int d = pkg.embedding.tuple.dim();
  std::vector<HardyVector> w;
  w.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    w.push_back(embed(pkg.embedding, Vector::Unit(d, j), cutoff));

  Matrix out = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    HardyVector acc;
    acc.vars = w[static_cast<size_t>(j)].vars;
    acc.coeff_dim = w[static_cast<size_t>(j)].coeff_dim;
    acc.cutoff = cutoff;
    for (const auto& [k, c] : poly.terms) {
      HardyVector cur = w[static_cast<size_t>(j)];
      for (size_t i = 0; i < k.size(); ++i)
        for (int rep = 0; rep < k[i]; ++rep)
          cur = apply_forward(pkg.coords[i], cur, cutoff);
      for (const auto& [idx, vec] : cur.coeffs) {
        auto it = acc.coeffs.find(idx);
        if (it == acc.coeffs.end())
          acc.set(idx, Vector(c * vec));
        else
          it->second += c * vec;
      }
    }
    for (int l = 0; l < d; ++l) {
      Complex s = 0.0;
      for (const auto& [k, c] : acc.coeffs)
        s += w[static_cast<size_t>(l)].coeff(k).dot(c);
      out(l, j) = s;
    }
  }
  return out;
}

}  // namespace polydisc
