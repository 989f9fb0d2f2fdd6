#include "polydisc/hardy_model.hpp"

#include <algorithm>
#include <numeric>

namespace polydisc {

int total_degree(const MultiIndex& k) {
  return std::accumulate(k.begin(), k.end(), 0);
}

double HardyVector::squared_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : coeffs) s += v.squaredNorm();
  return s;
}

Vector HardyVector::coeff(const MultiIndex& k) const {
  auto it = coeffs.find(k);
  if (it == coeffs.end()) return Vector::Zero(coeff_dim);
  return it->second;
}

void HardyVector::set(const MultiIndex& k, Vector v) {
  coeffs[k] = std::move(v);
}

std::vector<MultiIndex> index_hypercube(int vars, int cutoff) {
  std::vector<MultiIndex> out;
  MultiIndex k(static_cast<size_t>(vars), 0);
  while (true) {
    out.push_back(k);
    int i = vars - 1;
    while (i >= 0 && k[static_cast<size_t>(i)] == cutoff) {
      k[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++k[static_cast<size_t>(i)];
  }
  return out;
}

Vector CanonicalEmbedding::compress(const Vector& x) const {
  Vector c = defect.basis.adjoint() * (defect.sqrt * x);
  if (post.size() > 0) c = post * c;
  return c;
}

Vector CanonicalEmbedding::coefficient(const MultiIndex& k, const Vector& h) const {
  Vector x = h;
  for (int i = 0; i < vars(); ++i) {
    const Matrix adj = tuple.ops[static_cast<size_t>(i)].adjoint();
    for (int j = 0; j < k[static_cast<size_t>(i)]; ++j) x = adj * x;
  }
  return compress(x);
}

HardyVector embed(const CanonicalEmbedding& e, const Vector& h, int cutoff) {
  const int m = e.vars();
  HardyVector out;
  out.vars = m;
  out.coeff_dim = e.coeff_dim();
  out.cutoff = cutoff;

  // dynamic program over the hypercube: T^{*k} h from the predecessor index
  std::map<MultiIndex, Vector> state;
  for (const auto& k : index_hypercube(m, cutoff)) {
    Vector x;
    if (total_degree(k) == 0) {
      x = h;
    } else {
      int i = 0;
      while (k[static_cast<size_t>(i)] == 0) ++i;
      MultiIndex prev = k;
      --prev[static_cast<size_t>(i)];
      x = e.tuple.ops[static_cast<size_t>(i)].adjoint() * state.at(prev);
    }
    state[k] = x;
    out.set(k, e.compress(x));
  }
  return out;
}

HardyVector embed(const CanonicalEmbedding& e, const Vector& h) {
  return embed(e, h, e.cutoff);
}

double embedding_residual(const CanonicalEmbedding& e, const Vector& h,
                          int cutoff) {
  return h.squaredNorm() - embed(e, h, cutoff).squared_norm();
}

double embedding_tail_bound(const CanonicalEmbedding& e, int cutoff) {
  double bound = 0.0;
  for (const Matrix& op : e.tuple.ops) {
    Matrix b = op.adjoint();
    Matrix pow = Matrix::Identity(b.rows(), b.cols());
    for (int j = 0; j <= cutoff; ++j) pow = b * pow;
    double s = 0.0;
    for (int iter = 0; iter < 2000; ++iter) {
      const double t = op_norm(pow);
      s += t * t;
      if (t * t < 1e-18) break;
      pow = b * pow;
    }
    bound += s;
  }
  return bound;
}

HardyVector shift_adjoint(const HardyVector& v, int slot) {
  if (slot < 1 || slot > v.vars) throw InputError("shift slot out of range");
  HardyVector out;
  out.vars = v.vars;
  out.coeff_dim = v.coeff_dim;
  out.cutoff = v.cutoff;
  for (const auto& [k, c] : v.coeffs) {
    if (k[static_cast<size_t>(slot - 1)] == 0) continue;
    MultiIndex shifted = k;
    --shifted[static_cast<size_t>(slot - 1)];
    out.set(shifted, c);
  }
  return out;
}

HardyVector shift_forward(const HardyVector& v, int slot, int cutoff) {
  if (slot < 1 || slot > v.vars) throw InputError("shift slot out of range");
  HardyVector out;
  out.vars = v.vars;
  out.coeff_dim = v.coeff_dim;
  out.cutoff = cutoff;
  for (const auto& [k, c] : v.coeffs) {
    MultiIndex shifted = k;
    ++shifted[static_cast<size_t>(slot - 1)];
    if (shifted[static_cast<size_t>(slot - 1)] > cutoff) continue;
    out.set(shifted, c);
  }
  return out;
}

HardyVector symbol_mult(const HardyVector& v, const AnalyticSymbol& phi,
                        int cutoff) {
  if (phi.slot < 1 || phi.slot > v.vars)
    throw InputError("symbol slot out of range");
  if (phi.value_dim() != v.coeff_dim)
    throw InputError("symbol value dimension does not match coefficients");
  const size_t s = static_cast<size_t>(phi.slot - 1);

  std::vector<Matrix> coeffs;
  for (int m = 0; m <= cutoff; ++m) {
    coeffs.push_back(phi.coefficient(m));
    if (!phi.rational() && m >= phi.degree()) break;
  }

  HardyVector out;
  out.vars = v.vars;
  out.coeff_dim = v.coeff_dim;
  out.cutoff = cutoff;
  for (const auto& [k, c] : v.coeffs) {
    for (size_t m = 0; m < coeffs.size(); ++m) {
      MultiIndex target = k;
      target[s] += static_cast<int>(m);
      if (target[s] > cutoff) break;
      auto it = out.coeffs.find(target);
      if (it == out.coeffs.end())
        out.set(target, Vector(coeffs[m] * c));
      else
        it->second += coeffs[m] * c;
    }
  }
  return out;
}

HardyVector symbol_mult_adjoint(const HardyVector& v, const AnalyticSymbol& phi,
                                int cutoff) {
  if (phi.slot < 1 || phi.slot > v.vars)
    throw InputError("symbol slot out of range");
  if (phi.value_dim() != v.coeff_dim)
    throw InputError("symbol value dimension does not match coefficients");
  const size_t s = static_cast<size_t>(phi.slot - 1);

  int max_slot_degree = 0;
  for (const auto& [k, c] : v.coeffs)
    max_slot_degree = std::max(max_slot_degree, k[s]);
  std::vector<Matrix> coeffs;
  for (int m = 0; m <= max_slot_degree; ++m) {
    coeffs.push_back(phi.coefficient(m).adjoint());
    if (!phi.rational() && m >= phi.degree()) break;
  }

  HardyVector out;
  out.vars = v.vars;
  out.coeff_dim = v.coeff_dim;
  out.cutoff = cutoff;
  for (const auto& [k, c] : v.coeffs) {
    for (size_t m = 0; m < coeffs.size(); ++m) {
      if (k[s] < static_cast<int>(m)) break;
      MultiIndex target = k;
      target[s] -= static_cast<int>(m);
      auto it = out.coeffs.find(target);
      if (it == out.coeffs.end())
        out.set(target, Vector(coeffs[m] * c));
      else
        it->second += coeffs[m] * c;
    }
  }
  return out;
}

}  // namespace polydisc
