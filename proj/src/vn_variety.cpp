#include "polydisc/vn_variety.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "polydisc/dilation.hpp"

namespace polydisc {

namespace {

// unit_pow[g][e] = exp(2 pi i g / grid)^e
std::vector<std::vector<Complex>> unit_power_table(int grid, int max_deg) {
  std::vector<std::vector<Complex>> out(static_cast<size_t>(grid));
  for (int g = 0; g < grid; ++g) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * g / grid);
    auto& row = out[static_cast<size_t>(g)];
    row.resize(static_cast<size_t>(max_deg) + 1);
    row[0] = 1.0;
    for (int e = 1; e <= max_deg; ++e) row[static_cast<size_t>(e)] = row[e - 1] * w;
  }
  return out;
}

}  // namespace

Matrix eval_poly_tuple(const Polynomial& p, const OperatorTuple& t) {
  if (p.vars != t.n())
    throw InputError("polynomial variable count does not match the tuple");
  const int d = t.dim();
  // memoized powers T_i^j
  std::vector<std::vector<Matrix>> pows(static_cast<size_t>(t.n()));
  for (int i = 0; i < t.n(); ++i)
    pows[static_cast<size_t>(i)].push_back(Matrix::Identity(d, d));
  auto power = [&](int i, int j) -> const Matrix& {
    auto& v = pows[static_cast<size_t>(i)];
    while (static_cast<int>(v.size()) <= j)
      v.push_back(v.back() * t.ops[static_cast<size_t>(i)]);
    return v[static_cast<size_t>(j)];
  };

  Matrix acc = Matrix::Zero(d, d);
  for (const auto& [k, c] : p.terms) {
    Matrix m = Matrix::Identity(d, d);
    for (size_t i = 0; i < k.size(); ++i)
      if (k[i] > 0) m = m * power(static_cast<int>(i), k[i]);
    acc += c * m;
  }
  return acc;
}

double torus_sup(const Polynomial& p, int grid) {
  if (grid < 1) throw InputError("grid resolution must be positive");
  if (p.terms.empty()) return 0.0;
  const int n = p.vars;
  const auto table = unit_power_table(grid, std::max(p.degree(), 0));

  std::vector<int> g(static_cast<size_t>(n), 0);
  double best = 0.0;
  while (true) {
    Complex v = 0.0;
    for (const auto& [k, c] : p.terms) {
      Complex m = c;
      for (size_t i = 0; i < k.size(); ++i)
        if (k[i] > 0) m *= table[static_cast<size_t>(g[i])][static_cast<size_t>(k[i])];
      v += m;
    }
    best = std::max(best, std::abs(v));

    int i = n - 1;
    while (i >= 0 && g[static_cast<size_t>(i)] == grid - 1) {
      g[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++g[static_cast<size_t>(i)];
  }
  return best;
}

VarietySampleSet variety_from_symbol(const AnalyticSymbol& phi, int grid,
                                     const ToleranceConfig& tol) {
  if (!phi.rational())
    throw InputError("variety construction needs a rational symbol");
  if (grid < 1) throw InputError("grid resolution must be positive");

  const UnitaryColligation& col = *phi.realization;
  const CanonicalDecomposition dec = canonical_decomposition(col.A(), tol);

  VarietySampleSet out;
  out.grid = grid;

  std::vector<Complex> u_eigs;
  if (dec.basis_u.cols() > 0) {
    Eigen::ComplexEigenSolver<Matrix> es(dec.A_u);
    for (int j = 0; j < es.eigenvalues().size(); ++j)
      u_eigs.push_back(es.eigenvalues()(j));
  }

  const bool has_c = dec.basis_c.cols() > 0;
  UnitaryColligation reduced;
  if (has_c) reduced = reduced_colligation(col, dec.basis_c);

  auto c_eigs = [&](double theta) {
    Matrix v;
    try {
      v = transfer_eval(reduced, std::polar(1.0, theta));
    } catch (const BoundarySingular&) {
      v = transfer_eval(reduced, std::polar(1.0, theta + 1e-9));
    }
    Eigen::ComplexEigenSolver<Matrix> es(v);
    std::vector<Complex> e;
    for (int j = 0; j < es.eigenvalues().size(); ++j)
      e.push_back(es.eigenvalues()(j));
    return e;
  };
  // Hausdorff distance between eigenvalue sets of equal size
  auto eig_gap = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double gap = 0.0;
    for (const Complex& x : a) {
      double near = std::numeric_limits<double>::infinity();
      for (const Complex& y : b) near = std::min(near, std::abs(x - y));
      gap = std::max(gap, near);
    }
    return gap;
  };

  for (int g = 0; g < grid; ++g) {
    const double theta = 2.0 * M_PI * g / grid;
    for (const Complex& l : u_eigs)
      out.samples.push_back({'u', l, theta});
  }
  if (!has_c) return out;

  // the eigenvalue curve can move faster than the angle; bisect intervals
  // until adjacent samples are within one grid spacing in the plane
  const double spacing = 2.0 * M_PI / grid;
  const double min_width = spacing / 64.0;
  std::vector<std::pair<double, std::vector<Complex>>> stack;
  std::vector<Complex> first = c_eigs(0.0);
  std::vector<Complex> prev = first;
  double prev_theta = 0.0;
  auto emit = [&](double theta, const std::vector<Complex>& e) {
    for (const Complex& l : e) out.samples.push_back({'c', l, theta});
  };
  emit(0.0, first);
  for (int g = 1; g <= grid; ++g) {
    double theta = 2.0 * M_PI * g / grid;
    std::vector<Complex> e = g == grid ? first : c_eigs(theta);
    stack.clear();
    stack.emplace_back(theta, e);
    while (!stack.empty()) {
      auto [tb, eb] = stack.back();
      if (eig_gap(prev, eb) <= spacing || tb - prev_theta <= min_width) {
        stack.pop_back();
        if (tb < 2.0 * M_PI - 1e-15) emit(tb, eb);
        prev = std::move(eb);
        prev_theta = tb;
      } else {
        const double tm = 0.5 * (prev_theta + tb);
        stack.emplace_back(tm, c_eigs(tm));
      }
    }
  }
  return out;
}

double variety_sup(const Polynomial& p, const VarietySampleSet& s) {
  if (s.samples.empty()) throw EmptyVariety("variety has no samples");
  const int n = p.vars;
  if (n < 2) throw InputError("variety supremum needs at least two variables");
  const int free_vars = n - 2;
  const int deg = std::max(p.degree(), 0);
  const auto table = unit_power_table(s.grid, deg);

  double best = 0.0;
  for (const auto& smp : s.samples) {
    // collapse z_1 = lambda, z_2 = e^{i theta1}
    std::vector<Complex> lpow(static_cast<size_t>(deg) + 1, 1.0);
    for (int e = 1; e <= deg; ++e)
      lpow[static_cast<size_t>(e)] = lpow[e - 1] * smp.lambda;
    std::vector<Complex> wpow(static_cast<size_t>(deg) + 1, 1.0);
    const Complex w = std::polar(1.0, smp.theta1);
    for (int e = 1; e <= deg; ++e) wpow[static_cast<size_t>(e)] = wpow[e - 1] * w;

    std::map<std::vector<int>, Complex> collapsed;
    for (const auto& [k, c] : p.terms) {
      const Complex v = c * lpow[static_cast<size_t>(k[0])] *
                        wpow[static_cast<size_t>(k[1])];
      collapsed[std::vector<int>(k.begin() + 2, k.end())] += v;
    }

    if (free_vars == 0) {
      Complex v = 0.0;
      for (const auto& [k, c] : collapsed) v += c;
      best = std::max(best, std::abs(v));
      continue;
    }

    std::vector<int> g(static_cast<size_t>(free_vars), 0);
    while (true) {
      Complex v = 0.0;
      for (const auto& [k, c] : collapsed) {
        Complex m = c;
        for (size_t i = 0; i < k.size(); ++i)
          if (k[i] > 0)
            m *= table[static_cast<size_t>(g[i])][static_cast<size_t>(k[i])];
        v += m;
      }
      best = std::max(best, std::abs(v));

      int i = free_vars - 1;
      while (i >= 0 && g[static_cast<size_t>(i)] == s.grid - 1) {
        g[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++g[static_cast<size_t>(i)];
    }
  }
  return best;
}

std::vector<VNReport> vn_report(const OperatorTuple& t, int p_idx, int q_idx,
                                const std::vector<Polynomial>& polys, int grid,
                                bool refined, const ToleranceConfig& tol) {
  std::vector<VNReport> out;
  out.reserve(polys.size());

  bool do_refined = refined;
  std::string notice;
  VarietySampleSet samples;
  if (refined && !(p_idx == 1 && q_idx == 2)) {
    do_refined = false;
    notice = "refined mode is implemented for (p,q) = (1,2); classical only";
  }
  if (do_refined) {
    const DilationPackage pkg = build_finite_rank_dilation(t, 1, 2, tol, 8);
    samples = variety_from_symbol(*pkg.coords[0].symbol, grid, tol);
  }

  for (const auto& p : polys) {
    VNReport r;
    r.grid = grid;
    r.notice = notice;
    r.op_norm = op_norm(eval_poly_tuple(p, t));
    r.torus_sup = torus_sup(p, grid);
    r.slack = p.lipschitz() * M_PI * std::sqrt(static_cast<double>(t.n())) / grid;
    r.classical_ok = r.op_norm <= r.torus_sup + r.slack;
    if (do_refined) {
      r.has_variety = true;
      r.variety_sup = variety_sup(p, samples);
      r.refined_ok = r.op_norm <= r.variety_sup + r.slack;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace polydisc
