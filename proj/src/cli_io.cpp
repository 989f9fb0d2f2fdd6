#include "polydisc/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "polydisc/dilation.hpp"
#include "polydisc/hardy_model.hpp"

namespace polydisc {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex json_to_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

Polynomial poly_from_json(const json& j, const std::string& where) {
  if (!j.contains("n") || !j.contains("monomials"))
    throw ParseError(where + ": polynomial needs fields n and monomials");
  Polynomial p;
  p.vars = j.at("n").get<int>();
  if (p.vars < 1) throw ParseError(where + ": n must be positive");
  int idx = 0;
  for (const auto& m : j.at("monomials")) {
    const std::string tag = where + ", monomial " + std::to_string(idx++);
    if (!m.contains("k") || !m.contains("c"))
      throw ParseError(tag + ": needs fields k and c");
    std::vector<int> k = m.at("k").get<std::vector<int>>();
    if (static_cast<int>(k.size()) != p.vars)
      throw ParseError(tag + ": exponent list length differs from n");
    for (int e : k)
      if (e < 0) throw ParseError(tag + ": exponents must be nonnegative");
    p.terms.emplace_back(std::move(k), json_to_complex(m.at("c"), tag));
  }
  return p;
}

json poly_to_json(const Polynomial& p) {
  json monomials = json::array();
  for (const auto& [k, c] : p.terms)
    monomials.push_back({{"k", k}, {"c", complex_to_json(c)}});
  return {{"n", p.vars}, {"monomials", monomials}};
}

}  // namespace

OperatorTuple load_tuple(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.contains("n") || !j.contains("dim") || !j.contains("operators"))
    throw ParseError(path + ": tuple file needs fields n, dim, operators");
  const int n = j.at("n").get<int>();
  const int dim = j.at("dim").get<int>();
  const json& ops = j.at("operators");
  if (!ops.is_array() || static_cast<int>(ops.size()) != n)
    throw ParseError(path + ": expected " + std::to_string(n) + " operators");

  std::vector<Matrix> mats;
  mats.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const json& rows = ops[static_cast<size_t>(i)];
    const std::string tag = path + ": operator " + std::to_string(i + 1);
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
      throw ParseError(tag + " has the wrong row count");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
      const json& row = rows[static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw ParseError(tag + ", row " + std::to_string(r) +
                         " has the wrong length");
      for (int c = 0; c < dim; ++c)
        m(r, c) = json_to_complex(row[static_cast<size_t>(c)],
                                  tag + ", row " + std::to_string(r));
    }
    mats.push_back(std::move(m));
  }
  return OperatorTuple(std::move(mats));
}

void save_tuple(const OperatorTuple& t, const std::string& path,
                const std::string& comment) {
  json ops = json::array();
  for (const Matrix& m : t.ops) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
      rows.push_back(std::move(row));
    }
    ops.push_back(std::move(rows));
  }
  json j = {{"n", t.n()}, {"dim", t.dim()}, {"operators", std::move(ops)}};
  if (!comment.empty()) j["metadata"] = {{"generator", comment}};
  write_json_file(j, path);
}

std::vector<Polynomial> load_polys(const std::string& path) {
  const json j = read_json_file(path);
  std::vector<Polynomial> out;
  if (j.contains("polynomials")) {
    int idx = 0;
    for (const auto& pj : j.at("polynomials"))
      out.push_back(
          poly_from_json(pj, path + ", polynomial " + std::to_string(idx++)));
  } else {
    out.push_back(poly_from_json(j, path));
  }
  if (out.empty()) throw ParseError(path + ": no polynomials found");
  return out;
}

void save_polys(const std::vector<Polynomial>& polys, const std::string& path) {
  if (polys.size() == 1) {
    write_json_file(poly_to_json(polys[0]), path);
    return;
  }
  json list = json::array();
  for (const auto& p : polys) list.push_back(poly_to_json(p));
  write_json_file({{"polynomials", std::move(list)}}, path);
}

void write_variety_csv(const VarietySampleSet& s, int n_vars,
                       const std::string& path) {
  if (n_vars < 2) throw InputError("variety output needs at least two variables");
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out.precision(17);

  out << "part,lambda_re,lambda_im,theta1";
  for (int i = 2; i < n_vars; ++i) out << ",theta" << i;
  out << "\n";

  const int free_vars = n_vars - 2;
  std::vector<int> g(static_cast<size_t>(free_vars), 0);
  for (const auto& smp : s.samples) {
    std::fill(g.begin(), g.end(), 0);
    while (true) {
      out << smp.part << "," << smp.lambda.real() << "," << smp.lambda.imag()
          << "," << smp.theta1;
      for (int i = 0; i < free_vars; ++i)
        out << "," << 2.0 * M_PI * g[static_cast<size_t>(i)] / s.grid;
      out << "\n";

      int i = free_vars - 1;
      while (i >= 0 && g[static_cast<size_t>(i)] == s.grid - 1) {
        g[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++g[static_cast<size_t>(i)];
    }
  }
}

VarietySampleSet load_variety_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");

  VarietySampleSet out;
  std::set<double> theta1_values;
  std::set<double> free_values;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 4)
      throw ParseError(path + ":" + std::to_string(lineno) + ": short row");
    VarietySample smp;
    smp.part = fields[0].empty() ? 'c' : fields[0][0];
    try {
      smp.lambda = Complex(std::stod(fields[1]), std::stod(fields[2]));
      smp.theta1 = std::stod(fields[3]);
      bool first_grid_point = true;
      for (size_t i = 4; i < fields.size(); ++i) {
        const double v = std::stod(fields[i]);
        free_values.insert(v);
        if (v != 0.0) first_grid_point = false;
      }
      if (first_grid_point) {
        theta1_values.insert(smp.theta1);
        out.samples.push_back(smp);
      }
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  if (out.samples.empty()) throw ParseError(path + ": no samples");
  out.grid = !free_values.empty() ? static_cast<int>(free_values.size())
                                  : static_cast<int>(theta1_values.size());
  if (out.grid < 1) out.grid = 1;
  return out;
}

Matrix haar_unitary(int dim, unsigned seed) {
  if (dim < 1) throw InputError("unitary dimension must be positive");
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase ambiguity so the distribution is Haar
  for (int c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

OperatorTuple gen_diagonal(int n, int dim, double rho_max, unsigned seed) {
  if (n < 1 || dim < 1) throw InputError("n and dim must be positive");
  if (rho_max < 0.0 || rho_max >= 1.0)
    throw InputError("rho_max must lie in [0, 1)");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const double radius = rho_max * std::sqrt(unif(rng));
      m(j, j) = std::polar(radius, 2.0 * M_PI * unif(rng));
    }
    ops.push_back(std::move(m));
  }
  return OperatorTuple(std::move(ops));
}

OperatorTuple gen_model_compression(int n, int p, int q, int e_dim, int N,
                                    unsigned seed) {
  if (n < 3) throw InputError("need n >= 3");
  if (p < 1 || q > n || p >= q) throw InputError("require 1 <= p < q <= n");
  if (e_dim < 1 || N < 1) throw InputError("e_dim and N must be positive");

  const ToleranceConfig tol;
  const int vars = n - 1;
  const auto cube = index_hypercube(vars, N);
  const int dim = static_cast<int>(cube.size()) * e_dim;

  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    const unsigned s = seed + 1000003u * attempt;
    const Matrix u = haar_unitary(e_dim, s);
    std::mt19937 rng(s ^ 0x9e3779b9u);
    std::uniform_int_distribution<int> rank_dist(1, e_dim);
    const int rank = rank_dist(rng);
    const Matrix frame = haar_unitary(e_dim, s + 1).leftCols(rank);
    const Matrix proj = frame * frame.adjoint();
    const Matrix perp = Matrix::Identity(e_dim, e_dim) - proj;

    AnalyticSymbol phi_p;
    phi_p.slot = p;
    phi_p.taylor = {proj * u.adjoint(), perp * u.adjoint()};
    AnalyticSymbol phi_q;
    phi_q.slot = p;
    phi_q.taylor = {u * perp, u * proj};

    // multiplication operators compressed to the degree hypercube
    auto apply = [&](int coord, const HardyVector& v) {
      if (coord == p) return symbol_mult(v, phi_p, N);
      if (coord == q) return symbol_mult(v, phi_q, N);
      const int slot = coord < q ? coord : coord - 1;
      return shift_forward(v, slot, N);
    };

    std::vector<Matrix> ops(static_cast<size_t>(n), Matrix::Zero(dim, dim));
    for (size_t col_k = 0; col_k < cube.size(); ++col_k) {
      for (int b = 0; b < e_dim; ++b) {
        HardyVector basis_vec;
        basis_vec.vars = vars;
        basis_vec.coeff_dim = e_dim;
        basis_vec.cutoff = N;
        basis_vec.set(cube[col_k], Vector::Unit(e_dim, b));
        const int col = static_cast<int>(col_k) * e_dim + b;
        for (int i = 1; i <= n; ++i) {
          const HardyVector img = apply(i, basis_vec);
          for (size_t row_k = 0; row_k < cube.size(); ++row_k) {
            const Vector c = img.coeff(cube[row_k]);
            ops[static_cast<size_t>(i - 1)].block(
                static_cast<int>(row_k) * e_dim, col, e_dim, 1) = c;
          }
        }
      }
    }

    OperatorTuple t(std::move(ops));
    try {
      if (class_membership(t, p, q, tol).in_class) return t;
    } catch (const std::exception&) {
      // fall through to the next attempt
    }
  }
  throw DecompositionError(
      "model compression did not land in the class after 64 attempts");
}

}  // namespace polydisc
