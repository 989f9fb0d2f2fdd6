#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "polydisc/operator_core.hpp"

using namespace polydisc;
using testutil::random_diagonal_tuple;
using testutil::random_conjugated_tuple;

namespace {

// oracle: the alternating 2^n sum, no recursion
Matrix szego_oracle(const OperatorTuple& t) {
  const int n = t.n();
  const int d = t.dim();
  Matrix s = Matrix::Zero(d, d);
  for (int mask = 0; mask < (1 << n); ++mask) {
    Matrix term = Matrix::Identity(d, d);
    int bits = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        term = t.ops[static_cast<size_t>(i)] * term;
        ++bits;
      }
    Matrix full = term * term.adjoint();
    s += (bits % 2 == 0 ? 1.0 : -1.0) * full;
  }
  return s;
}

OperatorTuple scalars(std::initializer_list<Complex> vals) {
  std::vector<Matrix> ops;
  for (Complex v : vals) {
    Matrix m(1, 1);
    m(0, 0) = v;
    ops.push_back(m);
  }
  return OperatorTuple(std::move(ops));
}

}  // namespace

TEST_CASE("szego defect matches the alternating-sum oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const int dim = 1 + trial % 5;
    const OperatorTuple t = trial % 2 == 0
                                ? random_diagonal_tuple(n, dim, 0.9, rng)
                                : random_conjugated_tuple(n, dim, 0.9, rng);
    CHECK(op_norm(szego_defect(t) - szego_oracle(t)) < 1e-12);
  }
}

TEST_CASE("scalar szego value is the product of defects") {
  const OperatorTuple t = scalars({0.3, 0.4, 0.5});
  const Matrix s = szego_defect(t);
  // (1-0.09)(1-0.16)(1-0.25)
  CHECK(std::abs(s(0, 0) - Complex(0.5733)) < 1e-14);
}

TEST_CASE("defect sqrt of a scalar") {
  ToleranceConfig tol;
  Matrix s(1, 1);
  s(0, 0) = 0.5625;
  const DefectData d = defect_sqrt(s, tol);
  CHECK(d.rank == 1);
  CHECK(std::abs(d.sqrt(0, 0) - Complex(0.75)) < 1e-14);
  CHECK(std::abs(std::abs(d.coord_map()(0, 0)) - 0.75) < 1e-14);
}

TEST_CASE("defect sqrt rejects an indefinite matrix") {
  ToleranceConfig tol;
  Matrix s = Matrix::Identity(2, 2);
  s(1, 1) = -0.5;
  CHECK_THROWS_AS(defect_sqrt(s, tol), NotSzegoPositive);
}

TEST_CASE("defect sqrt rank drops on a singular PSD matrix") {
  ToleranceConfig tol;
  Matrix s = Matrix::Zero(3, 3);
  s(0, 0) = 2.0;
  const DefectData d = defect_sqrt(s, tol);
  CHECK(d.rank == 1);
  CHECK(op_norm(d.sqrt * d.sqrt - s) < 1e-12);
}

TEST_CASE("purity flags") {
  ToleranceConfig tol;
  Matrix u = Matrix::Identity(2, 2);
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  // nilpotent with spectral radius 0 but norm 0.9
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 0.9;
  const OperatorTuple t({u, half, nil});
  const auto flags = is_pure(t, tol);
  CHECK_FALSE(flags[0]);
  CHECK(flags[1]);
  CHECK(flags[2]);
}

TEST_CASE("class membership on the scalar example") {
  ToleranceConfig tol;
  const OperatorTuple t = scalars({0.3, 0.4, 0.5});
  const ClassReport rep = class_membership(t, 1, 2, tol);
  CHECK(rep.in_class);
  CHECK(rep.is_contractive);
  CHECK(rep.is_commuting);
  // T_hat_1 = (0.4, 0.5): (1-0.16)(1-0.25)
  CHECK(rep.szego_min_eig.at("T_hat_p") == doctest::Approx(0.63).epsilon(1e-12));
  // T_hat_2 = (0.3, 0.5): (1-0.09)(1-0.25)
  CHECK(rep.szego_min_eig.at("T_hat_q") == doctest::Approx(0.6825).epsilon(1e-12));
}

TEST_CASE("class membership fails when a coordinate is not contractive") {
  ToleranceConfig tol;
  const OperatorTuple t = scalars({1.2, 0.4, 0.5});
  CHECK_FALSE(class_membership(t, 1, 2, tol).in_class);
}

TEST_CASE("doubly commuting pure tuples are in the class for every p < q") {
  ToleranceConfig tol;
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const OperatorTuple t = random_diagonal_tuple(3 + trial % 3, 4, 0.8, rng);
    for (int p = 1; p <= t.n(); ++p)
      for (int q = p + 1; q <= t.n(); ++q)
        CHECK(class_membership(t, p, q, tol).in_class);
  }
}

TEST_CASE("subtuple and product tuple shapes") {
  const OperatorTuple t = scalars({0.3, 0.4, 0.5});
  CHECK(subtuple(t, 2).n() == 2);
  CHECK(std::abs(subtuple(t, 2).op(2)(0, 0) - Complex(0.5)) < 1e-15);
  const OperatorTuple prod = product_tuple(t, 1, 3);
  CHECK(prod.n() == 2);
  CHECK(std::abs(prod.op(1)(0, 0) - Complex(0.15)) < 1e-15);
  CHECK(subtuple_pq(t, 1, 3).n() == 1);
  CHECK_THROWS_AS(product_tuple(t, 2, 2), InputError);
}

TEST_CASE("defect identities (Lemma 3.1) hold on random members") {
  ToleranceConfig tol;
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const OperatorTuple t = trial % 2 == 0
                                ? random_diagonal_tuple(3, 5, 0.9, rng)
                                : random_conjugated_tuple(4, 3, 0.85, rng);
    const auto [r1, r2] = defect_identity_check(t, 1, 2, tol);
    CHECK(r1 < 1e-12);
    CHECK(r2 < 1e-12);
  }
}

TEST_CASE("scaling keeps membership (remark after the class definition)") {
  ToleranceConfig tol;
  std::mt19937 rng(23);
  const OperatorTuple t = random_conjugated_tuple(3, 4, 0.95, rng);
  const OperatorTuple scaled = scale_tuple(t, 0.7);
  CHECK(op_norm(scaled.op(1) - 0.7 * t.op(1)) < 1e-15);
  if (class_membership(t, 1, 2, tol).in_class)
    CHECK(class_membership(scaled, 1, 2, tol).in_class);
}

TEST_CASE("tuple validation rejects mismatched shapes") {
  Matrix a = Matrix::Identity(2, 2);
  Matrix b = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(OperatorTuple({a, b}), InputError);
}
