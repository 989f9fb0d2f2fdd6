#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace polydisc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSzegoPositive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotIsometric : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NeedsPadding : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundarySingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyVariety : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInClass : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical thresholds used across the library. The underlying mathematics
/// is exact; these only absorb floating-point rounding.
struct ToleranceConfig {
  double eps_contraction = 1e-10;
  double eps_commute = 1e-10;  // scaled by the ambient dimension at use sites
  double eps_psd = 1e-10;      // scaled by (1 + ||S||) at use sites
  double eps_sym = 1e-12;
  double eps_mat = 1e-10;
  double eps_rank = 1e-10;  // relative eigenvalue / singular value cutoff
  double eps_unitary = 1e-10;
  double eps_residual = 1e-10;
  double rho_pure = 1e-8;  // spectral-radius margin for purity decisions
};

double op_norm(const Matrix& a);
double spectral_radius(const Matrix& a);

}  // namespace polydisc
