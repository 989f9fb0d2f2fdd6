#pragma once

#include <string>
#include <vector>

#include "polydisc/operator_core.hpp"
#include "polydisc/polynomial.hpp"
#include "polydisc/vn_variety.hpp"

namespace polydisc {

OperatorTuple load_tuple(const std::string& path);
void save_tuple(const OperatorTuple& t, const std::string& path,
                const std::string& comment = "");

std::vector<Polynomial> load_polys(const std::string& path);
void save_polys(const std::vector<Polynomial>& polys, const std::string& path);

void write_variety_csv(const VarietySampleSet& s, int n_vars,
                       const std::string& path);
VarietySampleSet load_variety_csv(const std::string& path);

Matrix haar_unitary(int dim, unsigned seed);

/// Diagonal tuple with entries uniform in the closed disc of radius rho_max.
OperatorTuple gen_diagonal(int n, int dim, double rho_max, unsigned seed);

/// Compression of the model tuple (Phi_p, Phi_q, shifts) on the degree-<=N
/// truncation of the (n-1)-variable Hardy space with fiber C^{e_dim}, built
/// from a random unitary and a random orthogonal projection.
OperatorTuple gen_model_compression(int n, int p, int q, int e_dim, int N,
                                    unsigned seed);

}  // namespace polydisc
