#include "polydisc/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace polydisc {

Complex Polynomial::eval(const std::vector<Complex>& z) const {
  if (static_cast<int>(z.size()) != vars)
    throw InputError("polynomial evaluated with wrong variable count");
  Complex acc = 0.0;
  for (const auto& [k, c] : terms) {
    Complex m = c;
    for (size_t i = 0; i < k.size(); ++i)
      for (int j = 0; j < k[i]; ++j) m *= z[i];
    acc += m;
  }
  return acc;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [k, c] : terms) {
    int t = 0;
    for (int e : k) t += e;
    d = std::max(d, t);
  }
  return d;
}

double Polynomial::lipschitz() const {
  double l = 0.0;
  for (const auto& [k, c] : terms) {
    int t = 0;
    for (int e : k) t += e;
    l += std::abs(c) * t;
  }
  return l;
}

}  // namespace polydisc
