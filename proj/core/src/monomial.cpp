#include "solvflow/monomial.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "solvflow/errors.hpp"

namespace solvflow {

InvariantMonomial::InvariantMonomial(const Exponents& e) : e_(e) {
  int g = 0;
  for (int x : e_) g = std::gcd(g, std::abs(x));
  if (g == 0) throw InvalidArgument("invariant monomial cannot be the zero vector");
  int sign = 1;
  for (int x : e_)
    if (x != 0) {
      sign = x > 0 ? 1 : -1;
      break;
    }
  for (int& x : e_) x = sign * x / g;
}

double InvariantMonomial::evaluate(const Vec5& g) const {
  double v = 1.0;
  for (std::size_t i = 0; i < kDim; ++i)
    if (e_[i] != 0) v *= std::pow(g[i], e_[i]);
  return v;
}

double InvariantMonomial::log_derivative(const Vec5& g, const Vec5& dg) const {
  double s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) s += e_[i] * dg[i] / g[i];
  return s;
}

std::string InvariantMonomial::str() const {
  std::string out;
  for (std::size_t i = 0; i < kDim; ++i) {
    if (e_[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += kComponentNames[i];
    if (e_[i] != 1) out += "^" + std::to_string(e_[i]);
  }
  return out;
}

}  // namespace solvflow
