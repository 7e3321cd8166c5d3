#pragma once

#include <array>
#include <compare>
#include <string>

#include "solvflow/types.hpp"

namespace solvflow {

using Exponents = std::array<int, kDim>;

// prod_i g_i^{e_i} with e primitive (gcd 1) and first nonzero entry positive.
class InvariantMonomial {
 public:
  // Divides out the gcd and fixes the sign; throws InvalidArgument for zero.
  explicit InvariantMonomial(const Exponents& e);

  const Exponents& exponents() const noexcept { return e_; }
  int operator[](std::size_t i) const { return e_[i]; }

  double evaluate(const Vec5& g) const;
  // d/dt log of the monomial given g and dg/dt.
  double log_derivative(const Vec5& g, const Vec5& dg) const;

  // e.g. "A^5 B^4 C^3 D^2 E", "A B^-1"
  std::string str() const;

  auto operator<=>(const InvariantMonomial&) const = default;

 private:
  Exponents e_;
};

}  // namespace solvflow
