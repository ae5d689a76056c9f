#pragma once

#include "wg/int.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wg {

// Polynomial with exact integer coefficients, stored low degree first.
// The zero polynomial has an empty coefficient vector and degree -1.
class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial constant(Int v);
  // x^n with unit coefficient.
  static IntPolynomial monomial(int n, Int coeff = 1);
  // x^n - 1.
  static IntPolynomial xn_minus_one(int n);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const Int& coeff(int i) const;
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const { return c_.back(); }

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  IntPolynomial derivative() const;

  // Horner evaluation; works for Int and Rat arguments.
  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;

  // Quotient and remainder against a monic divisor (exact over Z).
  // Divisor must be monic and nonzero.
  std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& d) const;

  // Quotient if the division is exact, nullopt otherwise.
  std::optional<IntPolynomial> divide_exact(const IntPolynomial& d) const;

  std::string to_string(const std::string& var = "x") const;

private:
  void trim();
  std::vector<Int> c_;
};

// d-th cyclotomic polynomial, computed by repeated exact division of
// x^d - 1 by the lower-order cyclotomic factors. Results are memoized.
IntPolynomial cyclotomic_poly(long d);

// Euler totient.
long euler_phi(long d);

// All d >= 1 with phi(d) <= n, ascending. A degree-n integer polynomial
// can only have cyclotomic factors from this list.
std::vector<long> cyclotomic_orders_up_to_degree(int n);

} // namespace wg
