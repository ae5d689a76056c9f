#pragma once

#include "wg/int.hpp"
#include "wg/matrix.hpp"
#include "wg/polynomial.hpp"
#include "wg/roots.hpp"
#include "wg/wang.hpp"

#include <vector>

namespace wg {
namespace numth {

// Certified annulus containing all eigenvalues of a unimodular matrix:
// l_min and l_max are the smallest and largest eigenvalue moduli, each
// enclosed in a rational interval of width <= 10^-certified_digits.
struct AnnulusBound {
  Interval l_min, l_max;
  int certified_digits = 0;
};

AnnulusBound eigen_modulus_bounds(const IntMatrix& m, int digits);

// All monic integer polynomials of degree n whose coefficients satisfy
// the elementary-symmetric bound |a_{n-i}| <= binom(n,i) * root_bound^i.
// Every minimal polynomial of a degree-n algebraic integer with all
// conjugates of modulus < root_bound appears in this list. Order is
// deterministic (lexicographic in (a_{n-1}, ..., a_0)).
std::vector<IntPolynomial> enumerate_candidate_polys(int n, const Int& root_bound = 2);

// The effective constant: any algebraic integer of degree <= n all of
// whose conjugates lie in (1 - epsilon, 1 + epsilon) is a root of
// unity. Computed by exhausting the candidate list: polynomials that
// fail the exact cyclotomic-product test contribute
// mu_Q = max over roots of | |root| - 1 |, and epsilon = min(mu, 1)
// rounded down to `digits` decimal places.
struct EpsilonCertificate {
  int n = 0;
  Rat epsilon;                 // rounded-down lower bound, 0 < epsilon <= 1
  IntPolynomial witness_poly;  // attains the minimal mu
  std::vector<Int> coeff_bounds; // |a_{n-1}|, ..., |a_0| bounds used
  long poly_count = 0;         // total polynomials enumerated
  long off_circle_count = 0;   // polynomials that failed the circle test
};

EpsilonCertificate epsilon(int n, int digits = 12);

// Exact test: does every complex root of p lie on the unit circle?
// (Equivalently: is p a product of cyclotomic polynomials.)
bool all_roots_on_unit_circle(const IntPolynomial& p);

// Largest k >= 1 such that the eigenvalue annulus of M taken to the
// power 1/k still reaches outside (1-eps, 1+eps); 0 when even k = 1
// does not. For k > k_max no R in GL_n(Z) can satisfy R^k conjugate
// to M. Rounding is outward, so the result is never an undercount.
// Preconditions: M unimodular with at least one eigenvalue not a root
// of unity (NO_BOUND otherwise), 0 < eps <= 1.
Int k_max(const IntMatrix& m, const Rat& eps);

// Effective normal-abelian index bound for finite quotients of the
// ambient group, per shape:
//   SM       k_max(M, epsilon(3))
//   SPM      k_max(M, epsilon(2)) * r
//   KODAIRA  r
Int jordan_bound(const WangDescriptor& d);

} // namespace numth
} // namespace wg
