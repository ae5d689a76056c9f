#pragma once

#include "wg/int.hpp"
#include "wg/polynomial.hpp"

#include <vector>

namespace wg {

// Closed rational interval certified to contain one exact real value.
struct Interval {
  Rat lo, hi;

  Rat width() const { return hi - lo; }
  bool strictly_below(const Rat& x) const { return hi < x; }
  bool strictly_above(const Rat& x) const { return lo > x; }
};

// Certified enclosures of the absolute values of all complex roots of a
// monic integer polynomial of degree 1..3, one entry per root (counted
// with multiplicity), each of width <= 10^-digits. All decisions along
// the way (discriminant signs, rational root detection) are exact; only
// the final enclosure endpoints carry the requested finite precision.
std::vector<Interval> root_moduli(const IntPolynomial& p, int digits);

// Exact decision: is |alpha| < bound for every complex root alpha?
// Boundary cases (a root of modulus exactly `bound`) are resolved by
// exact rational tests, never by refinement.
bool all_root_moduli_below(const IntPolynomial& p, const Rat& bound);

// Enclosures of all *real* roots, each of width <= 10^-digits,
// ascending. Multiple roots are reported once.
std::vector<Interval> real_roots(const IntPolynomial& p, int digits);

// Certified enclosure of sqrt(x) for x >= 0, width <= 10^-digits.
Interval sqrt_interval(const Rat& x, int digits);

} // namespace wg
