#include "wg/roots.hpp"

#include "wg/error.hpp"

#include <algorithm>
#include <cassert>

namespace wg {

namespace {

int sign_of(const Rat& x) { return sgn(x); }

// All integer roots of a monic integer polynomial, with multiplicity,
// removed from p by exact division. Monic integer polynomials have no
// non-integer rational roots.
std::vector<Int> deflate_integer_roots(IntPolynomial& p) {
  std::vector<Int> roots;
  while (p.degree() >= 1 && p.coeff(0) == 0) {
    auto q = p.divide_exact(IntPolynomial::monomial(1));
    p = *q;
    roots.emplace_back(0);
  }
  if (p.degree() < 1) return roots;
  // candidate roots divide the constant term
  Int a0 = p.coeff(0);
  Int mag = a0 < 0 ? Int(-a0) : a0;
  std::vector<Int> divisors;
  for (Int i = 1; i * i <= mag; ++i) {
    if (!divides(i, mag)) continue;
    divisors.push_back(i);
    divisors.push_back(divexact(mag, i));
  }
  std::sort(divisors.begin(), divisors.end());
  divisors.erase(std::unique(divisors.begin(), divisors.end()), divisors.end());
  for (const Int& d : divisors) {
    for (Int cand : {d, Int(-d)}) {
      while (p.degree() >= 1 && p.eval(cand) == 0) {
        std::vector<Int> linear = {-cand, Int(1)};
        auto q = p.divide_exact(IntPolynomial(linear));
        p = *q;
        roots.push_back(cand);
      }
    }
  }
  return roots;
}

Rat cauchy_bound(const IntPolynomial& p) {
  // monic: all roots have |root| < 1 + max |a_i|
  Int m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Int mag = p.coeff(i) < 0 ? Int(-p.coeff(i)) : p.coeff(i);
    if (mag > m) m = mag;
  }
  return Rat(m + 1);
}

// Bisection refinement of a bracket with a strict sign change and no
// rational root inside, down to the requested width.
Interval refine_bracket(const IntPolynomial& p, Rat lo, Rat hi, const Rat& width) {
  int slo = sign_of(p.eval(lo));
  assert(slo != 0 && sign_of(p.eval(hi)) != 0 && slo != sign_of(p.eval(hi)));
  while (hi - lo > width || (lo < 0 && hi > 0)) {
    Rat mid = (lo + hi) / 2;
    int sm = sign_of(p.eval(mid));
    assert(sm != 0);
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
  return Interval{lo, hi};
}

// Sturm chain over Q for a squarefree polynomial.
struct SturmChain {
  std::vector<std::vector<Rat>> seq; // low-degree-first coefficient rows

  static std::vector<Rat> to_rat(const IntPolynomial& p) {
    std::vector<Rat> v;
    for (int i = 0; i <= p.degree(); ++i) v.emplace_back(p.coeff(i));
    return v;
  }

  explicit SturmChain(const IntPolynomial& p) {
    seq.push_back(to_rat(p));
    seq.push_back(to_rat(p.derivative()));
    while (seq.back().size() > 1) {
      // negated remainder of the previous two
      std::vector<Rat> a = seq[seq.size() - 2];
      const std::vector<Rat>& b = seq.back();
      while (a.size() >= b.size()) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.empty()) break;
      }
      if (a.empty()) break; // gcd nontrivial: input was not squarefree
      for (auto& c : a) c = -c;
      seq.push_back(std::move(a));
    }
  }

  static Rat eval(const std::vector<Rat>& c, const Rat& x) {
    Rat acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  int variations(const Rat& x) const {
    int v = 0, prev = 0;
    for (const auto& c : seq) {
      int s = sign_of(eval(c, x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }

  int count_in(const Rat& a, const Rat& b) const { return variations(a) - variations(b); }
};

// Exact discriminant of x^3 + a x^2 + b x + c.
Int cubic_disc(const IntPolynomial& p) {
  assert(p.degree() == 3 && p.is_monic());
  const Int &a = p.coeff(2), &b = p.coeff(1), &c = p.coeff(0);
  return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

Interval abs_interval(const Interval& iv) {
  assert(!(iv.lo < 0 && iv.hi > 0));
  if (iv.lo >= 0) return iv;
  return Interval{-iv.hi, -iv.lo};
}

} // namespace

Interval sqrt_interval(const Rat& x, int digits) {
  assert(x >= 0);
  Int scale = pow_int(10, static_cast<unsigned long>(digits));
  Int den = x.get_den() * scale;
  Int s = isqrt(x.get_num() * x.get_den() * scale * scale);
  Rat lo(s, den), hi(s + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return Interval{lo, hi};
}

std::vector<Interval> real_roots(const IntPolynomial& p, int digits) {
  if (!p.is_monic() || p.degree() < 1 || p.degree() > 3)
    throw Error(Errc::UNSUPPORTED_DEGREE, "real_roots supports monic degree 1..3");
  if (digits < 6) digits = 6; // keep enclosures sign-definite away from 0
  Rat width(1, pow_int(10, static_cast<unsigned long>(digits)));
  IntPolynomial q = p;
  std::vector<Int> zroots = deflate_integer_roots(q);
  std::vector<Interval> out;
  for (const Int& m : zroots) out.push_back(Interval{Rat(m), Rat(m)});

  if (q.degree() == 2) {
    Int disc = q.coeff(1) * q.coeff(1) - 4 * q.coeff(0);
    if (disc > 0) {
      Rat vertex = Rat(-q.coeff(1), 2);
      Rat c = cauchy_bound(q);
      out.push_back(refine_bracket(q, -c, vertex, width));
      out.push_back(refine_bracket(q, vertex, c, width));
    }
  } else if (q.degree() == 3) {
    Int disc = cubic_disc(q);
    Rat c = cauchy_bound(q);
    if (disc < 0) {
      out.push_back(refine_bracket(q, -c, c, width));
    } else {
      // three distinct real roots; isolate with Sturm then bisect
      SturmChain chain(q);
      std::vector<std::pair<Rat, Rat>> work{{-c, c}}, isolated;
      while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int cnt = chain.count_in(a, b);
        if (cnt == 0) continue;
        if (cnt == 1) {
          isolated.emplace_back(a, b);
          continue;
        }
        Rat mid = (a + b) / 2;
        work.emplace_back(a, mid);
        work.emplace_back(mid, b);
      }
      for (auto& [a, b] : isolated) out.push_back(refine_bracket(q, a, b, width));
    }
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  // merge exact duplicates from multiple integer roots
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Interval& x, const Interval& y) {
                          return x.lo == y.lo && x.hi == y.hi && x.lo == x.hi;
                        }),
            out.end());
  return out;
}

std::vector<Interval> root_moduli(const IntPolynomial& p, int digits) {
  if (!p.is_monic() || p.degree() < 1 || p.degree() > 3)
    throw Error(Errc::UNSUPPORTED_DEGREE, "root_moduli supports monic degree 1..3");
  if (digits < 6) digits = 6;
  Rat width(1, pow_int(10, static_cast<unsigned long>(digits)));
  IntPolynomial q = p;
  std::vector<Int> zroots = deflate_integer_roots(q);
  std::vector<Interval> out;
  for (const Int& m : zroots) {
    Rat a = m < 0 ? Rat(-m) : Rat(m);
    out.push_back(Interval{a, a});
  }

  if (q.degree() == 2) {
    Int disc = q.coeff(1) * q.coeff(1) - 4 * q.coeff(0);
    assert(disc != 0); // rational double root would have been deflated
    if (disc < 0) {
      // conjugate pair: |lambda|^2 equals the constant term
      Interval m = sqrt_interval(Rat(q.coeff(0)), digits);
      out.push_back(m);
      out.push_back(m);
    } else {
      Rat vertex = Rat(-q.coeff(1), 2);
      Rat c = cauchy_bound(q);
      out.push_back(abs_interval(refine_bracket(q, -c, vertex, width)));
      out.push_back(abs_interval(refine_bracket(q, vertex, c, width)));
    }
  } else if (q.degree() == 3) {
    Int disc = cubic_disc(q);
    assert(disc != 0); // repeated root of an integer cubic is rational
    Rat c = cauchy_bound(q);
    if (disc < 0) {
      // one real root rho and a conjugate pair with |lambda|^2 = -a0/rho
      Interval rho = refine_bracket(q, -c, c, width);
      out.push_back(abs_interval(rho));
      Rat a0(q.coeff(0));
      assert(rho.lo != 0 && rho.hi != 0); // |rho| >= 1/C^2, far above the enclosure width
      Rat lo = -a0 / rho.lo, hi = -a0 / rho.hi;
      if (lo > hi) std::swap(lo, hi);
      assert(lo > 0);
      Interval msq{lo, hi};
      Interval m{sqrt_interval(msq.lo, digits).lo, sqrt_interval(msq.hi, digits).hi};
      out.push_back(m);
      out.push_back(m);
    } else {
      for (const Interval& iv : real_roots(q, digits)) out.push_back(abs_interval(iv));
    }
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return out;
}

bool all_root_moduli_below(const IntPolynomial& p, const Rat& bound) {
  if (!p.is_monic() || p.degree() < 1 || p.degree() > 3)
    throw Error(Errc::UNSUPPORTED_DEGREE, "all_root_moduli_below supports monic degree 1..3");
  IntPolynomial q = p;
  std::vector<Int> zroots = deflate_integer_roots(q);
  for (const Int& m : zroots) {
    Rat a = m < 0 ? Rat(-m) : Rat(m);
    if (a >= bound) return false;
  }
  if (q.degree() < 1) return true;

  Rat b2 = bound * bound;
  if (q.degree() == 2) {
    Int disc = q.coeff(1) * q.coeff(1) - 4 * q.coeff(0);
    assert(disc != 0);
    if (disc < 0) return Rat(q.coeff(0)) < b2;
    // two irrational real roots of an upward parabola: both inside the
    // open interval (-bound, bound) iff the values at the ends are
    // positive and the vertex lies inside
    Rat vertex = Rat(-q.coeff(1), 2);
    return q.eval(bound) > 0 && q.eval(-bound) > 0 && vertex > -bound && vertex < bound;
  }

  // cubic without rational roots
  Int disc = cubic_disc(q);
  assert(disc != 0);
  if (disc > 0) {
    SturmChain chain(q);
    return chain.count_in(-bound, bound) == 3;
  }
  // one real root rho, sign(q(x)) = sign(x - rho)
  if (!(q.eval(bound) > 0 && q.eval(-bound) < 0)) return false; // |rho| < bound fails
  // conjugate pair: |lambda|^2 = -a0 / rho < bound^2 ?
  Rat a0(q.coeff(0));
  Rat t = -a0 / b2; // compare rho with t
  Rat qt = q.eval(t);
  assert(qt != 0); // otherwise rho would be rational
  bool rho_positive = q.eval(Rat(0)) < 0;
  if (rho_positive) return qt < 0;  // need rho > t
  return qt > 0;                    // need rho < t
}

} // namespace wg
