#include "wg/numth.hpp"

#include "wg/error.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace wg {
namespace numth {

AnnulusBound eigen_modulus_bounds(const IntMatrix& m, int digits) {
  Int d = det(m);
  if (d != 1 && d != -1) throw Error(Errc::NOT_UNIMODULAR, "annulus bounds require det +-1");
  if (m.rows() > 3) throw Error(Errc::UNSUPPORTED_DEGREE, "annulus bounds support n <= 3");
  IntPolynomial p = char_poly(m);
  std::vector<Interval> mods = root_moduli(p, digits);
  AnnulusBound out;
  out.certified_digits = digits;
  out.l_min = mods.front();
  out.l_max = mods.front();
  for (const Interval& iv : mods) {
    if (iv.lo < out.l_min.lo) out.l_min.lo = iv.lo;
    if (iv.hi < out.l_min.hi) out.l_min.hi = iv.hi;
    if (iv.lo > out.l_max.lo) out.l_max.lo = iv.lo;
    if (iv.hi > out.l_max.hi) out.l_max.hi = iv.hi;
  }
  return out;
}

std::vector<IntPolynomial> enumerate_candidate_polys(int n, const Int& root_bound) {
  if (n < 1 || n > 3) throw Error(Errc::UNSUPPORTED_DEGREE, "candidate enumeration supports n in 1..3");
  // |a_{n-i}| <= binom(n, i) * root_bound^i, i = 1..n
  std::vector<Int> bounds(static_cast<size_t>(n)); // bounds[j] for coefficient of x^j, j = 0..n-1
  for (int i = 1; i <= n; ++i)
    bounds[static_cast<size_t>(n - i)] = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i)) *
                                         pow_int(root_bound, static_cast<unsigned long>(i));
  std::vector<IntPolynomial> out;
  std::vector<Int> coeffs(static_cast<size_t>(n) + 1, Int(0));
  coeffs[static_cast<size_t>(n)] = 1;
  // lexicographic over (a_{n-1}, ..., a_0)
  std::vector<Int> cur(static_cast<size_t>(n));
  for (size_t j = 0; j < cur.size(); ++j) cur[j] = -bounds[cur.size() - 1 - j]; // cur[0] = a_{n-1}
  while (true) {
    for (int j = 0; j < n; ++j) coeffs[static_cast<size_t>(n - 1 - j)] = cur[static_cast<size_t>(j)];
    out.push_back(IntPolynomial(coeffs));
    int pos = n - 1;
    while (pos >= 0) {
      Int& b = bounds[static_cast<size_t>(n - 1 - pos)];
      if (cur[static_cast<size_t>(pos)] < b) {
        ++cur[static_cast<size_t>(pos)];
        break;
      }
      cur[static_cast<size_t>(pos)] = -b;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

bool all_roots_on_unit_circle(const IntPolynomial& p) {
  if (!p.is_monic()) throw Error(Errc::BAD_INPUT, "circle test expects a monic polynomial");
  // Kronecker: a monic integer polynomial has all roots on the unit
  // circle iff it is a product of cyclotomic polynomials.
  IntPolynomial rem = p;
  for (long d : cyclotomic_orders_up_to_degree(p.degree())) {
    IntPolynomial phi = cyclotomic_poly(d);
    while (phi.degree() <= rem.degree()) {
      auto [q, r] = rem.divmod_monic(phi);
      if (!r.is_zero()) break;
      rem = q;
    }
  }
  return rem.degree() == 0;
}

EpsilonCertificate epsilon(int n, int digits) {
  static std::map<std::pair<int, int>, EpsilonCertificate> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({n, digits});
    if (it != cache.end()) return it->second;
  }

  const Int root_bound = 2;
  const int work_digits = digits + 8;
  std::vector<IntPolynomial> cands = enumerate_candidate_polys(n, root_bound);

  EpsilonCertificate cert;
  cert.n = n;
  cert.poly_count = static_cast<long>(cands.size());
  for (int i = 1; i <= n; ++i)
    cert.coeff_bounds.push_back(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i)) *
                                pow_int(root_bound, static_cast<unsigned long>(i)));

  Rat best;           // rounded-down minimal mu_Q seen so far
  bool have_best = false;
  Rat bound_rat(root_bound);

  for (const IntPolynomial& q : cands) {
    if (all_roots_on_unit_circle(q)) continue; // exact exclusion
    if (!all_root_moduli_below(q, bound_rat)) continue; // exact strict filter
    ++cert.off_circle_count;
    // mu_Q = max over roots of | |root| - 1 |, certified from below
    std::vector<Interval> mods = root_moduli(q, work_digits);
    Rat mu_lo = 0;
    for (const Interval& iv : mods) {
      // | interval - 1 | as interval, then lower endpoint
      Rat lo = iv.lo - 1, hi = iv.hi - 1;
      Rat dev_lo;
      if (lo >= 0)
        dev_lo = lo;
      else if (hi <= 0)
        dev_lo = -hi;
      else
        dev_lo = 0;
      if (dev_lo > mu_lo) mu_lo = dev_lo;
    }
    Rat rounded = round_down(mu_lo, digits);
    if (!have_best || rounded < best) {
      best = rounded;
      have_best = true;
      cert.witness_poly = q;
    }
  }
  assert(have_best);
  cert.epsilon = best < 1 ? best : Rat(1);
  assert(cert.epsilon > 0);

  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(std::make_pair(n, digits), cert);
  return cert;
}

Int k_max(const IntMatrix& m, const Rat& eps) {
  if (eps <= 0 || eps > 1) throw Error(Errc::BAD_INPUT, "eps must satisfy 0 < eps <= 1");
  RootsOfUnityResult rou = roots_of_unity_eigenvalues(m);
  if (rou.all) throw Error(Errc::NO_BOUND, "all eigenvalues are roots of unity");
  const int digits = 24;
  AnnulusBound ann = eigen_modulus_bounds(m, digits);
  // outward rounding: upper end of l_max, lower end of l_min
  const Rat lmax_hi = ann.l_max.hi;
  const Rat lmin_lo = ann.l_min.lo;
  const Rat up = 1 + eps;
  const Rat down = 1 - eps;

  const long iteration_cap = 100000; // (1+eps)^k grows; tiny eps is rejected above 0 anyway
  Int best = 0;
  // largest k with l_max >= (1+eps)^k
  {
    Rat powk = up;
    long k = 0;
    while (k < iteration_cap && powk <= lmax_hi) {
      ++k;
      powk *= up;
    }
    if (k == iteration_cap) throw Error(Errc::BAD_INPUT, "eps too small for iterative bound");
    if (Int(k) > best) best = k;
  }
  // largest k with l_min <= (1-eps)^k  (empty when eps = 1)
  if (down > 0) {
    Rat powk = down;
    long k = 0;
    while (k < iteration_cap && powk >= lmin_lo) {
      ++k;
      powk *= down;
    }
    if (k == iteration_cap) throw Error(Errc::BAD_INPUT, "eps too small for iterative bound");
    if (Int(k) > best) best = k;
  }
  return best;
}

Int jordan_bound(const WangDescriptor& d) {
  require_valid(d);
  switch (d.shape) {
    case Shape::SM: return k_max(d.m, epsilon(3).epsilon);
    case Shape::SPM: return k_max(d.m, epsilon(2).epsilon) * d.r;
    case Shape::KODAIRA: return d.r;
  }
  throw Error(Errc::BAD_INPUT, "unreachable");
}

} // namespace numth
} // namespace wg
