#include <doctest.h>

#include "wg/error.hpp"
#include "wg/numth.hpp"
#include "wg/roots.hpp"

#include <random>
#include <thread>

using namespace wg;
using namespace wg::numth;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Int>> conv;
  for (auto& r : rows) {
    std::vector<Int> row;
    for (long v : r) row.emplace_back(v);
    conv.push_back(std::move(row));
  }
  return IntMatrix::from_rows(conv);
}

bool interval_contains(const Interval& iv, const Rat& lo, const Rat& hi) {
  // the certified interval must overlap [lo, hi] and be at least as tight
  return iv.lo <= hi && iv.hi >= lo;
}

Rat dec(const std::string& s) {
  auto dot = s.find('.');
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  Int den = pow_int(10, fp.size());
  Rat r(Int(ip) * den + Int(fp), den);
  r.canonicalize();
  return r;
}

} // namespace

TEST_CASE("root moduli of reference polynomials") {
  // x^2 - 3x + 1: roots (3 +- sqrt 5)/2
  auto mods = root_moduli(IntPolynomial({1, -3, 1}), 14);
  REQUIRE(mods.size() == 2);
  CHECK(interval_contains(mods[0], dec("0.38196601125010"), dec("0.38196601125011")));
  CHECK(interval_contains(mods[1], dec("2.61803398874989"), dec("2.61803398874990")));
  CHECK(mods[0].width() <= Rat(1, pow_int(10, 14)));

  // x^2 + 1: conjugate pair on the circle
  auto imods = root_moduli(IntPolynomial({1, 0, 1}), 10);
  REQUIRE(imods.size() == 2);
  CHECK(imods[0].lo <= 1);
  CHECK(imods[0].hi >= 1);

  // x^3 - x - 1: plastic number and a pair of modulus 1/sqrt(rho)
  auto pmods = root_moduli(IntPolynomial({-1, -1, 0, 1}), 12);
  REQUIRE(pmods.size() == 3);
  CHECK(interval_contains(pmods[2], dec("1.324717957244"), dec("1.324717957245")));
  CHECK(interval_contains(pmods[0], dec("0.868836961832"), dec("0.868836961834")));
}

TEST_CASE("exact all-roots-below decision handles boundary cases") {
  CHECK(all_root_moduli_below(IntPolynomial({-1, 1}), Rat(2)));        // root 1
  CHECK_FALSE(all_root_moduli_below(IntPolynomial({-2, 1}), Rat(2)));  // root exactly 2
  CHECK_FALSE(all_root_moduli_below(IntPolynomial({2, 1}), Rat(2)));   // root exactly -2
  CHECK(all_root_moduli_below(IntPolynomial({2, 0, 1}), Rat(2)));      // |roots| = sqrt 2
  CHECK_FALSE(all_root_moduli_below(IntPolynomial({4, 0, 1}), Rat(2))); // |roots| exactly 2
  CHECK_FALSE(all_root_moduli_below(IntPolynomial({1, -3, 1}), Rat(2))); // 2.618 outside
  CHECK(all_root_moduli_below(IntPolynomial({-1, -1, 0, 1}), Rat(2)));  // plastic cubic
  CHECK(all_root_moduli_below(IntPolynomial({1, -1, 0, 1}), Rat(2)));   // x^3 - x + 1
}

TEST_CASE("annulus bounds for the reference matrices") {
  {
    AnnulusBound ab = eigen_modulus_bounds(IntMatrix::identity(2), 12);
    CHECK(ab.l_min.lo <= 1);
    CHECK(ab.l_min.hi >= 1);
    CHECK(ab.l_max.lo <= 1);
    CHECK(ab.l_max.hi >= 1);
  }
  {
    AnnulusBound ab = eigen_modulus_bounds(mat({{2, 1}, {1, 1}}), 12);
    CHECK(interval_contains(ab.l_max, dec("2.618033988749"), dec("2.618033988750")));
    CHECK(interval_contains(ab.l_min, dec("0.381966011250"), dec("0.381966011251")));
  }
  {
    // x^2 - 2x - 1: roots 1 +- sqrt 2
    AnnulusBound ab = eigen_modulus_bounds(mat({{2, 1}, {1, 0}}), 12);
    CHECK(interval_contains(ab.l_max, dec("2.414213562373"), dec("2.414213562374")));
    CHECK(interval_contains(ab.l_min, dec("0.414213562373"), dec("0.414213562374")));
  }
}

TEST_CASE("candidate polynomial enumeration counts") {
  CHECK(enumerate_candidate_polys(1).size() == 5);
  CHECK(enumerate_candidate_polys(2).size() == 81);
  CHECK(enumerate_candidate_polys(3).size() == 5525);
  CHECK_THROWS_AS((void)enumerate_candidate_polys(4), Error);
  // the enumeration includes every monic polynomial whose roots are the
  // spec examples' minimal polynomials
  auto polys = enumerate_candidate_polys(2);
  CHECK(std::find(polys.begin(), polys.end(), IntPolynomial({-2, 0, 1})) != polys.end());
  CHECK(std::find(polys.begin(), polys.end(), IntPolynomial({1, -3, 1})) != polys.end());
}

TEST_CASE("epsilon certificates") {
  EpsilonCertificate e1 = epsilon(1);
  CHECK(e1.epsilon == 1);
  CHECK(e1.poly_count == 5);

  EpsilonCertificate e2 = epsilon(2);
  CHECK(e2.epsilon == dec("0.414213562373")); // sqrt(2) - 1 rounded down
  CHECK(e2.poly_count == 81);
  CHECK_FALSE(all_roots_on_unit_circle(e2.witness_poly));
  CHECK(all_root_moduli_below(e2.witness_poly, Rat(2)));

  EpsilonCertificate e3 = epsilon(3);
  CHECK(e3.epsilon == dec("0.245122333753"));
  CHECK(e3.poly_count == 5525);
  CHECK(e3.witness_poly == IntPolynomial({1, 0, -1, 1})); // x^3 - x^2 + 1
  CHECK_FALSE(all_roots_on_unit_circle(e3.witness_poly));

  CHECK(e3.epsilon < e2.epsilon);
  CHECK(e2.epsilon < e1.epsilon);
}

TEST_CASE("epsilon is deterministic across threads") {
  std::vector<Rat> results(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&results, t]() { results[static_cast<size_t>(t)] = epsilon(2).epsilon; });
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) CHECK(results[static_cast<size_t>(t)] == results[0]);
}

TEST_CASE("circle test equals cyclotomic product membership") {
  CHECK(all_roots_on_unit_circle(cyclotomic_poly(5) * cyclotomic_poly(2)));
  CHECK(all_roots_on_unit_circle(IntPolynomial({1, 2, 1}))); // (x+1)^2
  CHECK_FALSE(all_roots_on_unit_circle(IntPolynomial({0, 1})));
  CHECK_FALSE(all_roots_on_unit_circle(IntPolynomial({-2, 0, 1})));
}

TEST_CASE("k_max on the reference matrix") {
  IntMatrix fib = mat({{2, 1}, {1, 1}});
  CHECK(k_max(fib, Rat(41, 100)) == 2);
  CHECK(k_max(fib, Rat(1)) == 1);
  CHECK_THROWS_AS((void)k_max(mat({{0, -1}, {1, 0}}), Rat(1, 2)), Error); // all roots of unity
  CHECK_THROWS_AS((void)k_max(fib, Rat(2)), Error);                       // eps out of range

  // monotone in eps
  Int prev = k_max(fib, Rat(5, 100));
  for (long num : {10L, 20L, 41L, 60L, 80L, 100L}) {
    Int cur = k_max(fib, Rat(num, 100));
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("large annulus forces large k_max") {
  // l_max of [[6,1],[5,1]] is about 6.85 >= (1 + 0.2)^10
  IntMatrix big = mat({{6, 1}, {5, 1}});
  CHECK(k_max(big, Rat(2, 10)) >= 10);
}

TEST_CASE("k_max is 0 when the annulus sits inside the strip at k = 1") {
  // [[1,1],[1,0]]: eigenvalues are the golden ratio pair 1.618, -0.618;
  // with eps = 0.8 the whole annulus lies inside (0.2, 1.8)
  IntMatrix m = mat({{1, 1}, {1, 0}});
  CHECK(k_max(m, Rat(8, 10)) == 0);
  CHECK(k_max(m, Rat(3, 10)) >= 1);
}

TEST_CASE("bound dispatch per ambient shape") {
  CHECK(jordan_bound(WangDescriptor::kodaira(1)) == 1);
  CHECK(jordan_bound(WangDescriptor::kodaira(5)) == 5);
  {
    WangDescriptor d = WangDescriptor::spm(mat({{2, 1}, {1, 1}}), 1);
    CHECK(jordan_bound(d) == k_max(d.m, epsilon(2).epsilon));
    WangDescriptor d3 = WangDescriptor::spm(mat({{2, 1}, {1, 1}}), 3);
    CHECK(jordan_bound(d3) == 3 * k_max(d.m, epsilon(2).epsilon));
  }
  {
    WangDescriptor d = WangDescriptor::sm(mat({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}));
    CHECK(jordan_bound(d) == k_max(d.m, epsilon(3).epsilon));
  }
}
