#include <doctest.h>

#include "wg/numth.hpp"
#include "wg/roots.hpp"
#include "wg/verify.hpp"

#include <random>

using namespace wg;

TEST_CASE("polynomials passing the exact circle test have all moduli at 1") {
  // cross-check of the exact cyclotomic path against the certified
  // numerical moduli, over the full degree-2 candidate list and a slice
  // of the degree-3 list
  for (int n : {2, 3}) {
    auto cands = numth::enumerate_candidate_polys(n);
    size_t step = n == 2 ? 1 : 7;
    for (size_t i = 0; i < cands.size(); i += step) {
      const IntPolynomial& q = cands[i];
      if (!numth::all_roots_on_unit_circle(q)) continue;
      for (const Interval& iv : root_moduli(q, 16)) {
        CHECK(iv.lo <= 1);
        CHECK(iv.hi >= 1);
      }
    }
  }
}

TEST_CASE("annulus invariants on random unimodular matrices") {
  std::mt19937_64 rng(515151);
  for (int i = 0; i < 120; ++i) {
    int n = 2 + static_cast<int>(rng() % 2);
    IntMatrix m = verify::random_unimodular(rng, n, 15, false);
    numth::AnnulusBound ab = numth::eigen_modulus_bounds(m, 12);
    CHECK(ab.l_min.lo > 0);
    CHECK(ab.l_min.lo <= ab.l_max.hi);
    // unimodular: the eigenvalue moduli straddle 1
    CHECK(ab.l_min.lo <= 1);
    CHECK(ab.l_max.hi >= 1);
  }
}

TEST_CASE("suite reports are deterministic for a fixed seed") {
  verify::Options opt;
  opt.seed = 42;
  opt.roots_samples = 400; // keep the repeated run cheap
  verify::RunReport a = verify::roots_of_unity_agreement(opt);
  verify::RunReport b = verify::roots_of_unity_agreement(opt);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].name == b.records[i].name);
    CHECK(a.records[i].inputs_digest == b.records[i].inputs_digest);
    CHECK(a.records[i].observed == b.records[i].observed);
    CHECK(a.records[i].status == b.records[i].status);
  }

  std::mt19937_64 r1(7), r2(7);
  for (int i = 0; i < 50; ++i)
    CHECK(verify::random_unimodular(r1, 3, 20, true) == verify::random_unimodular(r2, 3, 20, true));
}
