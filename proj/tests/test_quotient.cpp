#include <doctest.h>

#include "wg/error.hpp"
#include "wg/quotient.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using namespace wg;
using namespace wg::quot;

namespace {

heis::HeisSubgroupData data(long r, long a1, long a2, long a3, long b1, long b2, long b3, long c) {
  heis::HeisSubgroupData s;
  s.r = r;
  s.a1 = a1;
  s.a2 = a2;
  s.a3 = a3;
  s.b1 = b1;
  s.b2 = b2;
  s.b3 = b3;
  s.c = c;
  return s;
}

NormalSubgroupSpec kodaira_spec(long rhat, const heis::HeisSubgroupData& sub, long k,
                                HeisElement delta = heis::identity()) {
  NormalSubgroupSpec spec;
  spec.ambient = WangDescriptor::kodaira(rhat);
  spec.sub = sub;
  spec.k = k;
  spec.delta = WangElement::heis(std::move(delta));
  return spec;
}

// naive reference: enumerate ALL subgroups by closure of element
// subsets, then filter; usable for |G| <= 24
std::vector<std::vector<int>> naive_normal_abelian(const FiniteGroupTable& g) {
  int n = g.order;
  auto closure = [&](std::set<int> seed) {
    seed.insert(g.identity);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(seed.begin(), seed.end());
      for (int a : cur)
        for (int b : cur)
          if (seed.insert(g.mul(a, b)).second) grew = true;
      for (int a : cur)
        if (seed.insert(g.inverse(a)).second) grew = true;
    }
    return seed;
  };
  std::set<std::set<int>> subs;
  subs.insert(closure({}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::set<int>> cur(subs.begin(), subs.end());
    for (const auto& h : cur)
      for (int x = 0; x < n; ++x) {
        if (h.count(x)) continue;
        std::set<int> seed = h;
        seed.insert(x);
        if (subs.insert(closure(seed)).second) grew = true;
      }
  }
  std::vector<std::vector<int>> out;
  for (const auto& h : subs) {
    bool abelian = true;
    for (int a : h)
      for (int b : h)
        if (g.mul(a, b) != g.mul(b, a)) abelian = false;
    if (!abelian) continue;
    bool normal = true;
    for (int x = 0; x < n && normal; ++x) {
      int xi = g.inverse(x);
      for (int a : h)
        if (!h.count(g.mul(g.mul(x, a), xi))) {
          normal = false;
          break;
        }
    }
    if (!normal) continue;
    out.emplace_back(h.begin(), h.end());
  }
  std::sort(out.begin(), out.end(), [n](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

// symmetric group on 3 letters as an explicit table
FiniteGroupTable sym3_table() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> base{0, 1, 2};
  std::sort(base.begin(), base.end());
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  FiniteGroupTable g;
  g.order = 6;
  g.table.resize(36);
  for (int i = 0; i < 6; ++i) {
    g.labels.push_back("perm" + std::to_string(i));
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> comp;
      for (int t = 0; t < 3; ++t)
        comp[static_cast<size_t>(t)] =
            perms[static_cast<size_t>(i)][static_cast<size_t>(perms[static_cast<size_t>(j)][static_cast<size_t>(t)])];
      int idx = static_cast<int>(std::find(perms.begin(), perms.end(), comp) - perms.begin());
      g.table[static_cast<size_t>(i) * 6 + j] = static_cast<uint16_t>(idx);
    }
  }
  g.identity = 0;
  return g;
}

// quaternion group of order 8: elements +-1, +-i, +-j, +-k
FiniteGroupTable quaternion_table() {
  // encode q = (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
  auto mul_axis = [](int a, int b, int& sign) {
    // multiplication table of {1,i,j,k}
    static const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    sign = sgn[a][b];
    return prod[a][b];
  };
  FiniteGroupTable g;
  g.order = 8;
  g.table.resize(64);
  auto index_of = [](int sign, int axis) { return axis * 2 + (sign < 0 ? 1 : 0); };
  for (int a = 0; a < 4; ++a)
    for (int sa : {1, -1})
      for (int b = 0; b < 4; ++b)
        for (int sb : {1, -1}) {
          int s;
          int ax = mul_axis(a, b, s);
          g.table[static_cast<size_t>(index_of(sa, a)) * 8 + index_of(sb, b)] =
              static_cast<uint16_t>(index_of(sa * sb * s, ax));
        }
  for (int i = 0; i < 8; ++i) g.labels.push_back("q" + std::to_string(i));
  g.identity = 0;
  return g;
}

} // namespace

TEST_CASE("fixture tables behave like groups") {
  FiniteGroupTable s3 = sym3_table();
  CHECK(s3.is_latin_square());
  CHECK(s3.check_associativity_full());
  CHECK_FALSE(s3.is_abelian());

  FiniteGroupTable q8 = quaternion_table();
  CHECK(q8.is_latin_square());
  CHECK(q8.check_associativity_full());
  CHECK_FALSE(q8.is_abelian());
}

TEST_CASE("normal abelian subgroup search matches the naive oracle") {
  for (const FiniteGroupTable& g : {sym3_table(), quaternion_table()}) {
    auto fast = all_normal_abelian_subgroups(g);
    auto slow = naive_normal_abelian(g);
    REQUIRE(fast.size() == slow.size());
    std::set<std::vector<int>> fast_sets, slow_sets;
    for (const auto& s : fast) {
      fast_sets.insert(s.elements);
      CHECK(g.order % static_cast<int>(s.elements.size()) == 0); // Lagrange
    }
    for (const auto& s : slow) slow_sets.insert(s);
    CHECK(fast_sets == slow_sets);
  }
  CHECK(min_index_normal_abelian(sym3_table()) == 2);
  CHECK(min_index_normal_abelian(quaternion_table()) == 2);
}

TEST_CASE("order-8 Heisenberg quotient has minimal normal abelian index 2") {
  FiniteGroupTable g = build_heis_quotient(data(1, 2, 0, 0, 0, 2, 0, 2));
  CHECK(g.order == 8);
  CHECK(g.is_latin_square());
  CHECK(g.check_associativity_full());
  CHECK_FALSE(g.is_abelian());
  CHECK(min_index_normal_abelian(g) == 2);

  auto fast = all_normal_abelian_subgroups(g);
  auto slow = naive_normal_abelian(g);
  std::set<std::vector<int>> fast_sets, slow_sets;
  for (const auto& s : fast) fast_sets.insert(s.elements);
  for (const auto& s : slow) slow_sets.insert(s);
  CHECK(fast_sets == slow_sets);
}

TEST_CASE("mid-size quotient tables are fully associative") {
  // order 48 = 4*4*3 in H(3)
  FiniteGroupTable g = build_heis_quotient(heis::canonicalize(data(3, 4, 0, 1, 0, 4, 2, 3)));
  CHECK(g.order == 48);
  CHECK(g.is_latin_square());
  CHECK(g.check_associativity_full());
}

TEST_CASE("larger Heisenberg quotients agree with the naive oracle") {
  // nonabelian instances of order 8 and 16 keep the naive search tractable
  for (auto d : {data(3, 2, 0, 0, 0, 2, 0, 2), data(2, 2, 0, 0, 0, 2, 0, 4),
                 data(1, 2, 0, 1, 0, 2, 1, 2), data(2, 2, 0, 1, 0, 2, 1, 4),
                 data(3, 2, 0, 1, 0, 2, 1, 6)}) {
    FiniteGroupTable g = build_heis_quotient(heis::canonicalize(d));
    if (g.order > 24) continue;
    auto fast = all_normal_abelian_subgroups(g);
    auto slow = naive_normal_abelian(g);
    std::set<std::vector<int>> fast_sets, slow_sets;
    for (const auto& s : fast) fast_sets.insert(s.elements);
    for (const auto& s : slow) slow_sets.insert(s);
    CHECK(fast_sets == slow_sets);
  }
}

TEST_CASE("membership in an explicit normal subgroup") {
  NormalSubgroupSpec spec = kodaira_spec(1, data(1, 2, 0, 0, 0, 1, 0, 1), 2);
  require_valid_spec(spec);
  // generators are members
  CHECK(membership(spec, WangElement::heis(HeisElement{2, 0, 0})));
  CHECK(membership(spec, WangElement::heis(HeisElement{0, 1, 0})));
  CHECK(membership(spec, spec.theta()));
  // gamma alone is not: t = 1 is not divisible by k = 2
  CHECK_FALSE(membership(spec, gamma_element(spec.ambient)));
  CHECK_FALSE(membership(spec, WangElement::heis(HeisElement{1, 0, 0})));

  // closure fuzz: random generator words stay inside
  std::mt19937_64 rng(515);
  std::vector<WangElement> gens = {WangElement::heis(HeisElement{2, 0, 0}),
                                   WangElement::heis(HeisElement{0, 1, 0}),
                                   WangElement::heis(HeisElement{0, 0, 1}), spec.theta()};
  for (int i = 0; i < 10000; ++i) {
    WangElement w = identity_element(spec.ambient);
    for (int step = 0; step < 6; ++step) {
      const WangElement& g = gens[rng() % gens.size()];
      w = (rng() & 1) ? mul(spec.ambient, w, g) : mul(spec.ambient, w, inv(spec.ambient, g));
    }
    CHECK(membership(spec, w));
  }
}

TEST_CASE("quotient of the Kodaira group by an index-2 sublattice subgroup") {
  NormalSubgroupSpec spec = kodaira_spec(1, data(1, 2, 0, 0, 0, 1, 0, 1), 1);
  BuiltQuotient bq = build_quotient(spec);
  CHECK(bq.group.order == 2);
  CHECK(bq.group.is_abelian());
  CHECK(min_index_normal_abelian(bq.group) == 1);
  // an abelian quotient lists itself among its normal abelian subgroups
  auto subs = all_normal_abelian_subgroups(bq.group);
  CHECK(subs.front().index == 1);
  CHECK(static_cast<int>(subs.front().elements.size()) == bq.group.order);
}

TEST_CASE("lattice quotient of an SM group has order |det(M - Id)| * k") {
  IntMatrix m = IntMatrix::from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 3}}); // x^3 - 3x^2 - x - 1
  NormalSubgroupSpec spec;
  spec.ambient = WangDescriptor::sm(m);
  spec.lattice = m - IntMatrix::identity(3);
  spec.k = 1;
  spec.delta = identity_element(spec.ambient);
  BuiltQuotient bq = build_quotient(spec);
  CHECK(bq.group.order == 4); // |p(1)| = 4
  CHECK(bq.group.check_associativity_full());
  spec.k = 3;
  BuiltQuotient bq3 = build_quotient(spec);
  CHECK(bq3.group.order == 12);
  CHECK(Int(bq3.group.order) == bq3.gamma0_index * bq3.k);
}

TEST_CASE("whole-group spec gives the trivial quotient") {
  NormalSubgroupSpec spec = kodaira_spec(2, data(2, 1, 0, 0, 0, 1, 0, 1), 1);
  BuiltQuotient bq = build_quotient(spec);
  CHECK(bq.group.order == 1);
}

TEST_CASE("order cap and normality are enforced") {
  CHECK_THROWS_AS((void)build_quotient(kodaira_spec(1, data(1, 30, 0, 0, 0, 30, 0, 1), 1), 512), Error);
  // c = 4 does not divide r gcd = 2: not normal in H(1)
  CHECK_THROWS_AS((void)build_heis_quotient(data(1, 2, 0, 0, 0, 2, 0, 4)), Error);
}

TEST_CASE("decomposition recovers k, delta and the Gamma_0 part") {
  WangDescriptor ambient = WangDescriptor::kodaira(1);
  {
    std::vector<WangElement> gens = {WangElement::heis(HeisElement{2, 0, 0}),
                                     WangElement::heis(HeisElement{0, 1, 0}),
                                     WangElement::heis(HeisElement{0, 0, 1}), gamma_element(ambient)};
    NormalSubgroupSpec spec = decompose_normal_subgroup(ambient, gens);
    CHECK(spec.k == 1);
    CHECK(heis::index(*spec.sub) == 2);
    BuiltQuotient bq = build_quotient(spec);
    CHECK(bq.group.order == 2);
  }
  {
    std::vector<WangElement> gens = {WangElement::heis(HeisElement{1, 0, 0}),
                                     WangElement::heis(HeisElement{0, 1, 0}),
                                     gamma_element(ambient, 3)};
    NormalSubgroupSpec spec = decompose_normal_subgroup(ambient, gens);
    CHECK(spec.k == 3);
    CHECK(heis::index(*spec.sub) == 1);
  }
  {
    // gamma^2 delta1 alone generates an infinite-index subgroup
    WangDescriptor sm = WangDescriptor::sm(IntMatrix::from_rows({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}));
    WangElement g = mul(sm, WangElement::lattice(Vec3{1, 0, 0}), gamma_element(sm, 2));
    CHECK_THROWS_AS((void)decompose_normal_subgroup(sm, {g}), Error);
  }
}

TEST_CASE("decompose round-trips through membership and rebuild") {
  WangDescriptor ambient = WangDescriptor::kodaira(2);
  NormalSubgroupSpec orig = kodaira_spec(2, data(2, 2, 1, 0, 0, 2, 1, 2), 2, HeisElement{2, 1, 0});
  require_valid_spec(orig);
  std::vector<WangElement> gens = {WangElement::heis(orig.sub->zeta()),
                                   WangElement::heis(orig.sub->xi()),
                                   WangElement::heis(heis::delta3(orig.sub->c)), orig.theta()};
  NormalSubgroupSpec rec = decompose_normal_subgroup(ambient, gens);
  CHECK(rec.k == orig.k);
  CHECK(heis::canonicalize(*rec.sub) == heis::canonicalize(*orig.sub));
  // membership agrees on random elements
  std::mt19937_64 rng(616);
  std::uniform_int_distribution<long> d(-8, 8);
  for (int i = 0; i < 400; ++i) {
    WangElement x = WangElement::heis(HeisElement{d(rng), d(rng), d(rng)}, d(rng));
    CHECK(membership(orig, x) == membership(rec, x));
  }
}

TEST_CASE("bound verification on reference quotients") {
  {
    HeisBoundCheck hc = verify_heis_bounds(data(1, 2, 0, 0, 0, 2, 0, 2));
    CHECK(hc.order == 8);
    CHECK(hc.observed <= hc.gcd_bound);
    CHECK(hc.gcd_bound == 2);
    CHECK(hc.r1_bound == 2);
    CHECK(hc.chain_ok);
    CHECK(hc.pass);
  }
  {
    BoundCheck bc = verify_bound(kodaira_spec(1, data(1, 2, 0, 0, 0, 1, 0, 1), 1));
    CHECK(bc.observed == 1); // the order-2 quotient is abelian
    REQUIRE(bc.bounds.size() == 1);
    CHECK(bc.bounds[0].second == 2); // iso_type of <d1^2, d2, d3> inside H(1)
    CHECK(bc.pass);
  }
}

TEST_CASE("gamma0 image inside the quotient is normal of index k") {
  NormalSubgroupSpec spec = kodaira_spec(1, data(1, 2, 0, 0, 0, 2, 0, 2), 3, heis::delta3(1));
  BuiltQuotient bq = build_quotient(spec);
  CHECK(Int(bq.group.order) == bq.gamma0_index * bq.k);
  std::vector<int> h;
  for (int i = 0; i < bq.group.order; ++i)
    if (bq.rep_t[static_cast<size_t>(i)] == 0) h.push_back(i);
  CHECK(Int(static_cast<long>(h.size())) == bq.gamma0_index);
  std::set<int> hs(h.begin(), h.end());
  for (int a : h)
    for (int b : h) CHECK(hs.count(bq.group.mul(a, b)) == 1);
  for (int x = 0; x < bq.group.order; ++x) {
    int xi = bq.group.inverse(x);
    for (int a : h) CHECK(hs.count(bq.group.mul(bq.group.mul(x, a), xi)) == 1);
  }
}

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::BAD_INPUT;
}

} // namespace

TEST_CASE("error codes carry the named failure modes") {
  CHECK(code_of([] { (void)heis::canonicalize(data(1, 1, 0, 0, 0, 1, 0, 3)); }) ==
        Errc::NOT_SUBGROUP_CLOSED);
  CHECK(code_of([] { (void)heis::canonicalize(data(1, 1, 2, 0, 2, 4, 0, 1)); }) ==
        Errc::NOT_FINITE_INDEX);
  CHECK(code_of([] {
          (void)heis::infinite_index_subgroup_abelian_check(1, {HeisElement{1, 0, 0}, HeisElement{0, 1, 0}},
                                                            2);
        }) == Errc::FINITE_INDEX);
  CHECK(code_of([] { (void)build_heis_quotient(data(1, 2, 0, 0, 0, 2, 0, 4)); }) == Errc::NOT_NORMAL);
  CHECK(code_of([] { (void)build_quotient(kodaira_spec(1, data(1, 30, 0, 0, 0, 30, 0, 1), 1)); }) ==
        Errc::ORDER_CAP_EXCEEDED);
  // Heisenberg data with the wrong ambient step
  CHECK(code_of([] {
          NormalSubgroupSpec spec = kodaira_spec(2, data(1, 1, 0, 0, 0, 1, 0, 1), 1);
          require_valid_spec(spec);
        }) == Errc::AMBIENT_MISMATCH);
  // lattice element fed into a Heisenberg ambient
  CHECK(code_of([] {
          WangDescriptor d = WangDescriptor::kodaira(1);
          (void)mul(d, WangElement::lattice(Vec3{1, 0, 0}), gamma_element(d));
        }) == Errc::AMBIENT_MISMATCH);
  CHECK(code_of([] { (void)hermite_normal_form(IntMatrix::from_rows({{1, 2}, {2, 4}})); }) ==
        Errc::RANK_DEFICIENT);
}
