#include "wg/quotient.hpp"

#include "wg/error.hpp"
#include "wg/numth.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace wg {
namespace quot {

WangElement NormalSubgroupSpec::theta() const {
  WangElement t = delta;
  t.t = k;
  return t;
}

namespace {

bool lattice_contains(const IntMatrix& basis, const Vec3& v) {
  return solve_integer(basis, {v[0], v[1], v[2]}).has_value();
}

bool gamma0_contains(const NormalSubgroupSpec& spec, const WangElement& x) {
  if (x.t != 0) return false;
  if (spec.ambient.shape == Shape::SM) return lattice_contains(*spec.lattice, x.vec());
  return heis::contains(*spec.sub, x.triple()).has_value();
}

std::vector<WangElement> gamma0_generators(const NormalSubgroupSpec& spec) {
  std::vector<WangElement> out;
  if (spec.ambient.shape == Shape::SM) {
    for (int j = 0; j < 3; ++j)
      out.push_back(WangElement::lattice(
          Vec3{spec.lattice->at(0, j), spec.lattice->at(1, j), spec.lattice->at(2, j)}));
  } else {
    out.push_back(WangElement::heis(spec.sub->zeta()));
    out.push_back(WangElement::heis(spec.sub->xi()));
    out.push_back(WangElement::heis(heis::delta3(spec.sub->c)));
  }
  return out;
}

} // namespace

void require_valid_spec(const NormalSubgroupSpec& spec) {
  require_valid(spec.ambient);
  if (spec.k < 1) throw Error(Errc::BAD_INPUT, "k must be positive");
  if (spec.delta.t != 0) throw Error(Errc::BAD_INPUT, "delta must lie in Gamma_0");
  if (spec.ambient.shape == Shape::SM) {
    if (!spec.lattice || !spec.lattice->is_square() || spec.lattice->rows() != 3)
      throw Error(Errc::BAD_INPUT, "SM spec needs a 3x3 sublattice basis");
    if (det(*spec.lattice) == 0) throw Error(Errc::RANK_DEFICIENT, "sublattice basis is singular");
    (void)spec.delta.vec();
  } else {
    if (!spec.sub) throw Error(Errc::BAD_INPUT, "spec needs Heisenberg subgroup data");
    if (spec.sub->r != spec.ambient.r)
      throw Error(Errc::AMBIENT_MISMATCH, "subgroup data has a different ambient step r");
    (void)heis::canonicalize(*spec.sub);
    (void)spec.delta.triple();
  }

  // Gamma_0 part invariant under the defining action, both directions
  for (const auto& g : gamma0_generators(spec)) {
    if (!gamma0_contains(spec, gamma_action(spec.ambient, g)) ||
        !gamma0_contains(spec, gamma_action_inverse(spec.ambient, g)))
      throw Error(Errc::NOT_NORMAL, "Gamma_0 part is not invariant under the ambient action");
  }

  // normality: conjugate all generators of Gamma by the ambient
  // generators and test membership
  std::vector<WangElement> gens = gamma0_generators(spec);
  gens.push_back(spec.theta());
  std::vector<WangElement> conjugators;
  for (int i = 1; i <= 3; ++i) conjugators.push_back(delta_element(spec.ambient, i));
  conjugators.push_back(gamma_element(spec.ambient));
  for (const auto& c : conjugators) {
    WangElement ci = inv(spec.ambient, c);
    for (const auto& g : gens) {
      WangElement a = mul(spec.ambient, mul(spec.ambient, c, g), ci);
      WangElement b = mul(spec.ambient, mul(spec.ambient, ci, g), c);
      if (!membership(spec, a) || !membership(spec, b))
        throw Error(Errc::NOT_NORMAL, "subgroup is not normal: conjugate of " + g.to_string() +
                                          " by " + c.to_string() + " escapes");
    }
  }
}

bool membership(const NormalSubgroupSpec& spec, const WangElement& x) {
  if (!divides(spec.k, x.t)) return false;
  Int e = divexact(x.t, spec.k);
  WangElement reduced = mul(spec.ambient, x, pow(spec.ambient, spec.theta(), -e));
  assert(reduced.t == 0);
  return gamma0_contains(spec, reduced);
}

int FiniteGroupTable::inverse(int i) const {
  for (int j = 0; j < order; ++j)
    if (mul(i, j) == identity) return j;
  return -1;
}

bool FiniteGroupTable::is_latin_square() const {
  std::vector<bool> seen(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) {
    std::fill(seen.begin(), seen.end(), false);
    for (int j = 0; j < order; ++j) {
      int v = mul(i, j);
      if (v < 0 || v >= order || seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = true;
    }
    std::fill(seen.begin(), seen.end(), false);
    for (int j = 0; j < order; ++j) {
      int v = mul(j, i);
      if (v < 0 || v >= order || seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = true;
    }
  }
  return true;
}

bool FiniteGroupTable::check_associativity_full() const {
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      int ij = mul(i, j);
      for (int l = 0; l < order; ++l)
        if (mul(ij, l) != mul(i, mul(j, l))) return false;
    }
  return true;
}

bool FiniteGroupTable::check_associativity_sample(int samples, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, order - 1);
  for (int s = 0; s < samples; ++s) {
    int i = pick(rng), j = pick(rng), l = pick(rng);
    if (mul(mul(i, j), l) != mul(i, mul(j, l))) return false;
  }
  return true;
}

bool FiniteGroupTable::is_abelian() const {
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j)
      if (mul(i, j) != mul(j, i)) return false;
  return true;
}

namespace {

long to_long(const Int& x) {
  assert(x.fits_slong_p());
  return x.get_si();
}

// Fast integer path for quotients of H(r) by canonical subgroup data.
// All representative coordinates are bounded by the index (<= order
// cap), so plain 64-bit arithmetic suffices throughout.
struct SmallHeisQuotient {
  long r, p, q, s, C; // zeta = (p, q, a3), xi = (0, s, b3), d3^C
  long a3, b3;

  struct T {
    long a, b, c;
  };

  T mul(const T& x, const T& y) const { return T{x.a + y.a, x.b + y.b, x.c + y.c + r * x.a * y.b}; }

  T pow_gen(long pa, long pb, long pc, long e) const {
    // (pa,pb,pc)^e = (e*pa, e*pb, e*pc + r*pa*pb*e(e-1)/2)
    return T{e * pa, e * pb, e * pc + r * pa * pb * e * (e - 1) / 2};
  }

  static long floordiv(long a, long b) {
    long q0 = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q0;
    return q0;
  }

  T reduce(T x) const {
    long m = floordiv(x.a, p);
    if (m != 0) x = mul(pow_gen(p, q, a3, -m), x);
    long n = floordiv(x.b, s);
    if (n != 0) x = mul(pow_gen(0, s, b3, -n), x);
    long j = floordiv(x.c, C);
    if (j != 0) x.c -= j * C;
    return x;
  }

  int rep_index(const T& x) const { return static_cast<int>((x.a * s + x.b) * C + x.c); }
};

} // namespace

FiniteGroupTable build_heis_quotient(const heis::HeisSubgroupData& data, int order_cap) {
  heis::HeisSubgroupData s = heis::canonicalize(data);
  if (!heis::is_normal(s)) throw Error(Errc::NOT_NORMAL, "subgroup data is not normal: " + s.to_string());
  Int order_big = heis::index(s);
  if (order_big > order_cap)
    throw Error(Errc::ORDER_CAP_EXCEEDED,
                "quotient order " + order_big.get_str() + " exceeds cap " + std::to_string(order_cap));
  int order = static_cast<int>(to_long(order_big));

  SmallHeisQuotient ctx;
  ctx.r = to_long(s.r);
  ctx.p = to_long(s.a1);
  ctx.q = to_long(s.a2);
  ctx.s = to_long(s.b2);
  ctx.C = to_long(s.c);
  ctx.a3 = to_long(s.a3);
  ctx.b3 = to_long(s.b3);
  assert(s.b1 == 0);

  FiniteGroupTable g;
  g.order = order;
  g.table.resize(static_cast<size_t>(order) * order);
  g.labels.reserve(static_cast<size_t>(order));

  std::vector<SmallHeisQuotient::T> reps;
  reps.reserve(static_cast<size_t>(order));
  for (long a = 0; a < ctx.p; ++a)
    for (long b = 0; b < ctx.s; ++b)
      for (long c = 0; c < ctx.C; ++c) {
        reps.push_back({a, b, c});
        std::ostringstream os;
        os << "(" << a << "," << b << "," << c << ")";
        g.labels.push_back(os.str());
      }
  g.identity = 0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      SmallHeisQuotient::T z = ctx.reduce(ctx.mul(reps[static_cast<size_t>(i)], reps[static_cast<size_t>(j)]));
      g.table[static_cast<size_t>(i) * order + j] = static_cast<uint16_t>(ctx.rep_index(z));
    }
  assert(g.is_latin_square());
  assert(g.check_associativity_sample(256, 7));
  return g;
}

namespace {

// reduction of ambient elements to canonical representatives
struct AmbientReducer {
  const NormalSubgroupSpec* spec;
  // heis case
  std::optional<heis::HeisSubgroupData> s;
  // SM case: column HNF of the sublattice
  std::optional<IntMatrix> hnf;

  explicit AmbientReducer(const NormalSubgroupSpec& sp) : spec(&sp) {
    if (sp.ambient.shape == Shape::SM)
      hnf = hermite_normal_form(*sp.lattice).h;
    else
      s = heis::canonicalize(*sp.sub);
  }

  WangElement reduce(WangElement x) const {
    // bring t into [0, k)
    Int qt = fdiv(x.t, spec->k);
    if (qt != 0) x = mul(spec->ambient, pow(spec->ambient, spec->theta(), -qt), x);
    assert(x.t >= 0 && x.t < spec->k);
    if (spec->ambient.shape == Shape::SM) {
      Vec3 v = x.vec();
      for (int i = 0; i < 3; ++i) {
        Int m = fdiv(v[static_cast<size_t>(i)], hnf->at(i, i));
        if (m == 0) continue;
        for (int rr = i; rr < 3; ++rr) v[static_cast<size_t>(rr)] -= m * hnf->at(rr, i);
      }
      x.h = v;
      return x;
    }
    HeisElement h = x.triple();
    Int m = fdiv(h.a, s->a1);
    if (m != 0) h = heis::mul(s->r, heis::pow(s->r, s->zeta(), -m), h);
    Int n = fdiv(h.b, s->b2);
    if (n != 0) h = heis::mul(s->r, heis::pow(s->r, s->xi(), -n), h);
    Int j = fdiv(h.c, s->c);
    if (j != 0) h.c -= j * s->c;
    x.h = h;
    return x;
  }

  // mixed-radix index of a reduced representative
  int index_of(const WangElement& x, const std::vector<Int>& radices) const {
    Int acc = 0;
    std::array<Int, 4> coords = coordinates(x);
    for (size_t i = 0; i < 4; ++i) acc = acc * radices[i] + coords[i];
    return static_cast<int>(to_long(acc));
  }

  std::array<Int, 4> coordinates(const WangElement& x) const {
    if (spec->ambient.shape == Shape::SM) {
      const Vec3& v = x.vec();
      return {v[0], v[1], v[2], x.t};
    }
    const HeisElement& h = x.triple();
    return {h.a, h.b, h.c, x.t};
  }

  std::vector<Int> radices() const {
    if (spec->ambient.shape == Shape::SM)
      return {hnf->at(0, 0), hnf->at(1, 1), hnf->at(2, 2), spec->k};
    return {s->a1, s->b2, s->c, spec->k};
  }
};

} // namespace

BuiltQuotient build_quotient(const NormalSubgroupSpec& spec, int order_cap) {
  require_valid_spec(spec);
  Int index0 = spec.ambient.shape == Shape::SM
                   ? [&] {
                       Int d0 = det(*spec.lattice);
                       return d0 < 0 ? Int(-d0) : d0;
                     }()
                   : heis::index(heis::canonicalize(*spec.sub));
  Int order_big = index0 * spec.k;
  if (order_big > order_cap)
    throw Error(Errc::ORDER_CAP_EXCEEDED,
                "quotient order " + order_big.get_str() + " exceeds cap " + std::to_string(order_cap));
  int order = static_cast<int>(to_long(order_big));

  AmbientReducer red(spec);
  std::vector<Int> radices = red.radices();

  // enumerate representatives in mixed-radix order
  std::vector<WangElement> reps;
  reps.reserve(static_cast<size_t>(order));
  std::array<Int, 4> cur{0, 0, 0, 0};
  while (true) {
    WangElement e = identity_element(spec.ambient);
    if (spec.ambient.shape == Shape::SM)
      e.h = Vec3{cur[0], cur[1], cur[2]};
    else
      e.h = HeisElement{cur[0], cur[1], cur[2]};
    e.t = cur[3];
    reps.push_back(e);
    int pos = 3;
    while (pos >= 0) {
      if (cur[static_cast<size_t>(pos)] + 1 < radices[static_cast<size_t>(pos)]) {
        ++cur[static_cast<size_t>(pos)];
        break;
      }
      cur[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  assert(static_cast<int>(reps.size()) == order);

  BuiltQuotient out;
  out.k = spec.k;
  out.gamma0_index = index0;
  out.group.order = order;
  out.group.table.resize(static_cast<size_t>(order) * order);
  out.group.identity = 0;
  for (const auto& rp : reps) {
    out.group.labels.push_back(rp.to_string());
    out.rep_t.push_back(rp.t);
  }
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      WangElement z = red.reduce(mul(spec.ambient, reps[static_cast<size_t>(i)], reps[static_cast<size_t>(j)]));
      out.group.table[static_cast<size_t>(i) * order + j] = static_cast<uint16_t>(red.index_of(z, radices));
    }
  if (!out.group.is_latin_square()) throw Error(Errc::BAD_INPUT, "internal: quotient table is not a Latin square");
  assert(out.group.check_associativity_sample(256, 11));
  return out;
}

NormalSubgroupSpec decompose_normal_subgroup(const WangDescriptor& ambient,
                                             const std::vector<WangElement>& gens) {
  require_valid(ambient);
  if (gens.empty()) throw Error(Errc::NOT_FINITE_INDEX, "no generators");
  // k = positive generator of the t-image
  Int k = 0;
  for (const auto& g : gens) k = gcd(k, g.t);
  if (k == 0) throw Error(Errc::NOT_FINITE_INDEX, "generators have trivial t-image");

  // theta with t = k via iterated Bezout over the generator t-values
  WangElement theta = identity_element(ambient);
  for (const auto& g : gens) {
    if (g.t == 0) continue;
    if (theta.t == 0) {
      theta = g.t < 0 ? inv(ambient, g) : g;
      continue;
    }
    if (divides(theta.t, g.t)) continue;
    Int gg, u, v;
    mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), theta.t.get_mpz_t(), g.t.get_mpz_t());
    theta = mul(ambient, pow(ambient, theta, u), pow(ambient, g, v));
    assert(theta.t == gg);
  }
  assert(theta.t == k);

  // t = 0 parts
  std::vector<WangElement> zs;
  for (const auto& g : gens) {
    Int e = divexact(g.t, k);
    WangElement z = mul(ambient, g, pow(ambient, theta, -e));
    assert(z.t == 0);
    if (!(z == identity_element(ambient))) zs.push_back(z);
  }

  NormalSubgroupSpec spec;
  spec.ambient = ambient;
  spec.k = k;
  WangElement delta = theta;
  delta.t = 0;
  spec.delta = delta;

  // close the Gamma_0 intersection under conjugation by theta
  auto conj = [&](const WangElement& x, bool inverse) {
    return inverse ? mul(ambient, mul(ambient, inv(ambient, theta), x), theta)
                   : mul(ambient, mul(ambient, theta, x), inv(ambient, theta));
  };

  if (ambient.shape == Shape::SM) {
    // lattice membership for a possibly non-full-rank echelon basis
    auto echelon_of = [](const std::vector<WangElement>& vecs) {
      IntMatrix m(3, static_cast<int>(vecs.size()));
      for (int j = 0; j < m.cols(); ++j) {
        const Vec3& v = vecs[static_cast<size_t>(j)].vec();
        for (int i = 0; i < 3; ++i) m.at(i, j) = v[static_cast<size_t>(i)];
      }
      return column_echelon(m);
    };
    auto in_span = [&](const ColumnEchelon& ce, const WangElement& x) {
      std::vector<WangElement> aug;
      for (int j = 0; j < ce.rank; ++j)
        aug.push_back(WangElement::lattice(Vec3{ce.h.at(0, j), ce.h.at(1, j), ce.h.at(2, j)}));
      aug.push_back(x);
      ColumnEchelon ce2 = echelon_of(aug);
      if (ce2.rank != ce.rank) return false;
      for (int j = 0; j < ce.rank; ++j)
        for (int i = 0; i < 3; ++i)
          if (ce2.h.at(i, j) != ce.h.at(i, j)) return false;
      return true;
    };
    for (int round = 0;; ++round) {
      if (round > 64) throw Error(Errc::NOT_FINITE_INDEX, "closure did not stabilize");
      ColumnEchelon ce = echelon_of(zs);
      // compress the generating set to the echelon basis
      zs.clear();
      for (int j = 0; j < ce.rank; ++j)
        zs.push_back(WangElement::lattice(Vec3{ce.h.at(0, j), ce.h.at(1, j), ce.h.at(2, j)}));
      bool stable = true;
      std::vector<WangElement> next = zs;
      for (const auto& z : zs)
        for (bool invdir : {false, true}) {
          WangElement cc = conj(z, invdir);
          if (!in_span(ce, cc)) {
            next.push_back(cc);
            stable = false;
          }
        }
      if (stable) {
        if (ce.rank < 3) throw Error(Errc::NOT_FINITE_INDEX, "Gamma_0 intersection has rank < 3");
        IntMatrix basis(3, 3);
        for (int j = 0; j < 3; ++j)
          for (int i = 0; i < 3; ++i) basis.at(i, j) = ce.h.at(i, j);
        spec.lattice = basis;
        break;
      }
      zs = std::move(next);
    }
  } else {
    std::vector<HeisElement> hs;
    for (const auto& z : zs) hs.push_back(z.triple());
    for (int round = 0;; ++round) {
      if (round > 64) throw Error(Errc::NOT_FINITE_INDEX, "closure did not stabilize");
      auto sub = heis::subgroup_from_generators(ambient.r, hs);
      if (!sub) {
        // rank below 2: conjugating can still raise it; stop when the
        // generating set no longer grows
        std::vector<HeisElement> next = hs;
        for (const auto& h : hs)
          for (bool invdir : {false, true}) next.push_back(conj(WangElement::heis(h), invdir).triple());
        std::sort(next.begin(), next.end(), [](const HeisElement& x, const HeisElement& y) {
          if (x.a != y.a) return x.a < y.a;
          if (x.b != y.b) return x.b < y.b;
          return x.c < y.c;
        });
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() == hs.size() || round > 16)
          throw Error(Errc::NOT_FINITE_INDEX, "Gamma_0 intersection has rank < 2");
        hs = std::move(next);
        continue;
      }
      bool stable = true;
      std::vector<HeisElement> sgens = {sub->zeta(), sub->xi(), heis::delta3(sub->c)};
      std::vector<HeisElement> next = hs;
      for (const auto& h : sgens)
        for (bool invdir : {false, true}) {
          HeisElement cc = conj(WangElement::heis(h), invdir).triple();
          if (!heis::contains(*sub, cc)) {
            next.push_back(cc);
            stable = false;
          }
        }
      if (stable) {
        spec.sub = *sub;
        break;
      }
      hs = std::move(next);
    }
  }

  // round-trip: all original generators are members
  for (const auto& g : gens)
    if (!membership(spec, g)) throw Error(Errc::BAD_INPUT, "internal: decomposition lost a generator");
  return spec;
}

namespace {

using Bitset = std::vector<uint64_t>;

Bitset make_bitset(int n) { return Bitset((static_cast<size_t>(n) + 63) / 64, 0); }
void bit_set(Bitset& b, int i) { b[static_cast<size_t>(i) >> 6] |= uint64_t(1) << (i & 63); }
bool bit_get(const Bitset& b, int i) { return (b[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }

bool subset_of(const Bitset& a, const Bitset& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

struct BitsetHash {
  size_t operator()(const Bitset& b) const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : b) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

} // namespace

std::vector<SubgroupInfo> all_normal_abelian_subgroups(const FiniteGroupTable& g, int order_cap) {
  int n = g.order;
  if (n > order_cap)
    throw Error(Errc::ORDER_CAP_EXCEEDED,
                "group order " + std::to_string(n) + " exceeds cap " + std::to_string(order_cap));

  std::vector<int> inv(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i)] = g.inverse(i);

  // centralizer bitsets
  std::vector<Bitset> cent(static_cast<size_t>(n), make_bitset(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.mul(i, j) == g.mul(j, i)) bit_set(cent[static_cast<size_t>(i)], j);

  // conjugacy classes and their representatives
  std::vector<int> class_of(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> classes;
  std::vector<Bitset> class_mask;
  std::vector<bool> class_abelian;
  for (int i = 0; i < n; ++i) {
    if (class_of[static_cast<size_t>(i)] >= 0) continue;
    int id = static_cast<int>(classes.size());
    std::vector<int> members;
    Bitset mask = make_bitset(n);
    for (int x = 0; x < n; ++x) {
      int c = g.mul(g.mul(x, i), inv[static_cast<size_t>(x)]);
      if (!bit_get(mask, c)) {
        bit_set(mask, c);
        members.push_back(c);
        class_of[static_cast<size_t>(c)] = id;
      }
    }
    std::sort(members.begin(), members.end());
    bool ab = true;
    for (size_t a = 0; a < members.size() && ab; ++a)
      for (size_t b = a + 1; b < members.size() && ab; ++b)
        if (g.mul(members[a], members[b]) != g.mul(members[b], members[a])) ab = false;
    classes.push_back(std::move(members));
    class_mask.push_back(std::move(mask));
    class_abelian.push_back(ab);
  }

  // closure of a commuting element set under multiplication
  auto closure = [&](const std::vector<int>& seed) {
    Bitset in = make_bitset(n);
    std::vector<int> members;
    std::vector<int> work;
    auto add = [&](int x) {
      if (!bit_get(in, x)) {
        bit_set(in, x);
        members.push_back(x);
        work.push_back(x);
      }
    };
    add(g.identity);
    for (int x : seed) add(x);
    while (!work.empty()) {
      int x = work.back();
      work.pop_back();
      add(inv[static_cast<size_t>(x)]);
      for (size_t i = 0; i < members.size(); ++i) {
        add(g.mul(x, members[i]));
      }
    }
    std::sort(members.begin(), members.end());
    return std::make_pair(in, members);
  };

  struct Node {
    Bitset mask;
    std::vector<int> members;
    Bitset centralizer; // of the whole subgroup
  };

  auto centralizer_of = [&](const std::vector<int>& members) {
    Bitset c = make_bitset(n);
    for (auto& w : c) w = ~uint64_t(0);
    for (int m : members)
      for (size_t i = 0; i < c.size(); ++i) c[i] &= cent[static_cast<size_t>(m)][i];
    return c;
  };

  std::unordered_set<Bitset, BitsetHash> visited;
  std::vector<Node> queue;
  std::vector<SubgroupInfo> out;

  auto push = [&](std::pair<Bitset, std::vector<int>> cl) {
    if (visited.count(cl.first)) return;
    visited.insert(cl.first);
    Node node{cl.first, cl.second, centralizer_of(cl.second)};
    out.push_back(SubgroupInfo{node.members, Int(n / static_cast<int>(node.members.size()))});
    queue.push_back(std::move(node));
  };

  push(closure({}));
  while (!queue.empty()) {
    Node node = std::move(queue.back());
    queue.pop_back();
    for (size_t cid = 0; cid < classes.size(); ++cid) {
      if (!class_abelian[cid]) continue;
      int rep = classes[cid].front();
      if (bit_get(node.mask, rep)) continue;
      if (!subset_of(class_mask[cid], node.centralizer)) continue;
      std::vector<int> seed = node.members;
      seed.insert(seed.end(), classes[cid].begin(), classes[cid].end());
      // the seed commutes pairwise, so the generated subgroup is
      // abelian; it is normal because it is generated by full classes
      push(closure(seed));
    }
  }

  std::sort(out.begin(), out.end(), [](const SubgroupInfo& a, const SubgroupInfo& b) {
    if (a.index != b.index) return a.index < b.index;
    return a.elements < b.elements;
  });
  return out;
}

Int min_index_normal_abelian(const FiniteGroupTable& g, int order_cap) {
  if (g.is_abelian()) return 1;
  auto subs = all_normal_abelian_subgroups(g, order_cap);
  assert(!subs.empty());
  return subs.front().index;
}

BoundCheck verify_bound(const NormalSubgroupSpec& spec, int order_cap) {
  BuiltQuotient q = build_quotient(spec, order_cap);
  BoundCheck out;
  out.order = q.group.order;
  out.observed = min_index_normal_abelian(q.group);

  switch (spec.ambient.shape) {
    case Shape::KODAIRA: {
      Int r = heis::iso_type(heis::canonicalize(*spec.sub));
      out.bounds.emplace_back("iso_type_r", r);
      break;
    }
    case Shape::SM: {
      // action of theta on the sublattice in its own basis
      IntMatrix b = *spec.lattice;
      IntMatrix mk = spec.ambient.m.pow(static_cast<unsigned long>(to_long(spec.k)));
      IntMatrix image = mk * b;
      // N = B^-1 (M^k B), integral because the lattice is invariant
      IntMatrix nmat(3, 3);
      for (int j = 0; j < 3; ++j) {
        auto col = solve_integer(b, {image.at(0, j), image.at(1, j), image.at(2, j)});
        if (!col) throw Error(Errc::BAD_INPUT, "internal: lattice not invariant");
        for (int i = 0; i < 3; ++i) nmat.at(i, j) = (*col)[static_cast<size_t>(i)];
      }
      out.bounds.emplace_back("k_max_eps3", numth::k_max(nmat, numth::epsilon(3).epsilon));
      break;
    }
    case Shape::SPM: {
      heis::HeisSubgroupData s = heis::canonicalize(*spec.sub);
      Int r1 = heis::iso_type(s);
      // action of theta on the projected lattice of the subgroup
      IntMatrix b(2, 2);
      b.at(0, 0) = s.a1;
      b.at(1, 0) = s.a2;
      b.at(0, 1) = s.b1;
      b.at(1, 1) = s.b2;
      IntMatrix mk = spec.ambient.m.pow(static_cast<unsigned long>(to_long(spec.k)));
      IntMatrix image = mk * b;
      IntMatrix nmat(2, 2);
      for (int j = 0; j < 2; ++j) {
        auto col = solve_integer(b, {image.at(0, j), image.at(1, j)});
        if (!col) throw Error(Errc::BAD_INPUT, "internal: projected lattice not invariant");
        for (int i = 0; i < 2; ++i) nmat.at(i, j) = (*col)[static_cast<size_t>(i)];
      }
      out.bounds.emplace_back("k_max_eps2_times_r1", numth::k_max(nmat, numth::epsilon(2).epsilon) * r1);
      break;
    }
  }
  out.pass = true;
  for (const auto& [name, bound] : out.bounds)
    if (out.observed > bound) out.pass = false;
  return out;
}

HeisBoundCheck verify_heis_bounds(const heis::HeisSubgroupData& raw, int order_cap) {
  heis::HeisSubgroupData s = heis::canonicalize(raw);
  FiniteGroupTable g = build_heis_quotient(s, order_cap);
  HeisBoundCheck out;
  out.order = g.order;
  out.observed = min_index_normal_abelian(g);
  out.gcd_bound = gcd(raw.a1, raw.b1);
  out.r1_bound = heis::iso_type(s);
  out.chain_ok = out.r1_bound >= out.gcd_bound;
  out.pass = out.chain_ok && out.observed <= out.gcd_bound && out.observed <= out.r1_bound;
  return out;
}

} // namespace quot
} // namespace wg
