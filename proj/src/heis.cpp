#include "wg/heis.hpp"

#include "wg/error.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace wg {

std::string HeisElement::to_string() const {
  std::ostringstream os;
  os << "(" << a.get_str() << "," << b.get_str() << "," << c.get_str() << ")";
  return os.str();
}

namespace heis {

HeisElement mul(const Int& r, const HeisElement& x, const HeisElement& y) {
  return HeisElement{x.a + y.a, x.b + y.b, x.c + y.c + r * x.a * y.b};
}

HeisElement inv(const Int& r, const HeisElement& x) {
  return HeisElement{-x.a, -x.b, -x.c + r * x.a * x.b};
}

HeisElement pow(const Int& r, const HeisElement& x, const Int& k) {
  HeisElement base = k < 0 ? inv(r, x) : x;
  Int e = k < 0 ? Int(-k) : k;
  HeisElement acc = identity();
  while (e > 0) {
    if (fmod(e, 2) == 1) acc = mul(r, acc, base);
    base = mul(r, base, base);
    e = fdiv(e, 2);
  }
  return acc;
}

HeisElement commutator(const Int& r, const HeisElement& x, const HeisElement& y) {
  return mul(r, mul(r, x, y), mul(r, inv(r, x), inv(r, y)));
}

std::array<std::array<Rat, 3>, 3> to_matrix(const Int& r, const HeisElement& x) {
  std::array<std::array<Rat, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = (i == j) ? 1 : 0;
  m[0][1] = Rat(x.a);
  m[1][2] = Rat(x.b);
  Rat corner(x.c, r);
  corner.canonicalize();
  m[0][2] = corner;
  return m;
}

std::vector<WordToken> parse_word(const std::string& text) {
  std::vector<WordToken> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    size_t caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    Int exp = 1;
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      if (e.empty()) throw Error(Errc::BAD_WORD, "missing exponent in token '" + tok + "'");
      try {
        exp = Int(e);
      } catch (const std::invalid_argument&) {
        throw Error(Errc::BAD_WORD, "bad exponent in token '" + tok + "'");
      }
    }
    int gen;
    if (name == "d1") gen = 1;
    else if (name == "d2") gen = 2;
    else if (name == "d3") gen = 3;
    else if (name == "g") gen = 0;
    else throw Error(Errc::BAD_WORD, "unknown generator '" + name + "'");
    out.push_back(WordToken{gen, std::move(exp)});
  }
  return out;
}

HeisElement eval_word(const Int& r, const std::vector<WordToken>& word) {
  HeisElement acc = identity();
  for (const auto& t : word) {
    HeisElement g;
    switch (t.gen) {
      case 1: g = delta1(); break;
      case 2: g = delta2(); break;
      case 3: g = delta3(); break;
      default: throw Error(Errc::BAD_WORD, "gamma letter is not a Heisenberg generator");
    }
    acc = mul(r, acc, pow(r, g, t.exp));
  }
  return acc;
}

HeisElement eval_word(const Int& r, const std::string& text) { return eval_word(r, parse_word(text)); }

bool HeisSubgroupData::operator==(const HeisSubgroupData& o) const {
  return r == o.r && a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && b1 == o.b1 && b2 == o.b2 && b3 == o.b3 &&
         c == o.c;
}

std::string HeisSubgroupData::to_string() const {
  std::ostringstream os;
  os << "{r=" << r.get_str() << " zeta=(" << a1.get_str() << "," << a2.get_str() << "," << a3.get_str()
     << ") xi=(" << b1.get_str() << "," << b2.get_str() << "," << b3.get_str() << ") c=" << c.get_str()
     << "}";
  return os.str();
}

HeisSubgroupData canonicalize(const HeisSubgroupData& s) {
  if (s.r < 1) throw Error(Errc::BAD_INPUT, "ambient step r must be positive");
  if (s.c < 1) throw Error(Errc::BAD_INPUT, "central step c must be positive");
  Int d = s.proj_det();
  if (d == 0) throw Error(Errc::NOT_FINITE_INDEX, "projected generators are dependent");
  Int rd = s.r * (d < 0 ? Int(-d) : d);
  if (!divides(s.c, rd))
    throw Error(Errc::NOT_SUBGROUP_CLOSED,
                "c must divide r*|a1*b2-a2*b1|; data " + s.to_string() + " is not closed");

  // column HNF of the projected block, applied to the actual generators
  IntMatrix p(2, 2);
  p.at(0, 0) = s.a1;
  p.at(1, 0) = s.a2;
  p.at(0, 1) = s.b1;
  p.at(1, 1) = s.b2;
  HermiteNormalForm hnf = hermite_normal_form(p);
  const IntMatrix& u = hnf.u;
  HeisElement zeta = s.zeta(), xi = s.xi();
  HeisElement nz = heis::mul(s.r, pow(s.r, zeta, u.at(0, 0)), pow(s.r, xi, u.at(1, 0)));
  HeisElement nx = heis::mul(s.r, pow(s.r, zeta, u.at(0, 1)), pow(s.r, xi, u.at(1, 1)));

  HeisSubgroupData out;
  out.r = s.r;
  out.c = s.c;
  out.a1 = nz.a;
  out.a2 = nz.b;
  out.a3 = fmod(nz.c, s.c);
  out.b1 = nx.a;
  out.b2 = nx.b;
  out.b3 = fmod(nx.c, s.c);
  assert(out.b1 == 0); // column HNF of the projection is lower triangular
  return out;
}

std::optional<MembershipWitness> contains(const HeisSubgroupData& s, const HeisElement& x) {
  // solve m*(a1,a2) + n*(b1,b2) = (x.a, x.b) over Z
  Int d = s.proj_det();
  assert(d != 0);
  Int mn = x.a * s.b2 - x.b * s.b1;
  Int nn = s.a1 * x.b - s.a2 * x.a;
  if (!divides(d, mn) || !divides(d, nn)) return std::nullopt;
  Int m = divexact(mn, d), n = divexact(nn, d);
  HeisElement w = mul(s.r, pow(s.r, s.zeta(), m), pow(s.r, s.xi(), n));
  HeisElement diff = mul(s.r, x, inv(s.r, w));
  assert(diff.a == 0 && diff.b == 0);
  if (!divides(s.c, diff.c)) return std::nullopt;
  return MembershipWitness{m, n, divexact(diff.c, s.c)};
}

bool is_normal(const HeisSubgroupData& s) {
  const std::array<HeisElement, 3> ambient = {delta1(), delta2(), delta3()};
  const std::array<HeisElement, 3> gens = {s.zeta(), s.xi(), delta3(s.c)};
  for (const auto& g : ambient) {
    HeisElement gi = inv(s.r, g);
    for (const auto& h : gens) {
      HeisElement conj = mul(s.r, mul(s.r, g, h), gi);
      if (!contains(s, conj)) return false;
      HeisElement conj2 = mul(s.r, mul(s.r, gi, h), g);
      if (!contains(s, conj2)) return false;
    }
  }
  // every normal subgroup satisfies the divisibility criterion
  Int g = gcd(gcd(s.a1, s.a2), gcd(s.b1, s.b2));
  assert(divides(s.c, s.r * g));
  return true;
}

Int index(const HeisSubgroupData& s) {
  Int d = s.proj_det();
  if (d == 0) throw Error(Errc::NOT_FINITE_INDEX, "projected generators are dependent");
  return (d < 0 ? Int(-d) : d) * s.c;
}

Int iso_type(const HeisSubgroupData& s) {
  Int d = s.proj_det();
  if (d == 0) throw Error(Errc::NOT_FINITE_INDEX, "projected generators are dependent");
  Int ad = d < 0 ? Int(-d) : d;
  if (!divides(s.c, s.r * ad))
    throw Error(Errc::NOT_SUBGROUP_CLOSED, "c does not divide r*|a1*b2-a2*b1|");
  Int rp = divexact(s.r * ad, s.c);
  // consistency: [zeta, xi] must be (d3^c)^{+-r'}
  HeisElement comm = commutator(s.r, s.zeta(), s.xi());
  assert(comm.a == 0 && comm.b == 0);
  Int q = divexact(comm.c, s.c);
  assert(q == rp || q == -rp);
  return rp;
}

std::optional<HeisSubgroupData> subgroup_from_generators(const Int& r, const std::vector<HeisElement>& gens) {
  int k = static_cast<int>(gens.size());
  if (k == 0) return std::nullopt;
  IntMatrix p(2, k);
  for (int j = 0; j < k; ++j) {
    p.at(0, j) = gens[static_cast<size_t>(j)].a;
    p.at(1, j) = gens[static_cast<size_t>(j)].b;
  }
  ColumnEchelon ce = column_echelon(p);
  if (ce.rank < 2) return std::nullopt;

  auto realize = [&](int col) {
    HeisElement acc = identity();
    for (int i = 0; i < k; ++i)
      acc = mul(r, acc, pow(r, gens[static_cast<size_t>(i)], ce.u.at(i, col)));
    return acc;
  };
  HeisElement zeta = realize(0), xi = realize(1);
  // central step: commutator content of the projection lattice plus the
  // central parts realized by the kernel combinations
  Int d = zeta.a * xi.b - zeta.b * xi.a;
  Int c = r * (d < 0 ? Int(-d) : d);
  for (int col = 2; col < k; ++col) {
    HeisElement z = realize(col);
    assert(z.a == 0 && z.b == 0);
    c = gcd(c, z.c);
  }
  HeisSubgroupData s;
  s.r = r;
  s.a1 = zeta.a;
  s.a2 = zeta.b;
  s.a3 = zeta.c;
  s.b1 = xi.a;
  s.b2 = xi.b;
  s.b3 = xi.c;
  s.c = c;
  return canonicalize(s);
}

namespace {

struct TripleLess {
  bool operator()(const HeisElement& x, const HeisElement& y) const {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};

} // namespace

bool infinite_index_subgroup_abelian_check(const Int& r, const std::vector<HeisElement>& gens, int bound) {
  // rank of the projected vectors must be <= 1
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i].a * gens[j].b - gens[i].b * gens[j].a != 0)
        throw Error(Errc::FINITE_INDEX, "generators project onto a rank-2 lattice");

  std::set<HeisElement, TripleLess> ball{identity()};
  std::vector<HeisElement> frontier{identity()};
  std::vector<HeisElement> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(inv(r, g));
  }
  for (int depth = 0; depth < bound; ++depth) {
    std::vector<HeisElement> next;
    for (const auto& x : frontier)
      for (const auto& s : steps) {
        HeisElement y = mul(r, x, s);
        if (ball.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  for (auto i = ball.begin(); i != ball.end(); ++i)
    for (auto j = std::next(i); j != ball.end(); ++j)
      if (!commutator(r, *i, *j).is_identity()) return false;
  return true;
}

} // namespace heis
} // namespace wg
