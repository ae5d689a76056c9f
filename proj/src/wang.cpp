#include "wg/wang.hpp"

#include "wg/error.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace wg {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::SM: return "SM";
    case Shape::SPM: return "SPM";
    case Shape::KODAIRA: return "KODAIRA";
  }
  return "?";
}

const char* diag_name(Diag d) {
  switch (d) {
    case Diag::BAD_SHAPE: return "BAD_SHAPE";
    case Diag::DET_NOT_ONE: return "DET_NOT_ONE";
    case Diag::EIGENVALUE_ONE: return "EIGENVALUE_ONE";
    case Diag::ROOTS_OF_UNITY: return "ROOTS_OF_UNITY";
    case Diag::NOT_REAL_SPLIT: return "NOT_REAL_SPLIT";
    case Diag::NOT_COMPLEX_PAIR: return "NOT_COMPLEX_PAIR";
    case Diag::REAL_ROOT_NOT_GREATER_ONE: return "REAL_ROOT_NOT_GREATER_ONE";
    case Diag::NONPOSITIVE_R: return "NONPOSITIVE_R";
  }
  return "?";
}

const char* wang_type_name(WangType t) {
  switch (t) {
    case WangType::S_M: return "S_M";
    case WangType::S_PLUS: return "S_PLUS";
    case WangType::S_MINUS: return "S_MINUS";
    case WangType::KODAIRA: return "KODAIRA";
  }
  return "?";
}

WangDescriptor WangDescriptor::sm(IntMatrix m3) {
  WangDescriptor d;
  d.shape = Shape::SM;
  d.m = std::move(m3);
  return d;
}

WangDescriptor WangDescriptor::spm(IntMatrix m2, Int r, Int p1, Int p2) {
  WangDescriptor d;
  d.shape = Shape::SPM;
  d.m = std::move(m2);
  d.r = std::move(r);
  d.p1 = std::move(p1);
  d.p2 = std::move(p2);
  return d;
}

WangDescriptor WangDescriptor::kodaira(Int r) {
  WangDescriptor d;
  d.shape = Shape::KODAIRA;
  d.r = std::move(r);
  return d;
}

namespace {

// discriminant of the cubic x^3 + a x^2 + b x + c
Int cubic_disc_of(const IntPolynomial& p) {
  const Int &a = p.coeff(2), &b = p.coeff(1), &c = p.coeff(0);
  return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

} // namespace

Validation validate(const WangDescriptor& d) {
  Validation v;
  switch (d.shape) {
    case Shape::SM: {
      if (!d.m.is_square() || d.m.rows() != 3) {
        v.diagnostics.push_back(Diag::BAD_SHAPE);
        return v;
      }
      if (det(d.m) != 1) v.diagnostics.push_back(Diag::DET_NOT_ONE);
      if (!v.diagnostics.empty()) return v;
      IntPolynomial p = char_poly(d.m);
      Int at_one = p.eval(Int(1));
      if (at_one == 0) v.diagnostics.push_back(Diag::EIGENVALUE_ONE);
      Int disc = cubic_disc_of(p);
      if (disc >= 0) v.diagnostics.push_back(Diag::NOT_COMPLEX_PAIR);
      if (at_one > 0) v.diagnostics.push_back(Diag::REAL_ROOT_NOT_GREATER_ONE);
      if (v.diagnostics.empty()) {
        // alpha > 1 > 0 > -1 forces p(-1) < 0 as well
        assert(p.eval(Int(-1)) < 0);
      }
      break;
    }
    case Shape::SPM: {
      if (!d.m.is_square() || d.m.rows() != 2) {
        v.diagnostics.push_back(Diag::BAD_SHAPE);
        return v;
      }
      if (d.r < 1) v.diagnostics.push_back(Diag::NONPOSITIVE_R);
      Int dm = det(d.m);
      if (dm != 1 && dm != -1) {
        v.diagnostics.push_back(Diag::DET_NOT_ONE);
        return v;
      }
      RootsOfUnityResult rou = roots_of_unity_eigenvalues(d.m);
      if (rou.all) v.diagnostics.push_back(Diag::ROOTS_OF_UNITY);
      IntPolynomial p = char_poly(d.m);
      Int disc = p.coeff(1) * p.coeff(1) - 4 * p.coeff(0);
      // for unimodular M the eigenvalues are either real and split or
      // roots of unity; flag the degenerate case explicitly
      if (disc <= 0) v.diagnostics.push_back(Diag::NOT_REAL_SPLIT);
      break;
    }
    case Shape::KODAIRA: {
      if (d.r < 1) v.diagnostics.push_back(Diag::NONPOSITIVE_R);
      break;
    }
  }
  v.ok = v.diagnostics.empty();
  return v;
}

void require_valid(const WangDescriptor& d) {
  Validation v = validate(d);
  if (!v.ok) {
    std::string msg = "descriptor invalid:";
    for (Diag diag : v.diagnostics) msg += std::string(" ") + diag_name(diag);
    throw Error(Errc::INVALID_DESCRIPTOR, msg);
  }
}

const Vec3& WangElement::vec() const {
  if (!std::holds_alternative<Vec3>(h)) throw Error(Errc::AMBIENT_MISMATCH, "element is not a lattice vector");
  return std::get<Vec3>(h);
}

const HeisElement& WangElement::triple() const {
  if (!std::holds_alternative<HeisElement>(h))
    throw Error(Errc::AMBIENT_MISMATCH, "element is not a Heisenberg triple");
  return std::get<HeisElement>(h);
}

bool WangElement::operator==(const WangElement& o) const { return h == o.h && t == o.t; }

std::string WangElement::to_string() const {
  std::ostringstream os;
  if (std::holds_alternative<Vec3>(h)) {
    const Vec3& v = std::get<Vec3>(h);
    os << "(" << v[0].get_str() << "," << v[1].get_str() << "," << v[2].get_str() << ")";
  } else {
    os << std::get<HeisElement>(h).to_string();
  }
  os << "*g^" << t.get_str();
  return os.str();
}

WangElement identity_element(const WangDescriptor& d) {
  if (d.shape == Shape::SM) return WangElement::lattice(Vec3{0, 0, 0});
  return WangElement::heis(heis::identity());
}

WangElement gamma_element(const WangDescriptor& d, Int t) {
  WangElement e = identity_element(d);
  e.t = std::move(t);
  return e;
}

WangElement delta_element(const WangDescriptor& d, int i, Int exp) {
  if (d.shape == Shape::SM) {
    Vec3 v{0, 0, 0};
    v[static_cast<size_t>(i - 1)] = std::move(exp);
    return WangElement::lattice(std::move(v));
  }
  HeisElement g;
  switch (i) {
    case 1: g = heis::delta1(); break;
    case 2: g = heis::delta2(); break;
    case 3: g = heis::delta3(); break;
    default: throw Error(Errc::BAD_INPUT, "generator index must be 1..3");
  }
  return WangElement::heis(heis::pow(d.r, g, exp));
}

namespace {

// images of d1, d2 under the SPM action determined by (M, p): each
// column of M gives the d1/d2 exponents, p_i the central twist
std::pair<HeisElement, HeisElement> spm_images(const WangDescriptor& d) {
  const Int &m11 = d.m.at(0, 0), &m21 = d.m.at(1, 0);
  const Int &m12 = d.m.at(0, 1), &m22 = d.m.at(1, 1);
  // d1^A d2^B d3^P = (A, B, P + r*A*B)
  HeisElement f1{m11, m21, d.p1 + d.r * m11 * m21};
  HeisElement f2{m12, m22, d.p2 + d.r * m12 * m22};
  return {f1, f2};
}

HeisElement apply_heis_images(const Int& r, const HeisElement& f1, const HeisElement& f2, const Int& det_m,
                              const HeisElement& x) {
  // x = d1^a d2^b d3^{c - r a b}
  HeisElement out = heis::mul(r, heis::pow(r, f1, x.a), heis::pow(r, f2, x.b));
  Int central = x.c - r * x.a * x.b;
  out.c += det_m * central; // phi(d3) = d3^{det M}
  return out;
}

} // namespace

WangElement gamma_action(const WangDescriptor& d, const WangElement& h) {
  switch (d.shape) {
    case Shape::SM: {
      const Vec3& v = h.vec();
      std::vector<Int> w = d.m.apply({v[0], v[1], v[2]});
      return WangElement::lattice(Vec3{w[0], w[1], w[2]}, h.t);
    }
    case Shape::SPM: {
      auto [f1, f2] = spm_images(d);
      return WangElement::heis(apply_heis_images(d.r, f1, f2, det(d.m), h.triple()), h.t);
    }
    case Shape::KODAIRA: return h;
  }
  throw Error(Errc::BAD_INPUT, "unreachable");
}

WangElement gamma_action_inverse(const WangDescriptor& d, const WangElement& h) {
  switch (d.shape) {
    case Shape::SM: {
      const Vec3& v = h.vec();
      std::vector<Int> w = d.m.unimodular_inverse().apply({v[0], v[1], v[2]});
      return WangElement::lattice(Vec3{w[0], w[1], w[2]}, h.t);
    }
    case Shape::SPM: {
      // solve for the inverse images: project through M^-1, then fix the
      // central exponent so that phi(candidate) equals the generator
      IntMatrix minv = d.m.unimodular_inverse();
      Int det_m = det(d.m);
      auto [f1, f2] = spm_images(d);
      auto inverse_image = [&](int i) {
        HeisElement cand{minv.at(0, i), minv.at(1, i), 0};
        HeisElement forward = apply_heis_images(d.r, f1, f2, det_m, cand);
        // forward projects onto e_i already; cancel its central part
        cand.c += divexact(-forward.c, det_m);
        return cand;
      };
      HeisElement g1 = inverse_image(0), g2 = inverse_image(1);
      return WangElement::heis(apply_heis_images(d.r, g1, g2, det_m, h.triple()), h.t);
    }
    case Shape::KODAIRA: return h;
  }
  throw Error(Errc::BAD_INPUT, "unreachable");
}

WangElement phi_pow(const WangDescriptor& d, const WangElement& h, const Int& t) {
  WangElement out = h;
  if (t >= 0) {
    for (Int i = 0; i < t; ++i) out = gamma_action(d, out);
  } else {
    for (Int i = 0; i > t; --i) out = gamma_action_inverse(d, out);
  }
  return out;
}

std::optional<std::string> action_automorphism_counterexample(const WangDescriptor& d) {
  if (d.shape == Shape::SM || d.shape == Shape::KODAIRA) return std::nullopt; // linear / identity action
  // phi([d1, d2]) must equal [phi(d1), phi(d2)] = d3^{r det M}
  WangElement d1 = delta_element(d, 1), d2 = delta_element(d, 2);
  WangElement lhs = gamma_action(d, commutator(d, d1, d2));
  WangElement rhs = commutator(d, gamma_action(d, d1), gamma_action(d, d2));
  if (!(lhs == rhs)) return "phi([d1,d2]) != [phi(d1),phi(d2)]";
  // phi must fix the center setwise: phi(d3) = d3^{det M}
  WangElement d3 = delta_element(d, 3);
  WangElement im = gamma_action(d, d3);
  if (im.triple().a != 0 || im.triple().b != 0) return "phi(d3) is not central";
  // round trip through the inverse
  for (int i = 1; i <= 3; ++i) {
    WangElement g = delta_element(d, i);
    if (!(gamma_action_inverse(d, gamma_action(d, g)) == g)) return "phi^-1 . phi != id";
    if (!(gamma_action(d, gamma_action_inverse(d, g)) == g)) return "phi . phi^-1 != id";
  }
  return std::nullopt;
}

bool action_is_automorphism(const WangDescriptor& d) { return !action_automorphism_counterexample(d); }

WangElement mul(const WangDescriptor& d, const WangElement& x, const WangElement& y) {
  WangElement yh = y;
  yh.t = 0;
  WangElement twisted = phi_pow(d, yh, x.t);
  WangElement out = identity_element(d);
  if (d.shape == Shape::SM) {
    const Vec3 &a = x.vec(), &b = twisted.vec();
    out.h = Vec3{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  } else {
    out.h = heis::mul(d.r, x.triple(), twisted.triple());
  }
  out.t = x.t + y.t;
  return out;
}

WangElement inv(const WangDescriptor& d, const WangElement& x) {
  WangElement xh = x;
  xh.t = 0;
  WangElement moved = phi_pow(d, xh, -x.t);
  WangElement out = identity_element(d);
  if (d.shape == Shape::SM) {
    const Vec3& a = moved.vec();
    out.h = Vec3{-a[0], -a[1], -a[2]};
  } else {
    out.h = heis::inv(d.r, moved.triple());
  }
  out.t = -x.t;
  return out;
}

WangElement pow(const WangDescriptor& d, const WangElement& x, const Int& k) {
  WangElement base = k < 0 ? inv(d, x) : x;
  Int e = k < 0 ? Int(-k) : k;
  WangElement acc = identity_element(d);
  while (e > 0) {
    if (fmod(e, 2) == 1) acc = mul(d, acc, base);
    base = mul(d, base, base);
    e = fdiv(e, 2);
  }
  return acc;
}

WangElement commutator(const WangDescriptor& d, const WangElement& x, const WangElement& y) {
  return mul(d, mul(d, x, y), mul(d, inv(d, x), inv(d, y)));
}

CommutatorLattice commutator_lattice(const WangDescriptor& d) {
  require_valid(d);
  CommutatorLattice out;
  if (d.shape == Shape::SM) {
    IntMatrix b = d.m - IntMatrix::identity(3);
    Int db = det(b);
    if (db == 0) throw Error(Errc::EIGENVALUE_ONE, "M - Id is degenerate");
    out.basis = b;
    out.snf_diagonal = smith_normal_form(b).d;
    out.index = db < 0 ? Int(-db) : db;
    return out;
  }
  if (d.shape == Shape::KODAIRA) {
    // [Gamma, Gamma] = <d3^r>: not of finite index in Gamma_0
    throw Error(Errc::NOT_FINITE_INDEX, "commutator subgroup of a direct product has infinite index");
  }
  // SPM: normal closure of the generator commutators inside H(r)
  IntMatrix b = d.m - IntMatrix::identity(2);
  if (det(b) == 0) throw Error(Errc::EIGENVALUE_ONE, "M - Id is degenerate");
  WangElement g = gamma_element(d);
  std::vector<HeisElement> gens;
  for (int i = 1; i <= 3; ++i) {
    WangElement c = commutator(d, g, delta_element(d, i));
    assert(c.t == 0);
    gens.push_back(c.triple());
  }
  {
    WangElement c = commutator(d, delta_element(d, 1), delta_element(d, 2));
    gens.push_back(c.triple());
  }
  // close under conjugation by the ambient generators
  for (int round = 0; round < 64; ++round) {
    auto sub = heis::subgroup_from_generators(d.r, gens);
    if (!sub) throw Error(Errc::NOT_FINITE_INDEX, "commutator closure lost rank");
    bool stable = true;
    std::vector<HeisElement> sgens = {sub->zeta(), sub->xi(), heis::delta3(sub->c)};
    for (const auto& x : sgens) {
      std::vector<HeisElement> conjs;
      for (int i = 1; i <= 2; ++i) {
        HeisElement gi = delta_element(d, i).triple();
        conjs.push_back(heis::mul(d.r, heis::mul(d.r, gi, x), heis::inv(d.r, gi)));
        conjs.push_back(heis::mul(d.r, heis::mul(d.r, heis::inv(d.r, gi), x), gi));
      }
      conjs.push_back(gamma_action(d, WangElement::heis(x)).triple());
      conjs.push_back(gamma_action_inverse(d, WangElement::heis(x)).triple());
      for (const auto& y : conjs)
        if (!heis::contains(*sub, y)) {
          gens.push_back(y);
          stable = false;
        }
    }
    if (stable) {
      // projection of [Gamma,Gamma] equals Im(M - Id)
      IntMatrix proj(2, 2);
      proj.at(0, 0) = sub->a1;
      proj.at(1, 0) = sub->a2;
      proj.at(0, 1) = sub->b1;
      proj.at(1, 1) = sub->b2;
      HermiteNormalForm lhs = hermite_normal_form(proj);
      HermiteNormalForm rhs = hermite_normal_form(b);
      assert(lhs.h == rhs.h);
      out.sub = *sub;
      out.index = heis::index(*sub);
      return out;
    }
  }
  throw Error(Errc::NOT_FINITE_INDEX, "commutator closure did not stabilize");
}

CenterDescription center(const WangDescriptor& d) {
  require_valid(d);
  CenterDescription out;
  switch (d.shape) {
    case Shape::SM: out.trivial = true; break;
    case Shape::SPM:
      if (det(d.m) == 1) {
        out.generators.push_back(delta_element(d, 3));
      } else {
        out.trivial = true;
      }
      break;
    case Shape::KODAIRA:
      out.generators.push_back(delta_element(d, 3));
      out.generators.push_back(gamma_element(d));
      break;
  }
  return out;
}

WangType classify_type(const WangDescriptor& d) {
  require_valid(d);
  CenterDescription z = center(d);
  switch (d.shape) {
    case Shape::SM: {
      // criterion (i): Gamma_0 = Z^3 is characteristic; needs trivial
      // center and nondegenerate M - Id (both hold for valid SM data)
      assert(z.trivial);
      assert(det(d.m - IntMatrix::identity(3)) != 0);
      return WangType::S_M;
    }
    case Shape::SPM: {
      assert(det(d.m - IntMatrix::identity(2)) != 0); // no Z^3 witness
      if (det(d.m) == 1) {
        assert(!z.trivial);
        return WangType::S_PLUS;
      }
      assert(z.trivial);
      return WangType::S_MINUS;
    }
    case Shape::KODAIRA: return WangType::KODAIRA;
  }
  throw Error(Errc::BAD_INPUT, "unreachable");
}

WangElement psi_apply(const Int& r, const WangElement& x) {
  // psi(d1) = d1 g, psi(d2) = d2, psi(d3) = d3, psi(g) = g; gamma is
  // central, so psi(h * g^t) = h * g^{t + a}
  const HeisElement& h = x.triple();
  (void)r;
  return WangElement::heis(h, x.t + h.a);
}

PsiCheck psi_check(const Int& r) {
  WangDescriptor d = WangDescriptor::kodaira(r);
  PsiCheck out;
  WangElement d1 = delta_element(d, 1), d2 = delta_element(d, 2), d3 = delta_element(d, 3);
  WangElement g = gamma_element(d);
  auto psi = [&](const WangElement& x) { return psi_apply(r, x); };

  bool ok = true;
  // [psi(d1), psi(d2)] = psi(d3)^r
  ok = ok && commutator(d, psi(d1), psi(d2)) == pow(d, psi(d3), r);
  // [psi(di), psi(d3)] = 1 and [psi(di), psi(g)] = 1
  for (const auto& x : {d1, d2, d3}) {
    ok = ok && commutator(d, psi(x), psi(d3)) == identity_element(d);
    ok = ok && commutator(d, psi(x), psi(g)) == identity_element(d);
  }
  // psi is a homomorphism on a sample of products
  for (const auto& x : {d1, d2, d3, g, mul(d, d1, d2)})
    for (const auto& y : {d1, d2, d3, g, mul(d, d2, g)})
      ok = ok && psi(mul(d, x, y)) == mul(d, psi(x), psi(y));
  out.relations_preserved = ok;
  out.witness = psi(d1);
  out.moves_gamma0 = out.witness.t != 0;
  return out;
}

bool commutator_subgroup_contains(const WangDescriptor& d, const CommutatorLattice& cl,
                                  const WangElement& x) {
  if (x.t != 0) return false;
  if (d.shape == Shape::SM) {
    const Vec3& v = x.vec();
    auto sol = solve_integer(*cl.basis, {v[0], v[1], v[2]});
    return sol.has_value();
  }
  return heis::contains(*cl.sub, x.triple()).has_value();
}

bool rad_membership(const WangDescriptor& d, const WangElement& candidate, StructuralSubgroup target,
                    int k_cap) {
  require_valid(d);
  std::optional<CommutatorLattice> cl;
  if (target == StructuralSubgroup::COMMUTATOR && d.shape != Shape::KODAIRA) cl = commutator_lattice(d);
  WangElement acc = identity_element(d);
  for (int k = 1; k <= k_cap; ++k) {
    acc = mul(d, acc, candidate);
    if (target == StructuralSubgroup::GAMMA0) {
      if (acc.t == 0) return true;
      continue;
    }
    if (d.shape == Shape::KODAIRA) {
      // [Gamma,Gamma] = <d3^r>
      if (acc.t == 0 && acc.triple().a == 0 && acc.triple().b == 0 && divides(d.r, acc.triple().c))
        return true;
      continue;
    }
    if (commutator_subgroup_contains(d, *cl, acc)) return true;
  }
  return false;
}

} // namespace wg
