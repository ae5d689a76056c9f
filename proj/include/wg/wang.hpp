#pragma once

#include "wg/heis.hpp"
#include "wg/int.hpp"
#include "wg/matrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wg {

// The three ambient group shapes:
//   SM       Z^3 x| Z         defined by M in SL_3(Z),
//   SPM      H(r) x| Z        defined by M in GL_2(Z), det = +-1, and
//                             central twists p = (p1, p2),
//   KODAIRA  H(r) x Z         trivial action.
enum class Shape { SM, SPM, KODAIRA };

const char* shape_name(Shape s);

struct WangDescriptor {
  Shape shape = Shape::KODAIRA;
  IntMatrix m;       // 3x3 for SM, 2x2 for SPM
  Int r = 1;         // SPM, KODAIRA
  Int p1 = 0, p2 = 0; // SPM twists

  static WangDescriptor sm(IntMatrix m3);
  static WangDescriptor spm(IntMatrix m2, Int r, Int p1 = 0, Int p2 = 0);
  static WangDescriptor kodaira(Int r);
};

enum class Diag {
  BAD_SHAPE,
  DET_NOT_ONE,
  EIGENVALUE_ONE,
  ROOTS_OF_UNITY,
  NOT_REAL_SPLIT,
  NOT_COMPLEX_PAIR,
  REAL_ROOT_NOT_GREATER_ONE,
  NONPOSITIVE_R,
};

const char* diag_name(Diag d);

struct Validation {
  bool ok = false;
  std::vector<Diag> diagnostics;
};

// All invariant checks are exact integer sign evaluations: determinant,
// discriminant, characteristic polynomial values and the cyclotomic
// roots-of-unity test. No floating point enters any verdict.
Validation validate(const WangDescriptor& d);
// validate and throw INVALID_DESCRIPTOR on failure
void require_valid(const WangDescriptor& d);

using Vec3 = std::array<Int, 3>;

// Element h * gamma^t of the ambient group: h is a lattice vector for
// SM and a Heisenberg triple otherwise.
struct WangElement {
  std::variant<Vec3, HeisElement> h;
  Int t = 0;

  static WangElement lattice(Vec3 v, Int t = 0) { return WangElement{std::move(v), std::move(t)}; }
  static WangElement heis(HeisElement x, Int t = 0) { return WangElement{std::move(x), std::move(t)}; }
  static WangElement gamma(Int t = 1) { return WangElement{HeisElement{0, 0, 0}, std::move(t)}; }

  const Vec3& vec() const;
  const HeisElement& triple() const;
  bool operator==(const WangElement& o) const;
  std::string to_string() const;
};

// identity element of the right carrier type
WangElement identity_element(const WangDescriptor& d);
WangElement gamma_element(const WangDescriptor& d, Int t = 1);
// delta_i as an ambient element (i in 1..3)
WangElement delta_element(const WangDescriptor& d, int i, Int exp = 1);

// The defining action phi = conjugation by gamma on the Gamma_0 part,
// and its exact inverse; phi_pow applies phi^t for any integer t.
WangElement gamma_action(const WangDescriptor& d, const WangElement& h);
WangElement gamma_action_inverse(const WangDescriptor& d, const WangElement& h);
WangElement phi_pow(const WangDescriptor& d, const WangElement& h, const Int& t);

// Consistency of the presentation: phi respects the Gamma_0 relations
// (checked on the commutator relation and centrality). Returns the
// violated relation as text when it fails.
std::optional<std::string> action_automorphism_counterexample(const WangDescriptor& d);
bool action_is_automorphism(const WangDescriptor& d);

WangElement mul(const WangDescriptor& d, const WangElement& x, const WangElement& y);
WangElement inv(const WangDescriptor& d, const WangElement& x);
WangElement pow(const WangDescriptor& d, const WangElement& x, const Int& k);
WangElement commutator(const WangDescriptor& d, const WangElement& x, const WangElement& y);

// Description of [Gamma, Gamma] inside Gamma_0.
struct CommutatorLattice {
  // SM: columns of M - Id generate the sublattice; invariant factors
  // from its Smith form; index |det(M - Id)|.
  // SPM: the commutator subgroup as Heisenberg subgroup data; its
  // projection equals Im(M - Id).
  std::optional<IntMatrix> basis;           // SM
  std::optional<IntMatrix> snf_diagonal;    // SM
  std::optional<heis::HeisSubgroupData> sub; // SPM
  Int index = 0;                            // [Gamma_0 : [Gamma,Gamma]]
};

CommutatorLattice commutator_lattice(const WangDescriptor& d);

struct CenterDescription {
  bool trivial = false;
  std::vector<WangElement> generators; // empty iff trivial
};

CenterDescription center(const WangDescriptor& d);

enum class WangType { S_M, S_PLUS, S_MINUS, KODAIRA };
const char* wang_type_name(WangType t);

// Trichotomy: SM descriptors carry a characteristic Z^3; SPM with
// det = +1 has nontrivial center and no Z^3; SPM with det = -1 has
// trivial center and no Z^3. Exactly one criterion fires; this is
// asserted against center() and the nondegeneracy of M - Id.
WangType classify_type(const WangDescriptor& d);

// The automorphism psi of H(r) x Z fixing d2, d3, gamma and mapping
// d1 -> d1 gamma. Applies to arbitrary elements.
WangElement psi_apply(const Int& r, const WangElement& x);

struct PsiCheck {
  bool relations_preserved = false;
  bool moves_gamma0 = false; // psi(Gamma_0) != Gamma_0, witnessed by psi(d1)
  WangElement witness;
};

PsiCheck psi_check(const Int& r);

enum class StructuralSubgroup { COMMUTATOR, GAMMA0 };

// rad membership: candidate^k lies in the target for some 1 <= k <= cap.
bool rad_membership(const WangDescriptor& d, const WangElement& candidate, StructuralSubgroup target,
                    int k_cap);

// membership of a Gamma_0 element in [Gamma,Gamma] (used by rad)
bool commutator_subgroup_contains(const WangDescriptor& d, const CommutatorLattice& cl,
                                  const WangElement& x);

} // namespace wg
