#pragma once

#include "wg/int.hpp"
#include "wg/matrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace wg {

// Element of the discrete Heisenberg group H(r): the triple (a, b, c)
// corresponds to the upper unitriangular matrix with a top middle,
// b middle right and c/r in the corner. The group law
//   (a,b,c) * (a',b',c') = (a+a', b+b', c+c' + r*a*b')
// matches the matrix product exactly.
struct HeisElement {
  Int a, b, c;

  bool operator==(const HeisElement& o) const { return a == o.a && b == o.b && c == o.c; }
  bool is_identity() const { return a == 0 && b == 0 && c == 0; }
  std::string to_string() const;
};

namespace heis {

inline HeisElement identity() { return HeisElement{0, 0, 0}; }
inline HeisElement delta1() { return HeisElement{1, 0, 0}; }
inline HeisElement delta2() { return HeisElement{0, 1, 0}; }
inline HeisElement delta3(Int e = 1) { return HeisElement{0, 0, std::move(e)}; }

HeisElement mul(const Int& r, const HeisElement& x, const HeisElement& y);
HeisElement inv(const Int& r, const HeisElement& x);
// square-and-multiply; k may be negative
HeisElement pow(const Int& r, const HeisElement& x, const Int& k);
// [x, y] = x y x^-1 y^-1; always central, equal to delta3^{r(a b' - b a')}
HeisElement commutator(const Int& r, const HeisElement& x, const HeisElement& y);

// 3x3 rational matrix embedding (oracle for the triple law).
std::array<std::array<Rat, 3>, 3> to_matrix(const Int& r, const HeisElement& x);

// One token of a generator word: generator index 1..3 (or 0 for the
// gamma letter, rejected here) and an exponent.
struct WordToken {
  int gen;
  Int exp;
};

std::vector<WordToken> parse_word(const std::string& text);
HeisElement eval_word(const Int& r, const std::vector<WordToken>& word);
HeisElement eval_word(const Int& r, const std::string& text);

// Finite-index subgroup of H(r), generated by
//   zeta = d1^a1 d2^a2 d3^a3,  xi = d1^b1 d2^b2 d3^b3,  d3^c.
// Valid data has a1*b2 - a2*b1 != 0 and c | r * (a1*b2 - a2*b1), so the
// central intersection is exactly <d3^c>. Canonical form: the projected
// 2x2 block in column Hermite form and a3, b3 reduced mod c.
struct HeisSubgroupData {
  Int r;
  Int a1, a2, a3;
  Int b1, b2, b3;
  Int c;

  Int proj_det() const { return a1 * b2 - a2 * b1; }
  HeisElement zeta() const { return HeisElement{a1, a2, a3}; }
  HeisElement xi() const { return HeisElement{b1, b2, b3}; }
  bool operator==(const HeisSubgroupData& o) const;
  std::string to_string() const;
};

// Canonicalize subgroup data. Throws NOT_FINITE_INDEX when the projected
// vectors are dependent and NOT_SUBGROUP_CLOSED when c does not divide
// r * |a1 b2 - a2 b1| (the generated set would not have central
// intersection <d3^c>).
HeisSubgroupData canonicalize(const HeisSubgroupData& s);

struct MembershipWitness {
  Int m, n, j; // x = zeta^m xi^n (d3^c)^j
};

// Exact membership. Data must be canonical.
std::optional<MembershipWitness> contains(const HeisSubgroupData& s, const HeisElement& x);

// Ground-truth normality: conjugates of all three generators by the
// ambient generators (and inverses) stay inside. For valid data this
// agrees with the divisibility criterion c | r*gcd(a1,a2,b1,b2).
bool is_normal(const HeisSubgroupData& s);

// Index in H(r): |a1 b2 - a2 b1| * c.
Int index(const HeisSubgroupData& s);

// The subgroup is itself Heisenberg: H(r') with r' = r|a1 b2 - a2 b1|/c.
Int iso_type(const HeisSubgroupData& s);

// Smallest-generator description of the subgroup generated by arbitrary
// elements, when it has finite index (rank-2 projection). Returns
// nullopt when the projections span a rank <= 1 lattice.
std::optional<HeisSubgroupData> subgroup_from_generators(const Int& r, const std::vector<HeisElement>& gens);

// Property check behind the infinite-index half of the subgroup
// dichotomy: a subgroup whose projection has rank <= 1 is abelian.
// Verifies that all pairwise commutators of words of length <= bound
// vanish. Throws FINITE_INDEX when the generators have rank-2 projection.
bool infinite_index_subgroup_abelian_check(const Int& r, const std::vector<HeisElement>& gens, int bound);

} // namespace heis
} // namespace wg
