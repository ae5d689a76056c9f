#pragma once

#include "wg/heis.hpp"
#include "wg/int.hpp"
#include "wg/matrix.hpp"
#include "wg/wang.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wg {
namespace quot {

// Finite-index normal subgroup Gamma of an ambient Wang group:
// Gamma = Gamma_0' x| <gamma^k delta'>, where Gamma_0' is a sublattice
// (SM) or Heisenberg subgroup data (SPM / KODAIRA).
struct NormalSubgroupSpec {
  WangDescriptor ambient;
  std::optional<IntMatrix> lattice;           // SM: basis columns (3x3)
  std::optional<heis::HeisSubgroupData> sub;  // SPM / KODAIRA
  Int k = 1;
  WangElement delta;                          // t = 0 correction of the gamma power

  WangElement theta() const; // gamma^k * delta as an ambient element
};

// Validate invariants: Gamma_0' invariant under the ambient action and
// the generated subgroup normal in the ambient group. Throws NOT_NORMAL
// or INVALID_DESCRIPTOR with details.
void require_valid_spec(const NormalSubgroupSpec& spec);

bool membership(const NormalSubgroupSpec& spec, const WangElement& x);

struct FiniteGroupTable {
  int order = 0;
  std::vector<std::string> labels;
  std::vector<uint16_t> table; // row-major order x order
  int identity = 0;

  int mul(int i, int j) const { return table[static_cast<size_t>(i) * order + j]; }
  int inverse(int i) const;
  bool is_latin_square() const;
  bool check_associativity_full() const;
  bool check_associativity_sample(int samples, uint64_t seed) const;
  bool is_abelian() const;
};

// Quotient of the ambient group by the subgroup of `spec`, as an
// explicit multiplication table over canonical coset representatives
// (reduced Gamma_0 coordinates plus t in [0, k)).
struct BuiltQuotient {
  FiniteGroupTable group;
  std::vector<Int> rep_t;  // t-coordinate of each representative
  Int gamma0_index;        // [ambient Gamma_0 : Gamma_0']
  Int k;
};

BuiltQuotient build_quotient(const NormalSubgroupSpec& spec, int order_cap = 512);

// Quotient of H(r) by canonical normal subgroup data (the pure
// Heisenberg case, no gamma factor).
FiniteGroupTable build_heis_quotient(const heis::HeisSubgroupData& s, int order_cap = 512);

// Reconstruct a spec from generators of a finite-index normal subgroup:
// k is the positive generator of the t-exponent image, theta a realizing
// element and Gamma_0' the closure of the t = 0 parts under theta
// conjugation. Throws NOT_FINITE_INDEX when the data has infinite index.
NormalSubgroupSpec decompose_normal_subgroup(const WangDescriptor& ambient,
                                             const std::vector<WangElement>& gens);

struct SubgroupInfo {
  std::vector<int> elements; // sorted element indices
  Int index;
};

// Exhaustive list of the normal abelian subgroups of G, found by
// bottom-up closure over conjugation classes of commuting elements.
// Deterministic order: by index, then lexicographic element sets.
std::vector<SubgroupInfo> all_normal_abelian_subgroups(const FiniteGroupTable& g, int order_cap = 2048);

Int min_index_normal_abelian(const FiniteGroupTable& g, int order_cap = 2048);

struct BoundCheck {
  Int observed;                                  // min index of a normal abelian subgroup
  std::vector<std::pair<std::string, Int>> bounds; // named bounds that must dominate
  bool pass = false;
  Int order;                                     // |G|
};

// Verify the index bound for a quotient by `spec`, dispatching on the
// ambient shape: KODAIRA -> iso_type of the Heisenberg part; SM -> the
// k_max-based bound; SPM -> k_max * iso_type bound.
BoundCheck verify_bound(const NormalSubgroupSpec& spec, int order_cap = 512);

// Pure Heisenberg quotient bounds: gcd(a1, b1) from the raw generator
// data and r1 = r|a1 b2 - a2 b1| / c; also checks the arithmetic chain
// r |a1 b2 - a2 b1| / c >= gcd(a1, b1).
struct HeisBoundCheck {
  Int observed;
  Int gcd_bound;   // gcd(a1, b1) of the raw data
  Int r1_bound;    // iso_type of the subgroup
  bool chain_ok;   // r1 >= gcd bound (the proof's inequality chain)
  bool pass;
  Int order;
};

HeisBoundCheck verify_heis_bounds(const heis::HeisSubgroupData& raw, int order_cap = 512);

} // namespace quot
} // namespace wg
