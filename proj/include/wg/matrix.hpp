#pragma once

#include "wg/int.hpp"
#include "wg/polynomial.hpp"

#include <string>
#include <vector>

namespace wg {

// Dense matrix of arbitrary-precision integers. All matrices appearing
// in the group constructions are 2x2 or 3x3; the linear algebra here
// supports square sizes up to 6 and general shapes where noted.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, Int(0)) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

  IntMatrix transpose() const;
  IntMatrix pow(unsigned long k) const;
  bool is_zero() const;
  bool is_identity() const;

  // Exact inverse for matrices with det = +-1 (adjugate route).
  IntMatrix unimodular_inverse() const;

  std::vector<Int> apply(const std::vector<Int>& v) const;

  std::string to_string() const;

private:
  int rows_, cols_;
  std::vector<Int> e_;
};

// Exact determinant via fraction-free Bareiss elimination.
Int det(const IntMatrix& m);

// Monic characteristic polynomial det(x*Id - M), computed exactly by
// the Faddeev-LeVerrier recursion (all divisions are exact over Z).
IntPolynomial char_poly(const IntMatrix& m);

bool has_eigenvalue_one(const IntMatrix& m);

struct SmithNormalForm {
  IntMatrix u, d, v; // u * a * v == d
};

// Smith normal form with unimodular transforms: D diagonal, entries
// nonnegative, d1 | d2 | ... The diagonal is canonical.
SmithNormalForm smith_normal_form(const IntMatrix& a);

struct HermiteNormalForm {
  IntMatrix h, u; // h == a * u, u unimodular
};

// Column-style Hermite normal form of a nonsingular square matrix:
// H lower triangular, positive pivots, entries left of each pivot
// reduced into [0, pivot). Throws RANK_DEFICIENT on singular input.
HermiteNormalForm hermite_normal_form(const IntMatrix& a);

// General column reduction used by the lattice machinery: for an n x k
// matrix A returns H = A * U with U unimodular, the pivot columns of H
// in echelon (HNF) shape and the trailing k - rank columns zero.
struct ColumnEchelon {
  IntMatrix h, u;
  int rank = 0;
};
ColumnEchelon column_echelon(const IntMatrix& a);

// Decision procedure: are all eigenvalues of a unimodular matrix roots
// of unity? ALL iff the characteristic polynomial is a product of
// cyclotomic polynomials Phi_d with phi(d) <= n. The witness is the
// multiset of orders d (decision ALL) or the residual non-cyclotomic
// factor (decision NOT_ALL).
struct RootsOfUnityResult {
  bool all = false;
  std::vector<long> orders;   // cyclotomic factors found, ascending, with multiplicity
  IntPolynomial residual;     // constant 1 iff all
};
RootsOfUnityResult roots_of_unity_eigenvalues(const IntMatrix& m);

// Independent cross-check of the above: ALL iff M^N is unipotent for
// N = lcm{ d : phi(d) <= n }.
bool roots_of_unity_by_unipotence(const IntMatrix& m);

// Solve A*x = b exactly over the integers for square nonsingular A.
// Returns nullopt when the rational solution is not integral.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b);

} // namespace wg
