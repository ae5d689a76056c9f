#include <doctest.h>

#include "wg/error.hpp"
#include "wg/matrix.hpp"
#include "wg/polynomial.hpp"

#include <random>

using namespace wg;

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

// independent oracle: recursive cofactor expansion
Int cofactor_det(const IntMatrix& m) {
  int n = m.rows();
  if (n == 1) return m.at(0, 0);
  Int acc = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    Int term = m.at(0, j) * cofactor_det(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

IntMatrix random_matrix(std::mt19937_64& rng, int n, long span) {
  std::uniform_int_distribution<long> d(-span, span);
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = d(rng);
  return m;
}

IntMatrix random_unimodular_t(std::mt19937_64& rng, int n, int steps) {
  IntMatrix m = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pos(0, n - 1), coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = pos(rng), j = pos(rng);
    int e = coef(rng);
    if (i == j || e == 0) continue;
    for (int c = 0; c < n; ++c) m.at(i, c) += Int(e) * m.at(j, c);
  }
  return m;
}

} // namespace

TEST_CASE("determinant on the reference examples") {
  CHECK(det(IntMatrix::identity(3)) == 1);
  CHECK(det(mat({{2, 1}, {1, 1}})) == 1);
  CHECK(det(mat({{2, 1}, {1, 0}})) == -1);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 400; ++i) {
    int n = 2 + static_cast<int>(rng() % 4); // up to 5x5
    IntMatrix m = random_matrix(rng, n, 9);
    CHECK(det(m) == cofactor_det(m));
  }
}

TEST_CASE("characteristic polynomial examples and trace/det oracle") {
  CHECK(char_poly(IntMatrix::identity(2)) == IntPolynomial({1, -2, 1}));
  CHECK(char_poly(mat({{2, 1}, {1, 1}})) == IntPolynomial({1, -3, 1}));
  CHECK(char_poly(mat({{0, -1}, {1, 0}})) == IntPolynomial({1, 0, 1}));

  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    IntMatrix m = random_matrix(rng, 2, 9);
    Int tr = m.at(0, 0) + m.at(1, 1);
    CHECK(char_poly(m) == IntPolynomial({det(m), -tr, 1}));
  }
  for (int i = 0; i < 300; ++i) {
    IntMatrix m = random_matrix(rng, 3, 9);
    Int tr = m.at(0, 0) + m.at(1, 1) + m.at(2, 2);
    Int s2 = 0; // sum of principal 2x2 minors
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) s2 += m.at(a, a) * m.at(b, b) - m.at(a, b) * m.at(b, a);
    CHECK(char_poly(m) == IntPolynomial({-det(m), s2, -tr, 1}));
  }
}

TEST_CASE("Cayley-Hamilton holds for the computed polynomial") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    int n = 2 + static_cast<int>(rng() % 3);
    IntMatrix m = random_matrix(rng, n, 6);
    IntPolynomial p = char_poly(m);
    IntMatrix acc(n, n);
    for (int d = p.degree(); d >= 0; --d) {
      acc = acc * m;
      for (int t = 0; t < n; ++t) acc.at(t, t) += p.coeff(d);
    }
    CHECK(acc.is_zero());
  }
}

TEST_CASE("Smith normal form examples") {
  CHECK(smith_normal_form(mat({{1, 0}, {0, 1}})).d == IntMatrix::identity(2));
  CHECK(smith_normal_form(mat({{2, 0}, {0, 3}})).d == mat({{1, 0}, {0, 6}}));
  CHECK(smith_normal_form(mat({{2, 4}, {6, 8}})).d == mat({{2, 0}, {0, 4}}));
}

TEST_CASE("Smith normal form of diagonal pairs matches gcd/lcm oracle") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<long> d(1, 60);
  for (int i = 0; i < 200; ++i) {
    Int a(d(rng)), b(d(rng));
    IntMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    SmithNormalForm s = smith_normal_form(m);
    CHECK(s.d.at(0, 0) == gcd(a, b));
    CHECK(s.d.at(1, 1) == lcm(a, b));
  }
}

TEST_CASE("Smith normal form properties and canonicity") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 250; ++i) {
    int n = 2 + static_cast<int>(rng() % 3);
    IntMatrix a = random_matrix(rng, n, 9);
    SmithNormalForm s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    Int du = det(s.u), dv = det(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    Int dd = det(s.d), da = det(a);
    CHECK((dd == da || dd == -da));
    for (int t = 0; t + 1 < n; ++t) {
      CHECK(s.d.at(t, t) >= 0);
      if (s.d.at(t, t) != 0)
        CHECK(divides(s.d.at(t, t), s.d.at(t + 1, t + 1)));
      else
        CHECK(s.d.at(t + 1, t + 1) == 0);
    }
    // canonical: equivalent matrices share the diagonal
    IntMatrix p = random_unimodular_t(rng, n, 6), q = random_unimodular_t(rng, n, 6);
    CHECK(smith_normal_form(p * a * q).d == s.d);
  }
}

namespace {

// lattice containment oracle: every column of x solves integrally in y
bool columns_solve_in(const IntMatrix& x, const IntMatrix& y) {
  for (int j = 0; j < x.cols(); ++j) {
    std::vector<Int> col;
    for (int i = 0; i < x.rows(); ++i) col.push_back(x.at(i, j));
    if (!solve_integer(y, col)) return false;
  }
  return true;
}

} // namespace

TEST_CASE("Hermite normal form examples") {
  CHECK(hermite_normal_form(IntMatrix::identity(3)).h == IntMatrix::identity(3));
  {
    // columns (2,0) and (1,1): same lattice, index 2
    IntMatrix a = mat({{2, 1}, {0, 1}});
    HermiteNormalForm h = hermite_normal_form(a);
    CHECK(h.h == a * h.u);
    Int dd = det(h.h), da = det(a);
    CHECK((dd == da || dd == -da));
    CHECK(columns_solve_in(h.h, a));
    CHECK(columns_solve_in(a, h.h));
  }
  CHECK(hermite_normal_form(mat({{2, 0}, {0, 2}})).h == mat({{2, 0}, {0, 2}}));
  CHECK_THROWS_AS((void)hermite_normal_form(mat({{1, 2}, {2, 4}})), Error);
}

TEST_CASE("Smith normal form degenerate inputs") {
  IntMatrix z(3, 3);
  SmithNormalForm s = smith_normal_form(z);
  CHECK(s.d.is_zero());
  CHECK(s.u * z * s.v == s.d);
  // rank 1
  IntMatrix r1 = mat({{2, 4}, {1, 2}});
  SmithNormalForm s1 = smith_normal_form(r1);
  CHECK(s1.d.at(0, 0) == 1);
  CHECK(s1.d.at(1, 1) == 0);
  CHECK(s1.u * r1 * s1.v == s1.d);
}

TEST_CASE("Hermite form is invariant under column basis changes") {
  std::mt19937_64 rng(909);
  int done = 0;
  while (done < 60) {
    IntMatrix a = random_matrix(rng, 3, 6);
    if (det(a) == 0) continue;
    ++done;
    IntMatrix u = random_unimodular_t(rng, 3, 8);
    CHECK(hermite_normal_form(a).h == hermite_normal_form(a * u).h);
  }
}

TEST_CASE("Hermite normal form shape on random nonsingular input") {
  std::mt19937_64 rng(777);
  int done = 0;
  while (done < 150) {
    int n = 2 + static_cast<int>(rng() % 2);
    IntMatrix a = random_matrix(rng, n, 9);
    if (det(a) == 0) continue;
    ++done;
    HermiteNormalForm h = hermite_normal_form(a);
    CHECK(a * h.u == h.h);
    Int du = det(h.u);
    CHECK((du == 1 || du == -1));
    for (int r = 0; r < n; ++r) {
      CHECK(h.h.at(r, r) > 0);
      for (int c = r + 1; c < n; ++c) CHECK(h.h.at(r, c) == 0);
      for (int c = 0; c < r; ++c) {
        CHECK(h.h.at(r, c) >= 0);
        CHECK(h.h.at(r, c) < h.h.at(r, r));
      }
    }
    CHECK(columns_solve_in(a, h.h));
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == IntPolynomial({-1, 1}));
  // (x^3 - 1) / (x - 1)
  auto q3 = IntPolynomial::xn_minus_one(3).divide_exact(cyclotomic_poly(1));
  REQUIRE(q3.has_value());
  CHECK(cyclotomic_poly(3) == *q3);
  // divide x^6 - 1 by Phi_1 Phi_2 Phi_3
  IntPolynomial denom = cyclotomic_poly(1) * cyclotomic_poly(2) * cyclotomic_poly(3);
  auto q6 = IntPolynomial::xn_minus_one(6).divide_exact(denom);
  REQUIRE(q6.has_value());
  CHECK(cyclotomic_poly(6) == *q6);
  CHECK(cyclotomic_poly(6) == IntPolynomial({1, -1, 1}));

  for (long d = 1; d <= 24; ++d) {
    IntPolynomial prod = IntPolynomial::constant(1);
    for (long e = 1; e <= d; ++e)
      if (d % e == 0) prod = prod * cyclotomic_poly(e);
    CHECK(prod == IntPolynomial::xn_minus_one(static_cast<int>(d)));
    CHECK(IntPolynomial::xn_minus_one(static_cast<int>(d)).divide_exact(cyclotomic_poly(d)).has_value());
  }
}

TEST_CASE("roots-of-unity decision") {
  {
    RootsOfUnityResult r = roots_of_unity_eigenvalues(IntMatrix::identity(3));
    CHECK(r.all);
    CHECK(r.orders == std::vector<long>{1, 1, 1});
  }
  {
    RootsOfUnityResult r = roots_of_unity_eigenvalues(mat({{1, 1}, {0, 1}}));
    CHECK(r.all);
    CHECK(r.orders == std::vector<long>{1, 1});
  }
  {
    RootsOfUnityResult r = roots_of_unity_eigenvalues(mat({{2, 1}, {1, 1}}));
    CHECK_FALSE(r.all);
    CHECK(r.residual == IntPolynomial({1, -3, 1}));
  }
  CHECK_THROWS_AS((void)roots_of_unity_eigenvalues(mat({{2, 0}, {0, 1}})), Error);

  std::mt19937_64 rng(4242);
  for (int i = 0; i < 400; ++i) {
    int n = 2 + static_cast<int>(rng() % 2);
    IntMatrix m = random_unimodular_t(rng, n, 12);
    CHECK(roots_of_unity_eigenvalues(m).all == roots_of_unity_by_unipotence(m));
  }
}

TEST_CASE("eigenvalue-one test") {
  CHECK(has_eigenvalue_one(IntMatrix::identity(2)));
  CHECK_FALSE(has_eigenvalue_one(mat({{2, 1}, {1, 1}})));
  CHECK_FALSE(has_eigenvalue_one(mat({{0, -1}, {1, 0}})));
}

TEST_CASE("random unimodular products stay unimodular with unit constant term") {
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 300; ++i) {
    int n = 2 + static_cast<int>(rng() % 2);
    IntMatrix m = random_unimodular_t(rng, n, 20);
    Int d = det(m);
    CHECK((d == 1 || d == -1));
    IntPolynomial p = char_poly(m);
    CHECK((p.coeff(0) == d || p.coeff(0) == -d));
    CHECK(m * m.unimodular_inverse() == IntMatrix::identity(n));
  }
}

TEST_CASE("integer linear solve") {
  IntMatrix a = mat({{2, 1}, {1, 1}});
  auto x = solve_integer(a, {Int(3), Int(2)});
  REQUIRE(x.has_value());
  CHECK(a.apply(*x) == std::vector<Int>{3, 2});
  CHECK_FALSE(solve_integer(mat({{2, 0}, {0, 2}}), {Int(1), Int(0)}).has_value());
}
