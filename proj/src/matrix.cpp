#include "wg/matrix.hpp"

#include "wg/error.hpp"

#include <cassert>
#include <numeric>
#include <sstream>

namespace wg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::RANK_DEFICIENT: return "RANK_DEFICIENT";
    case Errc::NOT_UNIMODULAR: return "NOT_UNIMODULAR";
    case Errc::UNSUPPORTED_DEGREE: return "UNSUPPORTED_DEGREE";
    case Errc::NO_BOUND: return "NO_BOUND";
    case Errc::AMBIENT_MISMATCH: return "AMBIENT_MISMATCH";
    case Errc::BAD_WORD: return "BAD_WORD";
    case Errc::NOT_SUBGROUP_CLOSED: return "NOT_SUBGROUP_CLOSED";
    case Errc::FINITE_INDEX: return "FINITE_INDEX";
    case Errc::NOT_FINITE_INDEX: return "NOT_FINITE_INDEX";
    case Errc::ORDER_CAP_EXCEEDED: return "ORDER_CAP_EXCEEDED";
    case Errc::NOT_NORMAL: return "NOT_NORMAL";
    case Errc::EIGENVALUE_ONE: return "EIGENVALUE_ONE";
    case Errc::INVALID_DESCRIPTOR: return "INVALID_DESCRIPTOR";
    case Errc::BAD_INPUT: return "BAD_INPUT";
  }
  return "UNKNOWN";
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != m.cols())
      throw Error(Errc::BAD_INPUT, "ragged row lengths");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  assert(cols_ == o.rows_);
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  IntMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  IntMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

IntMatrix IntMatrix::pow(unsigned long k) const {
  assert(is_square());
  IntMatrix acc = identity(rows_);
  IntMatrix base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : e_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
  assert(static_cast<int>(v.size()) == cols_);
  std::vector<Int> r(static_cast<size_t>(rows_), Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Int det(const IntMatrix& m) {
  if (!m.is_square()) throw Error(Errc::BAD_INPUT, "determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { piv = i; break; }
      if (piv < 0) return 0;
      for (int j = k; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = divexact(a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j), prev);
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

IntMatrix IntMatrix::unimodular_inverse() const {
  Int d = det(*this);
  if (d != 1 && d != -1) throw Error(Errc::NOT_UNIMODULAR, "inverse requires det +-1");
  int n = rows_;
  // adjugate via cofactors; n <= 6 so this is cheap
  IntMatrix adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(rr, cc) = at(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = det(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      adj.at(j, i) = cof;
    }
  if (d == -1)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) adj.at(i, j) = -adj.at(i, j);
  return adj;
}

IntPolynomial char_poly(const IntMatrix& m) {
  if (!m.is_square()) throw Error(Errc::BAD_INPUT, "char_poly of non-square matrix");
  int n = m.rows();
  // Faddeev-LeVerrier: M_1 = M, c_k = -tr(M_k)/k, M_{k+1} = M (M_k + c_k Id).
  std::vector<Int> coeffs(static_cast<size_t>(n) + 1, Int(0));
  coeffs[static_cast<size_t>(n)] = 1;
  IntMatrix mk = m;
  for (int k = 1; k <= n; ++k) {
    Int tr = 0;
    for (int i = 0; i < n; ++i) tr += mk.at(i, i);
    Int ck = divexact(-tr, Int(k));
    coeffs[static_cast<size_t>(n - k)] = ck;
    if (k < n) {
      IntMatrix shifted = mk;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += ck;
      mk = m * shifted;
    }
  }
  return IntPolynomial(std::move(coeffs));
}

bool has_eigenvalue_one(const IntMatrix& m) {
  return det(m - IntMatrix::identity(m.rows())) == 0;
}

namespace {

// Fix up one diagonal pair of an already diagonal D so that d_i | d_j,
// replacing (d_i, d_j) with (gcd, +-lcm). Transform tracking keeps
// U * A * V == D.
void chain_pair(IntMatrix& d, IntMatrix& u, IntMatrix& v, int i, int j) {
  int n = d.rows();
  if (d.at(i, i) == 0 && d.at(j, j) == 0) return;
  if (d.at(i, i) == 0) {
    // zero must sort after nonzero; swap the pair
    for (int c = 0; c < n; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
    for (int r = 0; r < n; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < n; ++r) std::swap(v.at(r, i), v.at(r, j));
    return;
  }
  if (divides(d.at(i, i), d.at(j, j))) return;
  // pull d_j into column i so the two entries meet in one column
  for (int r = 0; r < n; ++r) d.at(r, i) += d.at(r, j);
  for (int r = 0; r < n; ++r) v.at(r, i) += v.at(r, j);
  // Euclid on (d[i][i], d[j][i]) by row operations
  while (d.at(j, i) != 0) {
    Int q = fdiv(d.at(i, i), d.at(j, i));
    for (int c = 0; c < n; ++c) d.at(i, c) -= q * d.at(j, c);
    for (int c = 0; c < n; ++c) u.at(i, c) -= q * u.at(j, c);
    for (int c = 0; c < n; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  // clear the fill-in at (i, j); the new pivot divides it
  if (d.at(i, j) != 0) {
    Int q = divexact(d.at(i, j), d.at(i, i));
    for (int r = 0; r < n; ++r) d.at(r, j) -= q * d.at(r, i);
    for (int r = 0; r < n; ++r) v.at(r, j) -= q * v.at(r, i);
  }
}

} // namespace

SmithNormalForm smith_normal_form(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::BAD_INPUT, "smith_normal_form expects square input");
  int n = a.rows();
  SmithNormalForm s{IntMatrix::identity(n), a, IntMatrix::identity(n)};
  IntMatrix& d = s.d;
  IntMatrix& u = s.u;
  IntMatrix& v = s.v;

  for (int t = 0; t < n; ++t) {
    // find a nonzero pivot of minimal magnitude in the trailing block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < n; ++i)
      for (int j = t; j < n; ++j) {
        if (d.at(i, j) == 0) continue;
        Int mag = d.at(i, j) < 0 ? Int(-d.at(i, j)) : d.at(i, j);
        if (pi < 0 || mag < best) { best = mag; pi = i; pj = j; }
      }
    if (pi < 0) break; // trailing block is zero
    if (pi != t) {
      for (int c = 0; c < n; ++c) std::swap(d.at(t, c), d.at(pi, c));
      for (int c = 0; c < n; ++c) std::swap(u.at(t, c), u.at(pi, c));
    }
    if (pj != t) {
      for (int r = 0; r < n; ++r) std::swap(d.at(r, t), d.at(r, pj));
      for (int r = 0; r < n; ++r) std::swap(v.at(r, t), v.at(r, pj));
    }
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = fdiv(d.at(i, t), d.at(t, t));
        for (int c = 0; c < n; ++c) d.at(i, c) -= q * d.at(t, c);
        for (int c = 0; c < n; ++c) u.at(i, c) -= q * u.at(t, c);
        if (d.at(i, t) != 0) {
          // remainder became the smaller pivot; swap it in and restart
          for (int c = 0; c < n; ++c) std::swap(d.at(t, c), d.at(i, c));
          for (int c = 0; c < n; ++c) std::swap(u.at(t, c), u.at(i, c));
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = fdiv(d.at(t, j), d.at(t, t));
        for (int r = 0; r < n; ++r) d.at(r, j) -= q * d.at(r, t);
        for (int r = 0; r < n; ++r) v.at(r, j) -= q * v.at(r, t);
        if (d.at(t, j) != 0) {
          for (int r = 0; r < n; ++r) std::swap(d.at(r, t), d.at(r, j));
          for (int r = 0; r < n; ++r) std::swap(v.at(r, t), v.at(r, j));
          clean = false;
        }
      }
    }
  }

  // positive diagonal
  for (int i = 0; i < n; ++i) {
    if (d.at(i, i) < 0) {
      for (int c = 0; c < n; ++c) d.at(i, c) = -d.at(i, c);
      for (int c = 0; c < n; ++c) u.at(i, c) = -u.at(i, c);
    }
  }
  // zero diagonal entries sort to the end automatically (they only occur
  // once the trailing block vanished); enforce the divisibility chain
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) chain_pair(d, u, v, i, j);
  for (int i = 0; i < n; ++i) {
    if (d.at(i, i) < 0) {
      for (int c = 0; c < n; ++c) d.at(i, c) = -d.at(i, c);
      for (int c = 0; c < n; ++c) u.at(i, c) = -u.at(i, c);
    }
  }
  return s;
}

ColumnEchelon column_echelon(const IntMatrix& a) {
  int n = a.rows(), k = a.cols();
  ColumnEchelon ce{a, IntMatrix::identity(k), 0};
  IntMatrix& h = ce.h;
  IntMatrix& u = ce.u;
  int col = 0;
  for (int row = 0; row < n && col < k; ++row) {
    // gcd-reduce row `row` across columns col..k-1 until one nonzero remains
    while (true) {
      int nz = -1, cnt = 0;
      for (int j = col; j < k; ++j)
        if (h.at(row, j) != 0) { ++cnt; if (nz < 0) nz = j; }
      if (cnt == 0) { nz = -1; break; }
      if (cnt == 1) {
        if (nz != col) {
          for (int r = 0; r < n; ++r) std::swap(h.at(r, nz), h.at(r, col));
          for (int r = 0; r < k; ++r) std::swap(u.at(r, nz), u.at(r, col));
        }
        break;
      }
      // find column with minimal nonzero magnitude in this row, move to col
      int pj = -1;
      Int best = 0;
      for (int j = col; j < k; ++j) {
        if (h.at(row, j) == 0) continue;
        Int mag = h.at(row, j) < 0 ? Int(-h.at(row, j)) : h.at(row, j);
        if (pj < 0 || mag < best) { best = mag; pj = j; }
      }
      if (pj != col) {
        for (int r = 0; r < n; ++r) std::swap(h.at(r, pj), h.at(r, col));
        for (int r = 0; r < k; ++r) std::swap(u.at(r, pj), u.at(r, col));
      }
      for (int j = col + 1; j < k; ++j) {
        if (h.at(row, j) == 0) continue;
        Int q = fdiv(h.at(row, j), h.at(row, col));
        if (q != 0) {
          for (int r = 0; r < n; ++r) h.at(r, j) -= q * h.at(r, col);
          for (int r = 0; r < k; ++r) u.at(r, j) -= q * u.at(r, col);
        }
      }
    }
    if (h.at(row, col) == 0) continue; // row has no pivot; try next row
    // positive pivot
    if (h.at(row, col) < 0) {
      for (int r = 0; r < n; ++r) h.at(r, col) = -h.at(r, col);
      for (int r = 0; r < k; ++r) u.at(r, col) = -u.at(r, col);
    }
    // reduce the pivot row entries of earlier columns into [0, pivot)
    for (int j = 0; j < col; ++j) {
      Int q = fdiv(h.at(row, j), h.at(row, col));
      if (q != 0) {
        for (int r = 0; r < n; ++r) h.at(r, j) -= q * h.at(r, col);
        for (int r = 0; r < k; ++r) u.at(r, j) -= q * u.at(r, col);
      }
    }
    ++col;
  }
  ce.rank = col;
  return ce;
}

HermiteNormalForm hermite_normal_form(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::BAD_INPUT, "hermite_normal_form expects square input");
  ColumnEchelon ce = column_echelon(a);
  if (ce.rank != a.cols()) throw Error(Errc::RANK_DEFICIENT, "matrix has deficient column rank");
  return HermiteNormalForm{ce.h, ce.u};
}

RootsOfUnityResult roots_of_unity_eigenvalues(const IntMatrix& m) {
  Int d = det(m);
  if (d != 1 && d != -1) throw Error(Errc::NOT_UNIMODULAR, "eigenvalue test requires det +-1");
  int n = m.rows();
  RootsOfUnityResult res;
  IntPolynomial rem = char_poly(m);
  for (long order : cyclotomic_orders_up_to_degree(n)) {
    IntPolynomial phi = cyclotomic_poly(order);
    if (phi.degree() > rem.degree()) continue;
    while (true) {
      auto [q, r] = rem.divmod_monic(phi);
      if (!r.is_zero()) break;
      rem = q;
      res.orders.push_back(order);
      if (rem.degree() < phi.degree()) break;
    }
  }
  res.residual = rem;
  res.all = rem.degree() == 0;
  return res;
}

bool roots_of_unity_by_unipotence(const IntMatrix& m) {
  Int d = det(m);
  if (d != 1 && d != -1) throw Error(Errc::NOT_UNIMODULAR, "eigenvalue test requires det +-1");
  int n = m.rows();
  unsigned long big_n = 1;
  for (long order : cyclotomic_orders_up_to_degree(n))
    big_n = static_cast<unsigned long>(lcm(Int(big_n), Int(order)).get_ui());
  IntMatrix p = m.pow(big_n) - IntMatrix::identity(n);
  return p.pow(static_cast<unsigned long>(n)).is_zero();
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
  if (!a.is_square() || static_cast<int>(b.size()) != a.rows())
    throw Error(Errc::BAD_INPUT, "solve_integer expects square system");
  Int d = det(a);
  if (d == 0) throw Error(Errc::RANK_DEFICIENT, "singular system");
  int n = a.rows();
  std::vector<Int> x(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    IntMatrix cramer = a;
    for (int i = 0; i < n; ++i) cramer.at(i, j) = b[static_cast<size_t>(i)];
    Int num = det(cramer);
    if (!divides(d, num)) return std::nullopt;
    x[static_cast<size_t>(j)] = divexact(num, d);
  }
  return x;
}

} // namespace wg
