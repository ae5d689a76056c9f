#include "wg/polynomial.hpp"

#include "wg/error.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

namespace wg {

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::constant(Int v) {
  IntPolynomial p;
  if (v != 0) p.c_ = {std::move(v)};
  return p;
}

IntPolynomial IntPolynomial::monomial(int n, Int coeff) {
  IntPolynomial p;
  if (coeff != 0) {
    p.c_.assign(static_cast<size_t>(n) + 1, Int(0));
    p.c_.back() = std::move(coeff);
  }
  return p;
}

IntPolynomial IntPolynomial::xn_minus_one(int n) {
  IntPolynomial p = monomial(n);
  p.c_[0] = -1;
  return p;
}

const Int& IntPolynomial::coeff(int i) const {
  static const Int zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<size_t>(i)];
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return IntPolynomial();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Int> r = c_;
  for (auto& x : r) x = -x;
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::derivative() const {
  if (c_.size() <= 1) return IntPolynomial();
  std::vector<Int> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
  return IntPolynomial(std::move(r));
}

Int IntPolynomial::eval(const Int& x) const {
  Int acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Rat IntPolynomial::eval(const Rat& x) const {
  Rat acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + Rat(c_[i]);
  return acc;
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::divmod_monic(const IntPolynomial& d) const {
  assert(d.is_monic());
  std::vector<Int> rem = c_;
  int dd = d.degree();
  if (degree() < dd) return {IntPolynomial(), *this};
  std::vector<Int> quot(c_.size() - static_cast<size_t>(dd), Int(0));
  for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
    Int q = rem[static_cast<size_t>(i)];
    if (q == 0) continue;
    quot[static_cast<size_t>(i - dd)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(i - dd + j)] -= q * d.coeff(j);
  }
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const IntPolynomial& d) const {
  if (d.is_zero()) return std::nullopt;
  if (d.is_monic()) {
    auto [q, r] = divmod_monic(d);
    if (r.is_zero()) return q;
    return std::nullopt;
  }
  // General exact division attempt: synthetic long division over Q with
  // integrality checks at each step.
  std::vector<Int> rem = c_;
  int dd = d.degree();
  if (degree() < dd) return is_zero() ? std::optional<IntPolynomial>(IntPolynomial()) : std::nullopt;
  std::vector<Int> quot(c_.size() - static_cast<size_t>(dd), Int(0));
  const Int& lead = d.leading();
  for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
    Int top = rem[static_cast<size_t>(i)];
    if (top == 0) continue;
    if (!divides(lead, top)) return std::nullopt;
    Int q = divexact(top, lead);
    quot[static_cast<size_t>(i - dd)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(i - dd + j)] -= q * d.coeff(j);
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return IntPolynomial(std::move(quot));
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& a = coeff(i);
    if (a == 0) continue;
    Int mag = a < 0 ? Int(-a) : a;
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

long euler_phi(long d) {
  long result = d;
  long n = d;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<long> cyclotomic_orders_up_to_degree(int n) {
  // phi(d) >= sqrt(d/2) for all d, so phi(d) <= n forces d <= 2n^2; a
  // small slack keeps the scan obviously safe for tiny n.
  std::vector<long> out;
  long limit = 2L * n * n + 8;
  for (long d = 1; d <= limit; ++d)
    if (euler_phi(d) <= n) out.push_back(d);
  return out;
}

IntPolynomial cyclotomic_poly(long d) {
  static std::map<long, IntPolynomial> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);

  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, computed bottom-up so
  // that recursion never leaves the lock.
  for (long e = 1; e <= d; ++e) {
    if (d % e != 0 || cache.count(e)) continue;
    IntPolynomial num = IntPolynomial::xn_minus_one(static_cast<int>(e));
    for (long f = 1; f < e; ++f) {
      if (e % f != 0) continue;
      auto q = num.divide_exact(cache.at(f));
      assert(q.has_value());
      num = *q;
    }
    cache.emplace(e, std::move(num));
  }
  return cache.at(d);
}

} // namespace wg
