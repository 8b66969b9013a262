// Copyright 2026 The etf-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact scalars: the cyclotomic field Q(zeta_m) in power-basis form reduced
// modulo the m-th cyclotomic polynomial, and real quadratic fields Q(sqrt t).
// Equality is coefficient equality, so every certification downstream is
// tolerance free.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "etf_forge/error.hpp"

namespace etf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Integer polynomial, lowest degree first.
using IntPoly = std::vector<BigInt>;

inline BigInt numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline BigInt denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline std::optional<BigInt> exact_sqrt(const BigInt& x) {
  if (x < 0) return std::nullopt;
  BigInt s = boost::multiprecision::sqrt(x);
  if (s * s != x) return std::nullopt;
  return s;
}

// sqrt of a reduced fraction is rational iff numerator and denominator are
// both perfect squares.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  auto n = exact_sqrt(numerator_of(q));
  auto d = exact_sqrt(denominator_of(q));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

inline std::string to_string(const Rational& q) { return q.str(); }

namespace detail {

template <class C>
void trim_trailing_zeros(std::vector<C>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Exact long division by a monic divisor; the remainder must vanish.
inline IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) fail(ErrorKind::invalid_argument, "polynomial division: degree too small");
  IntPoly quot(num.size() - dd);
  for (std::size_t i = num.size(); i-- > dd;) {
    BigInt c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (const auto& r : num) {
    if (r != 0) fail(ErrorKind::invalid_argument, "polynomial division left a remainder");
  }
  return quot;
}

// Reduces c modulo a monic integer polynomial; result has exactly deg entries.
template <class C>
void reduce_monic(std::vector<C>& c, const IntPoly& modulus) {
  const std::size_t deg = modulus.size() - 1;
  for (std::size_t i = c.size(); i-- > deg;) {
    if (c[i] == 0) continue;
    C lead = c[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (modulus[j] != 0) c[i - deg + j] -= lead * C(modulus[j]);
    }
    c[i] = 0;
  }
  c.resize(deg);
}

}  // namespace detail

// Phi_m, built as (x^m - 1) / prod_{d | m, d < m} Phi_d. Cached; the cache
// only grows, so returned references stay valid.
inline const IntPoly& cyclotomic_polynomial(int m) {
  if (m < 1) fail(ErrorKind::invalid_argument, "cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  IntPoly divisor_product{1};
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) divisor_product = detail::poly_mul(divisor_product, cyclotomic_polynomial(d));
  }
  IntPoly xm_minus_one(static_cast<std::size_t>(m) + 1);
  xm_minus_one[0] = -1;
  xm_minus_one[m] = 1;
  IntPoly phi = detail::poly_div_exact(std::move(xm_minus_one), divisor_product);
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(phi)).first->second;
}

inline std::size_t cyclotomic_degree(int m) { return cyclotomic_polynomial(m).size() - 1; }

struct CycloTerm {
  long long exponent;
  Rational coeff;
};

// Element of Q(zeta_m) stored as coefficients of 1, zeta, ..., zeta^{deg-1}.
class CycloElem {
 public:
  CycloElem() : CycloElem(1) {}
  explicit CycloElem(int order) : order_(order), coeffs_(cyclotomic_degree(order)) {}
  CycloElem(int order, Rational value) : CycloElem(order) { coeffs_[0] = std::move(value); }

  static CycloElem root_of_unity(int order, long long exponent) {
    long long e = exponent % order;
    if (e < 0) e += order;
    std::vector<Rational> raw(static_cast<std::size_t>(e) + 1);
    raw[static_cast<std::size_t>(e)] = 1;
    return from_coeffs(order, std::move(raw));
  }

  // Accepts any number of power-basis coefficients and reduces them.
  static CycloElem from_coeffs(int order, std::vector<Rational> raw) {
    CycloElem z(order);
    detail::reduce_monic(raw, cyclotomic_polynomial(order));
    z.coeffs_ = std::move(raw);
    return z;
  }

  int order() const noexcept { return order_; }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  std::optional<Rational> as_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return std::nullopt;
    }
    return coeffs_[0];
  }

  // Re-express at an order that is a multiple of the current one using
  // zeta_m = zeta_M^{M/m}.
  CycloElem lifted(int new_order) const {
    if (new_order == order_) return *this;
    if (new_order % order_ != 0) {
      fail(ErrorKind::incompatible_domain,
           "cannot lift order " + std::to_string(order_) + " to " + std::to_string(new_order));
    }
    const std::size_t step = static_cast<std::size_t>(new_order / order_);
    std::vector<Rational> raw(coeffs_.size() == 0 ? 1 : (coeffs_.size() - 1) * step + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[i * step] = coeffs_[i];
    return from_coeffs(new_order, std::move(raw));
  }

  CycloElem conjugate() const {
    std::vector<Rational> raw(static_cast<std::size_t>(order_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      raw[(static_cast<std::size_t>(order_) - i) % static_cast<std::size_t>(order_)] += coeffs_[i];
    }
    return from_coeffs(order_, std::move(raw));
  }

  bool is_real() const { return conjugate() == *this; }

  CycloElem operator-() const {
    CycloElem z(*this);
    for (auto& c : z.coeffs_) c = -c;
    return z;
  }

  friend CycloElem operator+(const CycloElem& x, const CycloElem& y) {
    if (x.order_ != y.order_) {
      const int m = std::lcm(x.order_, y.order_);
      return x.lifted(m) + y.lifted(m);
    }
    CycloElem z(x);
    for (std::size_t i = 0; i < z.coeffs_.size(); ++i) z.coeffs_[i] += y.coeffs_[i];
    return z;
  }

  friend CycloElem operator-(const CycloElem& x, const CycloElem& y) { return x + (-y); }

  friend CycloElem operator*(const CycloElem& x, const CycloElem& y) {
    if (x.order_ != y.order_) {
      const int m = std::lcm(x.order_, y.order_);
      return x.lifted(m) * y.lifted(m);
    }
    const std::size_t deg = x.coeffs_.size();
    std::vector<Rational> raw(2 * deg - 1);
    for (std::size_t i = 0; i < deg; ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < deg; ++j) {
        if (y.coeffs_[j] != 0) raw[i + j] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    return from_coeffs(x.order_, std::move(raw));
  }

  friend CycloElem operator*(const Rational& s, const CycloElem& x) {
    CycloElem z(x);
    for (auto& c : z.coeffs_) c *= s;
    return z;
  }

  CycloElem& operator+=(const CycloElem& y) { return *this = *this + y; }
  CycloElem& operator-=(const CycloElem& y) { return *this = *this - y; }
  CycloElem& operator*=(const CycloElem& y) { return *this = *this * y; }

  friend bool operator==(const CycloElem& x, const CycloElem& y) {
    if (x.order_ == y.order_) return x.coeffs_ == y.coeffs_;
    const int m = std::lcm(x.order_, y.order_);
    return x.lifted(m).coeffs_ == y.lifted(m).coeffs_;
  }

 private:
  int order_;
  std::vector<Rational> coeffs_;
};

// Canonical form of sum_e coeff * zeta_m^e; exponents may be any integers.
inline CycloElem reduce_cyclotomic(std::span<const CycloTerm> terms, int order) {
  if (order < 1) fail(ErrorKind::invalid_argument, "cyclotomic order must be positive");
  std::vector<Rational> raw(static_cast<std::size_t>(order));
  for (const auto& t : terms) {
    long long e = t.exponent % order;
    if (e < 0) e += order;
    raw[static_cast<std::size_t>(e)] += t.coeff;
  }
  return CycloElem::from_coeffs(order, std::move(raw));
}

inline std::pair<CycloElem, CycloElem> lift_to_common_order(const CycloElem& x, const CycloElem& y) {
  const int m = std::lcm(x.order(), y.order());
  return {x.lifted(m), y.lifted(m)};
}

inline CycloElem conjugate(const CycloElem& z) { return z.conjugate(); }
inline CycloElem squared_modulus(const CycloElem& z) { return z * z.conjugate(); }

inline std::string to_string(const CycloElem& z) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < z.coeffs().size(); ++i) {
    const Rational& c = z.coeffs()[i];
    if (c == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << c.str();
    if (i > 0) out << "*z" << z.order() << "^" << i;
  }
  if (first) out << "0";
  return out.str();
}

// Largest s with s^2 | t.
inline std::int64_t largest_square_divisor_root(std::int64_t t) {
  std::int64_t root = 1;
  for (std::int64_t p = 2; p * p <= t; ++p) {
    while (t % (p * p) == 0) {
      t /= p * p;
      root *= p;
    }
  }
  return root;
}

// a + b*sqrt(t) with t square-free; t == 1 forces b == 0.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)

  static QuadElem make(std::int64_t t_raw, Rational a, Rational b) {
    if (t_raw < 1) fail(ErrorKind::invalid_argument, "quadratic radicand must be positive");
    const std::int64_t s = largest_square_divisor_root(t_raw);
    const std::int64_t t = t_raw / (s * s);
    b *= s;
    if (t == 1) return QuadElem(Unchecked{}, 1, a + b, 0);
    return QuadElem(Unchecked{}, t, std::move(a), std::move(b));
  }

  // Caller guarantees t square-free (used on kernel output).
  static QuadElem from_reduced(std::int64_t t, Rational a, Rational b) {
    if (t == 1) return QuadElem(Unchecked{}, 1, a + b, 0);
    return QuadElem(Unchecked{}, t, std::move(a), std::move(b));
  }

  std::int64_t radicand() const noexcept { return t_; }
  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  std::optional<Rational> as_rational() const {
    if (b_ != 0) return std::nullopt;
    return a_;
  }

  QuadElem conjugate() const { return *this; }

  // Radicand of a binary result; rational operands adopt the other's field.
  static std::int64_t join(const QuadElem& x, const QuadElem& y) {
    if (x.t_ == y.t_) return x.t_;
    if (x.t_ == 1) return y.t_;
    if (y.t_ == 1) return x.t_;
    if (x.b_ == 0) return y.t_;
    if (y.b_ == 0) return x.t_;
    fail(ErrorKind::incompatible_domain, "incompatible quadratic radicands " + std::to_string(x.t_) +
                                             " and " + std::to_string(y.t_));
  }

  QuadElem operator-() const { return QuadElem(Unchecked{}, t_, -a_, -b_); }

  friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
    const std::int64_t t = join(x, y);
    return from_reduced(t, x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y) { return x + (-y); }
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
    const std::int64_t t = join(x, y);
    return from_reduced(t, x.a_ * y.a_ + Rational(t) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend QuadElem operator*(const Rational& s, const QuadElem& x) {
    return QuadElem(Unchecked{}, x.t_, s * x.a_, s * x.b_);
  }
  QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
  QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
  QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    return x.b_ == 0 || x.t_ == y.t_;
  }

 private:
  struct Unchecked {};
  QuadElem(Unchecked, std::int64_t t, Rational a, Rational b)
      : t_(t), a_(std::move(a)), b_(std::move(b)) {}

  std::int64_t t_ = 1;
  Rational a_ = 0;
  Rational b_ = 0;
};

inline QuadElem normalize_quadratic(std::int64_t t_raw, const Rational& a, const Rational& b) {
  return QuadElem::make(t_raw, a, b);
}

inline QuadElem conjugate(const QuadElem& z) { return z; }
inline QuadElem squared_modulus(const QuadElem& z) { return z * z; }

inline std::string to_string(const QuadElem& z) {
  if (z.b() == 0) return z.a().str();
  return z.a().str() + " + " + z.b().str() + "*sqrt(" + std::to_string(z.radicand()) + ")";
}

// sqrt(q) for a positive rational, as an element of Q(sqrt t).
inline QuadElem quadratic_sqrt(const Rational& q) {
  if (q < 0) fail(ErrorKind::invalid_argument, "square root of a negative rational");
  const BigInt num = numerator_of(q);
  const BigInt den = denominator_of(q);
  const BigInt radicand = num * den;
  if (radicand > BigInt(std::numeric_limits<std::int64_t>::max())) {
    fail(ErrorKind::invalid_argument, "radicand out of range");
  }
  if (q == 0) return QuadElem();
  return QuadElem::make(radicand.convert_to<std::int64_t>(), 0, Rational(1, den));
}

}  // namespace etf
