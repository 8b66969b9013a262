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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "etf_forge/error.hpp"
#include "etf_forge/exact_scalar.hpp"
#include "etf_forge/matrix.hpp"

namespace etf {

enum class HadamardKind { real, complex };

struct HadamardMatrix {
  Matrix<CycloElem> body;
  HadamardKind kind = HadamardKind::real;
  std::string label;

  std::size_t size() const noexcept { return body.rows(); }
  int order() const { return domain_of(body).parameter; }
};

// Checks unit moduli and M M^* = n I. Real matrices are re-tagged at order 2.
inline HadamardMatrix verify_hadamard(const Matrix<CycloElem>& m, std::string label = "matrix") {
  if (!m.is_square() || m.rows() == 0) fail(ErrorKind::not_hadamard, "Hadamard matrix must be square");
  const std::size_t n = m.rows();
  bool real = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& z = m(i, j);
      if (auto q = z.as_rational()) {
        if (*q * *q != 1) {
          fail(ErrorKind::not_hadamard, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") is not unimodular: " + to_string(z));
        }
        continue;
      }
      real = false;
      if (!(squared_modulus(z) == CycloElem(1, 1))) {
        fail(ErrorKind::not_hadamard, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") is not unimodular: " + to_string(z));
      }
    }
  }
  const auto mm = mat_mul_adjoint(m, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto q = mm(i, j).as_rational();
      const Rational expected = i == j ? Rational(static_cast<std::int64_t>(n)) : Rational(0);
      if (!q || *q != expected) {
        fail(ErrorKind::not_hadamard, "rows " + std::to_string(i) + " and " + std::to_string(j) +
                                          " have inner product " + to_string(mm(i, j)) + ", expected " +
                                          expected.str());
      }
    }
  }
  HadamardMatrix h{real ? cyclotomic_from_rationals(n, n, *rational_entries(m), 2) : unify_domain(m),
                   real ? HadamardKind::real : HadamardKind::complex, std::move(label)};
  return h;
}

inline HadamardMatrix sylvester(int e) {
  if (e < 0) fail(ErrorKind::invalid_argument, "Sylvester exponent must be nonnegative");
  const std::size_t n = std::size_t{1} << e;
  std::vector<Rational> q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i * n + j] = (std::popcount(i & j) % 2) ? -1 : 1;
  }
  return {cyclotomic_from_rationals(n, n, q, 2), HadamardKind::real, "sylvester(" + std::to_string(e) + ")"};
}

inline bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::int64_t>(static_cast<__int128>(result) * base % mod);
    base = static_cast<std::int64_t>(static_cast<__int128>(base) * base % mod);
    exp >>= 1;
  }
  return result;
}

// Quadratic character of GF(q) by Euler's criterion.
inline int quadratic_character(std::int64_t x, std::int64_t q) {
  x = ((x % q) + q) % q;
  if (x == 0) return 0;
  return pow_mod(x, (q - 1) / 2, q) == 1 ? 1 : -1;
}

inline HadamardMatrix paley_one(std::int64_t q) {
  if (!is_prime(q)) fail(ErrorKind::invalid_argument, "Paley construction needs a prime q, got " + std::to_string(q));
  if (q % 4 != 3) fail(ErrorKind::invalid_argument, "Paley construction needs q = 3 mod 4, got " + std::to_string(q));
  const std::size_t n = static_cast<std::size_t>(q) + 1;
  std::vector<Rational> e(n * n, Rational(1));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      e[i * n + j] = i == j ? -1
                            : quadratic_character(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j), q);
    }
  }
  return verify_hadamard(cyclotomic_from_rationals(n, n, e, 2), "paley_one(" + std::to_string(q) + ")");
}

inline HadamardMatrix dft(std::int64_t n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "DFT size must be positive");
  const int m = static_cast<int>(n);
  std::vector<CycloElem> e;
  e.reserve(static_cast<std::size_t>(n * n));
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t k = 0; k < n; ++k) e.push_back(CycloElem::root_of_unity(m, (j * k) % n));
  }
  const auto kind = n <= 2 ? HadamardKind::real : HadamardKind::complex;
  return {Matrix<CycloElem>(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(e)), kind,
          "dft(" + std::to_string(n) + ")"};
}

inline HadamardMatrix kron(const HadamardMatrix& a, const HadamardMatrix& b) {
  const int m = std::lcm(a.order(), b.order());
  auto body = kron(lift_matrix(a.body, m), lift_matrix(b.body, m));
  const auto kind =
      a.kind == HadamardKind::real && b.kind == HadamardKind::real ? HadamardKind::real : HadamardKind::complex;
  return {std::move(body), kind, a.label + " (x) " + b.label};
}

// Finite abelian group Z_{m_1} x ... x Z_{m_k}; elements are indexed in
// mixed-radix order with the last coordinate varying fastest.
struct AbelianGroup {
  std::vector<int> orders;

  static AbelianGroup make(std::vector<int> orders) {
    if (orders.empty()) fail(ErrorKind::invalid_argument, "group needs at least one cyclic factor");
    for (int m : orders) {
      if (m < 2) fail(ErrorKind::invalid_argument, "cyclic factor orders must be at least 2");
    }
    return {std::move(orders)};
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (int m : orders) n *= static_cast<std::size_t>(m);
    return n;
  }

  int exponent() const {
    int m = 1;
    for (int o : orders) m = std::lcm(m, o);
    return m;
  }

  std::vector<int> digits(std::size_t index) const {
    std::vector<int> g(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      g[i] = static_cast<int>(index % static_cast<std::size_t>(orders[i]));
      index /= static_cast<std::size_t>(orders[i]);
    }
    return g;
  }

  std::size_t index(const std::vector<int>& g) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(g[i]);
    }
    return idx;
  }

  std::size_t difference(std::size_t x, std::size_t y) const {
    auto a = digits(x);
    const auto b = digits(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ((a[i] - b[i]) % orders[i] + orders[i]) % orders[i];
    return index(a);
  }
};

inline HadamardMatrix char_table(const AbelianGroup& g) {
  const std::size_t n = g.size();
  const int m = g.exponent();
  std::vector<CycloElem> e;
  e.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto ad = g.digits(a);
    for (std::size_t x = 0; x < n; ++x) {
      const auto xd = g.digits(x);
      long long exp = 0;
      for (std::size_t i = 0; i < ad.size(); ++i) {
        exp += static_cast<long long>(ad[i]) * xd[i] * (m / g.orders[i]);
      }
      e.push_back(CycloElem::root_of_unity(m, exp % m));
    }
  }
  std::string label = "char_table(";
  for (std::size_t i = 0; i < g.orders.size(); ++i) label += (i ? "," : "") + std::to_string(g.orders[i]);
  return {Matrix<CycloElem>(n, n, std::move(e)), m <= 2 ? HadamardKind::real : HadamardKind::complex,
          label + ")"};
}

// Deterministic recipe search over Sylvester and Paley factors.
inline HadamardMatrix hadamard_of_size(std::int64_t n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "Hadamard size must be positive");
  std::vector<std::string> tried;
  const auto paley_ok = [](std::int64_t q) { return q >= 3 && q % 4 == 3 && is_prime(q); };
  const auto power_of_two = [](std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; };

  tried.push_back("sylvester");
  if (power_of_two(n)) return sylvester(std::countr_zero(static_cast<std::uint64_t>(n)));

  // n = 2^e (q + 1), largest Paley factor first.
  for (int e = 0; (n >> e) > 1 && (n % (std::int64_t{1} << e)) == 0; ++e) {
    const std::int64_t q = (n >> e) - 1;
    tried.push_back("sylvester(" + std::to_string(e) + ") (x) paley_one(" + std::to_string(q) + ")");
    if (paley_ok(q)) {
      auto p = paley_one(q);
      return e == 0 ? p : kron(sylvester(e), p);
    }
  }
  // n = 2^e (q1 + 1)(q2 + 1).
  for (int e = 0; (n >> e) > 1 && (n % (std::int64_t{1} << e)) == 0; ++e) {
    const std::int64_t rest = n >> e;
    for (std::int64_t f = rest - 1; f >= 4; --f) {
      if (rest % f != 0) continue;
      const std::int64_t g = rest / f;
      if (g < 4 || g > f) continue;
      tried.push_back("sylvester(" + std::to_string(e) + ") (x) paley_one(" + std::to_string(f - 1) +
                      ") (x) paley_one(" + std::to_string(g - 1) + ")");
      if (paley_ok(f - 1) && paley_ok(g - 1)) {
        auto h = kron(paley_one(f - 1), paley_one(g - 1));
        return e == 0 ? h : kron(sylvester(e), h);
      }
    }
  }
  std::string list;
  for (std::size_t i = 0; i < tried.size(); ++i) list += (i ? "; " : "") + tried[i];
  fail(ErrorKind::no_recipe, "no Hadamard recipe of size " + std::to_string(n) + " (tried: " + list + ")");
}

}  // namespace etf
