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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etf_forge/design.hpp"
#include "etf_forge/error.hpp"
#include "etf_forge/exact_scalar.hpp"
#include "etf_forge/frame.hpp"
#include "etf_forge/matrix.hpp"

namespace etf {

enum class Branch { plus, minus };

inline std::string to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

// Parameters (v,k,lambda,r,b,x,y) of a quasi-symmetric design.
struct QsdParams {
  BigInt v, k, lambda, r, b, x, y;

  friend bool operator==(const QsdParams&, const QsdParams&) = default;
};

inline std::string to_string(const QsdParams& p) {
  return "(" + p.v.str() + "," + p.k.str() + "," + p.lambda.str() + "," + p.r.str() + "," + p.b.str() + "," +
         p.x.str() + "," + p.y.str() + ")";
}

inline QsdParams qsd_params(const QsdCertificate& c) {
  const auto& p = c.params;
  return {p.v, p.k, p.lambda, p.r, p.b, c.x, c.y};
}

struct QsdEtfLink {
  Rational w;
  std::int64_t k = 0;
  QuadElem delta;
  QuadElem epsilon;
  Branch branch = Branch::plus;
  QsdParams params;
  bool flat_case = false;
};

struct QsdEtf {
  Frame<QuadElem> frame;
  QsdEtfLink link;
};

namespace detail {

struct ExpectedIntersections {
  std::optional<Rational> w;
  std::optional<Rational> x;
  std::optional<Rational> y;
};

// The intersection numbers forced by v, k, lambda, r, b for an ETF-yielding
// QSD; empty when w is irrational.
inline ExpectedIntersections expected_intersections(const DesignParams& p) {
  const Rational w_sq = Rational(p.v * (p.b + 1 - p.v), p.b);
  const auto w = exact_sqrt(w_sq);
  if (!w) return {};
  const Rational rl(p.r - p.lambda);
  const Rational b1(p.b + 1);
  return {*w, Rational(p.k) - (Rational(p.v) + *w) * rl / b1, Rational(p.k) - (Rational(p.v) - *w) * rl / b1};
}

inline std::optional<std::string> intersection_mismatch(const QsdCertificate& cert) {
  const auto e = expected_intersections(cert.params);
  if (!e.w) {
    return "x: w^2 = " + Rational(cert.params.v * (cert.params.b + 1 - cert.params.v), cert.params.b).str() +
           " is not a rational square";
  }
  if (*e.x != cert.x) return "x: expected " + e.x->str() + ", certificate has " + std::to_string(cert.x);
  if (*e.y != cert.y) return "y: expected " + e.y->str() + ", certificate has " + std::to_string(cert.y);
  return std::nullopt;
}

}  // namespace detail

inline QsdEtf etf_from_qsd(const QsdCertificate& cert, Branch branch) {
  const auto& p = cert.params;
  if (!(p.b > p.v && p.v > 1)) fail(ErrorKind::parameter_gate, "need b > v > 1");
  if (!(p.k > 0 && p.k < p.v)) fail(ErrorKind::parameter_gate, "need 0 < k < v");
  if (auto bad = detail::intersection_mismatch(cert)) {
    fail(ErrorKind::parameter_gate, "intersection numbers violate the ETF relation at " + *bad);
  }
  const Rational w = *detail::expected_intersections(p).w;
  const Rational q = Rational(p.b + 1, p.r - p.lambda);
  const QuadElem root = quadratic_sqrt(q);
  const Rational inv_v(1, p.v);
  const QuadElem k_root = Rational(p.k) * root;
  const QuadElem delta = inv_v * (branch == Branch::plus ? QuadElem(w) + k_root : QuadElem(w) - k_root);
  const QuadElem epsilon = branch == Branch::plus ? -root : root;

  const std::size_t v = static_cast<std::size_t>(p.v);
  const std::size_t b = static_cast<std::size_t>(p.b);
  Matrix<QuadElem> phi(v, b + 1, QuadElem(Rational(1)));
  const QuadElem delta_eps = delta + epsilon;
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < b; ++j) phi(i, j + 1) = cert.incidence(j, i) ? delta_eps : delta;
  }
  const bool flat_case = delta == QuadElem(Rational(1)) && epsilon == QuadElem(Rational(-2));
  return {make_frame(std::move(phi)),
          {w, p.k, delta, epsilon, branch, qsd_params(cert), flat_case}};
}

template <class T>
struct SignedMatrix {
  Matrix<T> matrix;
  std::vector<int> row_signs;
  std::vector<int> col_signs;
};

namespace detail {

template <class T>
int unit_sign(const T& z) {
  auto q = z.as_rational();
  if (!q || (*q != 1 && *q != -1)) fail(ErrorKind::invalid_argument, "entries must be +1 or -1");
  return *q > 0 ? 1 : -1;
}

}  // namespace detail

// Rows signed so column 0 is all ones, then columns signed so every column
// sum is nonnegative (zero sums keep their sign).
template <class T>
SignedMatrix<T> canonical_sign(const Matrix<T>& m) {
  const std::size_t d = m.rows();
  const std::size_t n = m.cols();
  std::vector<int> s(d * n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) s[i * n + j] = detail::unit_sign(m(i, j));
  }
  SignedMatrix<T> out{m, std::vector<int>(d), std::vector<int>(n)};
  for (std::size_t i = 0; i < d; ++i) out.row_signs[i] = s[i * n];
  for (std::size_t j = 0; j < n; ++j) {
    long long sum = 0;
    for (std::size_t i = 0; i < d; ++i) sum += out.row_signs[i] * s[i * n + j];
    out.col_signs[j] = sum < 0 ? -1 : 1;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (out.row_signs[i] * out.col_signs[j] < 0) out.matrix(i, j) = -m(i, j);
    }
  }
  return out;
}

template <class T>
struct FlatEtfQsd {
  QsdCertificate cert;
  Rational w;
  std::int64_t k = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  SignedMatrix<T> canonical;
};

template <class T>
FlatEtfQsd<T> qsd_from_flat_etf(const Frame<T>& f) {
  const auto d = static_cast<std::int64_t>(f.d());
  const auto n = static_cast<std::int64_t>(f.n());
  if (n == d + 1) fail(ErrorKind::parameter_gate, "n = d + 1 is the regular simplex regime, which has no QSD");
  if (!(n - 1 > d && d > 1)) fail(ErrorKind::parameter_gate, "need n - 1 > d > 1");
  if (f.weighted()) fail(ErrorKind::not_flat, "weighted frames are not +-1 valued");
  const auto etf_cert = certify_etf(f);
  if (!etf_cert.flat) fail(ErrorKind::not_flat, "frame is not flat");

  auto signed_m = canonical_sign(f.synthesis);
  const std::size_t b = f.n() - 1;
  BinaryMatrix x(b, f.d());
  for (std::size_t i = 0; i < f.d(); ++i) {
    for (std::size_t j = 0; j < b; ++j) x.set(j, i, *signed_m.matrix(i, j + 1).as_rational() == -1);
  }
  const Design design = make_design(std::move(x));
  auto cert = verify_qsd(design);

  const auto w = exact_sqrt(Rational(d * (n - d), n - 1));
  if (!w || !is_integer(*w)) fail(ErrorKind::parameter_gate, "w = sqrt(d(n-d)/(n-1)) is not an integer");
  const std::int64_t wi = numerator_of(*w).convert_to<std::int64_t>();
  const auto& p = cert.params;
  const auto mismatch = [](const std::string& what, const Rational& expected, std::int64_t got) {
    fail(ErrorKind::not_qsd, what + ": expected " + expected.str() + ", extracted " + std::to_string(got));
  };
  if (p.v != d) mismatch("v", Rational(d), p.v);
  if (p.b != n - 1) mismatch("b", Rational(n - 1), p.b);
  if (Rational(d - wi, 2) != p.k) mismatch("k", Rational(d - wi, 2), p.k);
  if (Rational(p.b * p.k, p.v) != p.r) mismatch("r", Rational(p.b * p.k, p.v), p.r);
  if (Rational(p.r * (p.k - 1), p.v - 1) != p.lambda) mismatch("lambda", Rational(p.r * (p.k - 1), p.v - 1), p.lambda);
  if (Rational(d - 3 * wi, 4) != cert.x) mismatch("x", Rational(d - 3 * wi, 4), cert.x);
  if (Rational(d - wi, 4) != cert.y) mismatch("y", Rational(d - wi, 4), cert.y);
  if (d % 2 != 0) fail(ErrorKind::parameter_gate, "d is odd");
  if (wi % 2 != 0) fail(ErrorKind::parameter_gate, "w is odd");
  if (n % 16 != 0) fail(ErrorKind::parameter_gate, "n is not divisible by 16");
  const std::int64_t k = p.k;
  const std::int64_t cx = cert.x;
  const std::int64_t cy = cert.y;
  return {std::move(cert), *w, k, cx, cy, std::move(signed_m)};
}

inline std::pair<QsdParams, QsdParams> corollary42_params(std::int64_t u) {
  if (u < 2) fail(ErrorKind::invalid_argument, "u must be at least 2");
  if (u % 2 != 0) fail(ErrorKind::parameter_gate, "u must be even");
  const BigInt U(u);
  QsdParams a{2 * U * U - U, U * U - U, U * U - U - 1, 2 * U * U - U - 1, 4 * U * U - 1, U * (U - 2) / 2,
              U * (U - 1) / 2};
  QsdParams b{2 * U * U + U, U * U, U * U - U, 2 * U * U - U, 4 * U * U - 1, U * (U - 1) / 2, U * U / 2};
  return {a, b};
}

struct Corollary43 {
  QsdParams params;
  BigInt w;
};

inline Corollary43 corollary43_params(std::int64_t v_hat, std::int64_t k_hat, std::int64_t r_hat,
                                      std::int64_t b_hat) {
  if (k_hat < 2) fail(ErrorKind::invalid_argument, "block size must be at least 2");
  const BigInt v(v_hat), k(k_hat), r(r_hat), b(b_hat);
  if (v * r != b * k) fail(ErrorKind::invalid_argument, "resolvable design parameters violate v r = b k");
  const auto slot = [](const char* name, const BigInt& num, const BigInt& den) {
    const Rational q(num, den);
    if (!is_integer(q)) fail(ErrorKind::parameter_gate, std::string(name) + " = " + q.str() + " is not an integer");
    return numerator_of(q);
  };
  QsdParams p{b,
              slot("k", v * (r - 1), 2 * k),
              slot("lambda", v * (r - 1) - 2 * k, 4),
              slot("r", (r - 1) * (v + k - 1), 2),
              r * (v + k - 1),
              slot("x", v * (r - 3), 4 * k),
              slot("y", v * (r - 1), 4 * k)};
  return {p, slot("w", v, k)};
}

struct Radical {
  Rational radicand;
  std::optional<BigInt> value;  // set when the radicand is a perfect integer square
  bool parity_ok = false;       // odd / odd / even as required
};

struct FeasibilityReport {
  std::int64_t d = 0;
  std::int64_t n = 0;
  Radical q1;
  Radical q2;
  Radical w;
  std::int64_t n_mod_16 = 0;
  bool pass = false;
};

inline FeasibilityReport flat_feasibility(std::int64_t d, std::int64_t n) {
  if (!(n - 1 > d && d > 1)) fail(ErrorKind::invalid_argument, "feasibility needs n - 1 > d > 1");
  const auto radical = [](Rational radicand, bool want_odd) {
    Radical r{std::move(radicand), std::nullopt, false};
    if (auto s = exact_sqrt(r.radicand); s && is_integer(*s)) {
      r.value = numerator_of(*s);
      r.parity_ok = (*r.value % 2 != 0) == want_odd;
    }
    return r;
  };
  FeasibilityReport rep{d, n, radical(Rational(d * (n - 1), n - d), true),
                        radical(Rational((n - d) * (n - 1), d), true), radical(Rational(d * (n - d), n - 1), false),
                        n % 16, false};
  rep.pass = rep.q1.parity_ok && rep.q2.parity_ok && rep.w.parity_ok && rep.n_mod_16 == 0;
  return rep;
}

enum class Field { real, complex };
enum class EtfKind { flat, hadamard };

struct GerzonReport {
  bool pass = true;
  bool upper_equality = false;
  std::string violated;  // empty on pass
};

inline GerzonReport gerzon_bounds(std::int64_t d, std::int64_t n, Field field, EtfKind kind) {
  if (!(1 < d && d < n - 1)) fail(ErrorKind::invalid_argument, "bounds need 1 < d < n - 1");
  GerzonReport rep;
  const auto violate = [&](std::string what) {
    if (rep.pass) rep.violated = std::move(what);
    rep.pass = false;
  };
  if (field == Field::complex) {
    const std::int64_t upper = d * d - d + 1;
    if (n > upper) violate("n <= d^2 - d + 1");
    rep.upper_equality = n == upper;
    if (kind == EtfKind::hadamard) {
      const std::int64_t gap = n - d - 1;
      if (gap < 0 || gap * gap < d) violate("n >= d + sqrt(d) + 1");
    }
  } else {
    const std::int64_t upper2 = d * d - d + 2;
    if (2 * n > upper2) violate("n <= d^2/2 - d/2 + 1");
    rep.upper_equality = 2 * n == upper2;
    if (kind == EtfKind::hadamard) {
      const std::int64_t gap = 2 * n - 2 * d - 3;
      if (gap < 0 || gap * gap < 8 * d + 1) violate("n >= d + sqrt(2d + 1/4) + 3/2");
    }
  }
  return rep;
}

// True iff the intersection numbers satisfy the ETF relation; cross-checked
// against the block graph condition a = 2 mu.
inline bool qsd_gives_etf(const QsdCertificate& cert) {
  const bool relation = !detail::intersection_mismatch(cert).has_value();
  const auto srg = srg_params_from_qsd(cert);
  const bool graph = srg.a == 2 * srg.mu;
  if (relation != graph) {
    fail(ErrorKind::not_qsd, "intersection relation and block graph condition disagree for " +
                                 to_string(qsd_params(cert)));
  }
  return relation;
}

}  // namespace etf
