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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etf_forge/error.hpp"
#include "etf_forge/exact_scalar.hpp"

namespace etf {

enum class DomainKind { cyclotomic, quadratic };

// Scalar domain of a matrix: Q(zeta_order) or Q(sqrt radicand).
struct Domain {
  DomainKind kind = DomainKind::cyclotomic;
  std::int64_t parameter = 1;

  friend bool operator==(const Domain&, const Domain&) = default;
};

inline std::string to_string(const Domain& d) {
  return d.kind == DomainKind::cyclotomic ? "Q(zeta_" + std::to_string(d.parameter) + ")"
                                          : "Q(sqrt " + std::to_string(d.parameter) + ")";
}

// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      fail(ErrorKind::dimension_mismatch, "entry count does not match " + std::to_string(rows_) + "x" +
                                              std::to_string(cols_));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const T> entries() const noexcept { return entries_; }
  std::span<T> entries() noexcept { return entries_; }
  std::span<const T> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

namespace detail {

// Both scalar types are Q[x]/(p) for a monic integer p; this trait exposes
// that view to the product kernel.
template <class T>
struct ScalarAlgebra;

template <>
struct ScalarAlgebra<CycloElem> {
  using Param = int;
  static Param param_of(const CycloElem& z) { return z.order(); }
  static Param identity_param() { return 1; }
  static Param unify(Param a, Param b) { return std::lcm(a, b); }
  static const IntPoly& modulus(Param m) { return cyclotomic_polynomial(m); }
  static std::vector<Rational> coeffs_at(const CycloElem& z, Param m) {
    if (z.order() == m) return {z.coeffs().begin(), z.coeffs().end()};
    auto lifted = z.lifted(m);
    return {lifted.coeffs().begin(), lifted.coeffs().end()};
  }
  static CycloElem from_reduced(Param m, std::vector<Rational> c) {
    return CycloElem::from_coeffs(m, std::move(c));
  }
  static Domain domain(Param m) { return {DomainKind::cyclotomic, m}; }
};

template <>
struct ScalarAlgebra<QuadElem> {
  using Param = std::int64_t;
  static Param param_of(const QuadElem& z) { return z.b() == 0 ? 1 : z.radicand(); }
  static Param identity_param() { return 1; }
  static Param unify(Param a, Param b) {
    if (a == b || b == 1) return a;
    if (a == 1) return b;
    fail(ErrorKind::incompatible_domain,
         "incompatible quadratic radicands " + std::to_string(a) + " and " + std::to_string(b));
  }
  static IntPoly modulus(Param t) {
    if (t == 1) return {-1, 1};
    return {-BigInt(t), 0, 1};
  }
  static std::vector<Rational> coeffs_at(const QuadElem& z, Param t) {
    if (t == 1) {
      if (z.b() != 0) fail(ErrorKind::incompatible_domain, "irrational entry in a rational context");
      return {z.a()};
    }
    if (z.b() != 0 && z.radicand() != t) {
      fail(ErrorKind::incompatible_domain, "incompatible quadratic radicands");
    }
    return {z.a(), z.b()};
  }
  static QuadElem from_reduced(Param t, std::vector<Rational> c) {
    if (t == 1) return QuadElem(c[0]);
    return QuadElem::from_reduced(t, c[0], c[1]);
  }
  static Domain domain(Param t) { return {DomainKind::quadratic, t}; }
};

template <class T>
typename ScalarAlgebra<T>::Param common_param(const Matrix<T>& m) {
  using Alg = ScalarAlgebra<T>;
  auto p = Alg::identity_param();
  for (const auto& z : m.entries()) p = Alg::unify(p, Alg::param_of(z));
  return p;
}

// Matrix entries as integer coefficient vectors over a shared denominator.
struct IntegerForm {
  BigInt denominator = 1;
  std::vector<BigInt> coeffs;     // row-major, deg coefficients per entry
  std::vector<std::uint8_t> zero;  // per entry
};

template <class T>
IntegerForm integer_form(const Matrix<T>& m, typename ScalarAlgebra<T>::Param param, std::size_t deg,
                         bool transposed) {
  using Alg = ScalarAlgebra<T>;
  const std::size_t outer = transposed ? m.cols() : m.rows();
  const std::size_t inner = transposed ? m.rows() : m.cols();
  std::vector<Rational> flat(outer * inner * deg);
  IntegerForm out;
  out.zero.assign(outer * inner, 1);
  for (std::size_t a = 0; a < outer; ++a) {
    for (std::size_t b = 0; b < inner; ++b) {
      const T& z = transposed ? m(b, a) : m(a, b);
      if (z.is_zero()) continue;
      out.zero[a * inner + b] = 0;
      auto c = Alg::coeffs_at(z, param);
      for (std::size_t p = 0; p < deg; ++p) {
        if (c[p] != 0) out.denominator = boost::multiprecision::lcm(out.denominator, denominator_of(c[p]));
        flat[(a * inner + b) * deg + p] = std::move(c[p]);
      }
    }
  }
  out.coeffs.resize(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] != 0) out.coeffs[i] = numerator_of(flat[i]) * (out.denominator / denominator_of(flat[i]));
  }
  return out;
}

// lhs (rows x inner) times rhs where rhs is given column-major
// (cols x inner). Accumulates unreduced integer polynomials and reduces once
// per output entry.
template <class T>
Matrix<T> multiply_kernel(const Matrix<T>& lhs, const Matrix<T>& rhs_t_source, bool rhs_is_transposed_view,
                          std::size_t rows, std::size_t inner, std::size_t cols) {
  using Alg = ScalarAlgebra<T>;
  const auto param = Alg::unify(common_param(lhs), common_param(rhs_t_source));
  const IntPoly mod = Alg::modulus(param);
  const std::size_t deg = mod.size() - 1;
  const IntegerForm a = integer_form(lhs, param, deg, false);
  const IntegerForm b = integer_form(rhs_t_source, param, deg, !rhs_is_transposed_view);
  const BigInt scale = a.denominator * b.denominator;

  std::vector<std::vector<std::size_t>> row_support(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t t = 0; t < inner; ++t) {
      if (!a.zero[i * inner + t]) row_support[i].push_back(t);
    }
  }

  std::vector<T> out;
  out.reserve(rows * cols);
  std::vector<BigInt> acc(2 * deg - 1);
  BigInt product;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (auto& x : acc) x = 0;
      for (std::size_t t : row_support[i]) {
        if (b.zero[j * inner + t]) continue;
        const BigInt* x = &a.coeffs[(i * inner + t) * deg];
        const BigInt* y = &b.coeffs[(j * inner + t) * deg];
        if (deg == 1) {
          acc[0] += x[0] * y[0];
          continue;
        }
        for (std::size_t p = 0; p < deg; ++p) {
          if (x[p].is_zero()) continue;
          for (std::size_t q = 0; q < deg; ++q) {
            if (y[q].is_zero()) continue;
            boost::multiprecision::multiply(product, x[p], y[q]);
            acc[p + q] += product;
          }
        }
      }
      std::vector<BigInt> reduced(acc);
      reduce_monic(reduced, mod);
      std::vector<Rational> coeffs(deg);
      for (std::size_t p = 0; p < deg; ++p) {
        if (!reduced[p].is_zero()) coeffs[p] = Rational(reduced[p], scale);
      }
      out.push_back(Alg::from_reduced(param, std::move(coeffs)));
    }
  }
  return Matrix<T>(rows, cols, std::move(out));
}

}  // namespace detail

template <class T>
Domain domain_of(const Matrix<T>& m) {
  using Alg = detail::ScalarAlgebra<T>;
  return Alg::domain(detail::common_param(m));
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

// Conjugate transpose.
template <class T>
Matrix<T> adjoint(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = conjugate(m(i, j));
  }
  return out;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorKind::dimension_mismatch, "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                            " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return detail::multiply_kernel(a, b, false, a.rows(), a.cols(), b.cols());
}

// A * B^*.
template <class T>
Matrix<T> mat_mul_adjoint(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) {
    fail(ErrorKind::dimension_mismatch, "A*B^* needs equal column counts");
  }
  Matrix<T> conj_b(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) conj_b(i, j) = conjugate(b(i, j));
  }
  // conj_b is already "column-major" for the product: row j of conj_b is
  // column j of B^*.
  return detail::multiply_kernel(a, conj_b, true, a.rows(), a.cols(), b.rows());
}

// A^* * B.
template <class T>
Matrix<T> adjoint_mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) {
    fail(ErrorKind::dimension_mismatch, "A^*B needs equal row counts");
  }
  return mat_mul(adjoint(a), b);
}

template <class T>
Matrix<T> identity_matrix(std::size_t n, const T& one) {
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = one;
  return out;
}

template <class T>
Matrix<T> ones_matrix(std::size_t rows, std::size_t cols, const T& one) {
  return Matrix<T>(rows, cols, one);
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q = 0; q < b.cols(); ++q) {
          out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
      }
    }
  }
  return out;
}

template <class T>
Matrix<T> vstack(std::span<const Matrix<T>> parts) {
  if (parts.empty()) return {};
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) fail(ErrorKind::dimension_mismatch, "vstack: column counts differ");
    rows += p.rows();
  }
  std::vector<T> entries;
  entries.reserve(rows * cols);
  for (const auto& p : parts) entries.insert(entries.end(), p.entries().begin(), p.entries().end());
  return Matrix<T>(rows, cols, std::move(entries));
}

template <class T>
Matrix<T> vstack(const Matrix<T>& top, const Matrix<T>& bottom) {
  const Matrix<T> parts[] = {top, bottom};
  return vstack<T>(parts);
}

template <class T>
Matrix<T> hstack(const Matrix<T>& left, const Matrix<T>& right) {
  if (left.rows() != right.rows()) fail(ErrorKind::dimension_mismatch, "hstack: row counts differ");
  Matrix<T> out(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
  }
  return out;
}

template <class T>
Matrix<T> select_rows(const Matrix<T>& m, std::span<const std::size_t> rows) {
  Matrix<T> out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= m.rows()) fail(ErrorKind::invalid_argument, "row index out of range");
    for (std::size_t j = 0; j < m.cols(); ++j) out(r, j) = m(rows[r], j);
  }
  return out;
}

template <class T>
Matrix<T> scaled(const Rational& s, Matrix<T> m) {
  for (auto& z : m.entries()) z = s * z;
  return m;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::dimension_mismatch, "sum of unequal shapes");
  Matrix<T> out(a);
  for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] += b.entries()[i];
  return out;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::dimension_mismatch, "difference of unequal shapes");
  }
  Matrix<T> out(a);
  for (std::size_t i = 0; i < out.entries().size(); ++i) out.entries()[i] -= b.entries()[i];
  return out;
}

// Value equality independent of how each entry's domain is tagged.
template <class T>
bool same_values(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    if (!(a.entries()[i] == b.entries()[i])) return false;
  }
  return true;
}

// True when m == s * I for the given rational s.
template <class T>
bool is_scalar_identity(const Matrix<T>& m, const Rational& s) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto q = m(i, j).as_rational();
      if (!q || *q != (i == j ? s : Rational(0))) return false;
    }
  }
  return true;
}

template <class T>
T trace(const Matrix<T>& m) {
  T sum{};
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) sum += m(i, i);
  return sum;
}

inline Matrix<CycloElem> lift_matrix(const Matrix<CycloElem>& m, int order) {
  Matrix<CycloElem> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.entries().size(); ++i) out.entries()[i] = m.entries()[i].lifted(order);
  return out;
}

// Re-tags every entry at the matrix's common order.
inline Matrix<CycloElem> unify_domain(const Matrix<CycloElem>& m) {
  return lift_matrix(m, detail::common_param(m));
}

// All entries rational? Returns them row-major.
template <class T>
std::optional<std::vector<Rational>> rational_entries(const Matrix<T>& m) {
  std::vector<Rational> out;
  out.reserve(m.entries().size());
  for (const auto& z : m.entries()) {
    auto q = z.as_rational();
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

template <class T>
bool is_integral(const Matrix<T>& m) {
  auto q = rational_entries(m);
  if (!q) return false;
  return std::all_of(q->begin(), q->end(), [](const Rational& x) { return is_integer(x); });
}

// Rational matrix viewed in Q(zeta_order).
inline Matrix<CycloElem> cyclotomic_from_rationals(std::size_t rows, std::size_t cols,
                                                   std::span<const Rational> values, int order) {
  std::vector<CycloElem> entries;
  entries.reserve(values.size());
  for (const auto& v : values) entries.emplace_back(order, v);
  return Matrix<CycloElem>(rows, cols, std::move(entries));
}

inline Matrix<CycloElem> integer_matrix(std::size_t rows, std::size_t cols, std::span<const int> values,
                                        int order = 2) {
  std::vector<Rational> q(values.begin(), values.end());
  return cyclotomic_from_rationals(rows, cols, q, order);
}

// Rational-valued quadratic matrix converted to the cyclotomic domain.
inline Matrix<CycloElem> to_cyclotomic(const Matrix<QuadElem>& m, int order = 2) {
  auto q = rational_entries(m);
  if (!q) fail(ErrorKind::incompatible_domain, "matrix has irrational quadratic entries");
  return cyclotomic_from_rationals(m.rows(), m.cols(), *q, order);
}

inline Matrix<QuadElem> to_quadratic(const Matrix<CycloElem>& m) {
  auto q = rational_entries(m);
  if (!q) fail(ErrorKind::incompatible_domain, "matrix has non-rational cyclotomic entries");
  std::vector<QuadElem> entries(q->begin(), q->end());
  return Matrix<QuadElem>(m.rows(), m.cols(), std::move(entries));
}

}  // namespace etf
