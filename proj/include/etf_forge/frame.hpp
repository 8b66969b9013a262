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

#include "etf_forge/error.hpp"
#include "etf_forge/exact_scalar.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/matrix.hpp"

namespace etf {

// Synthesis operator S (d x n). Optional positive row weights w describe the
// frame diag(sqrt w) S, which keeps irrational row scales out of the entries.
template <class T>
struct Frame {
  Matrix<T> synthesis;
  std::optional<std::vector<Rational>> row_weights;

  std::size_t d() const noexcept { return synthesis.rows(); }
  std::size_t n() const noexcept { return synthesis.cols(); }
  Rational weight(std::size_t i) const { return row_weights ? (*row_weights)[i] : Rational(1); }
  bool weighted() const noexcept { return row_weights.has_value(); }
};

template <class T>
Frame<T> make_frame(Matrix<T> synthesis, std::optional<std::vector<Rational>> weights = std::nullopt) {
  if (synthesis.rows() == 0) fail(ErrorKind::invalid_argument, "frame needs at least one row");
  if (synthesis.cols() < synthesis.rows()) {
    fail(ErrorKind::invalid_argument, "frame has more rows (" + std::to_string(synthesis.rows()) + ") than vectors (" +
                                          std::to_string(synthesis.cols()) + ")");
  }
  if (weights) {
    if (weights->size() != synthesis.rows()) fail(ErrorKind::dimension_mismatch, "one weight per row required");
    for (const auto& w : *weights) {
      if (w <= 0) fail(ErrorKind::invalid_argument, "row weights must be positive");
    }
    bool all_one = true;
    for (const auto& w : *weights) all_one = all_one && w == 1;
    if (all_one) weights.reset();
  }
  return {std::move(synthesis), std::move(weights)};
}

struct EtfCertificate {
  std::size_t d = 0;
  std::size_t n = 0;
  Rational beta;
  Rational alpha;
  Rational gamma_sq;
  bool welch_equality = false;
  bool flat = false;
  Domain domain;
};

template <class T>
struct NaimarkPair {
  Frame<T> primary;
  Frame<T> complement;
  Rational alpha;
};

namespace detail {

inline std::optional<Rational> rational_squared_modulus(const CycloElem& z) {
  if (auto q = z.as_rational()) return *q * *q;
  return squared_modulus(z).as_rational();
}

inline std::optional<Rational> rational_squared_modulus(const QuadElem& z) {
  if (z.b() == 0) return z.a() * z.a();
  return squared_modulus(z).as_rational();
}

template <class T>
Matrix<T> weighted_rows(const Frame<T>& f) {
  if (!f.row_weights) return f.synthesis;
  Matrix<T> out(f.synthesis);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    const Rational& w = (*f.row_weights)[i];
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = w * out(i, j);
  }
  return out;
}

inline std::string pos(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

// Checks diag(sqrt w) S S^* diag(sqrt w) = alpha I and returns alpha.
template <class T>
Rational tightness_constant(const Frame<T>& f, const char* which) {
  const auto s = mat_mul_adjoint(f.synthesis, f.synthesis);
  std::optional<Rational> alpha;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (i != j) {
        if (!s(i, j).is_zero()) {
          fail(ErrorKind::not_tight, std::string(which) + " rows " + std::to_string(i) + " and " + std::to_string(j) +
                                         " are not orthogonal");
        }
        continue;
      }
      auto q = s(i, i).as_rational();
      if (!q) fail(ErrorKind::not_tight, std::string(which) + " row " + std::to_string(i) + " has irrational norm");
      const Rational value = f.weight(i) * *q;
      if (!alpha) alpha = value;
      if (value != *alpha) {
        fail(ErrorKind::not_tight, std::string(which) + " row " + std::to_string(i) + " has squared norm " +
                                       value.str() + ", row 0 has " + alpha->str());
      }
    }
  }
  return *alpha;
}

}  // namespace detail

// Gram matrix S^* W S.
template <class T>
Matrix<T> gram(const Frame<T>& f) {
  return adjoint_mat_mul(f.synthesis, detail::weighted_rows(f));
}

inline Rational welch_bound_sq(std::int64_t d, std::int64_t n) {
  if (!(n >= d && d >= 1 && n > 1)) fail(ErrorKind::invalid_argument, "Welch bound needs n >= d >= 1 and n > 1");
  return Rational(n - d, d * (n - 1));
}

template <class T>
bool is_flat(const Frame<T>& f) {
  for (std::size_t i = 0; i < f.d(); ++i) {
    for (std::size_t j = 0; j < f.n(); ++j) {
      auto m = detail::rational_squared_modulus(f.synthesis(i, j));
      if (!m || f.weight(i) * *m != 1) return false;
    }
  }
  return true;
}

namespace detail {

// Certification given the frame's Gram matrix; stores the verified
// tightness constant in alpha_out.
template <class T>
EtfCertificate certify_with_gram(const Frame<T>& f, const Matrix<T>& g, Rational& alpha_out) {
  const std::size_t d = f.d();
  const std::size_t n = f.n();

  auto beta = g(0, 0).as_rational();
  if (!beta) fail(ErrorKind::unequal_norms, "column 0 has an irrational squared norm");
  if (*beta <= 0) fail(ErrorKind::unequal_norms, "column 0 is zero");
  for (std::size_t j = 1; j < n; ++j) {
    auto b = g(j, j).as_rational();
    if (!b || *b != *beta) {
      fail(ErrorKind::unequal_norms, "column " + std::to_string(j) + " has squared norm " + to_string(g(j, j)) +
                                         ", column 0 has " + beta->str());
    }
  }

  Rational gamma_sq = 0;
  if (n > 1) {
    auto first = rational_squared_modulus(g(0, 1));
    if (!first) fail(ErrorKind::not_equiangular, "squared inner product at (0, 1) is irrational");
    gamma_sq = *first;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto m = rational_squared_modulus(g(j, k));
        if (!m || *m != gamma_sq) {
          fail(ErrorKind::not_equiangular, "equiangularity violated at " + pos(j, k) + ": |<phi_j, phi_j'>|^2 = " +
                                               (m ? m->str() : "irrational") + ", expected " + gamma_sq.str());
        }
      }
    }
  }

  const Rational alpha = Rational(static_cast<std::int64_t>(n)) * *beta / static_cast<std::int64_t>(d);
  const Rational found = tightness_constant(f, "frame");
  if (found != alpha) {
    fail(ErrorKind::not_tight, "frame operator is " + found.str() + " I, expected n beta / d = " + alpha.str());
  }
  alpha_out = alpha;

  const auto di = static_cast<std::int64_t>(d);
  const auto ni = static_cast<std::int64_t>(n);
  if (n > 1 && gamma_sq * di * (ni - 1) != *beta * *beta * (ni - di)) {
    fail(ErrorKind::welch_violated, "gamma^2 / beta^2 = " + Rational(gamma_sq / (*beta * *beta)).str() +
                                        " differs from the Welch bound " + welch_bound_sq(di, ni).str());
  }
  return {d, n, *beta, alpha, gamma_sq, true, is_flat(f), domain_of(f.synthesis)};
}

template <class T>
void check_naimark_gram(const Matrix<T>& gp, const Matrix<T>& gc, const Rational& alpha) {
  for (std::size_t i = 0; i < gp.rows(); ++i) {
    for (std::size_t j = 0; j < gp.cols(); ++j) {
      const auto sum = gp(i, j) + gc(i, j);
      auto q = sum.as_rational();
      if (!q || *q != (i == j ? alpha : Rational(0))) {
        fail(ErrorKind::naimark_violated, "Gram identity fails at " + pos(i, j));
      }
    }
  }
}

template <class T>
void check_pair_shape(const Frame<T>& primary, const Frame<T>& complement) {
  if (primary.n() != complement.n() || primary.d() + complement.d() != primary.n()) {
    fail(ErrorKind::dimension_mismatch, "a " + std::to_string(primary.d()) + "x" + std::to_string(primary.n()) +
                                            " frame cannot pair with a " + std::to_string(complement.d()) + "x" +
                                            std::to_string(complement.n()) + " complement");
  }
}

}  // namespace detail

template <class T>
EtfCertificate certify_etf(const Frame<T>& f) {
  Rational alpha;
  return detail::certify_with_gram(f, gram(f), alpha);
}

template <class T>
NaimarkPair<T> verify_naimark_pair(const Frame<T>& primary, const Frame<T>& complement) {
  detail::check_pair_shape(primary, complement);
  const Rational alpha = detail::tightness_constant(primary, "primary");
  const Rational alpha_c = detail::tightness_constant(complement, "complement");
  if (alpha != alpha_c) {
    fail(ErrorKind::naimark_violated, "tightness constants differ: " + alpha.str() + " vs " + alpha_c.str());
  }
  detail::check_naimark_gram(gram(primary), gram(complement), alpha);
  return {primary, complement, alpha};
}

// Both certificates plus the Naimark identities, sharing the Gram matrices.
struct PairCertificate {
  EtfCertificate primary;
  EtfCertificate complement;
  Rational alpha;
};

template <class T>
PairCertificate certify_pair(const NaimarkPair<T>& pair) {
  detail::check_pair_shape(pair.primary, pair.complement);
  const auto gp = gram(pair.primary);
  const auto gc = gram(pair.complement);
  Rational alpha;
  Rational alpha_c;
  auto p = detail::certify_with_gram(pair.primary, gp, alpha);
  auto c = detail::certify_with_gram(pair.complement, gc, alpha_c);
  if (alpha != alpha_c) {
    fail(ErrorKind::naimark_violated, "tightness constants differ: " + alpha.str() + " vs " + alpha_c.str());
  }
  detail::check_naimark_gram(gp, gc, alpha);
  return {std::move(p), std::move(c), alpha};
}

inline Matrix<CycloElem> as_cyclotomic(const Matrix<CycloElem>& m) { return m; }
inline Matrix<CycloElem> as_cyclotomic(const Matrix<QuadElem>& m) { return to_cyclotomic(m); }

template <class T>
HadamardMatrix certify_hadamard_etf(const NaimarkPair<T>& pair) {
  if (!is_flat(pair.primary)) fail(ErrorKind::not_flat, "primary frame is not flat");
  if (!is_flat(pair.complement)) fail(ErrorKind::not_flat, "complement frame is not flat");
  if (pair.primary.weighted() || pair.complement.weighted()) {
    fail(ErrorKind::not_flat, "weighted rows cannot be stacked into a Hadamard matrix");
  }
  const auto stacked = vstack(pair.primary.synthesis, pair.complement.synthesis);
  return verify_hadamard(as_cyclotomic(stacked), "stacked pair");
}

template <class T>
HadamardMatrix gram_to_hadamard(const Frame<T>& f) {
  const auto cert = certify_etf(f);
  const auto root = exact_sqrt(BigInt(static_cast<std::int64_t>(cert.n)));
  if (!root) fail(ErrorKind::parameter_gate, "n = " + std::to_string(cert.n) + " is not a perfect square");
  const std::int64_t s = root->convert_to<std::int64_t>();
  if (2 * static_cast<std::int64_t>(cert.d) != static_cast<std::int64_t>(cert.n) - s) {
    fail(ErrorKind::parameter_gate, "d = " + std::to_string(cert.d) + " differs from (n - sqrt n) / 2");
  }
  const Rational c = Rational(s - 1) / cert.beta;
  const auto g = as_cyclotomic(gram(f));
  const auto h = identity_matrix(cert.n, CycloElem(1, Rational(s))) - scaled(c, g);
  auto out = verify_hadamard(h, "Gram-derived");
  if (!same_values(out.body, adjoint(out.body))) fail(ErrorKind::not_hadamard, "result is not self-adjoint");
  for (std::size_t i = 0; i < cert.n; ++i) {
    if (!(out.body(i, i) == CycloElem(1, 1))) fail(ErrorKind::not_hadamard, "diagonal entry is not 1");
  }
  return out;
}

struct GramFromHadamard {
  Matrix<CycloElem> gram;
  std::int64_t d = 0;
};

inline GramFromHadamard hadamard_to_gram(const Matrix<CycloElem>& h) {
  if (!h.is_square()) fail(ErrorKind::not_hadamard, "matrix is not square");
  if (!same_values(h, adjoint(h))) fail(ErrorKind::not_hadamard, "matrix is not self-adjoint");
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (!(h(i, i) == CycloElem(1, 1))) fail(ErrorKind::not_hadamard, "diagonal entry " + std::to_string(i) + " is not 1");
  }
  verify_hadamard(h);
  const auto n = static_cast<std::int64_t>(h.rows());
  const auto root = exact_sqrt(BigInt(n));
  if (!root) fail(ErrorKind::parameter_gate, "n = " + std::to_string(n) + " is not a perfect square");
  const std::int64_t s = root->convert_to<std::int64_t>();
  const auto g = identity_matrix(h.rows(), CycloElem(1, Rational(s))) - h;
  if (!same_values(mat_mul(g, g), scaled(Rational(2 * s), g))) {
    fail(ErrorKind::not_hadamard, "G^2 != 2 sqrt(n) G");
  }
  auto tr = trace(g).as_rational();
  if (!tr || *tr != Rational(n * (s - 1))) fail(ErrorKind::not_hadamard, "trace of G differs from n(sqrt n - 1)");
  return {g, (n - s) / 2};
}

}  // namespace etf
