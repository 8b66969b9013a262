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

// ETF constructions. Constructors build matrices only; certification is a
// separate, explicit step (certify_etf, verify_naimark_pair, ...).

#include <algorithm>
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
#include "etf_forge/hadamard.hpp"
#include "etf_forge/matrix.hpp"

namespace etf {

namespace detail {

// Tightness constant read off row 0; full checks happen in certification.
template <class T>
Rational row_zero_constant(const Frame<T>& f) {
  T sum{};
  for (std::size_t j = 0; j < f.n(); ++j) sum += f.synthesis(0, j) * conjugate(f.synthesis(0, j));
  auto q = sum.as_rational();
  if (!q) fail(ErrorKind::not_tight, "row 0 has an irrational squared norm");
  return f.weight(0) * *q;
}

inline std::vector<std::size_t> all_rows_except(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != skip) rows.push_back(i);
  }
  return rows;
}

}  // namespace detail

template <class T>
NaimarkPair<T> make_pair_unchecked(Frame<T> primary, Frame<T> complement) {
  const Rational alpha = detail::row_zero_constant(primary);
  return {std::move(primary), std::move(complement), alpha};
}

inline Frame<CycloElem> flat_regular_simplex(const HadamardMatrix& h, std::size_t drop_row) {
  if (drop_row >= h.size()) fail(ErrorKind::invalid_argument, "drop_row out of range");
  const auto rows = detail::all_rows_except(h.size(), drop_row);
  return make_frame(select_rows(h.body, rows));
}

// Simplex together with the removed row as its one-dimensional complement.
inline NaimarkPair<CycloElem> simplex_pair(const HadamardMatrix& h, std::size_t drop_row) {
  auto primary = flat_regular_simplex(h, drop_row);
  const std::size_t dropped[] = {drop_row};
  auto complement = make_frame(select_rows(h.body, dropped));
  return make_pair_unchecked(std::move(primary), std::move(complement));
}

template <class T>
NaimarkPair<T> swapped(NaimarkPair<T> pair) {
  std::swap(pair.primary, pair.complement);
  return pair;
}

struct DifferenceSet {
  AbelianGroup group;
  std::vector<std::size_t> subset;  // ascending element indices
  std::int64_t lambda = 0;
};

inline DifferenceSet verify_difference_set(const AbelianGroup& g, std::vector<std::size_t> subset) {
  const std::size_t n = g.size();
  if (subset.empty()) fail(ErrorKind::invalid_argument, "difference set must be nonempty");
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    fail(ErrorKind::invalid_argument, "difference set lists an element twice");
  }
  if (subset.back() >= n) fail(ErrorKind::invalid_argument, "element index out of range");
  if (subset.size() == n) fail(ErrorKind::invalid_argument, "difference set must be a proper subset");
  std::vector<std::int64_t> count(n, 0);
  for (std::size_t a : subset) {
    for (std::size_t b : subset) {
      if (a != b) ++count[g.difference(a, b)];
    }
  }
  const std::int64_t lambda = n > 1 ? count[1] : 0;
  for (std::size_t x = 1; x < n; ++x) {
    if (count[x] != lambda) {
      fail(ErrorKind::invalid_argument, "element " + std::to_string(x) + " arises as a difference " +
                                            std::to_string(count[x]) + " times, element 1 arises " +
                                            std::to_string(lambda) + " times");
    }
  }
  return {g, std::move(subset), lambda};
}

// Primary rows are the characters indexed by the difference set, the
// complement is every other row; both in ascending index order.
inline NaimarkPair<CycloElem> harmonic_etf(const DifferenceSet& ds) {
  const auto table = char_table(ds.group);
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!std::binary_search(ds.subset.begin(), ds.subset.end(), i)) rest.push_back(i);
  }
  return make_pair_unchecked(make_frame(select_rows(table.body, ds.subset)),
                             make_frame(select_rows(table.body, rest)));
}

// Partition of G (size r+1): g2 is column 0, G1 the remaining r columns.
struct SteinerInputs {
  PermutationLift lift;
  HadamardMatrix f;
  HadamardMatrix g;

  static SteinerInputs make(const Design& design, HadamardMatrix f, HadamardMatrix g) {
    if (design.params.lambda != 1) {
      fail(ErrorKind::invalid_argument, "Steiner construction needs lambda = 1, got " +
                                            std::to_string(design.params.lambda));
    }
    if (f.size() != static_cast<std::size_t>(design.params.k)) {
      fail(ErrorKind::dimension_mismatch, "F must have size k = " + std::to_string(design.params.k));
    }
    if (g.size() != static_cast<std::size_t>(design.params.r + 1)) {
      fail(ErrorKind::dimension_mismatch, "G must have size r + 1 = " + std::to_string(design.params.r + 1));
    }
    return {lift_permutation(design), std::move(f), std::move(g)};
  }
};

// (I_b (x) f_l^*) Pi (I_v (x) G1^*), l 1-based.
inline Matrix<CycloElem> steiner_block(const SteinerInputs& in, std::size_t l) {
  const auto& lift = in.lift;
  if (l < 1 || l > lift.k) fail(ErrorKind::invalid_argument, "column index l must lie in 1..k");
  const int m = std::lcm(in.f.order(), in.g.order());
  const std::size_t width = lift.r + 1;
  Matrix<CycloElem> out(lift.b, lift.v * width, CycloElem(m));
  for (std::size_t i = 0; i < lift.b; ++i) {
    for (std::size_t p = 0; p < lift.k; ++p) {
      const std::size_t target = lift.sigma[i * lift.k + p];
      const std::size_t j = target / lift.r;
      const std::size_t q = target % lift.r;
      const CycloElem fpl = conjugate(in.f.body(p, l - 1)).lifted(m);
      for (std::size_t s = 0; s < width; ++s) {
        out(i, j * width + s) = fpl * conjugate(in.g.body(s, q + 1)).lifted(m);
      }
    }
  }
  return out;
}

inline Frame<CycloElem> steiner_etf(const SteinerInputs& in, std::size_t l = 1) {
  return make_frame(steiner_block(in, l));
}

// I_v (x) g2^*, v x v(r+1).
inline Matrix<CycloElem> steiner_tail(const SteinerInputs& in, int order) {
  const std::size_t v = in.lift.v;
  const std::size_t width = in.lift.r + 1;
  Matrix<CycloElem> out(v, v * width, CycloElem(order));
  for (std::size_t j = 0; j < v; ++j) {
    for (std::size_t s = 0; s < width; ++s) out(j, j * width + s) = conjugate(in.g.body(s, 0)).lifted(order);
  }
  return out;
}

// Complement rows Phi_2..Phi_k over sqrt(k) (I_v (x) g2^*). When k is not a
// perfect square the last v rows carry weight k instead.
inline NaimarkPair<CycloElem> steiner_naimark(const SteinerInputs& in) {
  std::vector<Matrix<CycloElem>> parts;
  for (std::size_t l = 2; l <= in.lift.k; ++l) parts.push_back(steiner_block(in, l));
  const int m = std::lcm(in.f.order(), in.g.order());
  auto tail = steiner_tail(in, m);
  const auto k = static_cast<std::int64_t>(in.lift.k);
  std::optional<std::vector<Rational>> weights;
  if (auto root = exact_sqrt(BigInt(k))) {
    tail = scaled(Rational(*root), std::move(tail));
  } else {
    weights = std::vector<Rational>((in.lift.k - 1) * in.lift.b, Rational(1));
    weights->insert(weights->end(), in.lift.v, Rational(k));
  }
  parts.push_back(std::move(tail));
  return make_pair_unchecked(steiner_etf(in, 1), make_frame(vstack<CycloElem>(parts), std::move(weights)));
}

struct KirkmanInputs {
  SteinerInputs steiner;
  HadamardMatrix e;
  std::size_t class_size = 0;  // v / k
  std::size_t classes = 0;     // r

  static KirkmanInputs make(const Design& design, HadamardMatrix e, HadamardMatrix f, HadamardMatrix g) {
    if (!design.parallel_classes) fail(ErrorKind::invalid_argument, "Kirkman construction needs a resolvable design");
    const auto& p = design.params;
    const auto size = static_cast<std::size_t>(p.v / p.k);
    if (e.size() != size) fail(ErrorKind::dimension_mismatch, "E must have size v / k = " + std::to_string(size));
    const auto& cls = *design.parallel_classes;
    if (cls.size() != static_cast<std::size_t>(p.r)) fail(ErrorKind::invalid_argument, "expected r parallel classes");
    for (std::size_t c = 0; c < cls.size(); ++c) {
      for (std::size_t t = 0; t < cls[c].size(); ++t) {
        if (cls[c].size() != size || cls[c][t] != c * size + t) {
          fail(ErrorKind::invalid_argument, "blocks must be ordered class by class");
        }
      }
    }
    return {SteinerInputs::make(design, std::move(f), std::move(g)), std::move(e), size, cls.size()};
  }
};

// (I_r (x) E) applied to a b-row matrix, one parallel class at a time.
inline Matrix<CycloElem> rotate_classes(const KirkmanInputs& in, const Matrix<CycloElem>& phi) {
  std::vector<Matrix<CycloElem>> parts;
  parts.reserve(in.classes);
  const int m = std::lcm(in.e.order(), domain_of(phi).parameter);
  const auto e = lift_matrix(in.e.body, m);
  for (std::size_t c = 0; c < in.classes; ++c) {
    std::vector<std::size_t> rows(in.class_size);
    for (std::size_t t = 0; t < in.class_size; ++t) rows[t] = c * in.class_size + t;
    parts.push_back(mat_mul(e, select_rows(phi, rows)));
  }
  return vstack<CycloElem>(parts);
}

inline NaimarkPair<CycloElem> kirkman_etf(const KirkmanInputs& in) {
  const auto& s = in.steiner;
  auto primary = rotate_classes(in, steiner_block(s, 1));
  std::vector<Matrix<CycloElem>> parts;
  for (std::size_t l = 2; l <= s.lift.k; ++l) parts.push_back(rotate_classes(in, steiner_block(s, l)));

  // (E (x) F)(I_v (x) g2^*).
  const auto ef = kron(in.e, s.f);
  const int m = std::lcm(ef.order(), s.g.order());
  const std::size_t v = s.lift.v;
  const std::size_t width = s.lift.r + 1;
  Matrix<CycloElem> tail(v, v * width, CycloElem(m));
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t j = 0; j < v; ++j) {
      const CycloElem x = ef.body(a, j).lifted(m);
      for (std::size_t t = 0; t < width; ++t) tail(a, j * width + t) = x * conjugate(s.g.body(t, 0)).lifted(m);
    }
  }
  parts.push_back(std::move(tail));
  return make_pair_unchecked(make_frame(std::move(primary)), make_frame(vstack<CycloElem>(parts)));
}

// The u(2u-1) / 4u^2 family: round robin on 2u players, E of size u,
// F = sylvester(1), G = E (x) F.
inline KirkmanInputs kirkman_family_inputs(std::int64_t u) {
  if (u < 2) fail(ErrorKind::invalid_argument, "Kirkman family needs u >= 2");
  auto e = hadamard_of_size(u);
  auto f = sylvester(1);
  auto g = kron(e, f);
  return KirkmanInputs::make(round_robin_resolution(2 * u), std::move(e), std::move(f), std::move(g));
}

inline NaimarkPair<CycloElem> kirkman_family(std::int64_t u) { return kirkman_etf(kirkman_family_inputs(u)); }

namespace detail {

inline std::int64_t hadamard_etf_dimension_gate(const Frame<CycloElem>& f, const char* which) {
  const auto n = static_cast<std::int64_t>(f.n());
  const auto root = exact_sqrt(BigInt(n));
  if (!root || 2 * static_cast<std::int64_t>(f.d()) != n - root->convert_to<std::int64_t>()) {
    fail(ErrorKind::parameter_gate, std::string(which) + ": d = " + std::to_string(f.d()) +
                                        " differs from (n - sqrt n) / 2 for n = " + std::to_string(n));
  }
  return n;
}

inline void column_norm_gate(const Frame<CycloElem>& f, std::int64_t expected, const char* which) {
  if (f.weighted()) fail(ErrorKind::parameter_gate, std::string(which) + " must not carry row weights");
  for (std::size_t j = 0; j < f.n(); ++j) {
    CycloElem sum(1);
    for (std::size_t i = 0; i < f.d(); ++i) sum += squared_modulus(f.synthesis(i, j));
    auto q = sum.as_rational();
    if (!q || *q != expected) {
      fail(ErrorKind::parameter_gate, std::string(which) + " column " + std::to_string(j) + " has squared norm " +
                                          to_string(sum) + ", expected " + std::to_string(expected));
    }
  }
}

}  // namespace detail

inline NaimarkPair<CycloElem> tensor_etf(const NaimarkPair<CycloElem>& p1, const NaimarkPair<CycloElem>& p2) {
  const auto n1 = detail::hadamard_etf_dimension_gate(p1.primary, "left");
  const auto n2 = detail::hadamard_etf_dimension_gate(p2.primary, "right");
  const auto d1 = static_cast<std::int64_t>(p1.primary.d());
  const auto d2 = static_cast<std::int64_t>(p2.primary.d());
  if (p1.complement.n() != p1.primary.n() || p2.complement.n() != p2.primary.n()) {
    fail(ErrorKind::dimension_mismatch, "pair halves have different vector counts");
  }
  detail::column_norm_gate(p1.primary, d1, "left primary");
  detail::column_norm_gate(p1.complement, n1 - d1, "left complement");
  detail::column_norm_gate(p2.primary, d2, "right primary");
  detail::column_norm_gate(p2.complement, n2 - d2, "right complement");

  const auto& phi = p1.primary.synthesis;
  const auto& phi_c = p1.complement.synthesis;
  const auto& psi = p2.primary.synthesis;
  const auto& psi_c = p2.complement.synthesis;
  auto primary = vstack(kron(phi, psi_c), kron(phi_c, psi));
  auto complement = vstack(kron(phi, psi), kron(phi_c, psi_c));
  return make_pair_unchecked(make_frame(std::move(primary)), make_frame(std::move(complement)));
}

}  // namespace etf
