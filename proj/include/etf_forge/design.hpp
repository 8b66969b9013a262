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
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "etf_forge/error.hpp"
#include "etf_forge/exact_scalar.hpp"
#include "etf_forge/matrix.hpp"

namespace etf {

// Dense 0/1 matrix used for incidence and adjacency data.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}
  BinaryMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits)
      : rows_(rows), cols_(cols), bits_(std::move(bits)) {
    if (bits_.size() != rows_ * cols_) fail(ErrorKind::dimension_mismatch, "0/1 entry count does not match shape");
    for (auto b : bits_) {
      if (b > 1) fail(ErrorKind::invalid_argument, "entries must be 0 or 1");
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, bool value) { bits_[i * cols_ + j] = value ? 1 : 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline BinaryMatrix transpose(const BinaryMatrix& m) {
  BinaryMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(j, i, m(i, j));
  }
  return out;
}

// Integer product A^T B of two 0/1 matrices with the same row count.
inline std::vector<std::int64_t> gram_counts(const BinaryMatrix& a, const BinaryMatrix& b) {
  std::vector<std::int64_t> out(a.cols() * b.cols(), 0);
  for (std::size_t t = 0; t < a.rows(); ++t) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      if (!a(t, i)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out[i * b.cols() + j] += b(t, j);
    }
  }
  return out;
}

inline Matrix<CycloElem> to_exact(const BinaryMatrix& m, int order = 1) {
  std::vector<Rational> q(m.bits().begin(), m.bits().end());
  return cyclotomic_from_rationals(m.rows(), m.cols(), q, order);
}

struct DesignParams {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t lambda = 0;
  std::int64_t r = 0;
  std::int64_t b = 0;

  bool fisher() const noexcept { return b >= v; }
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

inline std::string to_string(const DesignParams& p) {
  return "(" + std::to_string(p.v) + "," + std::to_string(p.k) + "," + std::to_string(p.lambda) + "," +
         std::to_string(p.r) + "," + std::to_string(p.b) + ")";
}

inline void check_param_relations(const DesignParams& p) {
  const auto bad = [&](const std::string& what) {
    fail(ErrorKind::not_bibd, "parameters " + to_string(p) + " violate " + what);
  };
  if (!(p.v > p.k && p.k > 0)) bad("v > k > 0");
  if (p.b <= 0) bad("b > 0");
  if (p.b * p.k != p.v * p.r) bad("bk = vr");
  if ((p.v - 1) * p.lambda != p.r * (p.k - 1)) bad("(v-1)lambda = r(k-1)");
  if (!(0 <= p.lambda && p.lambda < p.r && p.r < p.b)) bad("0 <= lambda < r < b");
}

// Rows of the incidence matrix are blocks, columns are vertices.
struct Design {
  BinaryMatrix incidence;
  DesignParams params;
  std::optional<std::vector<std::vector<std::size_t>>> parallel_classes;

  std::vector<std::size_t> block(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < incidence.cols(); ++j) {
      if (incidence(i, j)) out.push_back(j);
    }
    return out;
  }
};

inline DesignParams verify_bibd(const BinaryMatrix& x) {
  const std::size_t b = x.rows();
  const std::size_t v = x.cols();
  if (b == 0) fail(ErrorKind::not_bibd, "design has no blocks");
  if (v < 2) fail(ErrorKind::not_bibd, "design needs at least two vertices");

  std::vector<std::int64_t> row_sum(b, 0);
  std::vector<std::int64_t> col_sum(v, 0);
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      row_sum[i] += x(i, j);
      col_sum[j] += x(i, j);
    }
  }
  for (std::size_t i = 1; i < b; ++i) {
    if (row_sum[i] != row_sum[0]) {
      fail(ErrorKind::not_bibd, "block " + std::to_string(i) + " has size " + std::to_string(row_sum[i]) +
                                    ", block 0 has size " + std::to_string(row_sum[0]));
    }
  }
  for (std::size_t j = 1; j < v; ++j) {
    if (col_sum[j] != col_sum[0]) {
      fail(ErrorKind::not_bibd, "vertex " + std::to_string(j) + " lies in " + std::to_string(col_sum[j]) +
                                    " blocks, vertex 0 in " + std::to_string(col_sum[0]));
    }
  }
  const auto xtx = gram_counts(x, x);
  const std::int64_t lambda = xtx[1];
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      if (i != j && xtx[i * v + j] != lambda) {
        fail(ErrorKind::not_bibd, "vertices " + std::to_string(i) + " and " + std::to_string(j) + " share " +
                                      std::to_string(xtx[i * v + j]) + " blocks, expected " +
                                      std::to_string(lambda));
      }
    }
  }
  DesignParams p{static_cast<std::int64_t>(v), row_sum[0], lambda, col_sum[0], static_cast<std::int64_t>(b)};
  check_param_relations(p);
  return p;
}

inline void check_parallel_classes(const Design& d) {
  if (!d.parallel_classes) return;
  const auto& classes = *d.parallel_classes;
  const std::size_t v = d.incidence.cols();
  std::vector<std::uint8_t> block_seen(d.incidence.rows(), 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<std::uint8_t> covered(v, 0);
    for (std::size_t blk : classes[c]) {
      if (blk >= d.incidence.rows()) fail(ErrorKind::invalid_argument, "parallel class names a missing block");
      if (block_seen[blk]++) fail(ErrorKind::not_bibd, "block " + std::to_string(blk) + " is in two classes");
      for (std::size_t j = 0; j < v; ++j) {
        if (!d.incidence(blk, j)) continue;
        if (covered[j]++) {
          fail(ErrorKind::not_bibd,
               "parallel class " + std::to_string(c) + " covers vertex " + std::to_string(j) + " twice");
        }
      }
    }
    for (std::size_t j = 0; j < v; ++j) {
      if (!covered[j]) {
        fail(ErrorKind::not_bibd, "parallel class " + std::to_string(c) + " misses vertex " + std::to_string(j));
      }
    }
  }
  if (std::find(block_seen.begin(), block_seen.end(), 0) != block_seen.end()) {
    fail(ErrorKind::not_bibd, "parallel classes do not cover every block");
  }
}

// Verifies the incidence matrix (and classes, if any) and packages a Design.
inline Design make_design(BinaryMatrix x,
                          std::optional<std::vector<std::vector<std::size_t>>> classes = std::nullopt) {
  Design d{std::move(x), {}, std::move(classes)};
  d.params = verify_bibd(d.incidence);
  check_parallel_classes(d);
  return d;
}

// Blocks are lists of 0-based vertices.
inline BinaryMatrix incidence_from_blocks(std::size_t v, const std::vector<std::vector<std::size_t>>& blocks) {
  BinaryMatrix x(blocks.size(), v);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j : blocks[i]) {
      if (j >= v) fail(ErrorKind::invalid_argument, "block vertex out of range");
      if (x(i, j)) fail(ErrorKind::invalid_argument, "block repeats a vertex");
      x.set(i, j, true);
    }
  }
  return x;
}

inline Design all_pairs_design(std::int64_t v) {
  if (v < 3) fail(ErrorKind::invalid_argument, "all-pairs design needs v >= 3");
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t a = 0; a < static_cast<std::size_t>(v); ++a) {
    for (std::size_t b = a + 1; b < static_cast<std::size_t>(v); ++b) blocks.push_back({a, b});
  }
  return make_design(incidence_from_blocks(static_cast<std::size_t>(v), blocks));
}

// Circle method: vertex v is fixed, the rest rotate. Vertex labels in the
// comments are 1-based; storage is 0-based.
inline Design round_robin_resolution(std::int64_t v) {
  if (v < 4 || v % 2 != 0) fail(ErrorKind::invalid_argument, "round robin needs an even v >= 4");
  const std::int64_t m = v - 1;
  const auto residue = [m](std::int64_t x) {
    std::int64_t r = ((x % m) + m) % m;
    return r == 0 ? m : r;
  };
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::vector<std::size_t>> classes;
  for (std::int64_t p = 1; p <= m; ++p) {
    std::vector<std::size_t> cls;
    cls.push_back(blocks.size());
    blocks.push_back({static_cast<std::size_t>(v - 1), static_cast<std::size_t>(p - 1)});
    for (std::int64_t i = 1; i <= v / 2 - 1; ++i) {
      cls.push_back(blocks.size());
      blocks.push_back({static_cast<std::size_t>(residue(p + i) - 1), static_cast<std::size_t>(residue(p - i) - 1)});
    }
    classes.push_back(std::move(cls));
  }
  return make_design(incidence_from_blocks(static_cast<std::size_t>(v), blocks), std::move(classes));
}

inline Design fano_plane() {
  const std::vector<std::vector<std::size_t>> blocks{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                                     {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  return make_design(incidence_from_blocks(7, blocks));
}

// Bijection [b]x[k] -> [v]x[r]: sigma[i*k + p] = j*r + q.
struct PermutationLift {
  std::size_t b = 0;
  std::size_t k = 0;
  std::size_t v = 0;
  std::size_t r = 0;
  std::vector<std::size_t> sigma;

  BinaryMatrix to_matrix() const {
    BinaryMatrix out(b * k, v * r);
    for (std::size_t a = 0; a < sigma.size(); ++a) out.set(a, sigma[a], true);
    return out;
  }

  // X = (I_b (x) 1_k^T) Pi (I_v (x) 1_r).
  BinaryMatrix recompose() const {
    BinaryMatrix out(b, v);
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      const std::size_t i = a / k;
      const std::size_t j = sigma[a] / r;
      if (out(i, j)) fail(ErrorKind::invalid_argument, "lift maps two slots into one incidence");
      out.set(i, j, true);
    }
    return out;
  }
};

inline PermutationLift lift_permutation(const Design& d) {
  const auto& x = d.incidence;
  PermutationLift lift{x.rows(), static_cast<std::size_t>(d.params.k), x.cols(),
                       static_cast<std::size_t>(d.params.r), {}};
  lift.sigma.assign(lift.b * lift.k, 0);
  std::vector<std::size_t> col_rank(lift.v, 0);
  for (std::size_t i = 0; i < lift.b; ++i) {
    std::size_t p = 0;
    for (std::size_t j = 0; j < lift.v; ++j) {
      if (!x(i, j)) continue;
      lift.sigma[i * lift.k + p] = j * lift.r + col_rank[j];
      ++p;
      ++col_rank[j];
    }
  }
  return lift;
}

inline Design complement_design(const Design& d) {
  BinaryMatrix c(d.incidence.rows(), d.incidence.cols());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) c.set(i, j, !d.incidence(i, j));
  }
  const auto& p = d.params;
  const DesignParams expected{p.v, p.v - p.k, p.b - 2 * p.r + p.lambda, p.b - p.r, p.b};
  if (!(expected.v > expected.k && expected.k > 0)) {
    fail(ErrorKind::not_bibd, "complement block size " + std::to_string(expected.k) + " is degenerate");
  }
  Design out = make_design(std::move(c));
  if (!(out.params == expected)) {
    fail(ErrorKind::not_bibd, "complement parameters " + to_string(out.params) + " differ from " +
                                  to_string(expected));
  }
  return out;
}

struct QsdCertificate {
  DesignParams params;
  std::int64_t x = 0;
  std::int64_t y = 0;
  BinaryMatrix block_graph;
  BinaryMatrix incidence;
};

inline QsdCertificate verify_qsd(const Design& d) {
  const auto& p = d.params;
  if (p.b == p.v) fail(ErrorKind::symmetric_design, "b = v: symmetric design, not quasi-symmetric");
  if (p.b < p.v) fail(ErrorKind::not_qsd, "b < v contradicts Fisher's inequality");
  const auto& x = d.incidence;
  const BinaryMatrix xt = transpose(x);
  const auto meets = gram_counts(xt, xt);
  const std::size_t b = x.rows();
  std::set<std::int64_t> sizes;
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = i + 1; j < b; ++j) {
      sizes.insert(meets[i * b + j]);
      if (sizes.size() > 2) {
        fail(ErrorKind::not_qsd, "blocks meet in at least three sizes, e.g. blocks " + std::to_string(i) +
                                     " and " + std::to_string(j) + " share " +
                                     std::to_string(meets[i * b + j]));
      }
    }
  }
  if (sizes.size() < 2) fail(ErrorKind::not_qsd, "all block pairs meet in one size");
  QsdCertificate cert{p, *sizes.begin(), *sizes.rbegin(), BinaryMatrix(b, b), x};
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      if (i != j && meets[i * b + j] == cert.y) cert.block_graph.set(i, j, true);
    }
  }
  const std::int64_t lhs = p.k * (p.r - 1) * (cert.x + cert.y - 1) - cert.x * cert.y * (p.b - 1);
  const std::int64_t rhs = p.k * (p.k - 1) * (p.lambda - 1);
  if (lhs != rhs) {
    fail(ErrorKind::not_qsd, "parameter relation fails: " + std::to_string(lhs) + " != " + std::to_string(rhs));
  }
  return cert;
}

struct SrgParams {
  std::int64_t b = 0;
  std::int64_t a = 0;
  std::int64_t c = 0;
  std::int64_t mu = 0;
  std::optional<Rational> theta1;
  std::optional<Rational> theta2;

  friend bool operator==(const SrgParams& x, const SrgParams& y) {
    return x.b == y.b && x.a == y.a && x.c == y.c && x.mu == y.mu;
  }
};

inline std::string to_string(const SrgParams& s) {
  return "SRG(" + std::to_string(s.b) + "," + std::to_string(s.a) + "," + std::to_string(s.c) + "," +
         std::to_string(s.mu) + ")";
}

inline std::int64_t require_integer(const Rational& q, const std::string& what) {
  if (!is_integer(q)) fail(ErrorKind::not_srg, what + " = " + q.str() + " is not an integer");
  return numerator_of(q).convert_to<std::int64_t>();
}

inline SrgParams srg_params_from_qsd(const QsdCertificate& cert) {
  const auto& p = cert.params;
  const Rational gap(cert.y - cert.x);
  const Rational a = Rational(p.k * (p.r - 1) - cert.x * (p.b - 1)) / gap;
  const Rational t1 = Rational((p.r - p.lambda) - (p.k - cert.x)) / gap;
  const Rational t2 = Rational(-(p.k - cert.x)) / gap;
  SrgParams s;
  s.b = p.b;
  s.a = require_integer(a, "a");
  s.c = require_integer(a + t1 + t2 + t1 * t2, "c");
  s.mu = require_integer(a + t1 * t2, "mu");
  s.theta1 = t1;
  s.theta2 = t2;
  if (s.a * (s.a - s.c - 1) != s.mu * (s.b - s.a - 1)) {
    fail(ErrorKind::not_srg, to_string(s) + " violates a(a-c-1) = mu(b-a-1)");
  }
  return s;
}

inline SrgParams verify_srg(const BinaryMatrix& adj) {
  const std::size_t n = adj.rows();
  if (adj.cols() != n || n < 2) fail(ErrorKind::not_srg, "adjacency matrix must be square with n >= 2");
  for (std::size_t i = 0; i < n; ++i) {
    if (adj(i, i)) fail(ErrorKind::not_srg, "vertex " + std::to_string(i) + " has a loop");
    for (std::size_t j = 0; j < i; ++j) {
      if (adj(i, j) != adj(j, i)) fail(ErrorKind::not_srg, "adjacency matrix is not symmetric");
    }
  }
  std::vector<std::int64_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) degree[i] += adj(i, j);
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (degree[i] != degree[0]) fail(ErrorKind::not_srg, "graph is not regular");
  }
  const std::int64_t a = degree[0];
  if (a == 0) fail(ErrorKind::not_srg, "graph is empty");
  if (a == static_cast<std::int64_t>(n) - 1) fail(ErrorKind::not_srg, "graph is complete");
  const auto sq = gram_counts(adj, adj);
  std::optional<std::int64_t> c;
  std::optional<std::int64_t> mu;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto& slot = adj(i, j) ? c : mu;
      if (!slot) slot = sq[i * n + j];
      if (*slot != sq[i * n + j]) {
        fail(ErrorKind::not_srg, std::string(adj(i, j) ? "adjacent" : "non-adjacent") + " vertices " +
                                     std::to_string(i) + " and " + std::to_string(j) + " have " +
                                     std::to_string(sq[i * n + j]) + " common neighbours, expected " +
                                     std::to_string(*slot));
      }
    }
  }
  SrgParams s{static_cast<std::int64_t>(n), a, *c, *mu, std::nullopt, std::nullopt};
  const std::int64_t disc = (s.c - s.mu) * (s.c - s.mu) + 4 * (s.a - s.mu);
  if (auto root = exact_sqrt(BigInt(disc))) {
    s.theta1 = Rational(BigInt(s.c - s.mu) + *root, 2);
    s.theta2 = Rational(BigInt(s.c - s.mu) - *root, 2);
  }
  return s;
}

inline std::pair<std::int64_t, std::int64_t> etf_params_from_srg(const SrgParams& p) {
  if (p.a != 2 * p.mu) {
    fail(ErrorKind::parameter_gate, to_string(p) + " has a != 2 mu");
  }
  const std::int64_t s = p.b - 2 * p.a - 1;
  const auto root = exact_sqrt(BigInt(s * s + 4 * p.b));
  if (!root) fail(ErrorKind::parameter_gate, "(b-2a-1)^2 + 4b is not a perfect square");
  const BigInt big_r = *root;
  const Rational d = Rational(BigInt(p.b + 1) * (big_r + s), 2 * big_r);
  if (!is_integer(d)) fail(ErrorKind::parameter_gate, "d = " + d.str() + " is not an integer");
  return {numerator_of(d).convert_to<std::int64_t>(), p.b + 1};
}

}  // namespace etf
