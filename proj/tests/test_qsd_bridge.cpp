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

#include <catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "etf_forge/construct.hpp"
#include "etf_forge/qsd_bridge.hpp"
#include "support/reference_matrices.hpp"

using etf::BigInt;
using etf::Branch;
using etf::ErrorKind;
using etf::QsdParams;
using etf::QuadElem;
using etf::Rational;

namespace {

ErrorKind kind_of(auto&& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const etf::Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_argument;
}

QsdParams tuple(std::int64_t v, std::int64_t k, std::int64_t l, std::int64_t r, std::int64_t b, std::int64_t x,
                std::int64_t y) {
  return {v, k, l, r, b, x, y};
}

// The QSD relation k(r-1)(x+y-1) - xy(b-1) = k(k-1)(lambda-1) plus the BIBD
// counting identities.
bool qsd_relations(const QsdParams& p) {
  return p.b * p.k == p.v * p.r && (p.v - 1) * p.lambda == p.r * (p.k - 1) &&
         p.k * (p.r - 1) * (p.x + p.y - 1) - p.x * p.y * (p.b - 1) == p.k * (p.k - 1) * (p.lambda - 1);
}

etf::QsdCertificate sts15() {
  return etf::verify_qsd(etf::make_design(etf::incidence_from_blocks(15, ref::pg32_lines())));
}

}  // namespace

TEST_CASE("Kirkman pair extracts to quasi-symmetric designs", "[qsd_bridge]") {
  const auto pair = etf::kirkman_family(2);
  const auto primary = etf::qsd_from_flat_etf(pair.primary);
  CHECK(etf::qsd_params(primary.cert) == tuple(6, 2, 1, 5, 15, 0, 1));
  CHECK(primary.w == 2);
  const auto complement = etf::qsd_from_flat_etf(pair.complement);
  CHECK(etf::qsd_params(complement.cert) == tuple(10, 4, 2, 6, 15, 1, 2));
  CHECK(complement.w == 2);
}

TEST_CASE("flat ETF round trip through its QSD", "[qsd_bridge]") {
  std::vector<etf::Frame<etf::CycloElem>> frames;
  const auto k2 = etf::kirkman_family(2);
  const auto k4 = etf::kirkman_family(4);
  frames.push_back(k2.primary);
  frames.push_back(k2.complement);
  frames.push_back(k4.primary);
  frames.push_back(k4.complement);
  frames.push_back(etf::harmonic_etf(etf::verify_difference_set(etf::AbelianGroup::make({2, 2, 2, 2}),
                                                                {1, 2, 3, 5, 10, 15}))
                       .primary);
  frames.push_back(etf::make_frame(ref::matrix(6, 16, ref::kTensor6x16)));
  for (const auto& f : frames) {
    INFO(f.d() << "x" << f.n());
    const auto extracted = etf::qsd_from_flat_etf(f);
    const auto rebuilt = etf::etf_from_qsd(extracted.cert, Branch::plus);
    CHECK(rebuilt.link.flat_case);
    CHECK(rebuilt.link.delta == QuadElem(Rational(1)));
    CHECK(rebuilt.link.epsilon == QuadElem(Rational(-2)));
    CHECK(etf::same_values(rebuilt.frame.synthesis, etf::to_quadratic(extracted.canonical.matrix)));
    CHECK(etf::certify_etf(etf::make_frame(extracted.canonical.matrix)).gamma_sq == etf::certify_etf(f).gamma_sq);
    CHECK(etf::flat_feasibility(static_cast<std::int64_t>(f.d()), static_cast<std::int64_t>(f.n())).pass);
    CHECK(etf::qsd_gives_etf(extracted.cert));
  }
}

TEST_CASE("canonical signing", "[qsd_bridge]") {
  const auto signed_tet = etf::canonical_sign(ref::matrix(3, 4, ref::kTetrahedron));
  CHECK(signed_tet.matrix == ref::matrix(3, 4, ref::kTetrahedronSigned));
  CHECK(signed_tet.row_signs == std::vector<int>{1, 1, 1});
  CHECK(signed_tet.col_signs == std::vector<int>{1, -1, -1, -1});
  const auto again = etf::canonical_sign(signed_tet.matrix);
  CHECK(again.matrix == signed_tet.matrix);
  CHECK(again.col_signs == std::vector<int>{1, 1, 1, 1});
  CHECK_THROWS_AS(etf::canonical_sign(ref::matrix(6, 16, ref::kSteiner6x16)), etf::Error);
}

TEST_CASE("both branches of the QSD construction certify", "[qsd_bridge]") {
  const auto cert = etf::verify_qsd(etf::all_pairs_design(6));
  const auto plus = etf::etf_from_qsd(cert, Branch::plus);
  const auto minus = etf::etf_from_qsd(cert, Branch::minus);
  CHECK(plus.link.flat_case);
  CHECK(minus.link.delta == QuadElem(Rational(-1, 3)));
  CHECK(minus.link.epsilon == QuadElem(Rational(2)));
  CHECK_FALSE(minus.link.flat_case);
  const auto cp = etf::certify_etf(plus.frame);
  const auto cm = etf::certify_etf(minus.frame);
  CHECK(cp.gamma_sq / (cp.beta * cp.beta) == cm.gamma_sq / (cm.beta * cm.beta));
  CHECK(cp.flat);
  CHECK_FALSE(cm.flat);
  // Inner products with the first column all equal w.
  for (const auto* f : {&plus.frame, &minus.frame}) {
    const auto g = etf::gram(*f);
    for (std::size_t j = 1; j < f->n(); ++j) CHECK(g(0, j) == QuadElem(Rational(2)));
  }
}

TEST_CASE("Steiner triple system of PG(3,2) gives a non-flat (15,36) frame", "[qsd_bridge]") {
  const auto cert = sts15();
  CHECK(etf::qsd_params(cert) == tuple(15, 3, 1, 7, 35, 0, 1));
  CHECK(etf::qsd_gives_etf(cert));
  for (auto branch : {Branch::plus, Branch::minus}) {
    const auto out = etf::etf_from_qsd(cert, branch);
    CHECK(out.link.w == 3);
    CHECK(out.link.delta.radicand() == 6);
    // delta = (w +- k sqrt6)/v and epsilon = -+ sqrt6.
    const int s = branch == Branch::plus ? 1 : -1;
    CHECK(out.link.delta == QuadElem::make(6, Rational(1, 5), Rational(s, 5)));
    CHECK(out.link.epsilon == QuadElem::make(6, 0, -s));
    const auto c = etf::certify_etf(out.frame);
    CHECK(c.d == 15);
    CHECK(c.n == 36);
    CHECK_FALSE(c.flat);
    CHECK(c.domain.kind == etf::DomainKind::quadratic);
  }
  const auto rep = etf::flat_feasibility(15, 36);
  CHECK_FALSE(rep.pass);
  CHECK(rep.w.value == BigInt(3));
  CHECK_FALSE(rep.w.parity_ok);
  CHECK(rep.n_mod_16 == 4);
}

TEST_CASE("tampered intersection numbers are refused", "[qsd_bridge]") {
  auto cert = etf::verify_qsd(etf::all_pairs_design(6));
  cert.y = 2;
  std::string message;
  CHECK(kind_of([&] { etf::etf_from_qsd(cert, Branch::plus); }, &message) == ErrorKind::parameter_gate);
  CHECK(message.find("at y") != std::string::npos);
  cert.y = 1;
  cert.x = 1;
  CHECK(kind_of([&] { etf::etf_from_qsd(cert, Branch::plus); }, &message) == ErrorKind::parameter_gate);
  CHECK(message.find("at x") != std::string::npos);

  // Complementing a QSD that gives an ETF gives another one.
  CHECK(etf::qsd_gives_etf(etf::verify_qsd(etf::complement_design(etf::all_pairs_design(6)))));

  // Two copies of the Fano plane: QSD(7,3,2,6,14,1,3), but the ETF relation fails.
  std::vector<std::vector<std::size_t>> twice;
  for (int copy = 0; copy < 2; ++copy) {
    for (std::size_t i = 0; i < 7; ++i) twice.push_back(etf::fano_plane().block(i));
  }
  const auto doubled = etf::verify_qsd(etf::make_design(etf::incidence_from_blocks(7, twice)));
  CHECK_FALSE(etf::qsd_gives_etf(doubled));
  CHECK(kind_of([&] { etf::etf_from_qsd(doubled, Branch::minus); }) == ErrorKind::parameter_gate);
}

TEST_CASE("regular simplices have no QSD", "[qsd_bridge]") {
  std::string message;
  CHECK(kind_of([] { etf::qsd_from_flat_etf(etf::make_frame(ref::matrix(3, 4, ref::kTetrahedron))); }, &message) ==
        ErrorKind::parameter_gate);
  CHECK(message.find("n = d + 1") != std::string::npos);
  CHECK(kind_of([] { etf::qsd_from_flat_etf(etf::make_frame(ref::matrix(6, 16, ref::kSteiner6x16))); }) ==
        ErrorKind::not_flat);
}

TEST_CASE("parameter families from resolvable designs", "[qsd_bridge]") {
  const auto [a2, b2] = etf::corollary42_params(2);
  CHECK(a2 == tuple(6, 2, 1, 5, 15, 0, 1));
  CHECK(b2 == tuple(10, 4, 2, 6, 15, 1, 2));
  const auto [a12, b12] = etf::corollary42_params(12);
  CHECK(b12 == tuple(300, 144, 132, 276, 575, 66, 72));
  for (std::int64_t u = 2; u <= 40; u += 2) {
    const auto [a, b] = etf::corollary42_params(u);
    CHECK(qsd_relations(a));
    CHECK(qsd_relations(b));
    CHECK(a.b == 4 * u * u - 1);
  }
  CHECK(kind_of([] { etf::corollary42_params(3); }) == ErrorKind::parameter_gate);

  const auto small = etf::corollary43_params(4, 2, 3, 6);
  CHECK(small.params == tuple(6, 2, 1, 5, 15, 0, 1));
  CHECK(small.w == 2);
  CHECK(kind_of([] { etf::corollary43_params(7, 3, 3, 7); }) == ErrorKind::parameter_gate);
  CHECK(kind_of([] { etf::corollary43_params(7, 3, 3, 8); }) == ErrorKind::invalid_argument);
}

TEST_CASE("large resolvable-design parameters evaluate exactly", "[qsd_bridge]") {
  const BigInt v(97656), k(6), r(19531), b(317886556);
  const auto big = etf::corollary43_params(97656, 6, 19531, 317886556);
  // Slot formulas evaluated independently in BigInt.
  const QsdParams expected{b,
                           v * (r - 1) / (2 * k),
                           (v * (r - 1) - 2 * k) / 4,
                           (r - 1) * (v + k - 1) / 2,
                           r * (v + k - 1),
                           v * (r - 3) / (4 * k),
                           v * (r - 1) / (4 * k)};
  CHECK(big.params == expected);
  CHECK(big.params == tuple(317886556, 158935140, 476805417, 953659665, 1907416991, 79459432, 79467570));
  CHECK(big.w == 16276);
  CHECK(qsd_relations(big.params));
}

TEST_CASE("flat feasibility test", "[qsd_bridge]") {
  struct Row {
    std::int64_t d, n, q1, q2, w;
  };
  for (const auto& row : std::vector<Row>{{6, 16, 3, 5, 2},
                                          {66, 144, 11, 13, 6},
                                          {78, 144, 13, 11, 6},
                                          {28, 64, 7, 9, 4},
                                          {276, 576, 23, 25, 12},
                                          {10, 16, 5, 3, 2}}) {
    INFO(row.d << "," << row.n);
    const auto rep = etf::flat_feasibility(row.d, row.n);
    CHECK(rep.pass);
    CHECK(rep.q1.value == BigInt(row.q1));
    CHECK(rep.q2.value == BigInt(row.q2));
    CHECK(rep.w.value == BigInt(row.w));
  }
  const auto rep = etf::flat_feasibility(15, 36);
  CHECK(rep.q1.value == BigInt(5));
  CHECK(rep.q2.value == BigInt(7));
  CHECK(rep.q1.parity_ok);
  CHECK(rep.q2.parity_ok);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(etf::flat_feasibility(5, 10).pass);
  CHECK_THROWS_AS(etf::flat_feasibility(6, 7), etf::Error);
  CHECK_THROWS_AS(etf::flat_feasibility(1, 7), etf::Error);
}

TEST_CASE("Gerzon-type bounds", "[qsd_bridge]") {
  for (std::int64_t q : {2, 3, 4}) {
    const auto rep = etf::gerzon_bounds(q + 1, q * q + q + 1, etf::Field::complex, etf::EtfKind::flat);
    CHECK(rep.pass);
    CHECK(rep.upper_equality);
    CHECK(etf::gerzon_bounds(q + 1, q * q + q + 1, etf::Field::complex, etf::EtfKind::hadamard).pass);
  }
  const auto real = etf::gerzon_bounds(6, 16, etf::Field::real, etf::EtfKind::hadamard);
  CHECK(real.pass);
  CHECK(real.upper_equality);
  const auto too_many = etf::gerzon_bounds(2, 10, etf::Field::complex, etf::EtfKind::flat);
  CHECK_FALSE(too_many.pass);
  CHECK(too_many.violated == "n <= d^2 - d + 1");
  // (6,11): (2n - 2d - 3)^2 = 49 = 8d + 1, the lower bound with equality.
  CHECK(etf::gerzon_bounds(6, 11, etf::Field::real, etf::EtfKind::hadamard).pass);
  const auto low = etf::gerzon_bounds(6, 10, etf::Field::real, etf::EtfKind::hadamard);
  CHECK_FALSE(low.pass);
  CHECK(low.violated == "n >= d + sqrt(2d + 1/4) + 3/2");
  CHECK(etf::gerzon_bounds(6, 10, etf::Field::complex, etf::EtfKind::hadamard).pass);
}
