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

#include <string>
#include <vector>

#include "etf_forge/construct.hpp"
#include "support/reference_matrices.hpp"

using etf::CycloElem;
using etf::ErrorKind;
using etf::NaimarkPair;
using etf::Rational;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const etf::Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_argument;
}

// Gram identity and both certificates, computed with the naive product.
void check_pair(const NaimarkPair<CycloElem>& pair, std::size_t d, std::size_t n) {
  const auto cert = etf::certify_pair(pair);
  CHECK(cert.primary.d == d);
  CHECK(cert.primary.n == n);
  CHECK(cert.complement.d == n - d);
  if (!pair.primary.weighted() && !pair.complement.weighted()) {
    const auto& a = pair.primary.synthesis;
    const auto& b = pair.complement.synthesis;
    const auto sum = ref::naive_mul(ref::naive_adjoint(a), a, CycloElem(1)) +
                     ref::naive_mul(ref::naive_adjoint(b), b, CycloElem(1));
    CHECK(etf::is_scalar_identity(sum, cert.alpha));
  }
}

etf::Design pairs_design() { return etf::make_design(ref::binary(6, 4, ref::kPairsIncidence)); }

}  // namespace

TEST_CASE("regular simplices from Hadamard rows", "[construct]") {
  const auto pair = etf::simplex_pair(etf::sylvester(2), 0);
  CHECK(pair.primary.synthesis == ref::matrix(3, 4, ref::kTetrahedron));
  CHECK(pair.alpha == 4);
  check_pair(pair, 3, 4);
  CHECK(etf::certify_hadamard_etf(pair).size() == 4);
  for (std::size_t drop = 0; drop < 12; drop += 5) check_pair(etf::simplex_pair(etf::paley_one(11), drop), 11, 12);
  check_pair(etf::simplex_pair(etf::dft(5), 2), 4, 5);
  const auto sw = etf::swapped(pair);
  CHECK(sw.primary.d() == 1);
  check_pair(sw, 1, 4);
  CHECK(kind_of([] { etf::simplex_pair(etf::sylvester(1), 2); }) == ErrorKind::invalid_argument);
}

TEST_CASE("harmonic frame from a difference set in Z_2^4", "[construct]") {
  const auto group = etf::AbelianGroup::make({2, 2, 2, 2});
  const auto ds = etf::verify_difference_set(group, {1, 5, 2, 10, 3, 15});
  CHECK(ds.subset == std::vector<std::size_t>{1, 2, 3, 5, 10, 15});
  CHECK(ds.lambda == 2);
  const auto pair = etf::harmonic_etf(ds);
  CHECK(pair.primary.synthesis == ref::matrix(6, 16, ref::kHarmonic6x16));
  check_pair(pair, 6, 16);
  CHECK(etf::certify_hadamard_etf(pair).size() == 16);
}

TEST_CASE("harmonic frames from cyclic difference sets", "[construct]") {
  check_pair(etf::harmonic_etf(etf::verify_difference_set(etf::AbelianGroup::make({7}), {1, 2, 4})), 3, 7);
  check_pair(etf::harmonic_etf(etf::verify_difference_set(etf::AbelianGroup::make({13}), {0, 1, 3, 9})), 4, 13);
  check_pair(etf::harmonic_etf(etf::verify_difference_set(etf::AbelianGroup::make({4, 4}), {0, 1, 2, 4, 9, 14})), 6,
             16);
  CHECK(kind_of([] { etf::verify_difference_set(etf::AbelianGroup::make({7}), {1, 2, 3}); }) ==
        ErrorKind::invalid_argument);
  CHECK(kind_of([] { etf::verify_difference_set(etf::AbelianGroup::make({7}), {1, 1, 2}); }) ==
        ErrorKind::invalid_argument);
  CHECK(kind_of([] { etf::verify_difference_set(etf::AbelianGroup::make({7}), {1, 9}); }) ==
        ErrorKind::invalid_argument);
}

TEST_CASE("Steiner frame reproduces the published blocks", "[construct]") {
  const auto in = etf::SteinerInputs::make(pairs_design(), etf::sylvester(1), etf::sylvester(2));
  CHECK(etf::steiner_etf(in).synthesis == ref::matrix(6, 16, ref::kSteiner6x16));
  CHECK(etf::steiner_block(in, 2) == ref::matrix(6, 16, ref::kSteinerSecond6x16));
  CHECK(etf::steiner_tail(in, 2) == ref::matrix(4, 16, ref::kSteinerTail4x16));
  const auto pair = etf::steiner_naimark(in);
  REQUIRE(pair.complement.weighted());
  CHECK(pair.complement.weight(9) == 2);
  CHECK(pair.complement.weight(0) == 1);
  check_pair(pair, 6, 16);
  CHECK(kind_of([&] { etf::steiner_block(in, 3); }) == ErrorKind::invalid_argument);
}

TEST_CASE("Steiner blocks for different columns of F are orthogonal", "[construct]") {
  struct Case {
    etf::Design design;
    etf::HadamardMatrix f;
    etf::HadamardMatrix g;
  };
  const std::vector<Case> cases{
      {etf::fano_plane(), etf::dft(3), etf::sylvester(2)},
      {etf::fano_plane(), etf::dft(3), etf::dft(4)},
      {etf::all_pairs_design(5), etf::sylvester(1), etf::dft(5)},
      {etf::all_pairs_design(4), etf::sylvester(1), etf::sylvester(2)},
      {etf::round_robin_resolution(6), etf::sylvester(1), etf::dft(6)},
  };
  for (const auto& c : cases) {
    const auto in = etf::SteinerInputs::make(c.design, c.f, c.g);
    const std::size_t k = in.lift.k;
    for (std::size_t l = 1; l <= k; ++l) {
      for (std::size_t m = l + 1; m <= k; ++m) {
        const auto cross = etf::mat_mul_adjoint(etf::steiner_block(in, l), etf::steiner_block(in, m));
        for (const auto& z : cross.entries()) CHECK(z.is_zero());
      }
    }
    const auto v = static_cast<std::size_t>(c.design.params.v);
    const auto r = static_cast<std::size_t>(c.design.params.r);
    check_pair(etf::steiner_naimark(in), static_cast<std::size_t>(c.design.params.b), v * (r + 1));
  }
}

TEST_CASE("Steiner inputs are validated", "[construct]") {
  CHECK(kind_of([] { etf::SteinerInputs::make(pairs_design(), etf::sylvester(2), etf::sylvester(2)); }) ==
        ErrorKind::dimension_mismatch);
  CHECK(kind_of([] { etf::SteinerInputs::make(pairs_design(), etf::sylvester(1), etf::dft(3)); }) ==
        ErrorKind::dimension_mismatch);
  CHECK(kind_of([] {
          etf::SteinerInputs::make(etf::complement_design(etf::fano_plane()), etf::sylvester(2), etf::sylvester(2));
        }) == ErrorKind::invalid_argument);
}

TEST_CASE("Kirkman family gives flat pairs that stack to Hadamard matrices", "[construct]") {
  for (std::int64_t u : {2, 3, 4}) {
    if (u == 3) {
      CHECK(kind_of([] { etf::kirkman_family(3); }) == ErrorKind::no_recipe);
      continue;
    }
    const auto pair = etf::kirkman_family(u);
    const auto d = static_cast<std::size_t>(u * (2 * u - 1));
    const auto n = static_cast<std::size_t>(4 * u * u);
    check_pair(pair, d, n);
    CHECK(etf::is_flat(pair.primary));
    CHECK(etf::is_flat(pair.complement));
    const auto h = etf::certify_hadamard_etf(pair);
    CHECK(h.size() == n);
    CHECK(h.kind == etf::HadamardKind::real);
  }
}

TEST_CASE("Kirkman construction with complex inputs", "[construct]") {
  // Round robin on 6 players: classes of size 3, r = 5, G of size 6.
  const auto in = etf::KirkmanInputs::make(etf::round_robin_resolution(6), etf::dft(3), etf::sylvester(1),
                                           etf::kron(etf::dft(3), etf::sylvester(1)));
  const auto pair = etf::kirkman_etf(in);
  check_pair(pair, 15, 36);
  CHECK(etf::is_flat(pair.primary));
  CHECK(etf::certify_hadamard_etf(pair).kind == etf::HadamardKind::complex);
  CHECK(kind_of([] {
          etf::KirkmanInputs::make(etf::all_pairs_design(4), etf::sylvester(1), etf::sylvester(1), etf::sylvester(2));
        }) == ErrorKind::invalid_argument);
}

TEST_CASE("tensor of flat Hadamard-type pairs", "[construct]") {
  const auto one_four = etf::swapped(etf::simplex_pair(etf::sylvester(2), 0));
  const auto pair = etf::tensor_etf(one_four, one_four);
  CHECK(pair.primary.synthesis == ref::matrix(6, 16, ref::kTensor6x16));
  check_pair(pair, 6, 16);
  CHECK(etf::certify_hadamard_etf(pair).size() == 16);

  const auto harmonic = etf::harmonic_etf(
      etf::verify_difference_set(etf::AbelianGroup::make({2, 2, 2, 2}), {1, 2, 3, 5, 10, 15}));
  const auto big = etf::tensor_etf(harmonic, one_four);
  check_pair(big, 6 * 3 + 10 * 1, 64);
  CHECK(etf::is_flat(big.primary));

  const auto tetra = etf::simplex_pair(etf::sylvester(2), 0);
  CHECK(kind_of([&] { etf::tensor_etf(tetra, one_four); }) == ErrorKind::parameter_gate);
  const auto steiner = etf::steiner_naimark(etf::SteinerInputs::make(pairs_design(), etf::sylvester(1),
                                                                     etf::sylvester(2)));
  CHECK(kind_of([&] { etf::tensor_etf(steiner, one_four); }) == ErrorKind::parameter_gate);
}
