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

#include <filesystem>
#include <string>
#include <vector>

#include "etf_forge/etf_forge.hpp"
#include "support/reference_matrices.hpp"

namespace io = etf::io;
using etf::CycloElem;
using etf::ErrorKind;
using etf::Rational;
using json = nlohmann::json;

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

// export -> text -> import -> export must be byte-identical.
std::string round_trip(const std::string& text) {
  const auto parsed = io::matrix_from_json(io::parse_json(text));
  if (parsed.domain.kind == etf::DomainKind::cyclotomic) {
    return io::canonical(io::matrix_json(parsed.cyclotomic, parsed.row_weights));
  }
  return io::canonical(io::matrix_json(parsed.quadratic, parsed.row_weights));
}

}  // namespace

TEST_CASE("cyclotomic matrices round-trip exactly", "[io]") {
  std::vector<etf::Matrix<CycloElem>> mats{
      etf::dft(5).body,
      etf::char_table(etf::AbelianGroup::make({2, 4})).body,
      etf::kron(etf::dft(3), etf::dft(4)).body,
      ref::matrix(6, 16, ref::kHarmonic6x16),
      etf::scaled(Rational(-7, 3), etf::dft(3).body),
  };
  for (const auto& m : mats) {
    const auto text = io::canonical(io::matrix_json(m));
    CHECK(round_trip(text) == text);
    const auto back = io::cyclotomic_matrix_from_json(io::parse_json(text));
    CHECK(etf::same_values(back, m));
  }
}

TEST_CASE("quadratic and weighted frames round-trip exactly", "[io]") {
  const auto sts = etf::verify_qsd(etf::make_design(etf::incidence_from_blocks(15, ref::pg32_lines())));
  const auto frame = etf::etf_from_qsd(sts, etf::Branch::plus).frame;
  const auto text = io::canonical(io::frame_json(frame));
  CHECK(round_trip(text) == text);
  const auto parsed = io::matrix_from_json(io::parse_json(text));
  CHECK(parsed.domain == etf::Domain{etf::DomainKind::quadratic, 6});
  CHECK(etf::same_values(parsed.quadratic, frame.synthesis));

  const auto pair = etf::steiner_naimark(etf::SteinerInputs::make(etf::make_design(ref::binary(6, 4, ref::kPairsIncidence)),
                                                                  etf::sylvester(1), etf::sylvester(2)));
  const auto wtext = io::canonical(io::frame_json(pair.complement));
  CHECK(round_trip(wtext) == wtext);
  const auto w = io::matrix_from_json(io::parse_json(wtext));
  REQUIRE(w.row_weights.has_value());
  CHECK(*w.row_weights == *pair.complement.row_weights);
  CHECK(etf::certify_etf(etf::make_frame(w.cyclotomic, w.row_weights)).beta == 5);
}

TEST_CASE("integers beyond 64 bits are written as strings", "[io]") {
  const etf::BigInt huge = etf::BigInt(1) << 100;
  const Rational q(huge + 1, 3);
  const auto j = io::rational_json(q);
  CHECK(j[0].is_string());
  CHECK(j[1] == 3);
  CHECK(io::rational_from_json(j) == q);
  CHECK(io::integer_from_json(io::integer_json(-huge)) == -huge);
  const auto params = io::qsd_params_json(etf::corollary43_params(97656, 6, 19531, 317886556).params);
  CHECK(params["b"] == 1907416991);
}

TEST_CASE("hand-written matrix files are reduced on import", "[io]") {
  // zeta_3^3 = 1 and 1 + zeta_3 + zeta_3^2 = 0.
  const auto j = json::parse(R"({"schema":"etf-forge/matrix/v1","domain":{"kind":"cyclotomic","order":3},
      "rows":1,"cols":2,"entries":[[[3,1,1]],[[0,1,1],[1,1,1],[2,1,1]]]})");
  const auto m = io::cyclotomic_matrix_from_json(j);
  CHECK(m(0, 0) == CycloElem(3, 1));
  CHECK(m(0, 1).is_zero());
  const auto q = json::parse(R"({"schema":"etf-forge/matrix/v1","domain":{"kind":"quadratic","radicand":8},
      "rows":1,"cols":1,"entries":[[1,2,1,1]]})");
  const auto parsed = io::matrix_from_json(q);
  CHECK(parsed.quadratic(0, 0) == etf::QuadElem::make(2, Rational(1, 2), 2));
}

TEST_CASE("designs round-trip with 1-based labels", "[io]") {
  for (const auto& d : {etf::fano_plane(), etf::round_robin_resolution(8), etf::all_pairs_design(6)}) {
    const auto text = io::canonical(io::design_json(d));
    const auto back = io::design_from_json(io::parse_json(text));
    CHECK(back.incidence == d.incidence);
    CHECK(back.parallel_classes == d.parallel_classes);
    CHECK(io::canonical(io::design_json(back)) == text);
  }
  const auto fano = io::design_json(etf::fano_plane());
  CHECK(fano["blocks"][0] == json::array({1, 2, 3}));

  auto minimal = json::parse(R"({"schema":"etf-forge/design/v1","v":4,"blocks":[[1,2],[3,4],[1,3],[2,4],[1,4],[2,3]]})");
  CHECK(io::design_from_json(minimal).params == etf::DesignParams{4, 2, 1, 3, 6});
  minimal["lambda"] = 2;
  CHECK(kind_of([&] { io::design_from_json(minimal); }) == ErrorKind::not_bibd);
  minimal.erase("lambda");
  minimal["blocks"][0] = json::array({0, 2});
  CHECK(kind_of([&] { io::design_from_json(minimal); }) == ErrorKind::parse);
}

TEST_CASE("CSV export and import", "[io]") {
  const auto m = ref::matrix(6, 16, ref::kHarmonic6x16);
  const auto text = io::matrix_csv(m);
  CHECK(text.substr(0, 7) == "1,-1,1,");
  CHECK(io::matrix_from_csv(text) == m);
  CHECK(io::matrix_csv(io::matrix_from_csv(text)) == text);
  CHECK(kind_of([] { io::matrix_csv(etf::dft(3).body); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { io::matrix_csv(etf::scaled(Rational(1, 2), etf::sylvester(1).body)); }) ==
        ErrorKind::invalid_argument);
  CHECK(kind_of([] { io::matrix_from_csv("1,2\n3\n"); }) == ErrorKind::parse);
  CHECK(kind_of([] { io::matrix_from_csv("1,x\n"); }) == ErrorKind::parse);
}

TEST_CASE("malformed JSON is a parse error", "[io]") {
  CHECK(kind_of([] { io::parse_json("{not json"); }) == ErrorKind::parse);
  CHECK(kind_of([] { io::matrix_from_json(json::parse(R"({"schema":"other"})")); }) == ErrorKind::parse);
  CHECK(kind_of([] {
          io::matrix_from_json(json::parse(
              R"({"schema":"etf-forge/matrix/v1","domain":{"kind":"cyclotomic","order":2},"rows":1,"cols":2,"entries":[[]]})"));
        }) == ErrorKind::parse);
  CHECK(kind_of([] {
          io::matrix_from_json(json::parse(
              R"({"schema":"etf-forge/matrix/v1","domain":{"kind":"weird"},"rows":1,"cols":1,"entries":[[]]})"));
        }) == ErrorKind::parse);
  CHECK(kind_of([] { io::rational_from_json(json::array({1, 0})); }) == ErrorKind::parse);
  CHECK(kind_of([] { io::integer_from_json(json("12a")); }) == ErrorKind::parse);
  CHECK(kind_of([] { io::read_file("/nonexistent/etf-forge/file.json"); }) == ErrorKind::io);
}

TEST_CASE("reports serialize their exact values", "[io]") {
  const auto cert = io::certificate_json(etf::certify_etf(etf::make_frame(ref::matrix(6, 16, ref::kHarmonic6x16))));
  CHECK(cert["schema"] == "etf-forge/certificate/v1");
  CHECK(cert["beta"] == json::array({6, 1}));
  CHECK(cert["gamma_sq"] == json::array({4, 1}));
  CHECK(cert["alpha"] == json::array({16, 1}));
  CHECK(cert["flat"] == true);
  const auto feas = io::feasibility_json(etf::flat_feasibility(15, 36));
  CHECK(feas["verdict"] == "fail");
  CHECK(feas["w"]["value"] == 3);
  CHECK(feas["w"]["even"] == false);
  CHECK(feas["n_mod_16"] == 4);
  const auto srg = io::srg_json(etf::srg_params_from_qsd(etf::verify_qsd(etf::all_pairs_design(6))));
  CHECK(srg["theta1"] == json::array({2, 1}));
  CHECK(srg["theta2"] == json::array({-2, 1}));
}

TEST_CASE("files are written and read back byte for byte", "[io]") {
  const auto dir = std::filesystem::temp_directory_path() / "etf_forge_io_test";
  std::filesystem::remove_all(dir);
  const auto text = io::canonical(io::matrix_json(etf::dft(4).body));
  io::write_file(dir / "nested" / "m.json", text);
  CHECK(io::read_file(dir / "nested" / "m.json") == text);
  CHECK(io::read_json(dir / "nested" / "m.json") == io::parse_json(text));
  std::filesystem::remove_all(dir);
}
