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

// Replayable construction recipes:
//   {"schema":"etf-forge/recipe/v1","kind":K,"inputs":{...}}
// Hadamard inputs are {"sylvester":e}, {"paley":q}, {"dft":n}, {"size":n},
// {"char_table":[m1,...]} or {"kron":[A,B]}. Design inputs are
// {"all_pairs":v}, {"round_robin":v}, {"fano":true}, {"complement":D} or a
// full design JSON object.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "etf_forge/construct.hpp"
#include "etf_forge/design.hpp"
#include "etf_forge/error.hpp"
#include "etf_forge/frame.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/io.hpp"
#include "etf_forge/qsd_bridge.hpp"

namespace etf::recipe {

using io::json;

inline constexpr const char* kRecipeSchema = "etf-forge/recipe/v1";

inline json make(const std::string& kind, json inputs) {
  return {{"schema", kRecipeSchema}, {"kind", kind}, {"inputs", std::move(inputs)}};
}

// A built artifact: a Naimark pair over a cyclotomic field, or a single
// quadratic-field frame from a quasi-symmetric design.
struct Artifact {
  std::string kind;
  std::variant<NaimarkPair<CycloElem>, QsdEtf> value;

  bool is_pair() const { return std::holds_alternative<NaimarkPair<CycloElem>>(value); }
  const NaimarkPair<CycloElem>& pair() const { return std::get<NaimarkPair<CycloElem>>(value); }
  const QsdEtf& qsd() const { return std::get<QsdEtf>(value); }
};

namespace detail {

inline std::int64_t small_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorKind::parse, std::string(what) + " must be an integer");
  const auto x = j.get<std::int64_t>();
  if (x < 0 || x > 1000000) fail(ErrorKind::parse, std::string(what) + " out of range");
  return x;
}

inline std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::parse, std::string(what) + " must be a list");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(static_cast<int>(small_int(x, what)));
  return out;
}

inline bool flag(const json& inputs, const char* key) {
  if (!inputs.contains(key)) return false;
  if (!inputs.at(key).is_boolean()) fail(ErrorKind::parse, std::string(key) + " must be a boolean");
  return inputs.at(key).get<bool>();
}

}  // namespace detail

inline HadamardMatrix build_hadamard(const json& spec) {
  if (!spec.is_object() || spec.size() != 1) fail(ErrorKind::parse, "Hadamard spec must have exactly one key");
  const auto& [key, val] = *spec.items().begin();
  if (key == "sylvester") return sylvester(static_cast<int>(detail::small_int(val, "sylvester")));
  if (key == "paley") return paley_one(detail::small_int(val, "paley"));
  if (key == "dft") return dft(detail::small_int(val, "dft"));
  if (key == "size") return hadamard_of_size(detail::small_int(val, "size"));
  if (key == "char_table") return char_table(AbelianGroup::make(detail::int_list(val, "char_table")));
  if (key == "kron") {
    if (!val.is_array() || val.size() != 2) fail(ErrorKind::parse, "kron takes two Hadamard specs");
    return kron(build_hadamard(val[0]), build_hadamard(val[1]));
  }
  fail(ErrorKind::parse, "unknown Hadamard spec '" + key + "'");
}

inline Design build_design(const json& spec) {
  if (spec.is_object() && spec.contains("schema")) return io::design_from_json(spec);
  if (!spec.is_object() || spec.size() != 1) fail(ErrorKind::parse, "design spec must have exactly one key");
  const auto& [key, val] = *spec.items().begin();
  if (key == "all_pairs") return all_pairs_design(detail::small_int(val, "all_pairs"));
  if (key == "round_robin") return round_robin_resolution(detail::small_int(val, "round_robin"));
  if (key == "fano") return fano_plane();
  if (key == "complement") return complement_design(build_design(val));
  fail(ErrorKind::parse, "unknown design spec '" + key + "'");
}

inline Branch parse_branch(const json& j) {
  if (j == "plus") return Branch::plus;
  if (j == "minus") return Branch::minus;
  fail(ErrorKind::parse, "branch must be \"plus\" or \"minus\"");
}

inline Artifact build(const json& r) {
  io::expect_schema(r, kRecipeSchema);
  const auto& kind_j = io::field(r, "kind");
  if (!kind_j.is_string()) fail(ErrorKind::parse, "kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  const json& in = io::field(r, "inputs");
  const auto finish = [&](NaimarkPair<CycloElem> p) {
    return Artifact{kind, detail::flag(in, "swap") ? swapped(std::move(p)) : std::move(p)};
  };

  if (kind == "simplex") {
    const auto row = in.contains("drop_row") ? detail::small_int(in.at("drop_row"), "drop_row") : 0;
    return finish(simplex_pair(build_hadamard(io::field(in, "hadamard")), static_cast<std::size_t>(row)));
  }
  if (kind == "harmonic") {
    const auto group = AbelianGroup::make(detail::int_list(io::field(in, "group"), "group"));
    std::vector<std::size_t> subset;
    for (int x : detail::int_list(io::field(in, "subset"), "subset")) subset.push_back(static_cast<std::size_t>(x));
    return finish(harmonic_etf(verify_difference_set(group, std::move(subset))));
  }
  if (kind == "steiner") {
    auto inputs = SteinerInputs::make(build_design(io::field(in, "design")), build_hadamard(io::field(in, "F")),
                                      build_hadamard(io::field(in, "G")));
    return finish(steiner_naimark(inputs));
  }
  if (kind == "kirkman") {
    if (in.contains("u")) return finish(kirkman_family(detail::small_int(in.at("u"), "u")));
    auto inputs = KirkmanInputs::make(build_design(io::field(in, "design")), build_hadamard(io::field(in, "E")),
                                      build_hadamard(io::field(in, "F")), build_hadamard(io::field(in, "G")));
    return finish(kirkman_etf(inputs));
  }
  if (kind == "tensor") {
    const auto left = build(io::field(in, "left"));
    const auto right = build(io::field(in, "right"));
    if (!left.is_pair() || !right.is_pair()) fail(ErrorKind::parse, "tensor inputs must be Naimark pairs");
    return finish(tensor_etf(left.pair(), right.pair()));
  }
  if (kind == "qsd") {
    const auto cert = verify_qsd(build_design(io::field(in, "design")));
    const Branch branch = in.contains("branch") ? parse_branch(in.at("branch")) : Branch::plus;
    return {kind, etf_from_qsd(cert, branch)};
  }
  fail(ErrorKind::parse, "unknown recipe kind '" + kind + "'");
}

inline json qsd_link_json(const QsdEtfLink& l) {
  return {{"branch", to_string(l.branch)},   {"w", io::rational_json(l.w)},
          {"k", l.k},                        {"delta", io::entry_json(l.delta)},
          {"epsilon", io::entry_json(l.epsilon)}, {"qsd", io::qsd_params_json(l.params)},
          {"flat_case", l.flat_case}};
}

// Re-certifies an artifact from scratch; throws on the first violated identity.
inline json certify_artifact(const Artifact& a) {
  if (a.is_pair()) {
    const auto& p = a.pair();
    const auto c = certify_pair(p);
    json out{{"schema", "etf-forge/pair-certificate/v1"},
             {"primary", io::certificate_json(c.primary)},
             {"complement", io::certificate_json(c.complement)},
             {"alpha", io::rational_json(c.alpha)},
             {"naimark", true}};
    if (c.primary.flat && c.complement.flat && !p.primary.weighted() && !p.complement.weighted()) {
      out["hadamard"] = io::hadamard_json(certify_hadamard_etf(p));
    }
    return out;
  }
  auto out = io::certificate_json(certify_etf(a.qsd().frame));
  out["qsd_link"] = qsd_link_json(a.qsd().link);
  return out;
}

// Output files of an artifact, keyed by file name. CSV accompanies every
// integral matrix.
inline std::vector<std::pair<std::string, std::string>> artifact_files(const Artifact& a) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto add = [&](const std::string& stem, const auto& f) {
    out.emplace_back(stem + ".json", io::canonical(io::frame_json(f)));
    if (!f.weighted() && is_integral(f.synthesis)) out.emplace_back(stem + ".csv", io::matrix_csv(f.synthesis));
  };
  if (a.is_pair()) {
    add("primary", a.pair().primary);
    add("complement", a.pair().complement);
  } else {
    add("frame", a.qsd().frame);
  }
  return out;
}

// Summary used by catalog listings.
inline json artifact_params(const Artifact& a) {
  if (a.is_pair()) {
    return {{"d", a.pair().primary.d()}, {"n", a.pair().primary.n()}, {"complement_d", a.pair().complement.d()}};
  }
  return {{"d", a.qsd().frame.d()}, {"n", a.qsd().frame.n()}, {"qsd", io::qsd_params_json(a.qsd().link.params)}};
}

}  // namespace etf::recipe
