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

// JSON and CSV serialization. Output is canonical: sorted keys, no
// insignificant whitespace, one trailing newline.

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "etf_forge/design.hpp"
#include "etf_forge/error.hpp"
#include "etf_forge/exact_scalar.hpp"
#include "etf_forge/frame.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/matrix.hpp"
#include "etf_forge/qsd_bridge.hpp"

namespace etf::io {

using json = nlohmann::json;

inline constexpr const char* kMatrixSchema = "etf-forge/matrix/v1";
inline constexpr const char* kDesignSchema = "etf-forge/design/v1";
inline constexpr const char* kCertificateSchema = "etf-forge/certificate/v1";
inline constexpr const char* kFeasibilitySchema = "etf-forge/feasibility/v1";

inline std::string canonical(const json& j) { return j.dump() + "\n"; }

// Integers that fit in int64 are JSON numbers, larger ones decimal strings.
inline json integer_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

inline BigInt integer_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::parse, "expected an integer, got " + j.dump());
}

inline json rational_json(const Rational& q) { return json::array({integer_json(numerator_of(q)), integer_json(denominator_of(q))}); }

inline Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::parse, "expected [num, den], got " + j.dump());
  const BigInt den = integer_from_json(j[1]);
  if (den == 0) fail(ErrorKind::parse, "zero denominator");
  return Rational(integer_from_json(j[0]), den);
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t int_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) fail(ErrorKind::parse, std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline void expect_schema(const json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != schema) {
    fail(ErrorKind::parse, std::string("expected schema ") + schema);
  }
}

inline json domain_json(const Domain& d) {
  if (d.kind == DomainKind::cyclotomic) return {{"kind", "cyclotomic"}, {"order", d.parameter}};
  return {{"kind", "quadratic"}, {"radicand", d.parameter}};
}

inline Domain domain_from_json(const json& j) {
  const auto& kind = field(j, "kind");
  if (kind == "cyclotomic") return {DomainKind::cyclotomic, int_field(j, "order")};
  if (kind == "quadratic") return {DomainKind::quadratic, int_field(j, "radicand")};
  fail(ErrorKind::parse, "unknown domain kind " + kind.dump());
}

inline json entry_json(const CycloElem& z) {
  json terms = json::array();
  for (std::size_t i = 0; i < z.coeffs().size(); ++i) {
    const Rational& c = z.coeffs()[i];
    if (c == 0) continue;
    terms.push_back({static_cast<std::int64_t>(i), integer_json(numerator_of(c)), integer_json(denominator_of(c))});
  }
  return terms;
}

inline json entry_json(const QuadElem& z) {
  return {integer_json(numerator_of(z.a())), integer_json(denominator_of(z.a())), integer_json(numerator_of(z.b())),
          integer_json(denominator_of(z.b()))};
}

template <class T>
json matrix_json(const Matrix<T>& m, const std::optional<std::vector<Rational>>& weights = std::nullopt) {
  json entries = json::array();
  for (const auto& z : m.entries()) entries.push_back(entry_json(z));
  json out{{"schema", kMatrixSchema},
           {"domain", domain_json(domain_of(m))},
           {"rows", m.rows()},
           {"cols", m.cols()},
           {"entries", std::move(entries)}};
  if (weights) {
    json w = json::array();
    for (const auto& q : *weights) w.push_back(rational_json(q));
    out["row_weights"] = std::move(w);
  }
  return out;
}

template <class T>
json frame_json(const Frame<T>& f) {
  return matrix_json(f.synthesis, f.row_weights);
}

// A parsed matrix file in whichever domain it declares.
struct AnyMatrix {
  Domain domain;
  Matrix<CycloElem> cyclotomic;
  Matrix<QuadElem> quadratic;
  std::optional<std::vector<Rational>> row_weights;
};

inline AnyMatrix matrix_from_json(const json& j) {
  expect_schema(j, kMatrixSchema);
  AnyMatrix out;
  out.domain = domain_from_json(field(j, "domain"));
  const auto rows = int_field(j, "rows");
  const auto cols = int_field(j, "cols");
  if (rows < 0 || cols < 0) fail(ErrorKind::parse, "negative dimensions");
  const auto& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows * cols)) {
    fail(ErrorKind::parse, "entries must be a list of rows * cols elements");
  }
  const auto r = static_cast<std::size_t>(rows);
  const auto c = static_cast<std::size_t>(cols);
  if (out.domain.kind == DomainKind::cyclotomic) {
    if (out.domain.parameter < 1 || out.domain.parameter > 100000) fail(ErrorKind::parse, "bad cyclotomic order");
    const int m = static_cast<int>(out.domain.parameter);
    std::vector<CycloElem> values;
    values.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_array()) fail(ErrorKind::parse, "cyclotomic entry must be a list of terms");
      std::vector<CycloTerm> terms;
      for (const auto& t : e) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer()) {
          fail(ErrorKind::parse, "cyclotomic term must be [exponent, num, den]");
        }
        terms.push_back({t[0].get<long long>(), rational_from_json(json::array({t[1], t[2]}))});
      }
      values.push_back(reduce_cyclotomic(terms, m));
    }
    out.cyclotomic = Matrix<CycloElem>(r, c, std::move(values));
  } else {
    const auto t = out.domain.parameter;
    if (t < 1) fail(ErrorKind::parse, "bad quadratic radicand");
    std::vector<QuadElem> values;
    values.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 4) fail(ErrorKind::parse, "quadratic entry must be [a_num, a_den, b_num, b_den]");
      const Rational a = rational_from_json(json::array({e[0], e[1]}));
      const Rational b = rational_from_json(json::array({e[2], e[3]}));
      values.push_back(normalize_quadratic(t, a, b));
    }
    out.quadratic = Matrix<QuadElem>(r, c, std::move(values));
  }
  if (j.contains("row_weights")) {
    std::vector<Rational> w;
    for (const auto& q : j.at("row_weights")) w.push_back(rational_from_json(q));
    if (w.size() != r) fail(ErrorKind::parse, "row_weights must have one entry per row");
    out.row_weights = std::move(w);
  }
  return out;
}

inline Matrix<CycloElem> cyclotomic_matrix_from_json(const json& j) {
  auto m = matrix_from_json(j);
  if (m.domain.kind == DomainKind::cyclotomic) return m.cyclotomic;
  return to_cyclotomic(m.quadratic, 1);
}

// Plain integers, comma separated; only for integral matrices.
template <class T>
std::string matrix_csv(const Matrix<T>& m) {
  auto q = rational_entries(m);
  if (!q || !is_integral(m)) fail(ErrorKind::invalid_argument, "CSV export needs rational-integer entries");
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << numerator_of((*q)[i * m.cols() + j]);
    out << "\n";
  }
  return out.str();
}

inline Matrix<CycloElem> matrix_from_csv(const std::string& text, int order = 2) {
  std::istringstream in(text);
  std::string line;
  std::vector<Rational> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(cells, cell, ',')) {
      try {
        values.emplace_back(BigInt(cell));
      } catch (const std::exception&) {
        fail(ErrorKind::parse, "CSV cell '" + cell + "' is not an integer");
      }
      ++count;
    }
    if (rows == 0) cols = count;
    if (count != cols) fail(ErrorKind::parse, "CSV rows have different lengths");
    ++rows;
  }
  return cyclotomic_from_rationals(rows, cols, values, order);
}

inline json design_json(const Design& d) {
  json blocks = json::array();
  for (std::size_t i = 0; i < d.incidence.rows(); ++i) {
    json blk = json::array();
    for (std::size_t v : d.block(i)) blk.push_back(v + 1);
    blocks.push_back(std::move(blk));
  }
  json out{{"schema", kDesignSchema}, {"v", d.params.v},          {"k", d.params.k}, {"lambda", d.params.lambda},
           {"r", d.params.r},         {"b", d.params.b},          {"blocks", std::move(blocks)}};
  if (d.parallel_classes) {
    json classes = json::array();
    for (const auto& cls : *d.parallel_classes) {
      json c = json::array();
      for (std::size_t b : cls) c.push_back(b + 1);
      classes.push_back(std::move(c));
    }
    out["parallel_classes"] = std::move(classes);
  }
  return out;
}

inline Design design_from_json(const json& j) {
  expect_schema(j, kDesignSchema);
  const auto v = int_field(j, "v");
  if (v < 1) fail(ErrorKind::parse, "v must be positive");
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& blk : field(j, "blocks")) {
    std::vector<std::size_t> b;
    for (const auto& x : blk) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 1 || x.get<std::int64_t>() > v) {
        fail(ErrorKind::parse, "block vertex must be an integer in 1..v");
      }
      b.push_back(static_cast<std::size_t>(x.get<std::int64_t>() - 1));
    }
    blocks.push_back(std::move(b));
  }
  std::optional<std::vector<std::vector<std::size_t>>> classes;
  if (j.contains("parallel_classes")) {
    classes.emplace();
    for (const auto& cls : j.at("parallel_classes")) {
      std::vector<std::size_t> c;
      for (const auto& x : cls) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 1) fail(ErrorKind::parse, "block index must be >= 1");
        c.push_back(static_cast<std::size_t>(x.get<std::int64_t>() - 1));
      }
      classes->push_back(std::move(c));
    }
  }
  Design d = make_design(incidence_from_blocks(static_cast<std::size_t>(v), blocks), std::move(classes));
  const std::pair<const char*, std::int64_t> verified[] = {
      {"k", d.params.k}, {"lambda", d.params.lambda}, {"r", d.params.r}, {"b", d.params.b}};
  for (const auto& [key, value] : verified) {
    if (j.contains(key) && int_field(j, key) != value) {
      fail(ErrorKind::not_bibd, std::string("declared ") + key + " = " + j.at(key).dump() + " differs from verified " +
                                    to_string(d.params));
    }
  }
  return d;
}

inline json certificate_json(const EtfCertificate& c) {
  return {{"schema", kCertificateSchema}, {"d", c.d},
          {"n", c.n},                     {"beta", rational_json(c.beta)},
          {"alpha", rational_json(c.alpha)}, {"gamma_sq", rational_json(c.gamma_sq)},
          {"welch_equality", c.welch_equality}, {"flat", c.flat},
          {"domain", domain_json(c.domain)}};
}

inline json qsd_json(const QsdCertificate& c) {
  const auto& p = c.params;
  return {{"schema", "etf-forge/qsd/v1"}, {"v", p.v}, {"k", p.k}, {"lambda", p.lambda},
          {"r", p.r},                     {"b", p.b}, {"x", c.x}, {"y", c.y}};
}

inline json qsd_params_json(const QsdParams& p) {
  return {{"v", integer_json(p.v)}, {"k", integer_json(p.k)}, {"lambda", integer_json(p.lambda)},
          {"r", integer_json(p.r)}, {"b", integer_json(p.b)}, {"x", integer_json(p.x)},
          {"y", integer_json(p.y)}};
}

inline json srg_json(const SrgParams& s) {
  return {{"schema", "etf-forge/srg/v1"},
          {"b", s.b},
          {"a", s.a},
          {"c", s.c},
          {"mu", s.mu},
          {"theta1", s.theta1 ? rational_json(*s.theta1) : json(nullptr)},
          {"theta2", s.theta2 ? rational_json(*s.theta2) : json(nullptr)}};
}

inline json hadamard_json(const HadamardMatrix& h) {
  return {{"schema", "etf-forge/hadamard-certificate/v1"},
          {"n", h.size()},
          {"kind", h.kind == HadamardKind::real ? "real" : "complex"},
          {"domain", domain_json(domain_of(h.body))}};
}

inline json feasibility_json(const FeasibilityReport& r) {
  const auto radical = [](const Radical& x, const char* parity) {
    return json{{"radicand", rational_json(x.radicand)},
                {"integer", x.value.has_value()},
                {"value", x.value ? integer_json(*x.value) : json(nullptr)},
                {parity, x.parity_ok}};
  };
  return {{"schema", kFeasibilitySchema},
          {"d", r.d},
          {"n", r.n},
          {"q1", radical(r.q1, "odd")},
          {"q2", radical(r.q2, "odd")},
          {"w", radical(r.w, "even")},
          {"n_mod_16", r.n_mod_16},
          {"verdict", r.pass ? "pass" : "fail"}};
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + p.string());
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for " + p.string());
}

inline json parse_json(const std::string& text, const std::string& origin = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse, origin + ": " + e.what());
  }
}

inline json read_json(const std::filesystem::path& p) { return parse_json(read_file(p), p.string()); }

}  // namespace etf::io
