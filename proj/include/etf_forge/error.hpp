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

#include <stdexcept>
#include <string>
#include <string_view>

namespace etf {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  incompatible_domain,
  not_bibd,
  symmetric_design,
  not_qsd,
  not_srg,
  unequal_norms,
  not_tight,
  not_equiangular,
  welch_violated,
  not_flat,
  not_hadamard,
  naimark_violated,
  parameter_gate,
  no_recipe,
  parse,
  io,
  audit,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::incompatible_domain: return "incompatible domain";
    case ErrorKind::not_bibd: return "not a BIBD";
    case ErrorKind::symmetric_design: return "symmetric design";
    case ErrorKind::not_qsd: return "not quasi-symmetric";
    case ErrorKind::not_srg: return "not strongly regular";
    case ErrorKind::unequal_norms: return "unequal norms";
    case ErrorKind::not_tight: return "not tight";
    case ErrorKind::not_equiangular: return "not equiangular";
    case ErrorKind::welch_violated: return "Welch equality violated";
    case ErrorKind::not_flat: return "not flat";
    case ErrorKind::not_hadamard: return "not Hadamard";
    case ErrorKind::naimark_violated: return "Naimark identity violated";
    case ErrorKind::parameter_gate: return "parameter gate";
    case ErrorKind::no_recipe: return "no recipe";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::io: return "i/o error";
    case ErrorKind::audit: return "audit failure";
  }
  return "unknown";
}

// Every library failure is reported through this type; kind() lets callers
// (and the CLI exit-code mapping) distinguish the violated identity.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace etf
