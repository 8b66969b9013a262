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

// Everything except the catalog, which additionally needs OpenSSL.

#include "etf_forge/construct.hpp"
#include "etf_forge/design.hpp"
#include "etf_forge/error.hpp"
#include "etf_forge/exact_scalar.hpp"
#include "etf_forge/frame.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/io.hpp"
#include "etf_forge/matrix.hpp"
#include "etf_forge/qsd_bridge.hpp"
#include "etf_forge/recipe.hpp"
