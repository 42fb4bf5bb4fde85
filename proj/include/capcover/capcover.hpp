// Copyright 2026 The capcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "capcover/bounds.hpp"
#include "capcover/cap_geometry.hpp"
#include "capcover/coverage.hpp"
#include "capcover/error.hpp"
#include "capcover/gaussian_verify.hpp"
#include "capcover/optimizer.hpp"
#include "capcover/parallel.hpp"
#include "capcover/quadrature.hpp"
#include "capcover/sampling.hpp"
#include "capcover/special_functions.hpp"

namespace capcover {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace capcover
