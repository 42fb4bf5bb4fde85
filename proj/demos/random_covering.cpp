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

// Random partial coverings: the union of N random caps of total mass
// alpha approaches 1 - e^{-alpha} from above, in every dimension.

#include <cmath>
#include <cstdio>

#include "capcover/capcover.hpp"

int main() {
  using namespace capcover;
  const double alpha = 1.0;
  std::printf("limit 1 - e^-1 = %.6f\n\n", -std::expm1(-alpha));
  std::printf("%4s %6s %10s %10s %10s\n", "d", "N", "mc", "se", "exact");
  for (int d : {3, 8, 30}) {
    for (int n : {4, 32, 256}) {
      const auto est = mean_coverage_over_configs(Dim(d), n, alpha, RngSpec{2026}, 10, 20000);
      std::printf("%4d %6d %10.5f %10.5f %10.5f\n", d, n, est.mean, est.std_error,
                  expected_random_coverage(n, alpha));
    }
  }
  return 0;
}
