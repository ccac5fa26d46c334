// Copyright 2026 The kickdyn Authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "kickdyn/error.hpp"

namespace kickdyn {

/// Composite Simpson rule on [a, b] with an even number of panels of width <= max_step.
template <class F>
double simpson(F&& f, double a, double b, double max_step) {
  if (!(b > a)) return 0.0;
  if (!(max_step > 0.0)) throw NumericalError("simpson: step must be positive");
  auto n = static_cast<std::size_t>(std::ceil((b - a) / max_step));
  n = std::max<std::size_t>(2, n + (n % 2));
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double x = a + h * static_cast<double>(i);
    (i % 2 ? odd : even) += f(x);
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

}  // namespace kickdyn
