/*
Copyright 2026 The subring Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "subring/exact_sum.hpp"

#include <cmath>

namespace subring {

void ExactSum::add(double x) {
  std::size_t i = 0;
  for (double y : partials_) {
    if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) partials_[i++] = lo;
    x = hi;
  }
  partials_.resize(i);
  partials_.push_back(x);
}

double ExactSum::value() const {
  if (partials_.empty()) return 0.0;
  auto i = partials_.size() - 1;
  double hi = partials_[i];
  double lo = 0.0;
  while (i > 0) {
    const double x = hi;
    const double y = partials_[--i];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // Round-half-even correction when the remaining partials push the
  // discarded tail past the halfway point.
  if (i > 0 && ((lo < 0.0 && partials_[i - 1] < 0.0) ||
                (lo > 0.0 && partials_[i - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

}  // namespace subring
