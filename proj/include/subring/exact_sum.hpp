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

#pragma once

#include <vector>

namespace subring {

/// Correctly rounded floating-point summation (Shewchuk's partials). The
/// result depends only on the multiset of added values, never on their
/// order, so costs assembled from the same terms compare bit-equal.
class ExactSum {
 public:
  void add(double x);
  double value() const;

 private:
  std::vector<double> partials_;
};

}  // namespace subring
