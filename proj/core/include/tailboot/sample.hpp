/*
   Copyright 2026 the tailboot authors

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

#include <cstddef>
#include <vector>

namespace tailboot {

/// An immutable batch of observations with sorted access.
///
/// Values are sorted ascending once at construction; every estimator in the
/// library works off order statistics, so the original input order is not
/// retained. Requires n >= 3 and finite entries (BadSample otherwise).
/// Safe to share across threads.
class Sample {
public:
    explicit Sample(std::vector<double> values);

    std::size_t size() const noexcept { return sorted_.size(); }

    /// i-th order statistic, 1-based: order_stat(1) is the minimum,
    /// order_stat(n) the maximum.
    double order_stat(std::size_t i) const noexcept { return sorted_[i - 1]; }

    const std::vector<double>& sorted() const noexcept { return sorted_; }

private:
    std::vector<double> sorted_;
};

}  // namespace tailboot
