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

#include <cmath>
#include <cstddef>

namespace tailboot {

/// Below this absolute threshold on gamma, expressions of the form
/// (t^gamma - 1)/gamma switch to their gamma -> 0 limit form.
inline constexpr double kGammaSwitchTol = 1e-8;

/// Neumaier compensated accumulator. Keeps the running error of a long sum
/// below a few ulps independent of the number of terms.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// (t^gamma - 1)/gamma, continuous at gamma = 0 where it equals log t.
/// Stable for any t > 0 because expm1 carries the cancellation.
inline double pow_ratio(double gamma, double t) {
    const double log_t = std::log(t);
    if (std::abs(gamma) <= kGammaSwitchTol) return log_t;
    return std::expm1(gamma * log_t) / gamma;
}

}  // namespace tailboot
