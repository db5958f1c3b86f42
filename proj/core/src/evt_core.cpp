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

#include "tailboot/evt_core.hpp"

#include <cmath>
#include <string>

#include "tailboot/errors.hpp"
#include "tailboot/numeric.hpp"

namespace tailboot {

double gamma_minus_from_moments(double h, double m) {
    return 1.0 - 0.5 / (1.0 - h * h / m);
}

FitStatus try_fit_tail(const Sample& sample, std::size_t k, TailFit& out) noexcept {
    const std::size_t n = sample.size();
    if (k < 1 || k > n - 1) return FitStatus::BadK;

    const double threshold = sample.order_stat(n - k);
    if (!(threshold > 0.0)) return FitStatus::NonPositiveTail;

    const double log_threshold = std::log(threshold);
    CompensatedSum sum;
    CompensatedSum sum_sq;
    for (std::size_t i = 0; i < k; ++i) {
        const double spacing = std::log(sample.order_stat(n - i)) - log_threshold;
        sum.add(spacing);
        sum_sq.add(spacing * spacing);
    }
    const double h = sum.value() / static_cast<double>(k);
    const double m = sum_sq.value() / static_cast<double>(k);

    // m == 0: all top k+1 order statistics equal. h*h >= m: all k spacings
    // equal (always the case for k == 1), which drives gamma_minus to -inf.
    if (m <= 0.0 || h * h >= m) return FitStatus::DegenerateTail;

    const double gamma_minus = gamma_minus_from_moments(h, m);
    out.n = n;
    out.k = k;
    out.h_n = h;
    out.m_n = m;
    out.gamma_plus = h;
    out.gamma_minus = gamma_minus;
    out.gamma = h + gamma_minus;
    out.scale_a = threshold * h * (1.0 - gamma_minus);
    out.loc_b = threshold;
    return FitStatus::Ok;
}

TailFit fit_tail(const Sample& sample, std::size_t k) {
    TailFit fit;
    switch (try_fit_tail(sample, k, fit)) {
        case FitStatus::Ok:
            return fit;
        case FitStatus::BadK:
            throw BadK("k must satisfy 1 <= k <= n-1; got k=" + std::to_string(k) +
                       ", n=" + std::to_string(sample.size()));
        case FitStatus::NonPositiveTail:
            throw NonPositiveTail("order statistic X_{n-k,n} is not positive");
        case FitStatus::DegenerateTail:
            throw DegenerateTail("top k+1 order statistics carry no spread at k=" +
                                 std::to_string(k));
    }
    throw Error("unreachable");
}

}  // namespace tailboot
