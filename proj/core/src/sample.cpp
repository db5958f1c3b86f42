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

#include "tailboot/sample.hpp"

#include <algorithm>
#include <cmath>

#include "tailboot/errors.hpp"

namespace tailboot {

Sample::Sample(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.size() < 3) {
        throw BadSample("sample needs at least 3 observations, got " +
                        std::to_string(sorted_.size()));
    }
    for (double v : sorted_) {
        if (!std::isfinite(v)) throw BadSample("sample contains a non-finite value");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

}  // namespace tailboot
