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

#include "tailboot/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "tailboot/errors.hpp"

namespace tailboot {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_value(std::string_view token, double& out) {
    const auto* end = token.data() + token.size();
    auto [p, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && p == end;
}

}  // namespace

std::vector<double> load_csv_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file '" + path + "'");

    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view token = trim(line);
        if (token.empty()) continue;

        double v = 0.0;
        if (!parse_value(token, v)) {
            if (first_content_line) {
                first_content_line = false;  // header line
                continue;
            }
            throw ParseError(line_no, "not a number: '" + std::string(token) + "'");
        }
        first_content_line = false;
        if (!std::isfinite(v)) {
            throw ParseError(line_no, "non-finite value");
        }
        values.push_back(v);
    }
    if (values.empty()) throw EmptyFile("no data rows in '" + path + "'");
    return values;
}

Sample load_csv(const std::string& path) { return Sample(load_csv_values(path)); }

}  // namespace tailboot
