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

#include <string>
#include <vector>

#include "tailboot/sample.hpp"

namespace tailboot {

/// Reads a single-column numeric CSV (UTF-8, LF or CRLF). A single leading
/// header line is skipped when its first token does not parse as a number.
/// Rows that fail to parse or hold non-finite values raise ParseError with
/// the 1-based line number; a file with no data rows raises EmptyFile.
std::vector<double> load_csv_values(const std::string& path);

/// load_csv_values wrapped into a Sample.
Sample load_csv(const std::string& path);

}  // namespace tailboot
