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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tailboot {

/// Fixed default master seed; reproducibility outranks convenience, so no
/// command ever seeds from the clock. Overridden by the TAILBOOT_SEED
/// environment variable, which in turn yields to an explicit --seed flag.
inline constexpr std::uint64_t kDefaultSeed = 1729;

enum class Command { Fit, Ci, Sweep, Coverage, LimitDist };
enum class OutputFormat { Json, Csv };

/// Parsed command line for one run. Fields mirror the CLI flags; only the
/// fields of the active command are meaningful.
struct RunConfig {
    Command command = Command::Fit;
    OutputFormat format = OutputFormat::Json;
    std::string output_path = "-";  ///< "-" writes to stdout
    std::uint64_t seed = kDefaultSeed;
    std::size_t workers = 1;

    // fit / ci / sweep
    std::string input_path;
    std::size_t k = 0;

    // ci
    std::string stat = "tailprob";  ///< tailprob | quantile | gamma | scale | loc
    std::optional<double> x_target;
    std::optional<double> p_target;
    std::size_t replicates = 1000;
    std::string method = "efron";
    double level = 0.95;
    bool studentized = true;
    std::string scaling = "hat";  ///< hat | true
    std::optional<double> true_pn;
    bool replicate_scaling = false;

    // sweep
    std::size_t k_min = 20;
    std::size_t k_max = 300;
    std::size_t k_step = 5;
    std::vector<std::size_t> k_list;  ///< overrides k_min/k_max/k_step if set

    // coverage
    std::string model;
    std::size_t n = 1000;
    double np_n = 0.5;
    std::size_t mc_reps = 1000;
    std::vector<std::string> methods;  ///< default: all four

    // limitdist
    double gamma = 0.0;
    std::size_t paths = 20000;
    std::size_t grid = 32768;
};

struct RunResult {
    int exit_code = 0;
    std::string artifact;  ///< JSON or CSV payload (also carries error objects)
    std::string message;   ///< human-readable error text, empty on success
};

/// Parses argv-style arguments (without the program name).
/// Throws ConfigError on malformed input.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a parsed configuration. Never throws: failures come back as the
/// documented exit codes (2 input error, 3 estimator failure) with an error
/// artifact.
RunResult run(const RunConfig& config);

/// parse + run + emit in one step; the entry point used by the binary and by
/// in-process tests.
RunResult run_cli(const std::vector<std::string>& args);

/// main() adapter: runs, writes the artifact to the configured destination
/// (stdout or file), errors to stderr, and returns the exit code.
int cli_main(int argc, char** argv);

}  // namespace tailboot
