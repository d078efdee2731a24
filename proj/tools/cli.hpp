#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asymdof/alignment.hpp"
#include "asymdof/model.hpp"
#include "asymdof/oracle.hpp"

namespace asymdof::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Classify, Region, Scheme, Verify, Oracle, Sweep };
enum class Format { Json, Csv };

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

struct RunConfig {
    Command command = Command::Classify;
    std::optional<Rational> m;
    std::optional<Rational> n;
    std::optional<DofTuple> target;
    std::optional<DofTuple> check;
    bool enumerate = false;
    int trials = 20;
    std::uint64_t seed = 0;
    double tol = kDefaultRankTol;
    double leakage_tol = kDefaultLeakageTol;
    int max_iters = kDefaultMaxIters;
    int workers = 1;
    std::optional<std::string> output_path;
    Format format = Format::Json;
    // sweep grid; defaults to (N+1)/N .. (2N-1)/N in steps of 1/N
    std::optional<Rational> gamma_min;
    std::optional<Rational> gamma_max;
    std::optional<Rational> gamma_step;
};

/// Parses "d1,d2,d3" with rational components.
DofTuple parse_tuple(const std::string& text);

/// Parses argv into a config. Returns nullopt after printing help or a
/// one-line usage diagnostic; `exit_code` is set accordingly.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code);

/// Runs the command and writes the report to config.output_path (or `out`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asymdof::cli
