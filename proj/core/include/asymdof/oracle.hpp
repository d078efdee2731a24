#pragma once

// Scheme-independent feasibility evidence by alternating interference-leakage
// minimization over the original and reciprocal networks.
//
// A converged run (leakage below tolerance) is evidence that a linear
// alignment solution exists for the tuple on that channel draw. A run that
// stalls proves nothing, so the only negative verdict is INCONCLUSIVE.

#include <cstdint>
#include <string_view>
#include <vector>

#include "asymdof/alignment.hpp"
#include "asymdof/model.hpp"

namespace asymdof {

inline constexpr double kDefaultLeakageTol = 1e-6;
inline constexpr int kDefaultMaxIters = 5000;

struct OracleTrial {
    std::uint64_t seed = 0;
    int iterations_used = 0;
    double final_leakage = 0.0;
    bool converged = false;
    /// Leakage after each receive-side update; trace.back() == final_leakage.
    std::vector<double> trace;

    friend bool operator==(const OracleTrial&, const OracleTrial&) = default;
};

enum class OracleVerdict { FeasibleEvidence, Inconclusive };

std::string_view to_string(OracleVerdict v);
OracleVerdict parse_oracle_verdict(std::string_view text);

struct OracleResult {
    NetworkDims dims;
    DofTuple target;
    int trials = 0;
    int max_iters = kDefaultMaxIters;
    double leakage_tol = kDefaultLeakageTol;
    std::vector<OracleTrial> records;  ///< ordered by seed
    OracleVerdict verdict = OracleVerdict::Inconclusive;

    double best_leakage() const;

    friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

/// One alternating-minimization run. `target` is in unscaled units and must
/// map to integers <= min(m_int, n_int) in the scaled realization, otherwise
/// InvalidTarget. Users with zero streams are skipped.
OracleTrial leakage_minimize(const NetworkDims& dims, const DofTuple& target, const ChannelSet& channels,
                             int max_iters = kDefaultMaxIters, double leakage_tol = kDefaultLeakageTol);

/// Runs seeds base_seed .. base_seed+trials-1, each on fresh channels and a
/// fresh initialization.
OracleResult oracle_membership(const NetworkDims& dims, const DofTuple& target, int trials,
                               std::uint64_t base_seed, int max_iters = kDefaultMaxIters,
                               double leakage_tol = kDefaultLeakageTol, int workers = 1);

}  // namespace asymdof
