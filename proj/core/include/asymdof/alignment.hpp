#pragma once

// Alignment trees as explicit linear systems over sampled channels.
//
// A tree of length L rooted at transmitter r is a chain of L+1 transmit
// segments v_0..v_L on transmitters r, r+1, r+2, r, ... (cyclic). Consecutive
// segments k and k+1 are aligned at the one receiver that is the intended
// receiver of neither; the first and last segments are zero-forced at their
// remaining cross receiver. Stacking these constraints gives an
// (L+2)N x (L+1)M system whose null space holds the tree's branches.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "asymdof/model.hpp"
#include "asymdof/region.hpp"

namespace asymdof {

using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultRankTol = 1e-9;

struct ChainSpec {
    int root = 1;
    int length = 1;
    std::vector<int> segments;    ///< L+1 transmitter numbers
    std::vector<int> alignments;  ///< L receiver numbers, event k joins segments k and k+1
    int start_null = 0;
    int end_null = 0;

    friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

ChainSpec build_chain(int root, int length);

/// Cross channels H[rx][tx], each n_int x m_int with i.i.d. CN(0, 1) entries.
struct ChannelSet {
    std::uint64_t seed = 0;
    std::array<std::array<CMatrix, 3>, 3> h;

    const CMatrix& at(int rx, int tx) const {
        return h[static_cast<std::size_t>(rx - 1)][static_cast<std::size_t>(tx - 1)];
    }
};

/// Deterministic in (dims, seed): receivers outer, transmitters inner,
/// row-major entries, real part drawn before imaginary part.
ChannelSet sample_channels(const NetworkDims& dims, std::uint64_t seed);

/// The stacked (L+2)N x (L+1)M constraint matrix of a chain.
CMatrix chain_system(const ChainSpec& chain, const ChannelSet& channels);

/// Orthonormal basis of the chain system's numerical null space (singular
/// values <= tol * sigma_max count as zero). Throws DegenerateChannels when
/// the dimension differs from max(0, (L+1)M - (L+2)N).
CMatrix chain_nullspace(const ChainSpec& chain, const ChannelSet& channels, double tol = kDefaultRankTol);

struct ColumnSource {
    int root = 1;
    std::int64_t branch = 0;
    int segment = 0;

    friend bool operator==(const ColumnSource&, const ColumnSource&) = default;
};

struct PrecoderSet {
    std::array<CMatrix, 3> v;  ///< v[i]: m_int x (DoF of user i+1), unit-norm columns
    std::array<std::vector<ColumnSource>, 3> sources;

    const CMatrix& at(int tx) const { return v[static_cast<std::size_t>(tx - 1)]; }
};

/// Throws DegenerateChannels, or InsufficientBranches if a tree asks for more
/// branches than its null space holds.
PrecoderSet build_precoders(const NetworkDims& dims, const TreeAllocation& allocation,
                            const ChannelSet& channels, double tol = kDefaultRankTol);

struct ReceiverCheck {
    int signal_rank = 0;
    int interference_rank = 0;
    int joint_rank = 0;
    std::int64_t expected_signal = 0;
    std::int64_t expected_interference = 0;
    bool pass = false;

    friend bool operator==(const ReceiverCheck&, const ReceiverCheck&) = default;
};

struct TrialRecord {
    std::uint64_t seed = 0;          ///< trial seed as requested
    std::uint64_t channel_seed = 0;  ///< seed of the draw actually used
    int resamples = 0;
    std::array<ReceiverCheck, 3> receivers;
    bool pass = false;
    std::string note;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Numerical rank with threshold tol * sigma_max * sqrt(rows * cols).
int numerical_rank(const CMatrix& a, double tol);

/// Rank accounting at all three receivers. Failures are recorded, not thrown.
TrialRecord verify_receivers(const NetworkDims& dims, const TreeAllocation& allocation,
                             const PrecoderSet& precoders, const ChannelSet& channels,
                             double tol = kDefaultRankTol);

struct VerificationReport {
    NetworkDims dims;
    DofTuple target;
    TreeAllocation allocation;
    int trials = 0;
    double tol = kDefaultRankTol;
    std::vector<TrialRecord> records;  ///< ordered by seed
    bool overall_pass = false;
    std::vector<std::string> failure_notes;

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

inline constexpr int kMaxResamples = 3;

/// Monte-Carlo check of `target` on seeds base_seed .. base_seed+trials-1.
/// A degenerate draw is resampled up to kMaxResamples times before the trial
/// is recorded as failed. Throws InfeasibleTarget when allocation_search
/// finds nothing. Trials run on up to `workers` threads; the report does not
/// depend on the worker count.
VerificationReport verify_point(const NetworkDims& dims, const DofTuple& target, int trials,
                                std::uint64_t base_seed, double tol = kDefaultRankTol, int workers = 1);

/// Seed for resample attempt `attempt` (0 returns `seed` itself).
std::uint64_t derived_seed(std::uint64_t seed, int attempt);

}  // namespace asymdof
