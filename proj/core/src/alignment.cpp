#include "asymdof/alignment.hpp"

#include <cmath>
#include <random>

#include "asymdof/errors.hpp"
#include "parallel.hpp"

namespace asymdof {

namespace {

int other_receiver(int transmitter, int excluded) {
    for (int rx = 1; rx <= kUsers; ++rx) {
        if (rx != transmitter && rx != excluded) return rx;
    }
    return 0;
}

Eigen::VectorXd singular_values(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return {};
    Eigen::BDCSVD<CMatrix> svd(a);
    return svd.singularValues();
}

}  // namespace

ChainSpec build_chain(int root, int length) {
    if (root < 1 || root > kUsers) throw std::invalid_argument("root must be in 1..3");
    if (length < 1) throw std::invalid_argument("tree length must be >= 1");
    ChainSpec c;
    c.root = root;
    c.length = length;
    for (int k = 0; k <= length; ++k) c.segments.push_back(segment_transmitter(root, k));
    for (int k = 0; k < length; ++k) c.alignments.push_back(alignment_receiver(root, k));
    c.start_null = other_receiver(c.segments.front(), c.alignments.front());
    c.end_null = other_receiver(c.segments.back(), c.alignments.back());
    return c;
}

ChannelSet sample_channels(const NetworkDims& dims, std::uint64_t seed) {
    ChannelSet set;
    set.seed = seed;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const auto rows = static_cast<Eigen::Index>(dims.n_int);
    const auto cols = static_cast<Eigen::Index>(dims.m_int);
    for (auto& row : set.h) {
        for (auto& h : row) {
            h.resize(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r) {
                for (Eigen::Index c = 0; c < cols; ++c) {
                    const double re = gauss(rng);
                    const double im = gauss(rng);
                    h(r, c) = {re, im};
                }
            }
        }
    }
    return set;
}

CMatrix chain_system(const ChainSpec& chain, const ChannelSet& channels) {
    const auto n = channels.h[0][0].rows();
    const auto m = channels.h[0][0].cols();
    const auto L = static_cast<Eigen::Index>(chain.length);
    CMatrix a = CMatrix::Zero((L + 2) * n, (L + 1) * m);

    a.block(0, 0, n, m) = channels.at(chain.start_null, chain.segments.front());
    for (Eigen::Index k = 0; k < L; ++k) {
        const int rx = chain.alignments[static_cast<std::size_t>(k)];
        a.block((k + 1) * n, k * m, n, m) = channels.at(rx, chain.segments[static_cast<std::size_t>(k)]);
        a.block((k + 1) * n, (k + 1) * m, n, m) = -channels.at(rx, chain.segments[static_cast<std::size_t>(k + 1)]);
    }
    a.block((L + 1) * n, L * m, n, m) = channels.at(chain.end_null, chain.segments.back());
    return a;
}

CMatrix chain_nullspace(const ChainSpec& chain, const ChannelSet& channels, double tol) {
    const CMatrix a = chain_system(chain, channels);
    const auto n = channels.h[0][0].rows();
    const auto m = channels.h[0][0].cols();
    const std::int64_t predicted =
        std::max<std::int64_t>(0, (chain.length + 1) * m - (chain.length + 2) * n);

    Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    const Eigen::Index dim = a.cols() - rank;
    if (dim != predicted) {
        throw DegenerateChannels("chain (root " + std::to_string(chain.root) + ", L " +
                                 std::to_string(chain.length) + ") has null space of dimension " +
                                 std::to_string(dim) + ", expected " + std::to_string(predicted));
    }
    return svd.matrixV().rightCols(dim);
}

PrecoderSet build_precoders(const NetworkDims& dims, const TreeAllocation& allocation,
                            const ChannelSet& channels, double tol) {
    const auto m = static_cast<Eigen::Index>(dims.m_int);
    const auto counts = allocation.induced_dof();

    PrecoderSet out;
    std::array<Eigen::Index, 3> filled{};
    for (std::size_t i = 0; i < 3; ++i) {
        out.v[i].resize(m, static_cast<Eigen::Index>(counts[i]));
        out.sources[i].reserve(static_cast<std::size_t>(counts[i]));
    }

    for (const auto& entry : allocation.entries) {
        if (entry.branches == 0) continue;
        const auto chain = build_chain(entry.root, entry.length);
        const CMatrix basis = chain_nullspace(chain, channels, tol);
        if (basis.cols() < entry.branches) {
            throw InsufficientBranches("tree at root " + std::to_string(entry.root) + " needs " +
                                       std::to_string(entry.branches) + " branches, null space has " +
                                       std::to_string(basis.cols()));
        }
        for (std::int64_t b = 0; b < entry.branches; ++b) {
            for (int k = 0; k <= chain.length; ++k) {
                const auto tx = static_cast<std::size_t>(chain.segments[static_cast<std::size_t>(k)] - 1);
                const Eigen::VectorXcd block = basis.col(static_cast<Eigen::Index>(b)).segment(k * m, m);
                out.v[tx].col(filled[tx]++) = block.normalized();
                out.sources[tx].push_back(ColumnSource{entry.root, b, k});
            }
        }
    }
    return out;
}

int numerical_rank(const CMatrix& a, double tol) {
    const auto sv = singular_values(a);
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cutoff = tol * sv(0) * std::sqrt(static_cast<double>(a.rows() * a.cols()));
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return rank;
}

TrialRecord verify_receivers(const NetworkDims& dims, const TreeAllocation& allocation,
                             const PrecoderSet& precoders, const ChannelSet& channels, double tol) {
    const auto expected_dof = allocation.induced_dof();
    const auto expected_int = allocation.induced_interference();
    const auto n = static_cast<Eigen::Index>(dims.n_int);

    TrialRecord rec;
    rec.seed = channels.seed;
    rec.channel_seed = channels.seed;
    rec.pass = true;
    for (int j = 1; j <= kUsers; ++j) {
        const CMatrix signal = channels.at(j, j) * precoders.at(j);

        Eigen::Index int_cols = 0;
        for (int i = 1; i <= kUsers; ++i) {
            if (i != j) int_cols += precoders.at(i).cols();
        }
        CMatrix interference(n, int_cols);
        Eigen::Index col = 0;
        for (int i = 1; i <= kUsers; ++i) {
            if (i == j) continue;
            const auto& v = precoders.at(i);
            interference.middleCols(col, v.cols()) = channels.at(j, i) * v;
            col += v.cols();
        }
        CMatrix joint(n, signal.cols() + interference.cols());
        joint << signal, interference;

        auto& r = rec.receivers[static_cast<std::size_t>(j - 1)];
        r.expected_signal = expected_dof.user(j);
        r.expected_interference = expected_int.user(j);
        r.signal_rank = numerical_rank(signal, tol);
        r.interference_rank = numerical_rank(interference, tol);
        r.joint_rank = numerical_rank(joint, tol);
        r.pass = r.interference_rank == r.expected_interference && r.signal_rank == r.expected_signal &&
                 r.joint_rank == r.signal_rank + r.interference_rank;
        if (!r.pass) {
            rec.pass = false;
            if (!rec.note.empty()) rec.note += "; ";
            rec.note += "receiver " + std::to_string(j) + ": signal " + std::to_string(r.signal_rank) + "/" +
                        std::to_string(r.expected_signal) + ", interference " +
                        std::to_string(r.interference_rank) + "/" + std::to_string(r.expected_interference) +
                        ", joint " + std::to_string(r.joint_rank);
        }
    }
    return rec;
}

std::uint64_t derived_seed(std::uint64_t seed, int attempt) {
    if (attempt == 0) return seed;
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

VerificationReport verify_point(const NetworkDims& dims, const DofTuple& target, int trials,
                                std::uint64_t base_seed, double tol, int workers) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be > 0");
    auto allocation = allocation_search(dims, target);
    if (!allocation) throw InfeasibleTarget("no tree allocation reaches the target");

    VerificationReport report;
    report.dims = dims;
    report.target = target;
    report.allocation = *allocation;
    report.trials = trials;
    report.tol = tol;
    report.records.resize(static_cast<std::size_t>(trials));

    detail::parallel_for(trials, workers, [&](int t) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(t);
        TrialRecord rec;
        std::string degenerate;
        bool done = false;
        for (int attempt = 0; attempt <= kMaxResamples && !done; ++attempt) {
            const auto channels = sample_channels(dims, derived_seed(seed, attempt));
            try {
                const auto precoders = build_precoders(dims, *allocation, channels, tol);
                rec = verify_receivers(dims, *allocation, precoders, channels, tol);
                rec.resamples = attempt;
                done = true;
            } catch (const DegenerateChannels& e) {
                degenerate = e.what();
            }
        }
        if (!done) {
            rec = TrialRecord{};
            rec.channel_seed = derived_seed(seed, kMaxResamples);
            rec.resamples = kMaxResamples;
            rec.pass = false;
            rec.note = "degenerate channels after " + std::to_string(kMaxResamples) + " resamples: " + degenerate;
        }
        rec.seed = seed;
        report.records[static_cast<std::size_t>(t)] = std::move(rec);
    });

    report.overall_pass = true;
    for (const auto& rec : report.records) {
        if (rec.pass) continue;
        report.overall_pass = false;
        report.failure_notes.push_back("seed " + std::to_string(rec.seed) + ": " + rec.note);
    }
    return report;
}

}  // namespace asymdof
