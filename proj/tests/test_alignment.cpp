#include <gtest/gtest.h>

#include <random>

#include "asymdof/alignment.hpp"
#include "asymdof/errors.hpp"
#include "oracles.hpp"

using namespace asymdof;

namespace {

NetworkDims dims(std::int64_t m, std::int64_t n) { return make_dims(Rational(m), Rational(n)); }

DofTuple tuple(Rational a, Rational b, Rational c) { return DofTuple{{a, b, c}}; }

const TreeAllocation kTwoTreeAllocation{{{1, 4, 6}, {2, 4, 6}}};

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = {g(rng), g(rng)};
    return a;
}

}  // namespace

TEST(BuildChain, LengthFourTree) {
    const auto c = build_chain(1, 4);
    EXPECT_EQ(c.segments, (std::vector<int>{1, 2, 3, 1, 2}));
    EXPECT_EQ(c.alignments, (std::vector<int>{3, 1, 2, 3}));
    EXPECT_EQ(c.start_null, 2);
    EXPECT_EQ(c.end_null, 1);
}

TEST(BuildChain, ShortTrees) {
    const auto c = build_chain(2, 1);
    EXPECT_EQ(c.segments, (std::vector<int>{2, 3}));
    EXPECT_EQ(c.alignments, (std::vector<int>{1}));
    EXPECT_EQ(c.start_null, 3);
    EXPECT_EQ(c.end_null, 2);
    EXPECT_THROW(build_chain(0, 2), std::invalid_argument);
    EXPECT_THROW(build_chain(1, 0), std::invalid_argument);
}

TEST(BuildChainProperty, StructuralInvariants) {
    for (int root = 1; root <= 3; ++root) {
        for (int L = 1; L <= 12; ++L) {
            const auto c = build_chain(root, L);
            EXPECT_EQ(c.segments, oracle::walk_transmitters(root, L));
            ASSERT_EQ(c.alignments.size(), static_cast<std::size_t>(L));
            for (int k = 0; k < L; ++k) {
                const int a = c.segments[static_cast<std::size_t>(k)];
                const int b = c.segments[static_cast<std::size_t>(k) + 1];
                const int r = c.alignments[static_cast<std::size_t>(k)];
                EXPECT_NE(r, a);
                EXPECT_NE(r, b);
            }
            // The null receivers are cross receivers not already used for alignment.
            EXPECT_NE(c.start_null, c.segments.front());
            EXPECT_NE(c.start_null, c.alignments.front());
            EXPECT_NE(c.end_null, c.segments.back());
            EXPECT_NE(c.end_null, c.alignments.back());
        }
    }
}

TEST(SampleChannels, DeterministicShapes) {
    const auto d = dims(5, 4);
    const auto a = sample_channels(d, 11);
    const auto b = sample_channels(d, 11);
    const auto c = sample_channels(d, 12);
    for (int rx = 1; rx <= 3; ++rx) {
        for (int tx = 1; tx <= 3; ++tx) {
            EXPECT_EQ(a.at(rx, tx).rows(), 4);
            EXPECT_EQ(a.at(rx, tx).cols(), 5);
            EXPECT_EQ(a.at(rx, tx), b.at(rx, tx));
            EXPECT_NE(a.at(rx, tx), c.at(rx, tx));
        }
    }
}

TEST(SampleChannels, FixedStreamLayout) {
    const auto d = dims(3, 2);
    const auto ch = sample_channels(d, 99);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    for (int rx = 1; rx <= 3; ++rx)
        for (int tx = 1; tx <= 3; ++tx)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double re = g(rng);
                    const double im = g(rng);
                    EXPECT_EQ(ch.at(rx, tx)(i, j), std::complex<double>(re, im));
                }
}

TEST(SampleChannels, UnitVariance) {
    const auto d = dims(60, 40);
    const auto ch = sample_channels(d, 3);
    double power = 0;
    for (int rx = 1; rx <= 3; ++rx)
        for (int tx = 1; tx <= 3; ++tx) power += ch.at(rx, tx).squaredNorm();
    EXPECT_NEAR(power / (9.0 * 60 * 40), 1.0, 0.03);
}

TEST(ChainSystem, Shape) {
    const auto d = dims(45, 36);
    const auto ch = sample_channels(d, 1);
    const auto a = chain_system(build_chain(1, 4), ch);
    EXPECT_EQ(a.rows(), 6 * 36);
    EXPECT_EQ(a.cols(), 5 * 45);
}

TEST(ChainNullspace, Dimensions) {
    struct Case {
        std::int64_t m, n;
        int length;
        Eigen::Index dim;
    };
    for (const auto& c : {Case{45, 36, 4, 9}, Case{10, 8, 4, 2}, Case{48, 36, 3, 12}, Case{45, 36, 3, 0}}) {
        const auto d = dims(c.m, c.n);
        for (int root = 1; root <= 3; ++root) {
            const auto ch = sample_channels(d, 5);
            const auto chain = build_chain(root, c.length);
            const auto v = chain_nullspace(chain, ch);
            EXPECT_EQ(v.cols(), c.dim);
            EXPECT_EQ(v.rows(), (c.length + 1) * c.m);
            if (v.cols() == 0) continue;
            const auto a = chain_system(chain, ch);
            // Witness: every null vector solves the system, and the basis is orthonormal.
            EXPECT_LT((a * v).norm() / a.norm(), 1e-10);
            EXPECT_LT((v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).norm(), 1e-10);
        }
    }
}

TEST(ChainNullspace, WitnessSatisfiesEachConstraint) {
    const auto d = dims(45, 36);
    const auto ch = sample_channels(d, 8);
    const auto chain = build_chain(2, 4);
    const auto v = chain_nullspace(chain, ch);
    const auto m = d.m_int;
    auto seg = [&](int k) { return v.middleRows(k * m, m); };
    EXPECT_LT((ch.at(chain.start_null, chain.segments.front()) * seg(0)).norm(), 1e-9);
    EXPECT_LT((ch.at(chain.end_null, chain.segments.back()) * seg(4)).norm(), 1e-9);
    for (int k = 0; k < 4; ++k) {
        const int r = chain.alignments[static_cast<std::size_t>(k)];
        const CMatrix lhs = ch.at(r, chain.segments[static_cast<std::size_t>(k)]) * seg(k);
        const CMatrix rhs = ch.at(r, chain.segments[static_cast<std::size_t>(k) + 1]) * seg(k + 1);
        EXPECT_LT((lhs - rhs).norm(), 1e-9);
    }
}

TEST(ChainNullspace, ZeroChannelsAreDegenerate) {
    const auto d = dims(5, 4);
    auto ch = sample_channels(d, 1);
    for (auto& row : ch.h)
        for (auto& h : row) h.setZero();
    EXPECT_THROW(chain_nullspace(build_chain(1, 4), ch), DegenerateChannels);
}

TEST(ChainNullspace, RankDeficientChannelsAreDegenerate) {
    const auto d = dims(45, 36);
    auto ch = sample_channels(d, 1);
    // Rank-one cross channels give the chain far more null directions.
    for (auto& row : ch.h)
        for (auto& h : row) h = random_matrix(36, 1, 3) * random_matrix(1, 45, 4);
    EXPECT_THROW(chain_nullspace(build_chain(1, 4), ch), DegenerateChannels);
}

TEST(BuildPrecoders, SizesAndNorms) {
    const auto d = dims(45, 36);
    const auto ch = sample_channels(d, 2);
    const auto p = build_precoders(d, kTwoTreeAllocation, ch);
    EXPECT_EQ(p.at(1).cols(), 18);
    EXPECT_EQ(p.at(2).cols(), 24);
    EXPECT_EQ(p.at(3).cols(), 18);
    for (int tx = 1; tx <= 3; ++tx) {
        EXPECT_EQ(p.at(tx).rows(), 45);
        EXPECT_EQ(p.sources[static_cast<std::size_t>(tx - 1)].size(), static_cast<std::size_t>(p.at(tx).cols()));
        for (Eigen::Index j = 0; j < p.at(tx).cols(); ++j) EXPECT_NEAR(p.at(tx).col(j).norm(), 1.0, 1e-12);
    }
}

TEST(BuildPrecoders, InsufficientBranches) {
    const auto d = dims(45, 36);
    const auto ch = sample_channels(d, 2);
    EXPECT_THROW(build_precoders(d, TreeAllocation{{{1, 4, 10}}}, ch), InsufficientBranches);
}

TEST(NumericalRank, KnownRanks) {
    const CMatrix a = random_matrix(20, 3, 1) * random_matrix(3, 15, 2);
    EXPECT_EQ(numerical_rank(a, kDefaultRankTol), 3);
    EXPECT_EQ(numerical_rank(CMatrix::Zero(4, 4), kDefaultRankTol), 0);
    EXPECT_EQ(numerical_rank(random_matrix(6, 9, 3), kDefaultRankTol), 6);
}

TEST(VerifyReceivers, TwoTreeAllocationPasses) {
    const auto d = dims(45, 36);
    const auto ch = sample_channels(d, 4);
    const auto p = build_precoders(d, kTwoTreeAllocation, ch);
    const auto rec = verify_receivers(d, kTwoTreeAllocation, p, ch);
    EXPECT_TRUE(rec.pass) << rec.note;
    const std::array<std::array<int, 3>, 3> expected{{{18, 18, 36}, {24, 12, 36}, {18, 18, 36}}};
    for (std::size_t u = 0; u < 3; ++u) {
        EXPECT_EQ(rec.receivers[u].signal_rank, expected[u][0]);
        EXPECT_EQ(rec.receivers[u].interference_rank, expected[u][1]);
        EXPECT_EQ(rec.receivers[u].joint_rank, expected[u][2]);
        EXPECT_TRUE(rec.receivers[u].pass);
    }
}

TEST(VerifyReceivers, RandomPrecodersFail) {
    const auto d = dims(45, 36);
    const auto ch = sample_channels(d, 4);
    auto p = build_precoders(d, kTwoTreeAllocation, ch);
    for (int tx = 1; tx <= 3; ++tx) {
        auto& v = p.v[static_cast<std::size_t>(tx - 1)];
        v = random_matrix(v.rows(), v.cols(), 100 + static_cast<std::uint64_t>(tx));
    }
    const auto rec = verify_receivers(d, kTwoTreeAllocation, p, ch);
    EXPECT_FALSE(rec.pass);
}

TEST(VerifyPoint, WorkedPointPasses) {
    const auto d = make_dims(parse_rational("11.25"), Rational(9));
    const auto rep = verify_point(d, tuple(Rational(9, 2), 6, Rational(9, 2)), 3, 0);
    EXPECT_TRUE(rep.overall_pass);
    EXPECT_EQ(rep.records.size(), 3u);
    EXPECT_TRUE(rep.failure_notes.empty());
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        EXPECT_EQ(rep.records[i].seed, i);
        EXPECT_TRUE(rep.records[i].pass);
    }
}

TEST(VerifyPoint, ZeroTargetIsTrivial) {
    const auto rep = verify_point(dims(5, 4), tuple(0, 0, 0), 2, 0);
    EXPECT_TRUE(rep.overall_pass);
    EXPECT_TRUE(rep.allocation.entries.empty());
}

TEST(VerifyPoint, InfeasibleTargetThrows) {
    EXPECT_THROW(verify_point(dims(45, 36), tuple(21, 21, 21), 1, 0), InfeasibleTarget);
}

TEST(VerifyPoint, DeterministicAndWorkerInvariant) {
    const auto d = dims(13, 10);
    const auto target = tuple(2, 3, 2);
    const auto a = verify_point(d, target, 6, 40, kDefaultRankTol, 1);
    const auto b = verify_point(d, target, 6, 40, kDefaultRankTol, 1);
    const auto c = verify_point(d, target, 6, 40, kDefaultRankTol, 4);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_TRUE(a.overall_pass);
}

TEST(DerivedSeed, Stream) {
    EXPECT_EQ(derived_seed(17, 0), 17u);
    EXPECT_NE(derived_seed(17, 1), 17u);
    EXPECT_NE(derived_seed(17, 1), derived_seed(17, 2));
    EXPECT_NE(derived_seed(17, 1), derived_seed(18, 1));
}
