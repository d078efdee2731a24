#include "asymdof/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "asymdof/errors.hpp"
#include "asymdof/region.hpp"
#include "parallel.hpp"

namespace asymdof {

namespace {

// Separates the initialization stream from the channel stream of a seed.
constexpr int kInitStream = 101;

std::array<Eigen::Index, 3> scaled_streams(const NetworkDims& dims, const DofTuple& target) {
    std::array<Eigen::Index, 3> d{};
    const auto cap = std::min(dims.m_int, dims.n_int);
    for (std::size_t i = 0; i < 3; ++i) {
        const Rational scaled = target[i] * dims.scale;
        if (scaled < 0 || !is_integral(scaled) || scaled.numerator() > cap) {
            throw InvalidTarget("d" + std::to_string(i + 1) + " = " + to_string(target[i]) +
                                " is not an integer stream count in [0, " + std::to_string(cap) +
                                "] at scale " + std::to_string(dims.scale));
        }
        d[i] = static_cast<Eigen::Index>(scaled.numerator());
    }
    return d;
}

/// Eigenvectors of the `count` smallest eigenvalues, and their sum.
std::pair<CMatrix, double> least_dominant(const CMatrix& covariance, Eigen::Index count) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(covariance);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < count; ++i) sum += std::max(eig.eigenvalues()(i), 0.0);
    return {eig.eigenvectors().leftCols(count), sum};
}

}  // namespace

std::string_view to_string(OracleVerdict v) {
    return v == OracleVerdict::FeasibleEvidence ? "FEASIBLE_EVIDENCE" : "INCONCLUSIVE";
}

OracleVerdict parse_oracle_verdict(std::string_view text) {
    if (text == "FEASIBLE_EVIDENCE") return OracleVerdict::FeasibleEvidence;
    if (text == "INCONCLUSIVE") return OracleVerdict::Inconclusive;
    throw std::invalid_argument("unknown oracle verdict '" + std::string(text) + "'");
}

double OracleResult::best_leakage() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : records) best = std::min(best, r.final_leakage);
    return best;
}

OracleTrial leakage_minimize(const NetworkDims& dims, const DofTuple& target, const ChannelSet& channels,
                             int max_iters, double leakage_tol) {
    if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
    if (!(leakage_tol > 0)) throw std::invalid_argument("leakage tolerance must be > 0");
    const auto d = scaled_streams(dims, target);
    const auto m = static_cast<Eigen::Index>(dims.m_int);
    const auto n = static_cast<Eigen::Index>(dims.n_int);

    OracleTrial trial;
    trial.seed = channels.seed;

    std::mt19937_64 rng(derived_seed(channels.seed, kInitStream));
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    std::array<CMatrix, 3> v;
    std::array<CMatrix, 3> u;
    for (std::size_t i = 0; i < 3; ++i) {
        if (d[i] == 0) continue;
        CMatrix g(m, d[i]);
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            for (Eigen::Index r = 0; r < g.rows(); ++r) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                g(r, c) = {re, im};
            }
        }
        Eigen::HouseholderQR<CMatrix> qr(g);
        v[i] = qr.householderQ() * CMatrix::Identity(m, d[i]);
    }

    for (int it = 0;; ++it) {
        // Receive side: least-interfered subspace at each active receiver.
        double leakage = 0.0;
        for (int k = 1; k <= kUsers; ++k) {
            const auto ki = static_cast<std::size_t>(k - 1);
            if (d[ki] == 0) continue;
            CMatrix q = CMatrix::Zero(n, n);
            for (int j = 1; j <= kUsers; ++j) {
                const auto ji = static_cast<std::size_t>(j - 1);
                if (j == k || d[ji] == 0) continue;
                const CMatrix hv = channels.at(k, j) * v[ji];
                q.noalias() += hv * hv.adjoint();
            }
            auto [basis, power] = least_dominant(q, d[ki]);
            u[ki] = std::move(basis);
            leakage += power;
        }
        trial.trace.push_back(leakage);
        trial.final_leakage = leakage;
        trial.iterations_used = it;
        if (leakage < leakage_tol) {
            trial.converged = true;
            break;
        }
        if (it == max_iters) break;

        // Reciprocal network: transmit subspaces least exposed to the
        // unintended receive subspaces.
        for (int j = 1; j <= kUsers; ++j) {
            const auto ji = static_cast<std::size_t>(j - 1);
            if (d[ji] == 0) continue;
            CMatrix q = CMatrix::Zero(m, m);
            for (int k = 1; k <= kUsers; ++k) {
                const auto ki = static_cast<std::size_t>(k - 1);
                if (k == j || d[ki] == 0) continue;
                const CMatrix hu = channels.at(k, j).adjoint() * u[ki];
                q.noalias() += hu * hu.adjoint();
            }
            v[ji] = least_dominant(q, d[ji]).first;
        }
    }
    return trial;
}

OracleResult oracle_membership(const NetworkDims& dims, const DofTuple& target, int trials,
                               std::uint64_t base_seed, int max_iters, double leakage_tol, int workers) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    scaled_streams(dims, target);

    OracleResult result;
    result.dims = dims;
    result.target = target;
    result.trials = trials;
    result.max_iters = max_iters;
    result.leakage_tol = leakage_tol;
    result.records.resize(static_cast<std::size_t>(trials));
    detail::parallel_for(trials, workers, [&](int t) {
        const auto channels = sample_channels(dims, base_seed + static_cast<std::uint64_t>(t));
        result.records[static_cast<std::size_t>(t)] =
            leakage_minimize(dims, target, channels, max_iters, leakage_tol);
    });

    const bool any = std::any_of(result.records.begin(), result.records.end(),
                                 [&](const OracleTrial& r) { return r.final_leakage < leakage_tol; });
    result.verdict = any ? OracleVerdict::FeasibleEvidence : OracleVerdict::Inconclusive;
    if (any && !pairwise_outer_bound(dims, target)) {
        throw std::logic_error("oracle converged on a tuple that violates the pairwise outer bound");
    }
    return result;
}

}  // namespace asymdof
