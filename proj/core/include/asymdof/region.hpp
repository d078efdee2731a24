#pragma once

// Achievable DoF regions.
//
// M = N: the polytope {d >= 0 : d_i + d_j <= M for i != j}.
// M > N: the set generated by up to three alignment trees (one per root),
// each carrying an integer number of branches in the scaled realization,
// subject to d_i + I_i <= N at every receiver.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asymdof/model.hpp"

namespace asymdof {

/// One alignment tree. `branches` counts null-space vectors in the integer
/// realization (NetworkDims::m_int / n_int), so the unscaled branch weight is
/// branches / scale.
struct TreeEntry {
    int root = 1;
    int length = 1;
    std::int64_t branches = 0;

    friend bool operator==(const TreeEntry&, const TreeEntry&) = default;
};

struct TreeAllocation {
    std::vector<TreeEntry> entries;  ///< sorted by root, at most one per root

    /// Scaled DoF per user: sum of branches * dof_basis.
    IntTriple induced_dof() const;
    /// Scaled interference dimensions per receiver.
    IntTriple induced_interference() const;
    /// induced_dof + induced_interference.
    IntTriple occupancy() const;

    /// Unscaled DoF tuple for the given dims.
    DofTuple dof(const NetworkDims& dims) const;

    friend bool operator==(const TreeAllocation&, const TreeAllocation&) = default;
};

/// Empty string when the allocation satisfies distinct roots, the
/// per-length branch cap and the receiver space constraint; otherwise the
/// first violated condition.
std::string check_allocation(const NetworkDims& dims, const TreeAllocation& allocation);

enum class Certification { Formula, Allocation, Oracle };

std::string_view to_string(Certification c);
Certification parse_certification(std::string_view text);

struct RegionPoint {
    DofTuple dof;
    std::optional<TreeAllocation> allocation;
    Certification certified = Certification::Formula;

    friend bool operator==(const RegionPoint&, const RegionPoint&) = default;
};

bool equal_antenna_member(const Rational& m, const DofTuple& d);

/// Vertices of the M = N polytope, deduplicated and sorted lexicographically.
std::vector<DofTuple> equal_antenna_vertices(const Rational& m);

struct SearchOptions {
    /// Tree lengths tried per root: L_min .. L_min + length_count - 1.
    int length_count = 2;
    /// Raises the top of the length range to at least this value.
    int min_top_length = 0;
};

/// Allocation whose induced DoF dominates `target` (unscaled units), or
/// nullopt. Among dominating allocations the one with the smallest total
/// receiver occupancy wins, then the one with fewer trees, then enumeration
/// order.
std::optional<TreeAllocation> allocation_search(const NetworkDims& dims, const DofTuple& target,
                                                const SearchOptions& options = {});

/// Pareto-maximal induced DoF tuples, lexicographically sorted. Each point
/// carries the allocation allocation_search would pick for it.
std::vector<RegionPoint> achievable_frontier(const NetworkDims& dims,
                                             const SearchOptions& options = {});

/// Largest d1 + d2 + d3 over the allocation enumeration (unscaled).
Rational max_sum_dof(const NetworkDims& dims, const SearchOptions& options = {});

/// Cheap necessary condition: d_i + d_j <= max(M, N) and d_i <= min(M, N).
bool pairwise_outer_bound(const NetworkDims& dims, const DofTuple& d);

struct SweepRow {
    Rational gamma;
    bool skipped = false;
    std::string skip_reason;
    int length = 0;
    LossClass loss_class = LossClass::EqualAntennas;
    Rational max_sum_dof;
    Rational max_user_dof;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// One row per ratio. All rows share one top tree length (taken from the
/// smallest ratio in the grid), so the length sets are nested as the ratio
/// grows and max_sum_dof cannot drop when L_min does.
std::vector<SweepRow> sweep(std::int64_t n_fixed, const std::vector<Rational>& gamma_grid,
                            const SearchOptions& options = {});

}  // namespace asymdof
