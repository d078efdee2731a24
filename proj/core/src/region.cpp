#include "asymdof/region.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "asymdof/errors.hpp"

namespace asymdof {

IntTriple TreeAllocation::induced_dof() const {
    IntTriple total;
    for (const auto& e : entries) {
        const auto b = dof_basis(e.root, e.length);
        for (std::size_t i = 0; i < 3; ++i) total[i] += e.branches * b[i];
    }
    return total;
}

IntTriple TreeAllocation::induced_interference() const {
    IntTriple total;
    for (const auto& e : entries) {
        const auto b = interference_basis(e.root, e.length);
        for (std::size_t i = 0; i < 3; ++i) total[i] += e.branches * b[i];
    }
    return total;
}

IntTriple TreeAllocation::occupancy() const { return induced_dof() + induced_interference(); }

DofTuple TreeAllocation::dof(const NetworkDims& dims) const {
    const auto d = induced_dof();
    return DofTuple{{Rational(d[0], dims.scale), Rational(d[1], dims.scale),
                     Rational(d[2], dims.scale)}};
}

std::string check_allocation(const NetworkDims& dims, const TreeAllocation& allocation) {
    std::array<bool, 3> seen{};
    for (const auto& e : allocation.entries) {
        if (e.root < 1 || e.root > kUsers) return "root out of range";
        if (seen[static_cast<std::size_t>(e.root - 1)]) {
            return "transmitter " + std::to_string(e.root) + " roots more than one tree";
        }
        seen[static_cast<std::size_t>(e.root - 1)] = true;
        if (e.length < 1) return "tree length must be >= 1";
        if (e.branches < 0) return "negative branch count";
        const auto cap = branch_dof_scaled(dims, e.length);
        if (e.branches > cap) {
            return "tree at root " + std::to_string(e.root) + " has " + std::to_string(e.branches) +
                   " branches, cap is " + std::to_string(cap);
        }
    }
    const auto occ = allocation.occupancy();
    for (int j = 1; j <= kUsers; ++j) {
        if (occ.user(j) > dims.n_int) {
            return "receiver " + std::to_string(j) + " needs " + std::to_string(occ.user(j)) +
                   " dimensions, has " + std::to_string(dims.n_int);
        }
    }
    return {};
}

std::string_view to_string(Certification c) {
    switch (c) {
        case Certification::Formula: return "FORMULA";
        case Certification::Allocation: return "ALLOCATION";
        case Certification::Oracle: return "ORACLE";
    }
    return "?";
}

Certification parse_certification(std::string_view text) {
    for (auto c : {Certification::Formula, Certification::Allocation, Certification::Oracle}) {
        if (to_string(c) == text) return c;
    }
    throw std::invalid_argument("unknown certification '" + std::string(text) + "'");
}

bool equal_antenna_member(const Rational& m, const DofTuple& d) {
    return d[0] + d[1] <= m && d[0] + d[2] <= m && d[1] + d[2] <= m;
}

std::vector<DofTuple> equal_antenna_vertices(const Rational& m) {
    // Facets a.d <= b: three pair sums, three nonnegativity, three (redundant)
    // per-user caps.
    struct Facet {
        std::array<Rational, 3> a;
        Rational b;
    };
    const Rational one(1), zero(0), neg(-1);
    const std::array<Facet, 9> facets{{
        {{one, one, zero}, m},
        {{one, zero, one}, m},
        {{zero, one, one}, m},
        {{neg, zero, zero}, zero},
        {{zero, neg, zero}, zero},
        {{zero, zero, neg}, zero},
        {{one, zero, zero}, m},
        {{zero, one, zero}, m},
        {{zero, zero, one}, m},
    }};

    auto det3 = [](const std::array<std::array<Rational, 3>, 3>& a) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };

    std::set<std::array<Rational, 3>> found;
    for (std::size_t p = 0; p < facets.size(); ++p) {
        for (std::size_t q = p + 1; q < facets.size(); ++q) {
            for (std::size_t r = q + 1; r < facets.size(); ++r) {
                const std::array<std::array<Rational, 3>, 3> a{facets[p].a, facets[q].a, facets[r].a};
                const std::array<Rational, 3> b{facets[p].b, facets[q].b, facets[r].b};
                const Rational det = det3(a);
                if (det == 0) continue;
                // Cramer's rule.
                std::array<Rational, 3> x;
                for (std::size_t col = 0; col < 3; ++col) {
                    auto ac = a;
                    for (std::size_t row = 0; row < 3; ++row) ac[row][col] = b[row];
                    x[col] = det3(ac) / det;
                }
                const bool feasible = std::all_of(facets.begin(), facets.end(), [&](const Facet& f) {
                    return f.a[0] * x[0] + f.a[1] * x[1] + f.a[2] * x[2] <= f.b;
                });
                // Three independent tight facets at a feasible point make it a vertex.
                if (feasible) found.insert(x);
            }
        }
    }
    std::vector<DofTuple> out;
    out.reserve(found.size());
    for (const auto& x : found) out.push_back(DofTuple{x});
    return out;
}

namespace {

struct Option {
    int length = 0;  // 0 = no tree at this root
    std::int64_t branches = 0;
    IntTriple dof;
    IntTriple occ;
};

std::vector<int> search_lengths(const NetworkDims& dims, const SearchOptions& options) {
    if (dims.equal_antennas()) {
        throw RatioOutOfScope("allocation search needs M > N");
    }
    if (options.length_count < 1) throw std::invalid_argument("length_count must be >= 1");
    const int first = min_tree_length(dims);
    std::vector<int> lengths;
    const int top = std::max(first + options.length_count - 1, options.min_top_length);
    for (int L = first; L <= top; ++L) lengths.push_back(L);
    return lengths;
}

std::vector<Option> root_options(const NetworkDims& dims, int root, const std::vector<int>& lengths) {
    std::vector<Option> opts{Option{}};
    for (int L : lengths) {
        const auto db = dof_basis(root, L);
        const auto ib = interference_basis(root, L);
        const auto cap = branch_dof_scaled(dims, L);
        for (std::int64_t b = 1; b <= cap; ++b) {
            Option o{L, b, {}, {}};
            for (std::size_t i = 0; i < 3; ++i) {
                o.dof[i] = b * db[i];
                o.occ[i] = b * (db[i] + ib[i]);
            }
            // Options are generated with growing occupancy per length; once a
            // single tree overflows a receiver, larger counts do too.
            if (o.occ[0] > dims.n_int || o.occ[1] > dims.n_int || o.occ[2] > dims.n_int) break;
            opts.push_back(o);
        }
    }
    return opts;
}

/// Calls fn(o1, o2, o3, dof) for every allocation satisfying the receiver
/// space constraint, roots 1, 2, 3 in nested enumeration order.
template <typename Fn>
void for_each_allocation(const NetworkDims& dims, const SearchOptions& options, Fn&& fn) {
    const auto lengths = search_lengths(dims, options);
    const auto o1 = root_options(dims, 1, lengths);
    const auto o2 = root_options(dims, 2, lengths);
    const auto o3 = root_options(dims, 3, lengths);
    const auto n = dims.n_int;
    for (const auto& a : o1) {
        for (const auto& b : o2) {
            const IntTriple occ_ab = a.occ + b.occ;
            if (occ_ab[0] > n || occ_ab[1] > n || occ_ab[2] > n) continue;
            for (const auto& c : o3) {
                const IntTriple occ = occ_ab + c.occ;
                if (occ[0] > n || occ[1] > n || occ[2] > n) continue;
                fn(a, b, c, a.dof + b.dof + c.dof, occ);
            }
        }
    }
}

TreeAllocation to_allocation(const Option& a, const Option& b, const Option& c) {
    TreeAllocation alloc;
    const std::array<const Option*, 3> opts{&a, &b, &c};
    for (int r = 0; r < 3; ++r) {
        if (opts[static_cast<std::size_t>(r)]->length == 0) continue;
        alloc.entries.push_back(
            TreeEntry{r + 1, opts[static_cast<std::size_t>(r)]->length, opts[static_cast<std::size_t>(r)]->branches});
    }
    return alloc;
}

int tree_count(const Option& a, const Option& b, const Option& c) {
    return (a.length != 0) + (b.length != 0) + (c.length != 0);
}

/// Selection key: total occupancy, then tree count. Lower is better; ties
/// keep the earlier allocation.
std::pair<std::int64_t, int> selection_key(const Option& a, const Option& b, const Option& c,
                                           const IntTriple& occ) {
    return {occ.sum(), tree_count(a, b, c)};
}

std::uint64_t pack(const IntTriple& t) {
    return (static_cast<std::uint64_t>(t[0]) << 42) | (static_cast<std::uint64_t>(t[1]) << 21) |
           static_cast<std::uint64_t>(t[2]);
}

/// 3-D maxima by sweeping in decreasing d1 with a (d2, d3) staircase.
std::vector<IntTriple> pareto_maxima(std::vector<IntTriple> points) {
    std::sort(points.begin(), points.end(), [](const IntTriple& x, const IntTriple& y) { return x.v > y.v; });
    // d2 -> max d3 among kept points with that d2; d3 strictly decreases as d2 grows.
    std::map<std::int64_t, std::int64_t> stairs;
    std::vector<IntTriple> kept;
    for (const auto& p : points) {
        auto it = stairs.lower_bound(p[1]);
        if (it != stairs.end() && it->second >= p[2]) continue;
        kept.push_back(p);
        // Drop staircase steps now dominated in (d2, d3).
        auto up = stairs.upper_bound(p[1]);
        auto lo = up;
        while (lo != stairs.begin()) {
            auto prev = std::prev(lo);
            if (prev->second > p[2]) break;
            lo = prev;
        }
        stairs.erase(lo, up);
        stairs[p[1]] = p[2];
    }
    std::sort(kept.begin(), kept.end(), [](const IntTriple& x, const IntTriple& y) { return x.v < y.v; });
    return kept;
}

}  // namespace

std::optional<TreeAllocation> allocation_search(const NetworkDims& dims, const DofTuple& target,
                                                const SearchOptions& options) {
    for (const auto& t : target.v) {
        if (t < 0) throw std::invalid_argument("target components must be >= 0");
    }
    if (dims.equal_antennas()) throw RatioOutOfScope("allocation search needs M > N");
    if (!pairwise_outer_bound(dims, target)) return std::nullopt;

    IntTriple need;
    for (std::size_t i = 0; i < 3; ++i) need[i] = ceil(target[i] * dims.scale);

    std::optional<TreeAllocation> best;
    std::pair<std::int64_t, int> best_key{};
    for_each_allocation(dims, options, [&](const Option& a, const Option& b, const Option& c,
                                           const IntTriple& dof, const IntTriple& occ) {
        if (!dominates(dof, need)) return;
        const auto key = selection_key(a, b, c, occ);
        if (!best || key < best_key) {
            best = to_allocation(a, b, c);
            best_key = key;
        }
    });
    return best;
}

std::vector<RegionPoint> achievable_frontier(const NetworkDims& dims, const SearchOptions& options) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<IntTriple> unique;
    for_each_allocation(dims, options, [&](const Option&, const Option&, const Option&,
                                           const IntTriple& dof, const IntTriple&) {
        if (seen.insert(pack(dof)).second) unique.push_back(dof);
    });
    const auto maxima = pareto_maxima(std::move(unique));

    // Second pass: the preferred allocation realizing each maximal tuple.
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < maxima.size(); ++i) index[pack(maxima[i])] = i;
    std::vector<std::optional<std::pair<std::pair<std::int64_t, int>, TreeAllocation>>> chosen(maxima.size());
    for_each_allocation(dims, options, [&](const Option& a, const Option& b, const Option& c,
                                           const IntTriple& dof, const IntTriple& occ) {
        auto it = index.find(pack(dof));
        if (it == index.end()) return;
        auto& slot = chosen[it->second];
        const auto key = selection_key(a, b, c, occ);
        if (!slot || key < slot->first) slot.emplace(key, to_allocation(a, b, c));
    });

    std::vector<RegionPoint> points;
    points.reserve(maxima.size());
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        RegionPoint p;
        p.allocation = chosen[i]->second;
        p.dof = p.allocation->dof(dims);
        p.certified = Certification::Allocation;
        points.push_back(std::move(p));
    }
    return points;
}

Rational max_sum_dof(const NetworkDims& dims, const SearchOptions& options) {
    std::int64_t best = 0;
    for_each_allocation(dims, options, [&](const Option&, const Option&, const Option&,
                                           const IntTriple& dof, const IntTriple&) {
        best = std::max(best, dof.sum());
    });
    return Rational(best, dims.scale);
}

bool pairwise_outer_bound(const NetworkDims& dims, const DofTuple& d) {
    const Rational hi = std::max(dims.m, dims.n);
    const Rational lo = std::min(dims.m, dims.n);
    for (std::size_t i = 0; i < 3; ++i) {
        if (d[i] > lo) return false;
        for (std::size_t j = i + 1; j < 3; ++j) {
            if (d[i] + d[j] > hi) return false;
        }
    }
    return true;
}

std::vector<SweepRow> sweep(std::int64_t n_fixed, const std::vector<Rational>& gamma_grid,
                            const SearchOptions& options) {
    SearchOptions shared = options;
    for (const auto& gamma : gamma_grid) {
        try {
            if (gamma <= 1) continue;
            const auto dims = make_dims(gamma * n_fixed, Rational(n_fixed));
            shared.min_top_length =
                std::max(shared.min_top_length, min_tree_length(dims) + options.length_count - 1);
        } catch (const Error&) {
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(gamma_grid.size());
    for (const auto& gamma : gamma_grid) {
        SweepRow row;
        row.gamma = gamma;
        try {
            if (gamma <= 1) throw RatioOutOfScope("gamma must be > 1");
            const auto dims = make_dims(gamma * n_fixed, Rational(n_fixed));
            const auto regime = classify(dims);
            row.length = regime.tree->length;
            row.loss_class = regime.loss_class;
            row.max_sum_dof = max_sum_dof(dims, shared);
            row.max_user_dof = regime.tree->max_user_dof;
        } catch (const Error& e) {
            row = SweepRow{};
            row.gamma = gamma;
            row.skipped = true;
            row.skip_reason = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace asymdof
