#pragma once

// Exact-arithmetic domain types and closed-form quantities for the 3-user
// M x N MIMO interference channel: branch DoF of an alignment tree, regime
// classification by antenna ratio, per-tree basis sets, the lossless
// redistribution map and the per-user DoF cap.
//
// Users, transmitters, receivers and tree roots are numbered 1..3 in every
// public signature; Triple storage is 0-based.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "asymdof/rational.hpp"

namespace asymdof {

inline constexpr int kUsers = 3;

template <typename T>
struct Triple {
    std::array<T, 3> v{};

    constexpr T& operator[](std::size_t i) { return v[i]; }
    constexpr const T& operator[](std::size_t i) const { return v[i]; }
    /// 1-based access by user / receiver number.
    constexpr T& user(int u) { return v[static_cast<std::size_t>(u - 1)]; }
    constexpr const T& user(int u) const { return v[static_cast<std::size_t>(u - 1)]; }

    T sum() const { return v[0] + v[1] + v[2]; }

    friend bool operator==(const Triple&, const Triple&) = default;

    friend Triple operator+(Triple a, const Triple& b) {
        for (std::size_t i = 0; i < 3; ++i) a.v[i] += b.v[i];
        return a;
    }
    /// Componentwise a >= b.
    friend bool dominates(const Triple& a, const Triple& b) {
        return a.v[0] >= b.v[0] && a.v[1] >= b.v[1] && a.v[2] >= b.v[2];
    }
};

using IntTriple = Triple<std::int64_t>;
using DofTuple = Triple<Rational>;           ///< (d1, d2, d3)
using InterferenceTuple = Triple<Rational>;  ///< (I1, I2, I3)
using RedistributionFactors = Triple<Rational>;

template <typename T>
DofTuple to_rational(const Triple<T>& t) {
    return DofTuple{{Rational(t[0]), Rational(t[1]), Rational(t[2])}};
}

/// Antenna counts as exact rationals plus their minimal integer realization.
/// Construct through make_dims().
struct NetworkDims {
    Rational m;  ///< transmit antennas per user
    Rational n;  ///< receive antennas per user
    std::int64_t scale = 1;
    std::int64_t m_int = 1;  ///< m * scale
    std::int64_t n_int = 1;  ///< n * scale

    Rational gamma() const { return m / n; }
    bool equal_antennas() const { return m == n; }

    friend bool operator==(const NetworkDims&, const NetworkDims&) = default;
};

NetworkDims make_dims(const Rational& m, const Rational& n);

/// Unscaled branch DoF ((L+1)M - (L+2)N)^+.
Rational branch_dof(const NetworkDims& dims, int length);

/// Branch DoF in the integer realization, i.e. branch_dof * scale.
std::int64_t branch_dof_scaled(const NetworkDims& dims, int length);

/// Smallest L >= 1 with a strictly positive branch DoF. Requires M > N.
int min_tree_length(const NetworkDims& dims);

enum class SubInterval { Upper, Lower };

enum class LossClass { LosslessI, LosslessII, LossySignal, LossyInterference, EqualAntennas };

std::string_view to_string(SubInterval s);
std::string_view to_string(LossClass c);
SubInterval parse_sub_interval(std::string_view text);
LossClass parse_loss_class(std::string_view text);

/// Tree parameters of a regime. All DoF quantities are in unscaled units.
struct TreeRegime {
    int length = 0;        ///< L, minimal length with positive branch DoF
    Rational window_lo;    ///< (L+2)/(L+1), exclusive
    Rational window_hi;    ///< (L+1)/L, inclusive
    SubInterval sub_interval = SubInterval::Upper;
    Rational d_o;
    Rational delta;        ///< max DoF-to-interference ratio over roots
    Rational d_max;        ///< largest DoF basis component times d_o
    Rational i_min;        ///< smallest nonzero interference basis component times d_o
    Rational max_user_dof;
    /// 3(L+1)/(L+2) recorded as published. Its normalization does not match
    /// the worked example, so nothing downstream uses it.
    Rational paper_sum_bound;

    friend bool operator==(const TreeRegime&, const TreeRegime&) = default;
};

struct Regime {
    LossClass loss_class = LossClass::EqualAntennas;
    std::optional<TreeRegime> tree;  ///< empty iff loss_class == EqualAntennas

    friend bool operator==(const Regime&, const Regime&) = default;
};

Regime classify(const NetworkDims& dims);

/// Transmitter carrying segment k of the tree rooted at `root`.
constexpr int segment_transmitter(int root, int k) { return (root - 1 + k) % 3 + 1; }

/// Receiver of alignment event k (segments k and k+1 meet there).
constexpr int alignment_receiver(int root, int k) { return (root + 1 + k) % 3 + 1; }

/// Segments per transmitter for a tree of the given length; sums to L+1.
IntTriple dof_basis(int root, int length);

/// Alignment events per receiver; sums to L.
IntTriple interference_basis(int root, int length);

/// Max over roots and users of dof/interference, skipping zero-interference
/// components.
Rational dof_interference_ratio(int length);

/// d_max N / (d_max + I_min) in unscaled units. Throws DegenerateRegime when
/// the branch DoF at this length is zero.
Rational max_user_dof(const NetworkDims& dims, int length);

/// Lossless redistribution map (L mod 3 == 1). Factor a_i weights the tree
/// rooted at transmitter i.
DofTuple redistribute(const NetworkDims& dims, int length, const RedistributionFactors& a);

}  // namespace asymdof
