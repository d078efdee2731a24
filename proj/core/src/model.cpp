#include "asymdof/model.hpp"

#include <algorithm>
#include <numeric>

#include "asymdof/errors.hpp"

namespace asymdof {

namespace {

void require_length(int length) {
    if (length < 1) throw std::invalid_argument("tree length must be >= 1");
}

void require_root(int root) {
    if (root < 1 || root > kUsers) throw std::invalid_argument("root must be in 1..3");
}

std::int64_t basis_max_dof(int length) {
    std::int64_t best = 0;
    for (int r = 1; r <= kUsers; ++r) {
        const auto b = dof_basis(r, length);
        best = std::max({best, b[0], b[1], b[2]});
    }
    return best;
}

std::int64_t basis_min_interference(int length) {
    std::int64_t best = 0;
    for (int r = 1; r <= kUsers; ++r) {
        for (auto c : interference_basis(r, length).v) {
            if (c > 0 && (best == 0 || c < best)) best = c;
        }
    }
    return best;
}

}  // namespace

NetworkDims make_dims(const Rational& m, const Rational& n) {
    if (n < 1) throw InvalidDims("N must be >= 1, got " + to_string(n));
    if (m < n) {
        throw InvalidDims("M < N (" + to_string(m) + " < " + to_string(n) +
                          "); swap transmitters and receivers before calling");
    }
    if (m != n && m / n >= 2) {
        throw RatioOutOfScope("M/N = " + to_string(m / n) + " is outside (1, 2)");
    }
    NetworkDims dims;
    dims.m = m;
    dims.n = n;
    dims.scale = std::lcm(m.denominator(), n.denominator());
    dims.m_int = (m * dims.scale).numerator();
    dims.n_int = (n * dims.scale).numerator();
    return dims;
}

Rational branch_dof(const NetworkDims& dims, int length) {
    require_length(length);
    const Rational raw = Rational(length + 1) * dims.m - Rational(length + 2) * dims.n;
    return raw > 0 ? raw : Rational(0);
}

std::int64_t branch_dof_scaled(const NetworkDims& dims, int length) {
    require_length(length);
    const std::int64_t raw = (length + 1) * dims.m_int - (length + 2) * dims.n_int;
    return std::max<std::int64_t>(raw, 0);
}

int min_tree_length(const NetworkDims& dims) {
    if (dims.m == dims.n) throw RatioOutOfScope("no tree has positive branch DoF when M = N");
    if (dims.m / dims.n >= 2) throw RatioOutOfScope("M/N must be < 2");
    // (L+1)M > (L+2)N  <=>  L > (2N - M)/(M - N), with 2N - M > 0 here.
    const Rational bound = (2 * dims.n - dims.m) / (dims.m - dims.n);
    return static_cast<int>(std::max<std::int64_t>(floor(bound) + 1, 1));
}

std::string_view to_string(SubInterval s) {
    return s == SubInterval::Upper ? "UPPER" : "LOWER";
}

std::string_view to_string(LossClass c) {
    switch (c) {
        case LossClass::LosslessI: return "LOSSLESS_I";
        case LossClass::LosslessII: return "LOSSLESS_II";
        case LossClass::LossySignal: return "LOSSY_SIGNAL";
        case LossClass::LossyInterference: return "LOSSY_INTERFERENCE";
        case LossClass::EqualAntennas: return "EQUAL_ANTENNAS";
    }
    return "?";
}

SubInterval parse_sub_interval(std::string_view text) {
    if (text == "UPPER") return SubInterval::Upper;
    if (text == "LOWER") return SubInterval::Lower;
    throw std::invalid_argument("unknown sub-interval '" + std::string(text) + "'");
}

LossClass parse_loss_class(std::string_view text) {
    for (auto c : {LossClass::LosslessI, LossClass::LosslessII, LossClass::LossySignal,
                   LossClass::LossyInterference, LossClass::EqualAntennas}) {
        if (to_string(c) == text) return c;
    }
    throw std::invalid_argument("unknown loss class '" + std::string(text) + "'");
}

Regime classify(const NetworkDims& dims) {
    if (dims.equal_antennas()) return Regime{LossClass::EqualAntennas, std::nullopt};

    TreeRegime t;
    const int L = min_tree_length(dims);
    t.length = L;
    t.window_lo = Rational(L + 2, L + 1);
    t.window_hi = Rational(L + 1, L);
    t.sub_interval = dims.gamma() >= Rational(2 * L + 3, 2 * L + 1) ? SubInterval::Upper
                                                                      : SubInterval::Lower;
    t.d_o = branch_dof(dims, L);
    t.delta = dof_interference_ratio(L);
    t.d_max = basis_max_dof(L) * t.d_o;
    t.i_min = basis_min_interference(L) * t.d_o;
    t.max_user_dof = max_user_dof(dims, L);
    t.paper_sum_bound = Rational(3 * (L + 1), L + 2);

    LossClass cls;
    switch (L % 3) {
        case 1:
            cls = t.sub_interval == SubInterval::Upper ? LossClass::LosslessI : LossClass::LosslessII;
            break;
        case 2: cls = LossClass::LossySignal; break;
        default: cls = LossClass::LossyInterference; break;
    }
    return Regime{cls, t};
}

IntTriple dof_basis(int root, int length) {
    require_root(root);
    require_length(length);
    IntTriple counts;
    for (int k = 0; k <= length; ++k) ++counts.user(segment_transmitter(root, k));
    return counts;
}

IntTriple interference_basis(int root, int length) {
    require_root(root);
    require_length(length);
    IntTriple counts;
    for (int k = 0; k < length; ++k) ++counts.user(alignment_receiver(root, k));
    return counts;
}

Rational dof_interference_ratio(int length) {
    Rational best(0);
    for (int r = 1; r <= kUsers; ++r) {
        const auto d = dof_basis(r, length);
        const auto i = interference_basis(r, length);
        for (std::size_t u = 0; u < 3; ++u) {
            if (i[u] == 0) continue;
            best = std::max(best, Rational(d[u], i[u]));
        }
    }
    return best;
}

Rational max_user_dof(const NetworkDims& dims, int length) {
    if (branch_dof(dims, length) == 0) {
        throw DegenerateRegime("branch DoF is zero at L = " + std::to_string(length));
    }
    // d_o cancels between numerator and denominator.
    const Rational d_max(basis_max_dof(length));
    const Rational i_min(basis_min_interference(length));
    return d_max * dims.n / (d_max + i_min);
}

DofTuple redistribute(const NetworkDims& dims, int length, const RedistributionFactors& a) {
    require_length(length);
    if (length % 3 != 1) {
        throw WrongRegime("redistribution map needs L mod 3 = 1, got L = " + std::to_string(length));
    }
    const Rational d_o = branch_dof(dims, length);
    for (std::size_t i = 0; i < 3; ++i) {
        if (a[i] < 0 || a[i] > d_o) {
            throw FactorOutOfRange("a" + std::to_string(i + 1) + " = " + to_string(a[i]) +
                                   " outside [0, " + to_string(d_o) + "]");
        }
    }
    const Rational hi(length + 2, 3);
    const Rational lo(length - 1, 3);
    return DofTuple{{hi * a[0] + lo * a[1] + hi * a[2],
                     hi * a[0] + hi * a[1] + lo * a[2],
                     lo * a[0] + hi * a[1] + hi * a[2]}};
}

}  // namespace asymdof
