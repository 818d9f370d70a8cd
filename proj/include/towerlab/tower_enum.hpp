#pragma once

#include "towerlab/basic_field.hpp"
#include "towerlab/error.hpp"
#include "towerlab/finite_field.hpp"

#include <cstdint>
#include <string>
#include <vector>

/// Chains (x_1, ..., x_i) of nonzero field values with every consecutive pair
/// on the basic curve, their u- and z-subtower images, and the separated
/// variable forms of the recursion.

namespace towerlab {

struct Chain {
    std::vector<Felt> values;

    std::size_t level() const noexcept { return values.size(); }
    friend bool operator==(const Chain&, const Chain&) = default;
};

inline bool is_valid(const TowerParams& t, const Chain& c) {
    if (c.values.empty()) {
        return false;
    }
    for (const Felt& x : c.values) {
        if (x.is_zero()) {
            return false;
        }
    }
    for (std::size_t s = 0; s + 1 < c.values.size(); ++s) {
        if (!satisfies_defining_equation(t, c.values[s], c.values[s + 1])) {
            return false;
        }
    }
    return true;
}

/// The q^(n-1) one-step extensions of a chain over GF(ell), in canonical order.
inline std::vector<Chain> extend(const TowerParams& t, const Chain& c) {
    if (c.values.empty()) {
        throw Error(ErrorCode::InvalidParameter, "cannot extend an empty chain");
    }
    std::vector<Chain> out;
    for (const Felt& y : fiber(t, c.values.back())) {
        Chain next = c;
        next.values.push_back(y);
        out.push_back(std::move(next));
    }
    return out;
}

inline std::vector<Chain> extend(const TowerParams& t, const Chain& c, const FiberTable& fibers) {
    (void)t;
    std::vector<Chain> out;
    for (const Felt& y : fibers[c.values.back()]) {
        Chain next = c;
        next.values.push_back(y);
        out.push_back(std::move(next));
    }
    return out;
}

namespace detail {

/// (|F| - 1) * q^((n-1)(level-1)) must stay within the enumeration cap.
inline void check_chain_budget(const TowerParams& t, std::uint64_t field_size, unsigned level) {
    if (level == 0) {
        throw Error(ErrorCode::InvalidParameter, "chain level must be at least 1");
    }
    const auto per_root = checked_pow(t.qpow(t.n - 1), level - 1, kEnumerationCap);
    if (!per_root || *per_root * (field_size - 1) > kEnumerationCap) {
        throw Error(ErrorCode::CapExceeded,
                    "level " + std::to_string(level) + " chains of " + t.label() + " exceed the cap");
    }
}

inline void chains_dfs(const FiberTable& fibers, Chain& prefix, unsigned level, std::vector<Chain>& out) {
    if (prefix.level() == level) {
        out.push_back(prefix);
        return;
    }
    for (const Felt& y : fibers[prefix.values.back()]) {
        prefix.values.push_back(y);
        chains_dfs(fibers, prefix, level, out);
        prefix.values.pop_back();
    }
}

inline std::uint64_t count_dfs(const FiberTable& fibers, const Felt& last, unsigned remaining) {
    if (remaining == 0) {
        return 1;
    }
    std::uint64_t total = 0;
    for (const Felt& y : fibers[last]) {
        total += count_dfs(fibers, y, remaining - 1);
    }
    return total;
}

} // namespace detail

/// Every chain of the given level over the table's field, in lexicographic
/// order of the canonical element encodings.
inline std::vector<Chain> enumerate_chains(const TowerParams& t, const FiberTable& fibers, unsigned level) {
    detail::check_chain_budget(t, fibers.field().size(), level);
    std::vector<Chain> out;
    for (std::uint32_t i = 1; i < fibers.field().size(); ++i) {
        Chain prefix{{Felt(fibers.field(), i)}};
        detail::chains_dfs(fibers, prefix, level, out);
    }
    return out;
}

/// Exact number of level-i chains over GF(ell). Levels up to 3 are counted
/// by exhaustive traversal; deeper levels multiply the fiber size after
/// confirming that every fiber has the same size and that the level-3
/// traversal agrees with the product.
inline std::uint64_t count_chains(const TowerParams& t, const FiberTable& fibers, unsigned level) {
    const std::uint64_t units = fibers.field().size() - 1;
    detail::check_chain_budget(t, fibers.field().size(), level);
    const unsigned direct = level < 3 ? level : 3;
    std::uint64_t counted = 0;
    for (std::uint32_t i = 1; i < fibers.field().size(); ++i) {
        counted += detail::count_dfs(fibers, Felt(fibers.field(), i), direct - 1);
    }
    if (level <= 3) {
        return counted;
    }
    const std::uint64_t size = fibers[fibers.field().one()].size();
    for (std::uint32_t i = 1; i < fibers.field().size(); ++i) {
        if (fibers[Felt(fibers.field(), i)].size() != size) {
            throw Error(ErrorCode::InvalidParameter, "fiber sizes are not uniform; refusing to extrapolate");
        }
    }
    if (counted != units * size * size) {
        throw Error(ErrorCode::InvalidParameter, "level-3 traversal disagrees with uniform fiber size");
    }
    return units * detail::upow(size, level - 1);
}

inline std::uint64_t count_chains(const TowerSpec& s, unsigned level) {
    detail::check_chain_budget(s.params, s.ell_field->size(), level);
    const FiberTable fibers(s.params, *s.ell_field);
    return count_chains(s.params, fibers, level);
}

/// u_s = recover_u(x_s, x_{s+1}) and z_s = -x_s^(q^n-1) along a chain.
struct SubtowerChain {
    std::vector<Felt> u;  // length level-1
    std::vector<Felt> z;  // length level
    unsigned recursion_checked = 0;  // consecutive u-pairs where both sides were defined
    bool recursion_ok = true;
};

/// Computes the subtower values and checks
///   z_{s+1} = Tr_j(u_{s+1}) / (Tr_k(u_{s+1})+alpha)^(q^j) = Tr_j(u_s)^(q^k) / (Tr_k(u_s)+alpha)
/// at every step where both denominators are nonzero.
inline SubtowerChain subtower_values(const TowerParams& t, const Chain& c, const TraceInverter* table = nullptr) {
    if (c.level() < 2) {
        throw Error(ErrorCode::InvalidParameter, "subtower values need a chain of level >= 2");
    }
    SubtowerChain out;
    const std::uint64_t e = t.ell() - 1;
    for (const Felt& x : c.values) {
        out.z.push_back(-x.pow(e));
    }
    for (std::size_t s = 0; s + 1 < c.level(); ++s) {
        const PointPair pt{c.values[s], c.values[s + 1]};
        out.u.push_back(table != nullptr ? recover_u(t, pt, *table) : recover_u(t, pt));
    }
    const Felt alpha = c.values.front().field().constant(t.alpha());
    const std::uint64_t qj = t.qpow(t.j);
    const std::uint64_t qk = t.qpow(t.k);
    for (std::size_t s = 0; s + 1 < out.u.size(); ++s) {
        const Felt& lower = out.u[s];
        const Felt& upper = out.u[s + 1];
        const Felt den_lower = trace_q(lower, t.q, t.k) + alpha;
        const Felt den_upper = trace_q(upper, t.q, t.k) + alpha;
        if (den_lower.is_zero() || den_upper.is_zero()) {
            continue;
        }
        const Felt from_upper = trace_q(upper, t.q, t.j) / den_upper.pow(qj);
        const Felt from_lower = trace_q(lower, t.q, t.j).pow(qk) / den_lower;
        ++out.recursion_checked;
        if (!(from_upper == from_lower && from_lower == out.z[s + 1])) {
            out.recursion_ok = false;
        }
    }
    return out;
}

/// (Y^(q^n) - Y) / Y^(q^j) = (X^(q^n) - X) / X^(q^n - q^k + 1), the
/// separated-variable consequence of the defining equation.
inline bool check_sepvar_x(const TowerParams& t, const Felt& x, const Felt& y) {
    detail::require_char(t, x);
    if (x.is_zero() || y.is_zero()) {
        throw Error(ErrorCode::ZeroArgument, "separated-variable form needs x, y nonzero");
    }
    const std::uint64_t qn = t.ell();
    const Felt lhs = (y.pow(qn) - y) / y.pow(t.qpow(t.j));
    const Felt rhs = (x.pow(qn) - x) / x.pow(qn - t.qpow(t.k) + 1);
    return lhs == rhs;
}

/// Every nonzero y in the field of x satisfying the separated x-form. Since
/// that equation is reducible, this set generally strictly contains the
/// fiber of the defining equation.
inline std::vector<Felt> sepvar_x_fiber(const TowerParams& t, const Felt& x) {
    std::vector<Felt> out;
    const Field& f = x.field();
    for (std::uint32_t i = 1; i < f.size(); ++i) {
        const Felt y(f, i);
        if (check_sepvar_x(t, x, y)) {
            out.push_back(y);
        }
    }
    return out;
}

/// (Y+1)^(N_n) / Y^(N_j) = (X+1)^(N_n) / X^(q^k N_j) with X = z, Y = z'.
inline bool check_sepvar_z(const TowerParams& t, const Felt& z, const Felt& z_next) {
    detail::require_char(t, z);
    if (z.is_zero() || z_next.is_zero()) {
        throw Error(ErrorCode::ZeroArgument, "separated z-form needs z, z' nonzero");
    }
    const Felt one = z.field().one();
    const std::uint64_t nn = t.N(t.n);
    const std::uint64_t nj = t.N(t.j);
    const Felt lhs = (z_next + one).pow(nn) / z_next.pow(nj);
    const Felt rhs = (z + one).pow(nn) / z.pow(t.qpow(t.k) * nj);
    return lhs == rhs;
}

} // namespace towerlab
