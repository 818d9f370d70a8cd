#pragma once

#include "towerlab/error.hpp"
#include "towerlab/finite_field.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

/// Pointwise model of the basic function field K(x, y) cut out by
///
///     Tr_j(y / x^(q^k)) + Tr_k(y^(q^j) / x) = 1
///
/// over concrete finite fields: fibers over x = beta, the unique u with
/// Tr_k(u) + alpha = R and Tr_j(u) = -S, and the Kummer / (w, z) relations.

namespace towerlab {

/// Integer parameters (p, q, n, j, k) of the defining equation, validated.
/// Whenever p divides j the roles of j and k are swapped.
struct TowerParams {
    std::uint32_t p = 0;
    unsigned q_exp = 0;  // q = p^q_exp
    std::uint64_t q = 0;
    unsigned n = 0;
    unsigned j = 0;
    unsigned k = 0;

    friend bool operator==(const TowerParams&, const TowerParams&) = default;

    /// q^r
    std::uint64_t qpow(std::uint64_t r) const { return detail::upow(q, r); }
    /// N_r = (q^r - 1) / (q - 1)
    std::uint64_t N(std::uint64_t r) const { return (qpow(r) - 1) / (q - 1); }
    std::uint64_t ell() const { return qpow(n); }
    /// j^{-1} in the prime field, as an integer in [1, p).
    std::uint32_t alpha() const { return detail::inv_mod(j % p, p); }

    std::string label() const {
        return "(q=" + std::to_string(q) + ",n=" + std::to_string(n) + ",j=" + std::to_string(j) +
               ",k=" + std::to_string(k) + ")";
    }
};

inline TowerParams make_params(std::uint32_t p, unsigned q_exp, unsigned n, unsigned j, unsigned k) {
    if (!detail::is_prime(p)) {
        throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    }
    if (q_exp == 0) {
        throw Error(ErrorCode::InvalidParameter, "q must be a positive power of p");
    }
    if (j == 0 || k == 0) {
        throw Error(ErrorCode::InvalidParameter, "j and k must be positive");
    }
    if (n != j + k) {
        throw Error(ErrorCode::InvalidParameter, "n must equal j + k");
    }
    if (n < 2) {
        throw Error(ErrorCode::InvalidParameter, "n must be at least 2");
    }
    if (std::gcd(j, k) != 1) {
        throw Error(ErrorCode::InvalidParameter, "gcd(j,k) must be 1");
    }
    if (!detail::checked_pow(p, std::uint64_t{q_exp} * 2 * n, ~std::uint64_t{0} >> 2)) {
        throw Error(ErrorCode::CapExceeded, "q^n too large");
    }
    TowerParams t;
    t.p = p;
    t.q_exp = q_exp;
    t.q = detail::upow(p, q_exp);
    t.n = n;
    t.j = j;
    t.k = k;
    if (j % p == 0) {
        std::swap(t.j, t.k);
    }
    return t;
}

/// Tower parameters together with the concrete fields GF(q) and GF(ell).
struct TowerSpec {
    TowerParams params;
    const Field* field_q = nullptr;
    const Field* ell_field = nullptr;
    /// alpha = j^{-1} as an element of GF(ell).
    Felt alpha;

    /// GF(ell^2), for exercising the identities off the split locus.
    const Field& ell_square_field() const { return make_field(params.p, 2 * params.q_exp * params.n); }
    Felt alpha_in(const Field& f) const { return f.constant(params.alpha()); }
};

inline TowerSpec make_tower(const TowerParams& params) {
    TowerSpec s;
    s.params = params;
    s.field_q = &make_field(params.p, params.q_exp);
    s.ell_field = &make_field(params.p, params.q_exp * params.n);
    s.alpha = s.ell_field->constant(params.alpha());
    return s;
}

inline TowerSpec make_tower(std::uint32_t p, unsigned q_exp, unsigned n, unsigned j, unsigned k) {
    return make_tower(make_params(p, q_exp, n, j, k));
}

namespace detail {

inline void require_char(const TowerParams& t, const Felt& x) {
    if (x.field().characteristic() != t.p) {
        throw Error(ErrorCode::SpecMismatch, "element of " + x.field().tag() +
                                                 " used with a tower of characteristic " +
                                                 std::to_string(t.p));
    }
}

} // namespace detail

/// A candidate point (x, y) of the basic function field; R and S as derived.
struct PointPair {
    Felt x;
    Felt y;

    Felt R(const TowerParams& t) const { return y / x.pow(t.qpow(t.k)); }
    Felt S(const TowerParams& t) const { return y.pow(t.qpow(t.j)) / x; }
};

/// Left side minus right side of the defining equation at (x, y); x nonzero.
inline Felt defining_residual(const TowerParams& t, const Felt& x, const Felt& y) {
    detail::require_char(t, x);
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroArgument, "x = 0 is a ramified fiber");
    }
    const PointPair pt{x, y};
    const Felt lhs = trace_q(pt.R(t), t.q, t.j) + trace_q(pt.S(t), t.q, t.k);
    return lhs - x.field().one();
}

inline bool satisfies_defining_equation(const TowerParams& t, const Felt& x, const Felt& y) {
    return defining_residual(t, x, y).is_zero();
}

inline bool is_valid(const TowerParams& t, const PointPair& pt) {
    return !pt.x.is_zero() && !pt.y.is_zero() && satisfies_defining_equation(t, pt.x, pt.y);
}

/// All y in the field of beta with (beta, y) on the curve, by exhaustive root
/// search. Over GF(ell) there are exactly q^(n-1) of them, all nonzero.
inline std::vector<Felt> fiber(const TowerParams& t, const Felt& beta) {
    detail::require_char(t, beta);
    if (beta.is_zero()) {
        throw Error(ErrorCode::ZeroArgument, "fiber over x = 0 is ramified, not split");
    }
    const Field& f = beta.field();
    const Felt one = f.one();
    // R = y * c_r, S = y^(q^j) * c_s
    const Felt c_r = beta.pow(t.qpow(t.k)).inv();
    const Felt c_s = beta.inv();
    const std::uint64_t qj = t.qpow(t.j);
    std::vector<Felt> out;
    for (std::uint32_t i = 1; i < f.size(); ++i) {
        const Felt y(f, i);
        const Felt lhs = trace_q(y * c_r, t.q, t.j) + trace_q(frobenius_q(y, qj) * c_s, t.q, t.k);
        if (lhs == one) {
            out.push_back(y);
        }
    }
    return out;
}

inline std::vector<Felt> fiber(const TowerSpec& s, const Felt& beta) {
    return fiber(s.params, beta);
}

/// Fibers over every nonzero element of one field, computed once.
class FiberTable {
public:
    FiberTable(const TowerParams& t, const Field& f) : field_(&f), fibers_(f.size()) {
        for (std::uint32_t i = 1; i < f.size(); ++i) {
            fibers_[i] = fiber(t, Felt(f, i));
        }
    }

    const Field& field() const { return *field_; }
    const std::vector<Felt>& operator[](const Felt& beta) const {
        if (beta.field_ptr() != field_) {
            throw Error(ErrorCode::SpecMismatch, "fiber lookup in the wrong field");
        }
        if (beta.is_zero()) {
            throw Error(ErrorCode::ZeroArgument, "fiber over x = 0 is ramified, not split");
        }
        return fibers_[beta.index()];
    }

private:
    const Field* field_;
    std::vector<std::vector<Felt>> fibers_;
};

/// Exhaustive preimage table of u -> (Tr_k(u), Tr_j(u)) over one field.
/// Lookups return every u with the requested trace pair, so multiplicity is
/// observable rather than assumed.
class TraceInverter {
public:
    TraceInverter(const TowerParams& t, const Field& f) : field_(&f), buckets_(f.size()) {
        for (std::uint32_t i = 0; i < f.size(); ++i) {
            const Felt u(f, i);
            const Felt trk = trace_q(u, t.q, t.k);
            const Felt trj = trace_q(u, t.q, t.j);
            buckets_[trk.index()].emplace_back(trj.index(), i);
        }
    }

    const Field& field() const { return *field_; }

    /// All u with Tr_k(u) = trk and Tr_j(u) = trj.
    std::vector<Felt> solve(const Felt& trk, const Felt& trj) const {
        if (trk.field_ptr() != field_ || trj.field_ptr() != field_) {
            throw Error(ErrorCode::SpecMismatch, "trace inversion in the wrong field");
        }
        std::vector<Felt> out;
        for (const auto& [trace_j, u] : buckets_[trk.index()]) {
            if (trace_j == trj.index()) {
                out.emplace_back(*field_, u);
            }
        }
        return out;
    }

private:
    const Field* field_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buckets_;
};

namespace detail {

inline Felt unique_u(std::vector<Felt> candidates) {
    if (candidates.empty()) {
        throw Error(ErrorCode::NoSolution, "no u with the required traces in the working field");
    }
    if (candidates.size() > 1) {
        throw Error(ErrorCode::Ambiguous,
                    std::to_string(candidates.size()) + " candidates for u; uniqueness violated");
    }
    return candidates.front();
}

} // namespace detail

/// The unique u with Tr_k(u) + alpha = R and Tr_j(u) = -S, by a direct scan
/// over the whole field.
inline Felt recover_u(const TowerParams& t, const PointPair& pt) {
    detail::require_char(t, pt.x);
    const Field& f = pt.x.field();
    const Felt alpha = f.constant(t.alpha());
    const Felt want_k = pt.R(t) - alpha;
    const Felt want_j = -pt.S(t);
    std::vector<Felt> candidates;
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        const Felt u(f, i);
        if (trace_q(u, t.q, t.k) == want_k && trace_q(u, t.q, t.j) == want_j) {
            candidates.push_back(u);
        }
    }
    return detail::unique_u(std::move(candidates));
}

/// Same search, answered from a precomputed table.
inline Felt recover_u(const TowerParams& t, const PointPair& pt, const TraceInverter& table) {
    detail::require_char(t, pt.x);
    const Felt alpha = pt.x.field().constant(t.alpha());
    return detail::unique_u(table.solve(pt.R(t) - alpha, -pt.S(t)));
}

inline Felt recover_u(const TowerSpec& s, const PointPair& pt) { return recover_u(s.params, pt); }

struct KummerReport {
    bool x_relation = false;  // x^(q^n-1) = -Tr_j(u) / (Tr_k(u)+alpha)^(q^j)
    bool y_relation = false;  // y^(q^n-1) = -Tr_j(u)^(q^k) / (Tr_k(u)+alpha)
    bool ok() const { return x_relation && y_relation; }
};

namespace detail {

/// (Tr_j(u), Tr_k(u) + alpha); throws when the second vanishes (u in Delta).
inline std::pair<Felt, Felt> u_traces(const TowerParams& t, const Felt& u) {
    const Felt trj = trace_q(u, t.q, t.j);
    const Felt den = trace_q(u, t.q, t.k) + u.field().constant(t.alpha());
    if (den.is_zero()) {
        throw Error(ErrorCode::DegenerateDenominator, "Tr_k(u) + alpha = 0");
    }
    return {trj, den};
}

} // namespace detail

inline KummerReport kummer_check(const TowerParams& t, const PointPair& pt, const Felt& u) {
    detail::require_char(t, pt.x);
    const auto [trj, den] = detail::u_traces(t, u);
    const std::uint64_t e = t.ell() - 1;
    KummerReport r;
    r.x_relation = pt.x.pow(e) == -trj / den.pow(t.qpow(t.j));
    r.y_relation = pt.y.pow(e) == -trj.pow(t.qpow(t.k)) / den;
    return r;
}

struct WZ {
    Felt w;  // -x^(q^n-1)
    Felt z;  // -y^(q^n-1)
    bool w_identity = false;  // w = Tr_j(u) / (Tr_k(u)+alpha)^(q^j)
    bool z_identity = false;  // z = Tr_j(u)^(q^k) / (Tr_k(u)+alpha)
    bool ok() const { return w_identity && z_identity; }
};

inline WZ wz_map(const TowerParams& t, const PointPair& pt, const Felt& u) {
    detail::require_char(t, pt.x);
    const auto [trj, den] = detail::u_traces(t, u);
    const std::uint64_t e = t.ell() - 1;
    WZ r;
    r.w = -pt.x.pow(e);
    r.z = -pt.y.pow(e);
    r.w_identity = r.w == trj / den.pow(t.qpow(t.j));
    r.z_identity = r.z == trj.pow(t.qpow(t.k)) / den;
    return r;
}

inline WZ wz_map(const TowerParams& t, const PointPair& pt) { return wz_map(t, pt, recover_u(t, pt)); }

} // namespace towerlab
