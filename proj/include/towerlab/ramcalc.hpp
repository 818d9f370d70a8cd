#pragma once

#include "towerlab/basic_field.hpp"
#include "towerlab/error.hpp"
#include "towerlab/rational.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

/// Exact ramification calculus for the basic function field and the tower:
/// ramification steps, the three local pictures above P_gamma, Q_delta and
/// V, genus formulas, and the asymptotic bound engine.

namespace towerlab {

struct RamStep {
    BigInt e = 1;
    BigInt d = 0;

    RamStep() = default;
    RamStep(BigInt e_, BigInt d_) : e(std::move(e_)), d(std::move(d_)) {
        if (e < 1 || d < e - 1) {
            throw Error(ErrorCode::InvalidParameter,
                        "ramification step needs e >= 1 and d >= e-1, got e=" + e.str() + " d=" + d.str());
        }
    }

    bool is_tame_shape() const { return d == e - 1; }
    friend bool operator==(const RamStep&, const RamStep&) = default;
};

inline std::string to_string(const RamStep& s) {
    return "(e=" + s.e.str() + ", d=" + s.d.str() + ")";
}

inline RamStep tame(std::uint64_t p, const BigInt& e) {
    if (e % p == 0) {
        throw Error(ErrorCode::WildIndex, "index " + e.str() + " is divisible by " + std::to_string(p));
    }
    return RamStep(e, e - 1);
}

/// Step for P'' | P given P'' | P' (upper) and P' | P (lower).
inline RamStep compose(const RamStep& upper, const RamStep& lower) {
    return RamStep(upper.e * lower.e, upper.e * lower.d + upper.d);
}

/// Ramification index in a compositum of two extensions, at least one tame.
inline BigInt abhyankar(std::uint64_t p, const BigInt& e1, const BigInt& e2) {
    if (e1 % p == 0 && e2 % p == 0) {
        throw Error(ErrorCode::BothWild, "both indices " + e1.str() + " and " + e2.str() + " are wild");
    }
    return boost::integer::lcm(e1, e2);
}

namespace detail {

struct TowerInts {
    std::uint64_t p;
    BigInt q, qn, qj, qk, qn1, qj1, qk1, Nn, Nj, Nk;

    explicit TowerInts(const TowerParams& t) : p(t.p), q(t.q) {
        qn = ipow(q, t.n);
        qj = ipow(q, t.j);
        qk = ipow(q, t.k);
        qn1 = ipow(q, t.n - 1);
        qj1 = ipow(q, t.j - 1);
        qk1 = ipow(q, t.k - 1);
        Nn = (qn - 1) / (q - 1);
        Nj = (qj - 1) / (q - 1);
        Nk = (qk - 1) / (q - 1);
    }
};

} // namespace detail

struct RamEdge {
    std::string figure;
    std::string upper;
    std::string lower;
    RamStep step;
};

/// Both routes from the top place down to [w=*] or [z=*].
struct SquareCheck {
    std::string figure;
    std::string target;
    RamStep via_xy;
    RamStep via_u;

    bool consistent() const { return via_xy == via_u; }
};

/// Sum of e over the places of F above a rational place of a subfield,
/// against the degree of F over that subfield.
struct FiberDegreeCheck {
    std::string place;
    BigInt sum_e;
    BigInt degree;

    bool consistent() const { return sum_e == degree; }
};

struct FigureTables {
    std::vector<RamEdge> edges;
    std::vector<SquareCheck> squares;
    std::vector<FiberDegreeCheck> fiber_degrees;
    BigInt v_place_count;
    BigInt deg_div0_w, deg_divinf_w, deg_div0_z, deg_divinf_z;
    BigInt different_u_over_w, different_u_over_z;
    BigInt expected_divisor_degree;   // q^(n-1)
    BigInt expected_different;        // 2q^(n-1) - 2

    const RamEdge& edge(const std::string& figure, const std::string& upper, const std::string& lower) const {
        for (const RamEdge& e : edges) {
            if (e.figure == figure && e.upper == upper && e.lower == lower) {
                return e;
            }
        }
        throw Error(ErrorCode::InvalidParameter, "no edge " + upper + "|" + lower + " in " + figure);
    }

    bool ok() const {
        for (const SquareCheck& s : squares) {
            if (!s.consistent()) {
                return false;
            }
        }
        for (const FiberDegreeCheck& f : fiber_degrees) {
            if (!f.consistent()) {
                return false;
            }
        }
        return deg_div0_w == expected_divisor_degree && deg_divinf_w == expected_divisor_degree &&
               deg_div0_z == expected_divisor_degree && deg_divinf_z == expected_divisor_degree &&
               different_u_over_w == expected_different && different_u_over_z == expected_different;
    }
};

inline FigureTables figure_tables(const TowerParams& t) {
    const detail::TowerInts v(t);
    const RamStep one(1, 0);
    const RamStep cyc = tame(v.p, v.qn - 1);
    FigureTables out;
    auto add = [&out](std::string fig, std::string up, std::string low, RamStep s) {
        out.edges.push_back({std::move(fig), std::move(up), std::move(low), std::move(s)});
    };

    const std::string f2 = "P_gamma";
    add(f2, "P", "[x=0]", one);
    add(f2, "P", "[y=0]", RamStep(v.qk, v.qn + v.qk - 2));
    add(f2, "P", "[u=gamma]", cyc);
    add(f2, "[x=0]", "[w=0]", cyc);
    add(f2, "[y=0]", "[z=0]", cyc);
    add(f2, "[u=gamma]", "[w=0]", one);
    add(f2, "[u=gamma]", "[z=0]", RamStep(v.qk, v.qk));

    const std::string f3 = "Q_delta";
    add(f3, "Q", "[x=inf]", RamStep(v.qj, v.qn + v.qj - 2));
    add(f3, "Q", "[y=inf]", one);
    add(f3, "Q", "[u=delta]", cyc);
    add(f3, "[x=inf]", "[w=inf]", cyc);
    add(f3, "[y=inf]", "[z=inf]", cyc);
    add(f3, "[u=delta]", "[w=inf]", RamStep(v.qj, v.qj));
    add(f3, "[u=delta]", "[z=inf]", one);

    const std::string f4 = "V";
    const BigInt ex = v.qj1 * v.Nk;
    const BigInt ey = v.qk1 * v.Nj;
    add(f4, "V", "[x=0]", RamStep(ex, (v.qj1 - 1) * v.Nn + ex - 1));
    add(f4, "V", "[y=inf]", RamStep(ey, (v.qk1 - 1) * v.Nn + ey - 1));
    add(f4, "V", "[u=inf]", tame(v.p, v.Nn));
    add(f4, "[x=0]", "[w=0]", cyc);
    add(f4, "[y=inf]", "[z=inf]", cyc);
    add(f4, "[u=inf]", "[w=0]", RamStep(v.qn1 - v.qj1, v.qn1 - 2));
    add(f4, "[u=inf]", "[z=inf]", RamStep(v.qn1 - v.qk1, v.qn1 - 2));

    auto square = [&](const std::string& fig, const std::string& top, const std::string& side, const std::string& mid,
                      const std::string& bottom) {
        const RamStep a = compose(out.edge(fig, top, side).step, out.edge(fig, side, bottom).step);
        const RamStep b = compose(out.edge(fig, top, mid).step, out.edge(fig, mid, bottom).step);
        out.squares.push_back({fig, bottom, a, b});
    };
    square(f2, "P", "[x=0]", "[u=gamma]", "[w=0]");
    square(f2, "P", "[y=0]", "[u=gamma]", "[z=0]");
    square(f3, "Q", "[x=inf]", "[u=delta]", "[w=inf]");
    square(f3, "Q", "[y=inf]", "[u=delta]", "[z=inf]");
    square(f4, "V", "[x=0]", "[u=inf]", "[w=0]");
    square(f4, "V", "[y=inf]", "[u=inf]", "[z=inf]");

    // |Gamma| = q^(j-1), |Delta| = q^(k-1), and q-1 places V.
    const BigInt n_gamma = v.qj1;
    const BigInt n_delta = v.qk1;
    out.v_place_count = v.q - 1;
    out.fiber_degrees = {
        {"F/K(x) over [x=0]", n_gamma + out.v_place_count * ex, v.qn1},
        {"F/K(x) over [x=inf]", n_delta * v.qj, v.qn1},
        {"F/K(y) over [y=0]", n_gamma * v.qk, v.qn1},
        {"F/K(y) over [y=inf]", n_delta + out.v_place_count * ey, v.qn1},
        {"F/K(u) over [u=inf]", out.v_place_count * v.Nn, v.qn - 1},
    };

    out.expected_divisor_degree = v.qn1;
    out.expected_different = 2 * v.qn1 - 2;
    out.deg_div0_w = n_gamma * 1 + (v.qn1 - v.qj1);
    out.deg_divinf_w = n_delta * v.qj;
    out.deg_div0_z = n_gamma * v.qk;
    out.deg_divinf_z = n_delta * 1 + (v.qn1 - v.qk1);
    out.different_u_over_w = n_gamma * out.edge(f2, "[u=gamma]", "[w=0]").step.d +
                             n_delta * out.edge(f3, "[u=delta]", "[w=inf]").step.d +
                             out.edge(f4, "[u=inf]", "[w=0]").step.d;
    out.different_u_over_z = n_gamma * out.edge(f2, "[u=gamma]", "[z=0]").step.d +
                             n_delta * out.edge(f3, "[u=delta]", "[z=inf]").step.d +
                             out.edge(f4, "[u=inf]", "[z=inf]").step.d;
    return out;
}

inline FigureTables figure_tables(const TowerSpec& s) { return figure_tables(s.params); }

/// g(F) for the basic function field F = K(x, y).
inline BigInt genus_F2(const TowerParams& t) {
    const detail::TowerInts v(t);
    const BigInt twice = (v.qn - 2) * (v.qj1 + v.qk1 - 2) + (v.qn - v.q);
    if (twice % 2 != 0) {
        throw Error(ErrorCode::InvalidParameter, "genus numerator is odd for " + t.label());
    }
    return twice / 2;
}

/// 2g-2 from the closed form and from Hurwitz over K(u) and over K(x).
struct GenusCheck {
    BigInt genus;
    BigInt from_formula;
    BigInt hurwitz_over_u;
    BigInt hurwitz_over_x;

    bool consistent() const { return from_formula == hurwitz_over_u && from_formula == hurwitz_over_x; }
};

inline GenusCheck genus_cross_check(const TowerParams& t) {
    const detail::TowerInts v(t);
    const FigureTables fig = figure_tables(t);
    GenusCheck out;
    out.genus = genus_F2(t);
    out.from_formula = 2 * out.genus - 2;
    // [F:K(u)] = q^n - 1; ramified: P_gamma, Q_delta, V.
    out.hurwitz_over_u = -2 * (v.qn - 1) + v.qj1 * fig.edge("P_gamma", "P", "[u=gamma]").step.d +
                         v.qk1 * fig.edge("Q_delta", "Q", "[u=delta]").step.d +
                         fig.v_place_count * fig.edge("V", "V", "[u=inf]").step.d;
    // [F:K(x)] = q^(n-1); ramified: V over [x=0] and Q_delta over [x=inf].
    out.hurwitz_over_x = -2 * v.qn1 + fig.v_place_count * fig.edge("V", "V", "[x=0]").step.d +
                         v.qk1 * fig.edge("Q_delta", "Q", "[x=inf]").step.d;
    return out;
}

struct BPair {
    Rational b0;
    Rational binf;
};

inline BPair b_bounds(const TowerParams& t) {
    const detail::TowerInts v(t);
    return {Rational(v.qn - 1, v.qk - 1) + 1, Rational(v.qn - 1, v.qj - 1) + 1};
}

struct GenusBound {
    Rational bound;        // degree/2 * ((q^n-1)/(q^k-1) + (q^n-1)/(q^j-1))
    Rational via_b;        // (-1 + (b_0 + b_inf)/2) * degree
    bool forms_agree() const { return bound == via_b; }
};

/// Upper bound for g(F_i) - 1 where degree = [F_i:F_1] = q^((n-1)(i-1)).
inline GenusBound genus_bound(const TowerParams& t, const BigInt& degree) {
    const detail::TowerInts v(t);
    BigInt d = degree;
    while (d > 1 && d % v.qn1 == 0) {
        d /= v.qn1;
    }
    if (degree < 1 || d != 1) {
        throw Error(ErrorCode::InvalidParameter, "degree " + degree.str() + " is not a power of q^(n-1)");
    }
    const BPair b = b_bounds(t);
    GenusBound out;
    out.bound = Rational(degree, 2) * (Rational(v.qn - 1, v.qk - 1) + Rational(v.qn - 1, v.qj - 1));
    out.via_b = (Rational(-1) + (b.b0 + b.binf) / 2) * Rational(degree);
    return out;
}

/// Steps over [x_1 = inf] along the tower, each (q^j, q^n + q^j - 2);
/// the composite must satisfy d = b_inf (e - 1) exactly.
struct InfinityChain {
    std::vector<RamStep> composites;  // composites[i-1] is P | [x_1=inf] in F_{i+1}
    bool bounded = true;
};

inline InfinityChain infinity_chain(const TowerParams& t, unsigned levels) {
    const detail::TowerInts v(t);
    const RamStep step(v.qj, v.qn + v.qj - 2);
    const Rational binf = b_bounds(t).binf;
    InfinityChain out;
    RamStep acc;
    for (unsigned i = 0; i < levels; ++i) {
        acc = compose(step, acc);
        out.composites.push_back(acc);
        if (Rational(acc.d) != binf * Rational(acc.e - 1)) {
            out.bounded = false;
        }
    }
    return out;
}

/// One wild exponent's worth of the different computation above [x_1 = 0].
struct MainClaimRow {
    bool single_step;  // true: zero of x_1 and pole of x_2; false: the general case
    BigInt wild;       // e_1 or e-tilde
    BigInt ramification;  // e(P~|P_1)
    BigInt d_top;         // d(P~|P_2) or d-tilde, solved from two compositions
    std::vector<Rational> forms;  // equal expressions for d(P~|P_1)
    Rational bound;               // b_0 (e(P~|P_1) - 1)

    bool equalities_hold() const {
        for (const Rational& f : forms) {
            if (f != forms.front()) {
                return false;
            }
        }
        return true;
    }
    bool inequality_holds() const { return forms.front() <= bound; }
};

namespace detail {

inline void require_p_power(std::uint64_t p, const BigInt& e) {
    BigInt r = e;
    while (r > 1 && r % p == 0) {
        r /= p;
    }
    if (e < 1 || r != 1) {
        throw Error(ErrorCode::NotPPower, e.str() + " is not a power of " + std::to_string(p));
    }
}

} // namespace detail

inline std::vector<MainClaimRow> main_claim_identities(const TowerParams& t, const std::vector<BigInt>& e1_values,
                                                       const std::vector<BigInt>& etilde_values) {
    const detail::TowerInts v(t);
    const Rational b0 = b_bounds(t).b0;
    const Rational nn_over_nk(v.Nn, v.Nk);
    const BigInt e0 = v.qj1 * v.Nk;
    const RamStep p2_over_p1(e0, (v.qj1 - 1) * v.Nn + e0 - 1);
    const RamStep p2_over_u = tame(v.p, v.Nn);
    std::vector<MainClaimRow> rows;

    for (const BigInt& e1 : e1_values) {
        detail::require_p_power(v.p, e1);
        // Two routes from P~ to [u_1=inf] force d(P~|P_2).
        const RamStep via_p = compose(tame(v.p, v.Nn), RamStep(e1, 2 * (e1 - 1)));
        const BigInt d_top = via_p.d - e1 * p2_over_u.d;
        const RamStep top(e1, d_top);
        const RamStep total = compose(top, p2_over_p1);
        MainClaimRow r{true, e1, total.e, d_top, {}, b0 * Rational(total.e - 1)};
        r.forms.push_back(Rational(total.d));
        r.forms.push_back(Rational(v.Nn * (e1 * v.qj1 - 1) + (e0 * e1 - 1)));
        r.forms.push_back((nn_over_nk + 1) * Rational(e0 * e1 - 1) + nn_over_nk - Rational(v.Nn));
        r.forms.push_back(Rational((v.Nn + 1) * (e1 - 1) + e1 * p2_over_p1.d));
        rows.push_back(std::move(r));
    }
    for (const BigInt& et : etilde_values) {
        detail::require_p_power(v.p, et);
        // d~ + e~ (N_n - 1) = (N_n - 1) + N_n (2 e~ - 2)
        const BigInt d_top = (v.Nn - 1) + v.Nn * (2 * et - 2) - et * (v.Nn - 1);
        const BigInt e_total = v.Nk * et;
        MainClaimRow r{false, et, e_total, d_top, {}, b0 * Rational(e_total - 1)};
        r.forms.push_back(Rational(d_top + et * (v.Nk - 1)));
        r.forms.push_back(Rational((v.Nn + 1) * (et - 1) + et * (v.Nk - 1)));
        r.forms.push_back((nn_over_nk + 1) * Rational(e_total - 1) - (Rational(v.Nn) - nn_over_nk));
        rows.push_back(std::move(r));
    }
    return rows;
}

enum class DvVerdict { Below, Meets, Above };

inline std::string to_string(DvVerdict v) {
    switch (v) {
    case DvVerdict::Below: return "below-DV";
    case DvVerdict::Meets: return "meets-DV";
    case DvVerdict::Above: return "above-DV";
    }
    return "unknown";
}

/// Compares a rational lower bound r/s for A(ell) with sqrt(ell) - 1 by
/// testing (r+s)^2 against ell s^2.
inline DvVerdict compare_with_dv(const Rational& bound, const BigInt& ell) {
    const BigInt r = boost::multiprecision::numerator(bound);
    const BigInt s = boost::multiprecision::denominator(bound);
    const BigInt lhs = (r + s) * (r + s);
    const BigInt rhs = ell * s * s;
    if (lhs < rhs) {
        return DvVerdict::Below;
    }
    return lhs == rhs ? DvVerdict::Meets : DvVerdict::Above;
}

/// A(p^(2m+1)) >= 2(p^(m+1)-1) / (p + 1 + eps), eps = (p-1)/(p^m-1).
inline Rational odd_power_bound(std::uint64_t p, unsigned m) {
    if (m == 0) {
        throw Error(ErrorCode::InvalidParameter, "odd-power bound needs m >= 1");
    }
    const BigInt pm = ipow(BigInt(p), m);
    const Rational eps(BigInt(p - 1), pm - 1);
    return Rational(2 * (pm * p - 1)) / (Rational(BigInt(p + 1)) + eps);
}

/// sqrt(ell) - 1, truncated to the given number of decimals.
inline std::string sqrt_minus_one_decimal(const BigInt& ell, int decimals) {
    const BigInt scale = ipow(BigInt(10), static_cast<std::uint64_t>(decimals));
    const BigInt scaled = isqrt(ell * scale * scale) - scale;
    std::string body = scaled.str();
    const auto d = static_cast<std::size_t>(decimals);
    if (body.size() <= d) {
        body.insert(0, d + 1 - body.size(), '0');
    }
    body.insert(body.size() - d, ".");
    return body;
}

struct BoundReport {
    Rational N_n;
    Rational b0;
    Rational binf;
    Rational lambda;  // 2 / (1/(q^j-1) + 1/(q^k-1))
    std::optional<Rational> odd_power_value;  // only when q = p and {j,k} = {m, m+1}
    BigInt ell;
    bool dv_exact = false;  // ell is a square
    std::optional<BigInt> dv_value;  // sqrt(ell) - 1 when exact
    std::string dv_display;  // exact integer or "sqrt(ell)-1"
    std::string dv_decimal;  // truncated to six places
    DvVerdict dv_verdict = DvVerdict::Below;
    Rational genus_coefficient;  // (b_0 + b_inf)/2 - 1
    std::string dv_ratio_limit;  // 2 sqrt(p) / (p+1), four decimals

    bool odd_power_agrees() const { return !odd_power_value || *odd_power_value == lambda; }
};

inline BoundReport limit_bounds(const TowerParams& t) {
    const detail::TowerInts v(t);
    BoundReport r;
    const BPair b = b_bounds(t);
    r.N_n = Rational(v.Nn);
    r.b0 = b.b0;
    r.binf = b.binf;
    r.lambda = Rational(2) / (Rational(BigInt(1), v.qj - 1) + Rational(BigInt(1), v.qk - 1));
    if (t.q_exp == 1 && (t.j + 1 == t.k || t.k + 1 == t.j)) {
        r.odd_power_value = odd_power_bound(t.p, std::min(t.j, t.k));
    }
    r.ell = v.qn;
    const BigInt root = isqrt(r.ell);
    r.dv_exact = root * root == r.ell;
    if (r.dv_exact) {
        r.dv_value = root - 1;
        r.dv_display = r.dv_value->str();
    } else {
        r.dv_display = "sqrt(" + r.ell.str() + ")-1";
    }
    r.dv_decimal = sqrt_minus_one_decimal(r.ell, 6);
    r.dv_verdict = compare_with_dv(r.lambda, r.ell);
    r.genus_coefficient = (b.b0 + b.binf) / 2 - 1;
    r.dv_ratio_limit = sqrt_ratio_decimal(BigInt(t.p), BigInt(2), BigInt(t.p + 1), 4);
    return r;
}

inline BoundReport limit_bounds(const TowerSpec& s) { return limit_bounds(s.params); }

/// A (log_ell(2 ell - 1) - 1) > 1 with A = r/s, decided as
/// (2 ell - 1)^r > ell^(r+s).
inline bool gv_condition(const BigInt& ell, const Rational& bound) {
    const BigInt r = boost::multiprecision::numerator(bound);
    const BigInt s = boost::multiprecision::denominator(bound);
    if (r <= 0) {
        return false;
    }
    const auto re = static_cast<std::uint64_t>(r);
    const auto rs = static_cast<std::uint64_t>(r + s);
    return ipow(2 * ell - 1, re) > ipow(ell, rs);
}

struct GvRow {
    BigInt ell;
    std::uint64_t p = 0;
    unsigned exponent = 0;
    bool square = false;
    Rational bound;
    bool holds = false;
    // Odd powers only: the threshold with 2(p^m - 1) in the numerator.
    std::optional<Rational> alt_bound;
    std::optional<bool> alt_holds;
};

struct GvScan {
    std::uint64_t max_ell = 0;
    std::vector<GvRow> rows;
    std::set<std::uint64_t> odd_failures;
    std::set<std::uint64_t> square_failures;
    std::set<std::uint64_t> alt_odd_failures;
};

/// Every non-prime prime power ell <= max_ell, in increasing order.
inline GvScan gv_scan(std::uint64_t max_ell) {
    if (max_ell < 125) {
        throw Error(ErrorCode::InvalidParameter, "gv scan needs max_ell >= 125");
    }
    struct Entry {
        std::uint64_t ell, p;
        unsigned e;
    };
    std::vector<Entry> entries;
    for (std::uint64_t p = 2; p * p <= max_ell; ++p) {
        if (!detail::is_prime(p)) {
            continue;
        }
        std::uint64_t ell = p * p;
        for (unsigned e = 2;; ++e) {
            entries.push_back({ell, p, e});
            if (ell > max_ell / p) {
                break;
            }
            ell *= p;
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.ell < b.ell; });

    GvScan out;
    out.max_ell = max_ell;
    for (const Entry& en : entries) {
        if (en.ell > max_ell) {
            continue;
        }
        GvRow row;
        row.ell = en.ell;
        row.p = en.p;
        row.exponent = en.e;
        row.square = en.e % 2 == 0;
        if (row.square) {
            row.bound = Rational(ipow(BigInt(en.p), en.e / 2) - 1);
        } else {
            const unsigned m = (en.e - 1) / 2;
            row.bound = odd_power_bound(en.p, m);
            const BigInt pm = ipow(BigInt(en.p), m);
            const Rational eps(BigInt(en.p - 1), pm - 1);
            row.alt_bound = Rational(2 * (pm - 1)) / (Rational(BigInt(en.p + 1)) + eps);
            row.alt_holds = gv_condition(row.ell, *row.alt_bound);
            if (!*row.alt_holds) {
                out.alt_odd_failures.insert(en.ell);
            }
        }
        row.holds = gv_condition(row.ell, row.bound);
        if (!row.holds) {
            (row.square ? out.square_failures : out.odd_failures).insert(en.ell);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

struct PriorBoundRow {
    std::string name;
    bool applicable = false;
    std::optional<Rational> value;  // absent when not applicable or not rational
    std::string display;
    std::string note;
};

/// Earlier lower bounds for A(p^n) next to the odd-power bound.
inline std::vector<PriorBoundRow> prior_bounds_table(std::uint64_t p, unsigned n) {
    if (!detail::is_prime(p)) {
        throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    }
    if (n == 0) {
        throw Error(ErrorCode::InvalidParameter, "n must be positive");
    }
    const BigInt ell = ipow(BigInt(p), n);
    std::vector<PriorBoundRow> rows;
    auto finish = [](PriorBoundRow r) {
        if (r.value) {
            r.display = to_string(*r.value);
        }
        return r;
    };

    {
        PriorBoundRow r{"odd q, prime n >= 3", false, std::nullopt, "", ""};
        if (p % 2 == 1 && n >= 3 && detail::is_prime(n)) {
            const BigInt q(p);
            const BigInt inner = (3 + isqrt(4 * (2 * q + 2))) / (n - 2);
            r.applicable = true;
            r.value = Rational(4 * q + 4, inner + isqrt(4 * (2 * q + 3)));
        } else {
            r.note = "needs odd q and prime n >= 3";
        }
        rows.push_back(finish(r));
    }
    {
        PriorBoundRow r{"cubic, A(q^3) >= 2(q^2-1)/(q+2)", false, std::nullopt, "", ""};
        if (n % 3 == 0) {
            const BigInt q = ipow(BigInt(p), n / 3);
            r.applicable = true;
            r.value = Rational(2 * (q * q - 1), q + 2);
        } else {
            r.note = "needs 3 | n";
        }
        rows.push_back(finish(r));
    }
    {
        PriorBoundRow r{"Serre, (1/96) log2(ell)", true, std::nullopt, "", ""};
        if (p == 2) {
            r.value = Rational(BigInt(n), BigInt(96));
        } else {
            r.display = std::to_string(n) + "*log2(" + std::to_string(p) + ")/96";
            r.note = "irrational; shown symbolically";
        }
        rows.push_back(finish(r));
    }
    {
        PriorBoundRow r{"odd power, 2(p^(m+1)-1)/(p+1+eps)", false, std::nullopt, "", ""};
        if (n % 2 == 1 && n >= 3) {
            r.applicable = true;
            r.value = odd_power_bound(p, (n - 1) / 2);
        } else {
            r.note = "needs odd n >= 3";
        }
        rows.push_back(finish(r));
    }
    {
        PriorBoundRow r{"Drinfeld-Vladut upper bound, sqrt(ell)-1", true, std::nullopt, "", ""};
        const BigInt root = isqrt(ell);
        if (root * root == ell) {
            r.value = Rational(root - 1);
        } else {
            r.display = "sqrt(" + ell.str() + ")-1";
            r.note = "irrational; about " + sqrt_minus_one_decimal(ell, 6);
        }
        rows.push_back(finish(r));
    }
    return rows;
}

} // namespace towerlab
