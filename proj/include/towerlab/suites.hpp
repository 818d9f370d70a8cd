#pragma once

#include "towerlab/basic_field.hpp"
#include "towerlab/drinfeld.hpp"
#include "towerlab/ramcalc.hpp"
#include "towerlab/report.hpp"
#include "towerlab/tower_enum.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

/// Verification suites. Each returns a Report whose checks carry the name of
/// the identity they exercise; a suite passes iff every check passes.

namespace towerlab {

inline Json params_json(const TowerParams& t) {
    return {{"p", t.p}, {"q_exp", t.q_exp}, {"q", t.q}, {"n", t.n}, {"j", t.j}, {"k", t.k}};
}

inline Json params_json(const DrinfeldParams& d) {
    return {{"p", d.p}, {"q_exp", d.q_exp}, {"q", d.q}, {"n", d.n}, {"j", d.j}, {"k", d.k}};
}

template <typename T>
Json json_list(const T& values) {
    Json arr = Json::array();
    for (const auto& v : values) {
        arr.push_back(v);
    }
    return arr;
}

/// The (q, j, k) grid with q in {2, 3, 4, 5} and coprime j, k >= 1, j + k <= 6.
inline std::vector<TowerParams> ramification_grid() {
    const std::pair<std::uint32_t, unsigned> qs[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}};
    std::vector<TowerParams> out;
    std::set<std::string> seen;
    for (const auto& [p, e] : qs) {
        for (unsigned j = 1; j <= 5; ++j) {
            for (unsigned k = 1; j + k <= 6; ++k) {
                if (std::gcd(j, k) != 1) {
                    continue;
                }
                const TowerParams t = make_params(p, e, j + k, j, k);
                if (seen.insert(t.label()).second) {
                    out.push_back(t);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- count

inline Report count_suite(const TowerParams& t, unsigned levels) {
    Report r;
    r.command = "count";
    r.params = params_json(t);
    r.params["levels"] = levels;
    const TowerSpec spec = make_tower(t);
    const FiberTable fibers(t, *spec.ell_field);
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> expected;
    std::uint64_t bad = 0;
    for (unsigned i = 1; i <= levels; ++i) {
        counts.push_back(count_chains(t, fibers, i));
        expected.push_back((t.ell() - 1) * detail::upow(t.qpow(t.n - 1), i - 1));
        bad += counts.back() != expected.back();
    }
    r.data["counts"] = json_list(counts);
    r.data["expected"] = json_list(expected);
    r.check("chain counts", "split-count", levels, bad);
    return r;
}

// ---------------------------------------------------------------- verify

namespace detail {

struct PairTally {
    std::uint64_t pairs = 0;
    std::uint64_t bad_u = 0, bad_kummer = 0, bad_wz = 0, bad_sepx = 0, bad_sepz = 0;
};

inline PairTally tally_pairs(const TowerParams& t, const FiberTable& fibers, const TraceInverter& inv) {
    PairTally tally;
    const Field& f = fibers.field();
    const Felt alpha = f.constant(t.alpha());
    for (std::uint32_t i = 1; i < f.size(); ++i) {
        const Felt x(f, i);
        for (const Felt& y : fibers[x]) {
            ++tally.pairs;
            const PointPair pt{x, y};
            const std::vector<Felt> us = inv.solve(pt.R(t) - alpha, -pt.S(t));
            if (us.size() != 1) {
                ++tally.bad_u;
                continue;
            }
            tally.bad_kummer += !kummer_check(t, pt, us.front()).ok();
            const WZ wz = wz_map(t, pt, us.front());
            tally.bad_wz += !wz.ok();
            tally.bad_sepx += !check_sepvar_x(t, x, y);
            tally.bad_sepz += !check_sepvar_z(t, wz.w, wz.z);
        }
    }
    return tally;
}

} // namespace detail

/// Pointwise identities over GF(ell) and GF(ell^2): unique u, Kummer
/// relations, (w, z) in terms of u, both separated-variable forms, the
/// u-subtower recursion along chains, and witnesses that the separated
/// forms are strictly weaker.
inline Report verify_suite(const TowerParams& t, unsigned levels = 3) {
    if (levels < 2) {
        throw Error(ErrorCode::InvalidParameter, "verify needs levels >= 2");
    }
    Report r;
    r.command = "verify";
    r.params = params_json(t);
    r.params["levels"] = levels;
    const TowerSpec spec = make_tower(t);
    const Field* fields[] = {spec.ell_field, &spec.ell_square_field()};
    for (const Field* fp : fields) {
        const Field& f = *fp;
        const std::string tag = f.tag();
        const FiberTable fibers(t, f);
        const TraceInverter inv(t, f);
        const detail::PairTally tally = detail::tally_pairs(t, fibers, inv);
        r.check("unique u over " + tag, "unique-u", tally.pairs, tally.bad_u);
        r.check("Kummer relations over " + tag, "kummer-x-y", tally.pairs, tally.bad_kummer);
        r.check("w and z from u over " + tag, "w-z-identity", tally.pairs, tally.bad_wz);
        r.check("separated x-form over " + tag, "separated-x-form", tally.pairs, tally.bad_sepx);
        r.check("separated z-form over " + tag, "separated-z-form", tally.pairs, tally.bad_sepz);

        const std::vector<Chain> chains = enumerate_chains(t, fibers, levels);
        std::uint64_t bad_rec = 0, steps = 0, bad_chain_z = 0, z_steps = 0;
        std::set<Felt> z_values;
        for (const Chain& c : chains) {
            const SubtowerChain sub = subtower_values(t, c, &inv);
            bad_rec += !sub.recursion_ok;
            steps += sub.recursion_checked;
            for (std::size_t s = 0; s + 1 < sub.z.size(); ++s) {
                ++z_steps;
                bad_chain_z += !check_sepvar_z(t, sub.z[s], sub.z[s + 1]);
            }
            z_values.insert(sub.z.begin(), sub.z.end());
        }
        r.check("u-subtower recursion along level-" + std::to_string(levels) + " chains over " + tag,
                "u-subtower-recursion", chains.size(), bad_rec, std::to_string(steps) + " recursion steps defined");
        r.check("separated z-form along chains over " + tag, "separated-z-form", z_steps, bad_chain_z);

        Json entry;
        entry["pairs"] = tally.pairs;
        entry["chains"] = chains.size();
        entry["recursion_steps"] = steps;
        entry["distinct_z"] = z_values.size();
        r.data[tag] = std::move(entry);
    }

    // Converse witnesses live in the quadratic extension.
    const Field& big = spec.ell_square_field();
    const FiberTable fibers(t, big);
    std::optional<std::pair<Felt, Felt>> sepx_witness;
    for (std::uint32_t i = 1; i < big.size() && !sepx_witness; ++i) {
        const Felt x(big, i);
        const std::vector<Felt>& fib = fibers[x];
        for (const Felt& y : sepvar_x_fiber(t, x)) {
            if (std::find(fib.begin(), fib.end(), y) == fib.end()) {
                sepx_witness = {x, y};
                break;
            }
        }
    }
    r.check("separated x-form admits a pair off the curve", "separated-x-reducible", 1, sepx_witness ? 0 : 1);
    std::optional<std::pair<Felt, Felt>> sepz_witness;
    const std::uint64_t e = t.ell() - 1;
    for (std::uint32_t i = 1; i < big.size() && !sepz_witness; ++i) {
        const Felt x(big, i);
        for (std::uint32_t k = 1; k < big.size(); ++k) {
            const Felt y(big, k);
            if (check_sepvar_z(t, -x.pow(e), -y.pow(e)) && !check_sepvar_x(t, x, y)) {
                sepz_witness = {x, y};
                break;
            }
        }
    }
    r.check("separated z-form admits a pair failing the x-form", "separated-z-reducible", 1, sepz_witness ? 0 : 1);
    Json witnesses;
    witnesses["separated_x_not_curve"] =
        sepx_witness ? Json{encode(sepx_witness->first), encode(sepx_witness->second)} : Json();
    witnesses["separated_z_not_x"] =
        sepz_witness ? Json{encode(sepz_witness->first), encode(sepz_witness->second)} : Json();
    r.data["witnesses"] = std::move(witnesses);
    return r;
}

// ---------------------------------------------------------------- ramcheck

inline Json ram_step_json(const RamStep& s) { return {{"e", json_int(s.e)}, {"d", json_int(s.d)}}; }

inline Report ramcheck_suite(const std::vector<TowerParams>& grid, bool with_edges) {
    Report r;
    r.command = "ramcheck";
    Json labels = Json::array();
    for (const TowerParams& t : grid) {
        labels.push_back(t.label());
    }
    r.params["grid"] = std::move(labels);
    std::uint64_t bad_sq = 0, bad_div = 0, bad_diff = 0, bad_fib = 0, bad_genus = 0, bad_inf = 0;
    std::uint64_t squares = 0, fibers = 0;
    Table table{{"p", "q", "n", "j", "k", "genus", "hurwitz_u", "hurwitz_x", "v_places", "squares_ok"}, {}};
    for (const TowerParams& t : grid) {
        const FigureTables fig = figure_tables(t);
        bool sq_ok = true;
        for (const SquareCheck& s : fig.squares) {
            ++squares;
            if (!s.consistent()) {
                ++bad_sq;
                sq_ok = false;
            }
        }
        for (const FiberDegreeCheck& f : fig.fiber_degrees) {
            ++fibers;
            bad_fib += !f.consistent();
        }
        bad_div += !(fig.deg_div0_w == fig.expected_divisor_degree && fig.deg_divinf_w == fig.expected_divisor_degree &&
                     fig.deg_div0_z == fig.expected_divisor_degree && fig.deg_divinf_z == fig.expected_divisor_degree);
        bad_diff += !(fig.different_u_over_w == fig.expected_different &&
                      fig.different_u_over_z == fig.expected_different);
        const GenusCheck g = genus_cross_check(t);
        bad_genus += !g.consistent();
        bad_inf += !infinity_chain(t, 4).bounded;
        table.rows.push_back({{"p", t.p},
                              {"q", t.q},
                              {"n", t.n},
                              {"j", t.j},
                              {"k", t.k},
                              {"genus", json_int(g.genus)},
                              {"hurwitz_u", json_int(g.hurwitz_over_u)},
                              {"hurwitz_x", json_int(g.hurwitz_over_x)},
                              {"v_places", json_int(fig.v_place_count)},
                              {"squares_ok", sq_ok}});
        if (with_edges) {
            Json edges = Json::array();
            for (const RamEdge& e : fig.edges) {
                edges.push_back({{"figure", e.figure}, {"upper", e.upper}, {"lower", e.lower}, {"step", ram_step_json(e.step)}});
            }
            r.data[t.label()] = {{"edges", std::move(edges)}, {"genus", json_int(g.genus)}};
        }
    }
    const std::uint64_t n = grid.size();
    r.check("commuting squares", "transitivity-square", squares, bad_sq);
    r.check("degrees of the divisors of w and z", "divisor-degree-w", n, bad_div);
    r.check("different of K(u) over K(w) and K(z)", "different-degree-u-over-w", n, bad_diff);
    r.check("sum of ramification indices per fiber", "fiber-degree-sum", fibers, bad_fib);
    r.check("genus against Hurwitz over K(u) and K(x)", "hurwitz-genus", n, bad_genus);
    r.check("places over x_1 = infinity are b_inf-bounded", "infinity-chain-bound", n, bad_inf);
    r.table = std::move(table);
    return r;
}

// ---------------------------------------------------------------- main claim

inline Report main_claim_suite(const std::vector<TowerParams>& grid, unsigned max_t = 6) {
    Report r;
    r.command = "main-claim";
    r.params["towers"] = grid.size();
    r.params["max_wild_exponent"] = max_t;
    std::uint64_t single = 0, general = 0, bad_single_eq = 0, bad_single_le = 0, bad_gen_eq = 0, bad_gen_le = 0;
    for (const TowerParams& t : grid) {
        std::vector<BigInt> wild;
        for (unsigned e = 0; e <= max_t; ++e) {
            wild.push_back(ipow(BigInt(t.p), e));
        }
        for (const MainClaimRow& row : main_claim_identities(t, wild, wild)) {
            if (row.single_step) {
                ++single;
                bad_single_eq += !row.equalities_hold();
                bad_single_le += !row.inequality_holds();
            } else {
                ++general;
                bad_gen_eq += !row.equalities_hold();
                bad_gen_le += !row.inequality_holds();
            }
        }
    }
    r.check("single-step case equality chain", "main-claim-single-step", single, bad_single_eq);
    r.check("single-step case bounded by b_0", "b0-bound", single, bad_single_le);
    r.check("general case equality chain", "main-claim-general", general, bad_gen_eq);
    r.check("general case bounded by b_0", "b0-bound", general, bad_gen_le);
    return r;
}

// ---------------------------------------------------------------- bounds

inline Json bound_row(const TowerParams& t, const BoundReport& b) {
    Json row = {{"q", t.q},
                {"j", t.j},
                {"k", t.k},
                {"ell", json_int(b.ell)},
                {"lambda", json_rational(b.lambda)},
                {"b0", json_rational(b.b0)},
                {"binf", json_rational(b.binf)},
                {"genus_coefficient", json_rational(b.genus_coefficient)},
                {"dv", b.dv_display},
                {"dv_approx", b.dv_decimal},
                {"verdict", to_string(b.dv_verdict)}};
    row["odd_power_bound"] = b.odd_power_value ? json_rational(*b.odd_power_value) : Json();
    return row;
}

/// One row per (q, j, k) with j <= k coprime and j + k = n, plus the
/// earlier bounds for A(q^n).
inline Report bounds_suite(std::uint32_t p, unsigned q_exp, unsigned n) {
    Report r;
    r.command = "bounds";
    r.params = {{"p", p}, {"q_exp", q_exp}, {"n", n}};
    Table table{{"q", "j", "k", "ell", "lambda", "b0", "binf", "genus_coefficient", "dv", "dv_approx", "verdict",
                 "odd_power_bound"},
                {}};
    std::uint64_t rows = 0, bad_odd = 0, bad_cross = 0;
    for (unsigned j = 1; 2 * j <= n; ++j) {
        const unsigned k = n - j;
        if (std::gcd(j, k) != 1) {
            continue;
        }
        const TowerParams t = make_params(p, q_exp, n, j, k);
        const BoundReport b = limit_bounds(t);
        ++rows;
        bad_odd += !b.odd_power_agrees();
        // With lambda = r/s the verdict must agree with the sign of (r+s)^2 - ell s^2.
        const BigInt num = boost::multiprecision::numerator(b.lambda);
        const BigInt den = boost::multiprecision::denominator(b.lambda);
        const BigInt diff = (num + den) * (num + den) - b.ell * den * den;
        const DvVerdict expect = diff < 0 ? DvVerdict::Below : (diff == 0 ? DvVerdict::Meets : DvVerdict::Above);
        bad_cross += b.dv_verdict != expect || b.dv_verdict == DvVerdict::Above;
        table.rows.push_back(bound_row(t, b));
    }
    r.check("odd-power bound equals the harmonic-mean bound", "odd-power-vs-harmonic-mean", rows, bad_odd);
    r.check("tower limit does not exceed sqrt(ell)-1", "below-drinfeld-vladut", rows, bad_cross);
    r.data["dv_ratio_limit"] = sqrt_ratio_decimal(BigInt(p), BigInt(2), BigInt(p + 1), 4);
    Json prior = Json::array();
    for (const PriorBoundRow& row : prior_bounds_table(p, q_exp * n)) {
        Json j = {{"name", row.name}, {"applicable", row.applicable}};
        j["value"] = row.value ? json_rational(*row.value) : Json();
        j["display"] = row.display;
        if (!row.note.empty()) {
            j["note"] = row.note;
        }
        prior.push_back(std::move(j));
    }
    r.data["prior_bounds"] = std::move(prior);
    r.table = std::move(table);
    return r;
}

/// The odd-power bound against the harmonic-mean bound at (p, m, m+1) for
/// p in {2, 3, 5} and m <= 4, the position of each relative to sqrt(ell)-1,
/// and the limiting ratio 2 sqrt(2) / 3.
inline Report odd_power_suite() {
    Report r;
    r.command = "odd-power";
    r.params = {{"primes", {2, 3, 5}}, {"max_m", 4}};
    std::uint64_t cases = 0, bad_eq = 0, bad_dv = 0;
    Json rows = Json::array();
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (unsigned m = 1; m <= 4; ++m) {
            const TowerParams t = make_params(p, 1, 2 * m + 1, m, m + 1);
            const BoundReport b = limit_bounds(t);
            const Rational odd = odd_power_bound(p, m);
            ++cases;
            bad_eq += odd != b.lambda;
            bad_dv += b.dv_verdict != DvVerdict::Below;
            rows.push_back({{"p", p}, {"m", m}, {"bound", json_rational(odd)}, {"verdict", to_string(b.dv_verdict)}});
        }
    }
    r.data["rows"] = std::move(rows);
    const std::string ratio = sqrt_ratio_decimal(BigInt(2), BigInt(2), BigInt(3), 4);
    r.data["ratio_limit_p2"] = ratio;
    r.check("odd-power bound equals the harmonic-mean bound", "odd-power-vs-harmonic-mean", cases, bad_eq);
    r.check("strictly below sqrt(ell)-1", "below-drinfeld-vladut", cases, bad_dv);
    r.check("limiting ratio 2 sqrt(2)/3 to four decimals", "dv-ratio-limit", 1, ratio == "0.9428" ? 0 : 1, ratio);
    return r;
}

// ---------------------------------------------------------------- gv-scan

inline Report gv_suite(std::uint64_t max_ell) {
    Report r;
    r.command = "gv-scan";
    r.params = {{"max_ell", max_ell}};
    const GvScan scan = gv_scan(max_ell);
    r.data["exceptions"] = json_list(scan.odd_failures);
    r.data["square_failures"] = json_list(scan.square_failures);
    r.data["alt_form_exceptions"] = json_list(scan.alt_odd_failures);
    Table table{{"ell", "p", "exponent", "kind", "bound", "holds", "alt_bound", "alt_holds"}, {}};
    for (const GvRow& row : scan.rows) {
        Json j = {{"ell", json_int(row.ell)},
                  {"p", row.p},
                  {"exponent", row.exponent},
                  {"kind", row.square ? "square" : "odd"},
                  {"bound", json_rational(row.bound)},
                  {"holds", row.holds}};
        j["alt_bound"] = row.alt_bound ? json_rational(*row.alt_bound) : Json();
        j["alt_holds"] = row.alt_holds ? Json(*row.alt_holds) : Json();
        table.rows.push_back(std::move(j));
    }
    r.table = std::move(table);

    std::set<std::uint64_t> expected;
    for (std::uint64_t e : {8u, 27u, 32u, 125u}) {
        if (e <= max_ell) {
            expected.insert(e);
        }
    }
    std::uint64_t odd_rows = 0;
    for (const GvRow& row : scan.rows) {
        odd_rows += !row.square;
    }
    r.check("odd-power exceptions are 8, 27, 32, 125", "gv-exceptions", odd_rows, scan.odd_failures == expected ? 0 : 1,
            scan.odd_failures == expected ? "" : "got " + Json(json_list(scan.odd_failures)).dump());
    auto holds_at = [&scan](std::uint64_t ell) {
        for (const GvRow& row : scan.rows) {
            if (row.ell == ell) {
                return row.holds;
            }
        }
        throw Error(ErrorCode::InvalidParameter, "ell not scanned");
    };
    std::uint64_t bad_boundary = 0;
    bad_boundary += !holds_at(49);
    bad_boundary += holds_at(25);
    r.check("squares: 49 passes and 25 fails", "gv-square-boundary", 2, bad_boundary);
    return r;
}

// ---------------------------------------------------------------- drinfeld

/// Isogeny, torsion, annihilation and J-invariant checks over GF(q^(nk)).
inline Report drinfeld_suite(const DrinfeldParams& d) {
    Report r;
    r.command = "drinfeld-verify";
    r.params = params_json(d);
    const Field& L = d.working_field();
    r.params["working_field"] = L.tag();
    const Felt minus_one = -L.one();
    const std::vector<Felt> cs = subfield_elements(L, d.q, d.k);
    const std::vector<Felt> gf_qn = subfield_elements(L, d.q, d.n);

    std::uint64_t param_cases = 0, bad_defect = 0, bad_h = 0, bad_intertwine = 0, bad_perturbed = 0;
    std::uint64_t torsion_cases = 0, bad_torsion = 0, bad_kernel = 0, bad_annihilate = 0, bad_minimal = 0;
    std::uint64_t control_torsion = 0, control_cases = 0;
    std::uint64_t divisors_tested = 0, bad_galois = 0;
    std::set<std::string> minimal_annihilators, annihilating_divisors;
    for (std::uint32_t i = 1; i < L.size(); ++i) {
        const Felt x(L, i);
        const Felt a = a_of(d, x);
        const OrePoly lambda = isogeny_lambda(d, a);
        for (const Felt& c : cs) {
            const Felt g = g_of(d, x, c);
            ++param_cases;
            if (!isogeny_defect(d, g, a).is_zero()) {
                ++bad_defect;
                continue;
            }
            const Felt h = isogenous_h(d, g, a);
            bad_h += h != h_of(d, x, c);
            const DrinfeldModule phi{d, g};
            bad_intertwine += !verify_intertwine(phi, DrinfeldModule{d, h}, lambda);
            bad_perturbed += verify_intertwine(phi, DrinfeldModule{d, h + L.one()}, lambda);
            if (c != minus_one) {
                ++control_cases;
                control_torsion += apply(phi.phi_T(), x).is_zero();
            }
        }
        const DrinfeldModule phi{d, g_of(d, x, minus_one)};
        const TorsionReport tr = torsion_check(phi, x);
        ++torsion_cases;
        bad_torsion += !tr.torsion;
        bad_kernel += !(tr.kernel_is_line && tr.kernel_size == d.qpow(d.k));
        const AnnihilationReport ar = annihilation_check(phi, lambda);
        bad_annihilate += !ar.annihilates;
        bad_minimal += !ar.minimal_witness();
        bad_galois += !ar.galois_annihilates;
        divisors_tested += ar.proper_divisors_tested;
        minimal_annihilators.insert(ar.minimal);
        annihilating_divisors.insert(ar.annihilating_proper_divisors.begin(), ar.annihilating_proper_divisors.end());
    }
    r.data["P_k"] = to_string(pk_poly(L, d.q, d.k));
    r.data["galois_annihilator"] = to_string(galois_annihilator(L, d.k));
    r.data["minimal_annihilators"] = json_list(minimal_annihilators);
    r.check("tau^k - X^(q^k-1) is an isogeny for every (X, c)", "isogeny-condition", param_cases, bad_defect);
    r.check("h from a and g matches its closed form", "isogenous-h", param_cases, bad_h);
    r.check("lambda phi_T = psi_T lambda", "intertwine", param_cases, bad_intertwine);
    r.check("perturbed h breaks the intertwining", "intertwine", param_cases, bad_perturbed);
    r.check("X is a T-torsion point when c = -1", "torsion-point", torsion_cases, bad_torsion);
    r.check("some X is not T-torsion when c != -1", "torsion-point", control_cases,
            control_cases > 0 && control_torsion == control_cases ? 1 : 0);
    r.check("kernel of lambda is GF(q^k) X", "kernel-line", torsion_cases, bad_kernel);
    const auto joined = [](const std::set<std::string>& items) {
        std::string out;
        for (const std::string& s : items) {
            out += (out.empty() ? "" : ", ") + s;
        }
        return out;
    };
    r.check("phi_{P_k} is right-divisible by lambda", "pk-annihilation", torsion_cases, bad_annihilate,
            bad_annihilate == 0 ? std::string()
                                : std::to_string(bad_annihilate) + " of " + std::to_string(torsion_cases) +
                                      " cases failed; least annihilator " + joined(minimal_annihilators));
    r.data["annihilating_proper_divisors"] = json_list(annihilating_divisors);
    r.check("no proper divisor of P_k annihilates the kernel", "pk-minimality", torsion_cases, bad_minimal,
            std::to_string(divisors_tested) + " divisor tests" +
                (bad_minimal == 0 ? std::string()
                                  : "; " + std::to_string(bad_minimal) + " of " + std::to_string(torsion_cases) +
                                        " cases failed, annihilating " + joined(annihilating_divisors)));
    r.check("phi_{(T-1)^k-(-1)^k} is right-divisible by lambda", "galois-annihilation", torsion_cases, bad_galois);

    // Supersingular module and scalar automorphisms.
    std::uint64_t bad_super = 0;
    for (const Felt& a : gf_qn) {
        if (a.is_zero()) {
            continue;
        }
        bad_super += !isogeny_defect(d, L.zero(), a).is_zero() || !isogenous_h(d, L.zero(), a).is_zero();
    }
    r.check("g = 0 maps to h = 0 under a in GF(q^n)", "isogeny-condition", gf_qn.size() - 1, bad_super);
    std::uint64_t iso_cases = 0, bad_iso = 0;
    for (std::uint32_t i = 0; i < L.size(); ++i) {
        const Felt g(L, i);
        for (const Felt& lam : gf_qn) {
            if (lam.is_zero()) {
                continue;
            }
            ++iso_cases;
            bad_iso += j_invariant(d, g * lam.pow(d.qpow(d.j) - 1)) != j_invariant(d, g);
        }
    }
    r.check("J is constant on scalar isomorphism classes", "j-isomorphism-invariance", iso_cases, bad_iso);

    // Product formula for P_k.
    const std::pair<std::uint64_t, unsigned> product_cases[] = {{2, 2}, {3, 2}, {2, 3}};
    std::uint64_t bad_prod = 0;
    Json products = Json::array();
    for (const auto& [q, k] : product_cases) {
        const Field& F = make_field(static_cast<std::uint32_t>(q), k);
        const TPoly pk = pk_poly(F, q, k);
        bad_prod += pk != pk_product(F, q, k);
        products.push_back({{"q", q}, {"k", k}, {"P_k", to_string(pk)}});
    }
    r.check("P_k is the product of T - 1 + beta", "pk-product", std::size(product_cases), bad_prod);
    r.data["pk_products"] = std::move(products);

    // J closed forms and the link to the z-tower.
    std::uint64_t bad_j = 0, partners = 0, bad_link_x = 0, bad_link_z = 0, degenerate = 0;
    const bool link = d.j % d.p != 0;
    const TowerParams t = link ? make_params(d.p, d.q_exp, d.n, d.j, d.k) : TowerParams{};
    for (std::uint32_t i = 1; i < L.size(); ++i) {
        const Felt x(L, i);
        const JRecursion jr = j_recursion_check(d, x);
        bad_j += !jr.ok();
        degenerate += jr.degenerate();
        if (!link) {
            continue;
        }
        for (const Felt& xp : psi_partners(d, x)) {
            ++partners;
            bad_link_x += !check_sepvar_x(t, x, xp);
            bad_link_z += !check_sepvar_z(t, jr.z, -xp.pow(d.qpow(d.n) - 1));
        }
    }
    r.check("J(phi), J(psi) match their closed forms in Z", "j-closed-form", L.size() - 1, bad_j,
            std::to_string(degenerate) + " with Z = -1");
    if (link) {
        r.check("h(X) = g(X') gives the separated x-form", "j-z-tower-link", partners,
                partners == 0 ? 1 : bad_link_x);
        r.check("(Z, Z') satisfies the separated z-form", "j-z-tower-link", partners, partners == 0 ? 1 : bad_link_z);
    }
    r.data["parametrizations"] = param_cases;
    r.data["torsion_points"] = torsion_cases;
    r.data["partner_pairs"] = partners;
    return r;
}

// ---------------------------------------------------------------- report-all

/// The full acceptance grid in one deterministic report.
inline Report report_all() {
    Report r;
    r.command = "report-all";
    const TowerParams small[] = {make_params(2, 1, 2, 1, 1), make_params(2, 1, 3, 1, 2), make_params(3, 1, 2, 1, 1)};
    auto absorb = [&r](Report sub, const std::string& key) {
        sub.command = key;
        r.absorb(sub);
    };
    for (const TowerParams& t : small) {
        absorb(count_suite(t, 3), "count" + t.label());
    }
    absorb(count_suite(make_params(2, 1, 5, 2, 3), 2), "count" + make_params(2, 1, 5, 2, 3).label());
    for (const TowerParams& t : small) {
        absorb(verify_suite(t, 3), "verify" + t.label());
    }
    const std::vector<TowerParams> grid = ramification_grid();
    absorb(ramcheck_suite(grid, false), "ramcheck");
    absorb(main_claim_suite(grid, 6), "main-claim");
    absorb(odd_power_suite(), "odd-power");
    absorb(bounds_suite(2, 1, 3), "bounds(p=2,n=3)");
    absorb(bounds_suite(3, 1, 5), "bounds(p=3,n=5)");
    absorb(gv_suite(10000), "gv-scan");
    absorb(drinfeld_suite(make_drinfeld_params(2, 1, 3, 1)), "drinfeld(q=2,n=3,j=1)");
    absorb(drinfeld_suite(make_drinfeld_params(3, 1, 3, 1)), "drinfeld(q=3,n=3,j=1)");
    return r;
}

} // namespace towerlab
