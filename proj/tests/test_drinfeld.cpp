#include "towerlab/drinfeld.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace towerlab;

namespace {

OrePoly random_ore(const Field& L, std::uint64_t q, std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<std::uint32_t> pick(0, L.size() - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<Felt> c;
    const int d = deg(rng);
    for (int i = 0; i <= d; ++i) {
        c.emplace_back(L, pick(rng));
    }
    return OrePoly(L, q, std::move(c));
}

std::vector<Felt> kernel_of(const OrePoly& f) {
    std::vector<Felt> out;
    for (const Felt& y : enumerate(f.field())) {
        if (apply(f, y).is_zero()) {
            out.push_back(y);
        }
    }
    return out;
}

// Pointwise: does phi_P vanish on every y in ker lambda?
bool kills_kernel(const DrinfeldModule& m, const TPoly& P, const OrePoly& lambda) {
    const OrePoly f = phi_of(m, P);
    for (const Felt& y : kernel_of(lambda)) {
        if (!apply(f, y).is_zero()) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(Drinfeld, OreMultiplicationIsAssociative) {
    std::mt19937 rng(1234);
    const Field& L = make_field(2, 6);
    for (std::uint64_t q : {2, 4}) {
        for (int i = 0; i < 100; ++i) {
            const OrePoly a = random_ore(L, q, rng, 4), b = random_ore(L, q, rng, 4), c = random_ore(L, q, rng, 4);
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * (b + c), a * b + a * c);
        }
    }
}

TEST(Drinfeld, TwistRuleAndComposition) {
    const Field& L = make_field(2, 6);
    const Felt c = L.generator();
    const OrePoly tau = OrePoly::monomial(L, 2, 1, L.one());
    EXPECT_EQ(tau * OrePoly::constant(L, 2, c), OrePoly::monomial(L, 2, 1, c.pow(2)));

    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        const OrePoly f = random_ore(L, 2, rng, 5), g = random_ore(L, 2, rng, 5);
        const Felt x(L, static_cast<std::uint32_t>(rng() % L.size()));
        ASSERT_EQ(apply(f * g, x), apply(f, apply(g, x)));
        ASSERT_EQ((f * g).D(), f.D() * g.D());
    }
}

TEST(Drinfeld, RightDivisionReconstructs) {
    const Field& L = make_field(3, 6);
    std::mt19937 rng(77);
    for (int i = 0; i < 200; ++i) {
        const OrePoly f = random_ore(L, 3, rng, 7);
        OrePoly d = random_ore(L, 3, rng, 3);
        if (d.is_zero()) {
            continue;
        }
        const OreDivision qr = ore_right_divmod(f, d);
        ASSERT_EQ(qr.quotient * d + qr.remainder, f);
        ASSERT_LT(qr.remainder.degree(), d.degree());
    }
    EXPECT_THROW(ore_right_divmod(OrePoly::constant(L, 3, L.one()), OrePoly(L, 3)), Error);
}

TEST(Drinfeld, KernelLineFactorsTheIsogeny) {
    // ker(tau - X^(q-1)) = GF(q) X lies in ker lambda, so it is a right factor.
    const DrinfeldParams d = make_drinfeld_params(2, 1, 3, 1);
    const Field& L = d.working_field();
    for (std::uint32_t i = 1; i < L.size(); ++i) {
        const Felt x(L, i);
        const OrePoly line = OrePoly::monomial(L, d.q, 1, L.one()) - OrePoly::constant(L, d.q, x.pow(d.q - 1));
        ASSERT_TRUE(ore_right_divmod(isogeny_lambda(d, a_of(d, x)), line).remainder.is_zero());
    }
}

TEST(Drinfeld, PkPolynomials) {
    const Field& L4 = make_field(2, 2);
    EXPECT_EQ(to_string(pk_poly(L4, 2, 1)), "T");
    EXPECT_EQ(to_string(pk_poly(L4, 2, 2)), "T^3 + T^2 + T");
    EXPECT_EQ(pk_product(L4, 2, 2), pk_poly(L4, 2, 2));
    const Field& L9 = make_field(3, 2);
    EXPECT_EQ(pk_poly(L9, 3, 2).degree(), 4);
    EXPECT_EQ(pk_product(L9, 3, 2), pk_poly(L9, 3, 2));
    const Field& L8 = make_field(2, 3);
    EXPECT_EQ(pk_product(L8, 2, 3), pk_poly(L8, 2, 3));
    EXPECT_EQ(to_string(galois_annihilator(L4, 2)), "T^2");
    EXPECT_EQ(to_string(galois_annihilator(L9, 2)), "T^2 + T");
}

TEST(Drinfeld, IsogenyFamilyOverGF64) {
    const DrinfeldParams d = make_drinfeld_params(2, 1, 3, 1);
    const Field& L = d.working_field();
    ASSERT_EQ(L.size(), 64u);
    const auto cs = subfield_elements(L, d.q, d.k);
    for (std::uint32_t i = 1; i < L.size(); ++i) {
        const Felt x(L, i);
        const Felt a = a_of(d, x);
        const OrePoly lambda = isogeny_lambda(d, a);
        for (const Felt& c : cs) {
            const Felt g = g_of(d, x, c);
            ASSERT_TRUE(isogeny_defect(d, g, a).is_zero());
            const Felt h = isogenous_h(d, g, a);
            ASSERT_EQ(h, h_of(d, x, c));
            ASSERT_TRUE(verify_intertwine(DrinfeldModule{d, g}, DrinfeldModule{d, h}, lambda));
        }
    }
    const Felt x = L.generator();
    const Felt a = a_of(d, x);
    const Felt bad_g = g_of(d, x, L.one()) + L.one();
    if (!isogeny_defect(d, bad_g, a).is_zero()) {
        EXPECT_THROW(isogenous_h(d, bad_g, a), Error);
    }
}

TEST(Drinfeld, TorsionKernelIsALine) {
    for (const std::uint32_t p : {2u, 3u}) {
        const DrinfeldParams d = make_drinfeld_params(p, 1, 3, 1);
        const Field& L = d.working_field();
        for (std::uint32_t i = 1; i < L.size(); i += (p == 2 ? 1 : 13)) {
            const Felt x(L, i);
            const DrinfeldModule m{d, g_of(d, x, -L.one())};
            const TorsionReport tr = torsion_check(m, x);
            ASSERT_TRUE(tr.torsion);
            ASSERT_EQ(tr.kernel_size, d.qpow(d.k));
            ASSERT_TRUE(tr.kernel_is_line);
        }
    }
}

TEST(Drinfeld, TActsOnKernelThroughFrobenius) {
    // On GF(q^k) X the torsion relation gives phi_T(cX) = (c - c^(q^j)) X.
    const DrinfeldParams d = make_drinfeld_params(3, 1, 3, 1);
    const Field& L = d.working_field();
    const auto cs = subfield_elements(L, d.q, d.k);
    for (std::uint32_t i = 1; i < L.size(); i += 7) {
        const Felt x(L, i);
        const DrinfeldModule m{d, g_of(d, x, -L.one())};
        for (const Felt& c : cs) {
            ASSERT_EQ(apply(m.phi_T(), c * x), (c - c.pow(d.qpow(d.j))) * x);
        }
    }
}

TEST(Drinfeld, AnnihilatorsAgreeWithPointwiseEvaluation) {
    for (const std::uint32_t p : {2u, 3u}) {
        const DrinfeldParams d = make_drinfeld_params(p, 1, 3, 1);
        const Field& L = d.working_field();
        const TPoly pk = pk_poly(L, d.q, d.k);
        const TPoly gal = galois_annihilator(L, d.k);
        for (std::uint32_t i = 1; i < L.size(); i += (p == 2 ? 1 : 29)) {
            const Felt x(L, i);
            const DrinfeldModule m{d, g_of(d, x, -L.one())};
            const OrePoly lambda = isogeny_lambda(d, a_of(d, x));
            const AnnihilationReport ar = annihilation_check(m, lambda);
            ASSERT_EQ(ar.annihilates, kills_kernel(m, pk, lambda));
            ASSERT_TRUE(ar.galois_annihilates);
            ASSERT_TRUE(kills_kernel(m, gal, lambda));
            ASSERT_EQ(ar.minimal, to_string(gal));
            // P_k kills the kernel exactly when k divides N_k.
            ASSERT_EQ(ar.annihilates, d.N(d.k) % d.k == 0) << d.label();
        }
    }
}

TEST(Drinfeld, JRecursionMatchesClosedForm) {
    for (const std::uint32_t p : {2u, 3u}) {
        const DrinfeldParams d = make_drinfeld_params(p, 1, 3, 1);
        const Field& L = d.working_field();
        std::uint32_t checked = 0;
        for (std::uint32_t i = 1; i < L.size(); ++i) {
            const JRecursion jr = j_recursion_check(d, Felt(L, i));
            if (jr.degenerate()) {
                continue;
            }
            ASSERT_TRUE(jr.ok());
            ++checked;
        }
        EXPECT_GT(checked, 0u);
    }
}

TEST(Drinfeld, PsiPartnersShareTheJInvariant) {
    const DrinfeldParams d = make_drinfeld_params(2, 1, 3, 1);
    const Field& L = d.working_field();
    const Felt minus_one = -L.one();
    std::uint32_t found = 0;
    for (std::uint32_t i = 1; i < L.size(); ++i) {
        const Felt x(L, i);
        for (const Felt& y : psi_partners(d, x)) {
            ASSERT_EQ(j_invariant(d, g_of(d, y, minus_one)), j_invariant(d, h_of(d, x, minus_one)));
            ++found;
        }
    }
    EXPECT_GT(found, 0u);
}

TEST(Drinfeld, ParameterErrors) {
    EXPECT_THROW(make_drinfeld_params(4, 1, 3, 1), Error);
    EXPECT_THROW(make_drinfeld_params(2, 1, 4, 2), Error);
    EXPECT_THROW(make_drinfeld_params(2, 1, 3, 3), Error);
    EXPECT_THROW(make_drinfeld_params(2, 3, 5, 2), Error);
    const DrinfeldParams d = make_drinfeld_params(2, 1, 3, 1);
    EXPECT_THROW(a_of(d, d.working_field().zero()), Error);
}
