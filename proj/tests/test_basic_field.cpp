#include "towerlab/basic_field.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <tuple>

using namespace towerlab;

namespace {

// Tr_a(v) over GF(q) as an explicit power sum.
Felt power_sum_trace(const Felt& v, std::uint64_t q, unsigned a) {
    Felt sum = v.field().zero();
    std::uint64_t e = 1;
    for (unsigned i = 0; i < a; ++i) {
        sum += v.pow(e);
        e *= q;
    }
    return sum;
}

bool on_curve_oracle(const TowerParams& t, const Felt& x, const Felt& y) {
    const Felt r = y / x.pow(t.qpow(t.k));
    const Felt s = y.pow(t.qpow(t.j)) / x;
    return power_sum_trace(r, t.q, t.j) + power_sum_trace(s, t.q, t.k) == x.field().one();
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::Ambiguous;
}

using Tower = std::tuple<std::uint32_t, unsigned, unsigned, unsigned, unsigned>;
const Tower kTowers[] = {{2, 1, 2, 1, 1}, {2, 1, 3, 1, 2}, {3, 1, 2, 1, 1}, {2, 1, 3, 2, 1}, {2, 2, 2, 1, 1}};

} // namespace

TEST(BasicField, ParamsValidation) {
    EXPECT_EQ(code_of([] { make_params(4, 1, 3, 1, 2); }), ErrorCode::NonPrime);
    EXPECT_EQ(code_of([] { make_params(2, 1, 4, 2, 2); }), ErrorCode::InvalidParameter);
    EXPECT_EQ(code_of([] { make_params(2, 1, 4, 1, 2); }), ErrorCode::InvalidParameter);
    EXPECT_EQ(code_of([] { make_params(2, 1, 1, 0, 1); }), ErrorCode::InvalidParameter);
    EXPECT_EQ(code_of([] { make_params(2, 0, 3, 1, 2); }), ErrorCode::InvalidParameter);
}

TEST(BasicField, SwapsWhenCharacteristicDividesJ) {
    const TowerParams t = make_params(2, 1, 3, 2, 1);
    EXPECT_EQ(t.j, 1u);
    EXPECT_EQ(t.k, 2u);
    EXPECT_EQ(t.alpha(), 1u);
    const TowerParams u = make_params(5, 1, 5, 2, 3);
    EXPECT_EQ(u.j, 2u);
    EXPECT_EQ(u.alpha(), 3u);  // 2 * 3 = 6 = 1 mod 5
    EXPECT_EQ(u.N(3), 31u);
    EXPECT_EQ(u.ell(), 3125u);
}

TEST(BasicField, ResidualAgreesWithPowerSumOracle) {
    std::mt19937 rng(7);
    for (const auto& [p, qe, n, j, k] : kTowers) {
        const TowerSpec s = make_tower(p, qe, n, j, k);
        for (const Field* f : {s.ell_field, &s.ell_square_field()}) {
            std::uniform_int_distribution<std::uint32_t> pick(1, f->size() - 1);
            for (int i = 0; i < 400; ++i) {
                const Felt x(*f, pick(rng)), y(*f, pick(rng));
                ASSERT_EQ(satisfies_defining_equation(s.params, x, y), on_curve_oracle(s.params, x, y));
            }
        }
    }
}

TEST(BasicField, FiberIsExhaustiveAndSplit) {
    for (const auto& [p, qe, n, j, k] : kTowers) {
        const TowerSpec s = make_tower(p, qe, n, j, k);
        const Field& f = *s.ell_field;
        for (std::uint32_t b = 1; b < f.size(); ++b) {
            const Felt x(f, b);
            std::vector<Felt> brute;
            for (std::uint32_t c = 1; c < f.size(); ++c) {
                if (on_curve_oracle(s.params, x, Felt(f, c))) {
                    brute.emplace_back(f, c);
                }
            }
            ASSERT_EQ(fiber(s.params, x), brute);
            ASSERT_EQ(brute.size(), s.params.qpow(n - 1));
        }
    }
}

TEST(BasicField, FiberTableMatchesFiber) {
    const TowerSpec s = make_tower(2, 1, 3, 1, 2);
    const FiberTable table(s.params, *s.ell_field);
    for (std::uint32_t b = 1; b < s.ell_field->size(); ++b) {
        const Felt x(*s.ell_field, b);
        EXPECT_EQ(table[x], fiber(s.params, x));
    }
    EXPECT_EQ(code_of([&] { fiber(s.params, s.ell_field->zero()); }), ErrorCode::ZeroArgument);
}

TEST(BasicField, UniqueUAndKummerAndWZ) {
    for (const auto& [p, qe, n, j, k] : kTowers) {
        const TowerSpec s = make_tower(p, qe, n, j, k);
        const TowerParams& t = s.params;
        for (const Field* f : {s.ell_field, &s.ell_square_field()}) {
            const TraceInverter inv(t, *f);
            std::uint32_t pairs = 0;
            for (std::uint32_t b = 1; b < f->size(); b += (f->size() > 256 ? 17 : 1)) {
                const Felt x(*f, b);
                for (const Felt& y : fiber(t, x)) {
                    const PointPair pt{x, y};
                    std::vector<Felt> us;
                    const Felt want_k = pt.R(t) - f->constant(t.alpha());
                    const Felt want_j = -pt.S(t);
                    for (const Felt& u : enumerate(*f)) {
                        if (power_sum_trace(u, t.q, t.k) == want_k && power_sum_trace(u, t.q, t.j) == want_j) {
                            us.push_back(u);
                        }
                    }
                    ASSERT_EQ(us.size(), 1u) << t.label() << " x=" << encode(x) << " y=" << encode(y);
                    const Felt u = recover_u(t, pt);
                    ASSERT_EQ(u, us.front());
                    ASSERT_EQ(recover_u(t, pt, inv), u);
                    ASSERT_TRUE(kummer_check(t, pt, u).ok()) << t.label();
                    ASSERT_TRUE(wz_map(t, pt, u).ok()) << t.label();
                    ++pairs;
                }
            }
            EXPECT_GT(pairs, 0u);
        }
    }
}

TEST(BasicField, CharacteristicMismatch) {
    const TowerSpec s = make_tower(2, 1, 3, 1, 2);
    const Field& g = make_field(3, 2);
    EXPECT_EQ(code_of([&] { fiber(s.params, g.one()); }), ErrorCode::SpecMismatch);
}
