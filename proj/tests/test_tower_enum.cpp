#include "towerlab/tower_enum.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

using namespace towerlab;

namespace {

std::uint64_t expected_count(const TowerParams& t, unsigned level) {
    return (t.ell() - 1) * detail::upow(t.qpow(t.n - 1), level - 1);
}

} // namespace

TEST(TowerEnum, SplitCountsMatchClosedForm) {
    struct Case {
        std::uint32_t p;
        unsigned qe, n, j, k;
        std::vector<std::uint64_t> counts;
    };
    const Case cases[] = {
        {2, 1, 2, 1, 1, {3, 6, 12}},
        {2, 1, 3, 1, 2, {7, 28, 112}},
        {3, 1, 2, 1, 1, {8, 24, 72}},
    };
    for (const Case& c : cases) {
        const TowerSpec s = make_tower(c.p, c.qe, c.n, c.j, c.k);
        const FiberTable fibers(s.params, *s.ell_field);
        for (unsigned level = 1; level <= 3; ++level) {
            EXPECT_EQ(count_chains(s.params, fibers, level), c.counts[level - 1]) << s.params.label();
            EXPECT_EQ(count_chains(s.params, fibers, level), expected_count(s.params, level));
        }
    }
}

TEST(TowerEnum, LevelTwoCountByPairScan) {
    // Independent of the fiber machinery: scan every (x, y) pair.
    for (const auto& [p, n, j, k] : {std::tuple{2u, 3u, 1u, 2u}, std::tuple{3u, 2u, 1u, 1u}}) {
        const TowerSpec s = make_tower(p, 1, n, j, k);
        const Field& f = *s.ell_field;
        std::uint64_t pairs = 0;
        for (std::uint32_t a = 1; a < f.size(); ++a) {
            for (std::uint32_t b = 1; b < f.size(); ++b) {
                pairs += satisfies_defining_equation(s.params, Felt(f, a), Felt(f, b));
            }
        }
        EXPECT_EQ(pairs, expected_count(s.params, 2));
    }
}

TEST(TowerEnum, EnumeratedChainsAreValidAndDistinct) {
    const TowerSpec s = make_tower(2, 1, 3, 1, 2);
    const FiberTable fibers(s.params, *s.ell_field);
    const auto chains = enumerate_chains(s.params, fibers, 3);
    ASSERT_EQ(chains.size(), 112u);
    std::set<std::vector<Felt>> distinct;
    for (const Chain& c : chains) {
        EXPECT_EQ(c.level(), 3u);
        EXPECT_TRUE(is_valid(s.params, c));
        distinct.insert(c.values);
        EXPECT_EQ(extend(s.params, c).size(), 4u);
        EXPECT_EQ(extend(s.params, c, fibers), extend(s.params, c));
    }
    EXPECT_EQ(distinct.size(), chains.size());
}

TEST(TowerEnum, InvalidChainRejected) {
    const TowerSpec s = make_tower(2, 1, 3, 1, 2);
    const Field& f = *s.ell_field;
    const auto ys = fiber(s.params, f.one());
    Felt off = f.one();
    while (std::find(ys.begin(), ys.end(), off) != ys.end()) {
        off = Felt(f, off.index() + 1);
    }
    EXPECT_FALSE(is_valid(s.params, Chain{{f.one(), off}}));
    EXPECT_TRUE(is_valid(s.params, Chain{{f.one(), ys.front()}}));
    EXPECT_FALSE(is_valid(s.params, Chain{{f.zero()}}));
}

TEST(TowerEnum, LargerTowerUsesVerifiedProduct) {
    const TowerSpec s = make_tower(2, 1, 5, 2, 3);
    EXPECT_EQ(count_chains(s, 2), 31u * 16u);
}

TEST(TowerEnum, SeparatedFormsHoldOnEveryChain) {
    for (const auto& [p, n, j, k] : {std::tuple{2u, 3u, 1u, 2u}, std::tuple{3u, 2u, 1u, 1u}, std::tuple{2u, 2u, 1u, 1u}}) {
        const TowerSpec s = make_tower(p, 1, n, j, k);
        for (const Field* f : {s.ell_field, &s.ell_square_field()}) {
            const FiberTable fibers(s.params, *f);
            const TraceInverter inv(s.params, *f);
            std::uint64_t checked = 0;
            for (std::uint32_t a = 1; a < f->size(); ++a) {
                const Felt x(*f, a);
                for (const Felt& y : fibers[x]) {
                    ASSERT_TRUE(check_sepvar_x(s.params, x, y));
                    const Chain c{{x, y}};
                    const SubtowerChain sub = subtower_values(s.params, c, &inv);
                    ASSERT_TRUE(check_sepvar_z(s.params, sub.z[0], sub.z[1]));
                    ++checked;
                }
            }
            EXPECT_GT(checked, 0u);
        }
    }
}

TEST(TowerEnum, SubtowerRecursionAlongLevelThreeChains) {
    const TowerSpec s = make_tower(2, 1, 3, 1, 2);
    const FiberTable fibers(s.params, *s.ell_field);
    unsigned checked = 0;
    for (const Chain& c : enumerate_chains(s.params, fibers, 3)) {
        const SubtowerChain sub = subtower_values(s.params, c);
        EXPECT_TRUE(sub.recursion_ok);
        EXPECT_EQ(sub.u.size(), 2u);
        EXPECT_EQ(sub.z.size(), 3u);
        checked += sub.recursion_checked;
    }
    EXPECT_GT(checked, 0u);
}

TEST(TowerEnum, SeparatedXFormIsStrictlyWeaker) {
    const TowerSpec s = make_tower(2, 1, 3, 1, 2);
    bool strict = false;
    for (std::uint32_t a = 1; a < s.ell_field->size() && !strict; ++a) {
        const Felt x(*s.ell_field, a);
        const auto loose = sepvar_x_fiber(s.params, x);
        const auto tight = fiber(s.params, x);
        for (const Felt& y : tight) {
            ASSERT_NE(std::find(loose.begin(), loose.end(), y), loose.end());
        }
        strict = loose.size() > tight.size();
    }
    EXPECT_TRUE(strict);
}

TEST(TowerEnum, ZeroArgumentsRejected) {
    const TowerSpec s = make_tower(2, 1, 3, 1, 2);
    const Field& f = *s.ell_field;
    EXPECT_THROW(check_sepvar_x(s.params, f.zero(), f.one()), Error);
    EXPECT_THROW(check_sepvar_z(s.params, f.one(), f.zero()), Error);
    EXPECT_THROW(subtower_values(s.params, Chain{{f.one()}}), Error);
}
