#include "towerlab/finite_field.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

using namespace towerlab;

namespace {

using Coeffs = std::vector<std::uint32_t>;

Coeffs digits(std::uint32_t index, std::uint32_t p, unsigned e) {
    Coeffs c(e);
    for (unsigned i = 0; i < e; ++i) {
        c[i] = index % p;
        index /= p;
    }
    return c;
}

std::uint32_t index_of(const Coeffs& c, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        v = v * p + c[i];
    }
    return v;
}

// Schoolbook product reduced by the field's modulus, written from scratch.
std::uint32_t naive_mul(const Field& f, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t p = f.characteristic();
    const unsigned e = f.degree();
    const Coeffs x = digits(a, p, e);
    const Coeffs y = digits(b, p, e);
    Coeffs prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i) {
        for (unsigned j = 0; j < e; ++j) {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        }
    }
    const Coeffs& m = f.modulus();
    for (std::size_t d = prod.size(); d-- > e;) {
        const std::uint32_t c = prod[d];
        if (c == 0) {
            continue;
        }
        for (unsigned i = 0; i <= e; ++i) {
            prod[d - e + i] = (prod[d - e + i] + (p - c) * m[i]) % p;
        }
    }
    prod.resize(e);
    return index_of(prod, p);
}

std::uint32_t naive_add(const Field& f, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t p = f.characteristic();
    Coeffs x = digits(a, p, f.degree());
    const Coeffs y = digits(b, p, f.degree());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = (x[i] + y[i]) % p;
    }
    return index_of(x, p);
}

struct FieldCase {
    std::uint32_t p;
    unsigned e;
};

const FieldCase kSmallFields[] = {{2, 1}, {2, 3}, {2, 4}, {2, 6}, {3, 1}, {3, 2}, {3, 4}, {5, 2}, {7, 2}, {13, 1}, {11, 2}};

} // namespace

TEST(FiniteField, ModulusExamples) {
    EXPECT_EQ(make_field(2, 3).modulus(), (Coeffs{1, 1, 0, 1}));
    EXPECT_EQ(make_field(3, 2).modulus(), (Coeffs{1, 0, 1}));
    EXPECT_EQ(make_field(2, 6).modulus(), (Coeffs{1, 1, 0, 0, 0, 0, 1}));
    EXPECT_EQ(make_field(3, 6).modulus(), (Coeffs{2, 1, 0, 0, 0, 0, 1}));
    EXPECT_EQ(make_field(5, 1).modulus(), (Coeffs{0, 1}));
}

TEST(FiniteField, InternedAndDeterministic) {
    const Field& a = make_field(2, 5);
    const Field& b = make_field(2, 5);
    EXPECT_EQ(&a, &b);
    EXPECT_EQ(a.tag(), "GF(2^5)");
    EXPECT_EQ(a.size(), 32u);
}

// Irreducible modulus <=> the schoolbook quotient ring has no zero divisors.
TEST(FiniteField, SchoolbookQuotientIsAField) {
    for (const auto& [p, e] : kSmallFields) {
        const Field& f = make_field(p, e);
        ASSERT_EQ(f.modulus().size(), e + 1);
        EXPECT_EQ(f.modulus().back(), 1u);
        if (f.size() > 729) {
            continue;
        }
        for (std::uint32_t a = 1; a < f.size(); ++a) {
            bool found = false;
            for (std::uint32_t b = 1; b < f.size() && !found; ++b) {
                found = naive_mul(f, a, b) == 1;
            }
            ASSERT_TRUE(found) << f.tag() << " element " << a << " has no inverse";
        }
    }
}

TEST(FiniteField, MultiplicationMatchesSchoolbookOracle) {
    for (const auto& [p, e] : kSmallFields) {
        const Field& f = make_field(p, e);
        if (f.size() <= 128) {
            for (std::uint32_t a = 0; a < f.size(); ++a) {
                for (std::uint32_t b = 0; b < f.size(); ++b) {
                    ASSERT_EQ((Felt(f, a) * Felt(f, b)).index(), naive_mul(f, a, b)) << f.tag();
                    ASSERT_EQ((Felt(f, a) + Felt(f, b)).index(), naive_add(f, a, b)) << f.tag();
                }
            }
        } else {
            std::mt19937 rng(17 + p * 31 + e);
            std::uniform_int_distribution<std::uint32_t> pick(0, f.size() - 1);
            for (int i = 0; i < 3000; ++i) {
                const std::uint32_t a = pick(rng), b = pick(rng);
                ASSERT_EQ((Felt(f, a) * Felt(f, b)).index(), naive_mul(f, a, b)) << f.tag();
            }
        }
    }
}

TEST(FiniteField, RandomFieldAxioms) {
    std::mt19937 rng(20240611);
    for (const auto& [p, e] : {FieldCase{2, 6}, FieldCase{3, 6}, FieldCase{5, 3}, FieldCase{2, 10}}) {
        const Field& f = make_field(p, e);
        std::uniform_int_distribution<std::uint32_t> pick(0, f.size() - 1);
        for (int i = 0; i < 500; ++i) {
            const Felt a(f, pick(rng)), b(f, pick(rng)), c(f, pick(rng));
            ASSERT_EQ((a + b) + c, a + (b + c));
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_EQ(a + b, b + a);
            ASSERT_EQ(a * b, b * a);
            ASSERT_EQ(a - a, f.zero());
            ASSERT_EQ(a + (-a), f.zero());
            if (!a.is_zero()) {
                ASSERT_EQ(a * a.inv(), f.one());
                ASSERT_EQ(b / a * a, b);
                ASSERT_EQ(a.pow(f.size() - 1), f.one());
            }
            ASSERT_EQ(a.pow(f.size()), a);
        }
    }
}

TEST(FiniteField, PowerMatchesRepeatedProduct) {
    const Field& f = make_field(3, 4);
    for (std::uint32_t a = 0; a < f.size(); a += 7) {
        Felt acc = f.one();
        for (std::uint64_t k = 0; k < 100; ++k) {
            ASSERT_EQ(Felt(f, a).pow(k), acc);
            acc *= Felt(f, a);
        }
    }
}

TEST(FiniteField, FrobeniusIsAdditiveAndFixesPrimeField) {
    const Field& f = make_field(2, 6);
    for (const Felt& a : enumerate(f)) {
        for (std::uint32_t b = 0; b < f.size(); b += 5) {
            const Felt bb(f, b);
            ASSERT_EQ(frobenius_q(a + bb, 4), frobenius_q(a, 4) + frobenius_q(bb, 4));
        }
        ASSERT_EQ(frobenius_q(a, 64), a);
    }
    EXPECT_EQ(frobenius_q(f.one(), 2), f.one());
}

TEST(FiniteField, TraceLandsInSubfieldAndIsLinear) {
    const Field& f = make_field(3, 4);
    const auto sub = subfield_elements(f, 3, 1);
    const std::set<Felt> base(sub.begin(), sub.end());
    for (const Felt& a : enumerate(f)) {
        EXPECT_TRUE(base.count(trace_q(a, 3, 4)));
        EXPECT_EQ(trace_q(a + a, 3, 4), trace_q(a, 3, 4) + trace_q(a, 3, 4));
    }
    // Tr over GF(9) -> GF(9)^(x^9 fixed)
    const auto gf9 = subfield_elements(f, 9, 1);
    const std::set<Felt> nine(gf9.begin(), gf9.end());
    for (const Felt& a : enumerate(f)) {
        EXPECT_TRUE(nine.count(trace_q(a, 9, 2)));
    }
}

TEST(FiniteField, SubfieldSizes) {
    const Field& f = make_field(2, 6);
    EXPECT_EQ(subfield_elements(f, 2, 1).size(), 2u);
    EXPECT_EQ(subfield_elements(f, 2, 2).size(), 4u);
    EXPECT_EQ(subfield_elements(f, 2, 3).size(), 8u);
    EXPECT_EQ(subfield_elements(f, 4, 3).size(), 64u);
    EXPECT_EQ(subfield_elements(f, 8, 1).size(), 8u);
}

TEST(FiniteField, EncodeOrdersHighDegreeFirst) {
    const Field& f = make_field(2, 3);
    const std::uint32_t t[] = {0, 1};
    EXPECT_EQ(encode(f.from_coeffs(t)), "GF(2^3):010");
    EXPECT_EQ(encode(f.one()), "GF(2^3):001");
    const Field& g = make_field(11, 2);
    const std::uint32_t c[] = {3, 10};
    EXPECT_EQ(encode(g.from_coeffs(c)), "GF(11^2):10.3");
    EXPECT_EQ(encode(make_field(3, 2).constant(-1)), "GF(3^2):02");
}

TEST(FiniteField, Errors) {
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Ambiguous;
    };
    EXPECT_EQ(code_of([] { make_field(4, 2); }), ErrorCode::NonPrime);
    EXPECT_EQ(code_of([] { make_field(2, 0); }), ErrorCode::DegreeZero);
    EXPECT_EQ(code_of([] { make_field(2, 21); }), ErrorCode::CapExceeded);
    EXPECT_EQ(code_of([] { make_field(3, 13); }), ErrorCode::CapExceeded);
    EXPECT_EQ(code_of([] { make_field(2, 3).zero().inv(); }), ErrorCode::DivisionByZero);
    EXPECT_EQ(code_of([] { frobenius_q(make_field(2, 3).one(), 3); }), ErrorCode::SpecMismatch);
    EXPECT_EQ(code_of([] { subfield_elements(make_field(2, 6), 2, 4); }), ErrorCode::NoSuchSubfield);
    EXPECT_EQ(code_of([] { make_field(2, 3).one() + make_field(2, 4).one(); }), ErrorCode::SpecMismatch);
}
