#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <eqk/checks.hpp>
#include <eqk/laurent.hpp>

#include "test_support.hpp"

using namespace eqk;
using namespace eqk::testing;

TEST(Laurent, Multiplication)
{
    EXPECT_EQ((t1(0) - t1(1)) * geometric(0, 2), t1(0) - t1(3));
    EXPECT_EQ((t1(-1) + t1(1)) * (t1(-1) + t1(1)), t1(-2) + t1(0, 2) + t1(2));
    EXPECT_TRUE((t1(2) * laurent(1)).is_zero());
}

TEST(Laurent, RankMismatch)
{
    EXPECT_THROW(t1(1) + laurent::monomial(weight{1, 0}), error);
    laurent a(2);
    EXPECT_THROW(a.add_term(weight{1}, 1), error);
}

TEST(Laurent, Text)
{
    EXPECT_EQ(laurent(1).to_text(), "0");
    EXPECT_EQ(geometric(0, 2).to_text(), "1 + t^(1) + t^(2)");
    EXPECT_EQ(t1(-1, -1).to_text(), "-t^(-1)");
    EXPECT_EQ((t1(0, -3) + t1(2, 5)).to_text(), "-3 + 5 * t^(2)");
    const auto a = laurent::monomial(weight{0, 1}) + laurent::monomial(weight{-1, 4}, 2);
    EXPECT_EQ(a.to_text(), "2 * t^(-1,4) + t^(0,1)");
}

TEST(Laurent, LambdaMinusOne)
{
    const std::vector<weight> chars{weight{1}, weight{-1}};
    // (1 - t)(1 - t^-1) = 2 - t - t^-1
    EXPECT_EQ(lambda_minus_one(1, chars), t1(0, 2) - t1(1) - t1(-1));
    EXPECT_EQ(lambda_minus_one(2, {}), laurent::constant(2, 1));
    EXPECT_EQ(augment(lambda_minus_one(1, chars)), 0);
}

TEST(Laurent, Augment)
{
    EXPECT_EQ(augment(geometric(-3, 3)), 7);
    EXPECT_EQ(augment(laurent(3)), 0);
    EXPECT_EQ(augment(t1(4, -2)), -2);
}

TEST(Laurent, UnitAtZero)
{
    EXPECT_TRUE(is_unit_at_zero(t1(0) - t1(1)));
    EXPECT_TRUE(is_unit_at_zero(t1(5)));
    EXPECT_FALSE(is_unit_at_zero(laurent(1)));
    // A zero character makes 1 - e^0 vanish.
    EXPECT_FALSE(is_unit_at_zero(lambda_minus_one(1, std::vector<weight>{weight{0}})));
}

TEST(ExactQuotient, Examples)
{
    EXPECT_EQ(exact_quotient(t1(0) - t1(3), t1(0) - t1(1)), geometric(0, 2));
    EXPECT_EQ(exact_quotient(t1(-2) - t1(2), t1(0) - t1(2)), t1(-2) + t1(0));
    EXPECT_EQ(exact_quotient(laurent(1), t1(0) - t1(1)), laurent(1));
    EXPECT_EQ(exact_quotient(t1(4, 6), t1(1, 3)), t1(3, 2));
    EXPECT_FALSE(try_exact_quotient(t1(0) - t1(3), t1(0) - t1(2)));
    EXPECT_FALSE(try_exact_quotient(t1(0, 3), t1(0, 2)));
    EXPECT_FALSE(try_exact_quotient(t1(0), t1(0) - t1(1)));
}

TEST(ExactQuotient, Errors)
{
    // (1 - t^2) / (1 - s) in rank 2.
    const auto t2 = laurent::monomial(weight{2, 0});
    const auto s = laurent::monomial(weight{0, 1});
    const auto one = laurent::constant(2, 1);
    try {
        exact_quotient(one - t2, one - s);
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::not_divisible);
    }
    try {
        exact_quotient(t1(1), laurent(1));
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::division_by_zero);
    }
}

TEST(RatClass, Arithmetic)
{
    const rat_class half_geo(t1(0), t1(0) - t1(1));
    // 1/(1-t) - t/(1-t) = 1
    EXPECT_EQ(half_geo + -rat_class(t1(1), t1(0) - t1(1)), rat_class(t1(0)));
    EXPECT_EQ(*rat_class(t1(0) - t1(3), t1(0) - t1(1)).to_laurent(), geometric(0, 2));
    EXPECT_FALSE(half_geo.to_laurent());
    // 1/(1-t) + 1/(1-t^-1) = 1
    EXPECT_EQ(*(half_geo + rat_class(t1(0), t1(0) - t1(-1))).to_laurent(), t1(0));
    EXPECT_EQ(half_geo * half_geo.inverse(), rat_class(t1(0)));
    EXPECT_EQ(rat_inv(half_geo), rat_class(t1(0) - t1(1)));
    EXPECT_THROW(rat_class(laurent(1)).inverse(), error);
    EXPECT_THROW(rat_class(t1(0), laurent(1)), error);
}

TEST(RatClass, Canonical)
{
    const rat_class a(t1(0, 4), t1(1, -6));
    EXPECT_EQ(a.num(), t1(0, -2));
    EXPECT_EQ(a.den(), t1(1, 3));
    const rat_class z(laurent(1), t1(0) - t1(1));
    EXPECT_EQ(z.den(), t1(0));
}

namespace
{

struct random_pairs : ::testing::Test {
    std::mt19937_64 rng{7};
};

} // namespace

TEST_F(random_pairs, RingAxioms)
{
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rank = 1 + trial % 3;
        const auto a = random_laurent(rng, rank, 5, 3);
        const auto b = random_laurent(rng, rank, 5, 3);
        const auto c = random_laurent(rng, rank, 5, 3);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b - b, a);
        EXPECT_EQ(a * laurent::constant(rank, 1), a);
        EXPECT_EQ(augment(a * b), augment(a) * augment(b));
        EXPECT_EQ(augment(a + b), augment(a) + augment(b));
    }
}

TEST_F(random_pairs, QuotientInvertsProduct)
{
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rank = 1 + trial % 3;
        const auto q = random_laurent(rng, rank, 5, 3);
        auto d = random_laurent(rng, rank, 4, 2);
        if (d.is_zero()) {
            d = laurent::constant(rank, 1);
        }
        EXPECT_EQ(exact_quotient(q * d, d), q);
        const auto r = *rat_class(q * d, d).to_laurent();
        EXPECT_EQ(r, q);
    }
}

TEST_F(random_pairs, RatInverse)
{
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rank = 1 + trial % 2;
        const auto a = random_laurent(rng, rank, 4, 2);
        const auto b = random_laurent(rng, rank, 4, 2);
        if (a.is_zero() || b.is_zero()) {
            continue;
        }
        const rat_class x(a, b);
        EXPECT_EQ(x * x.inverse(), rat_class(laurent::constant(rank, 1)));
        EXPECT_EQ(x + -x, rat_class(laurent(rank)));
    }
}

TEST_F(random_pairs, LambdaAugmentVanishes)
{
    std::uniform_int_distribution<std::int64_t> wd(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rank = 1 + trial % 3;
        std::vector<weight> chars(1 + trial % 3, weight(rank));
        for (auto &w : chars) {
            for (std::size_t i = 0; i < rank; ++i) {
                w[i] = wd(rng);
            }
        }
        EXPECT_EQ(augment(lambda_minus_one(rank, chars)), 0);
    }
}

TEST_F(random_pairs, QuotientDecidesArbitraryPairs)
{
    // Mostly non-divisible pairs in rank 2 and 3; the division must terminate
    // and any quotient it returns must be exact.
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t rank = 2 + trial % 2;
        const auto a = random_laurent(rng, rank, 5, 3);
        const auto d = random_laurent(rng, rank, 3, 2);
        if (d.is_zero()) {
            continue;
        }
        const auto q = try_exact_quotient(a, d);
        if (q) {
            EXPECT_EQ(*q * d, a);
        }
    }
}
