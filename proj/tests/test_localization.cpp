#include <vector>

#include <gtest/gtest.h>

#include <eqk/checks.hpp>
#include <eqk/localization.hpp>

#include "test_support.hpp"

using namespace eqk;
using namespace eqk::testing;

namespace
{

errc code_of_chi(const fan &f, const divisor &d)
{
    try {
        equivariant_euler_char(f, d);
    } catch (const error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return errc::parse_error;
}

} // namespace

TEST(FixedPoints, Counts)
{
    EXPECT_EQ(fixed_points(p1()).size(), 2u);
    EXPECT_EQ(fixed_points(p2()).size(), 3u);
    EXPECT_EQ(fixed_points(p1xp1()).size(), 4u);
    EXPECT_EQ(fixed_points(p3()).size(), 4u);
    EXPECT_EQ(fixed_points(p1_cubed()).size(), 8u);
}

TEST(FixedPoints, VerticesAndContributions)
{
    const auto f = p1();
    const auto fps = with_vertices(f, divisor{{0, 2}}, fixed_points(f));
    EXPECT_EQ(fps[0].vertex, weight{0});
    EXPECT_EQ(fps[1].vertex, weight{2});
    EXPECT_EQ(trace_contribution(fps[0]), rat_class(t1(0), t1(0) - t1(1)));
    EXPECT_EQ(trace_contribution(fps[1]), rat_class(t1(2), t1(0) - t1(-1)));
    EXPECT_EQ(*(trace_contribution(fps[0]) + trace_contribution(fps[1])).to_laurent(), geometric(0, 2));
}

TEST(EulerChar, ProjectiveLine)
{
    const auto f = p1();
    for (std::int64_t d = 0; d <= 6; ++d) {
        EXPECT_EQ(equivariant_euler_char(f, divisor{{0, d}}), geometric(0, d)) << d;
    }
    EXPECT_TRUE(equivariant_euler_char(f, divisor{{0, -1}}).is_zero());
    // O(-d) is -(t^-1 + ... + t^-(d-1)), i.e. minus H^1.
    for (std::int64_t d = 2; d <= 6; ++d) {
        EXPECT_EQ(equivariant_euler_char(f, divisor{{0, -d}}), geometric(-(d - 1), -1, -1)) << d;
    }
    // Splitting the divisor between the two rays only shifts the character.
    EXPECT_EQ(equivariant_euler_char(f, divisor{{1, 1}}), geometric(-1, 1));
}

TEST(EulerChar, ProjectivePlane)
{
    const auto f = p2();
    EXPECT_EQ(equivariant_euler_char(f, divisor{{0, 0, 1}}).to_text(), "1 + t^(0,1) + t^(1,0)");
    EXPECT_EQ(equivariant_euler_char(f, divisor{{0, 0, -3}}).to_text(), "t^(-1,-1)");
    EXPECT_EQ(equivariant_euler_char(f, divisor{{-1, -1, -1}}).to_text(), "1");
    EXPECT_EQ(augment(equivariant_euler_char(f, divisor{{0, 0, 2}})), 6);
    EXPECT_TRUE(equivariant_euler_char(f, divisor{{0, 0, -1}}).is_zero());
    EXPECT_TRUE(equivariant_euler_char(f, divisor{{0, 0, -2}}).is_zero());
}

TEST(EulerChar, TrivialBundle)
{
    for (const auto &[name, f] : surface_corpus()) {
        EXPECT_EQ(equivariant_euler_char(f, divisor::zero(f)), laurent::constant(f.rank(), 1)) << name;
    }
    EXPECT_EQ(equivariant_euler_char(p3(), divisor::zero(p3())), laurent::constant(3, 1));
}

TEST(EulerChar, ThreadCountIndependent)
{
    const auto f = hirzebruch(2);
    const divisor d{{1, -2, 3, 1}};
    const auto ref = equivariant_euler_char(f, d, 1);
    EXPECT_EQ(equivariant_euler_char(f, d, 4), ref);
    EXPECT_EQ(equivariant_euler_char(f, d, 8), ref);
}

TEST(EulerChar, Errors)
{
    const auto open = make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}});
    EXPECT_EQ(code_of_chi(open, divisor::zero(open)), errc::not_complete);
    // Weighted projective plane P(1,1,2): complete but singular.
    const auto sing = make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}});
    EXPECT_EQ(code_of_chi(sing, divisor::zero(sing)), errc::not_smooth);
}

TEST(EulerChar, ZeroConormalCharacter)
{
    // A hand-built fixed point with a zero conormal character must be rejected.
    fixed_point bad{0, {weight{0}}, weight{0}};
    try {
        conormal_lambda(bad);
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::zero_conormal_character);
    }
    const std::vector<fixed_point> fps{bad};
    EXPECT_THROW(localization_sum(fps, 1), error);
}

TEST(EulerChar, LeakOnIncompleteFixedLocus)
{
    // Dropping a fixed point leaves a class that is not a Laurent polynomial.
    const auto fps = fixed_points(p1());
    const std::vector<fixed_point> half{fps[0]};
    try {
        localization_sum(half, 1);
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::localization_leak);
    }
}

TEST(Cech, ProjectiveLine)
{
    const auto f = p1();
    const auto h = cech_cohomology(f, divisor{{0, -2}});
    ASSERT_EQ(h.size(), 2u);
    EXPECT_TRUE(h[0].is_zero());
    EXPECT_EQ(h[1], t1(-1));
    const auto g = cech_cohomology(f, divisor{{0, 3}});
    EXPECT_EQ(g[0], geometric(0, 3));
    EXPECT_TRUE(g[1].is_zero());
}

TEST(Cech, ProjectivePlane)
{
    const auto f = p2();
    const auto h = cech_cohomology(f, divisor{{0, 0, -3}});
    ASSERT_EQ(h.size(), 3u);
    EXPECT_TRUE(h[0].is_zero());
    EXPECT_TRUE(h[1].is_zero());
    EXPECT_EQ(h[2], laurent::monomial(weight{-1, -1}));
    EXPECT_EQ(cech_oracle(f, divisor{{0, 0, 1}}), nef_oracle(f, divisor{{0, 0, 1}}));
}

TEST(Cech, NefVanishing)
{
    for (const auto &[name, f] : surface_corpus()) {
        for (const auto &d : divisor_box(f.rays().size(), 1)) {
            if (!is_nef(f, d)) {
                continue;
            }
            const auto h = cech_cohomology(f, d);
            for (std::size_t i = 1; i < h.size(); ++i) {
                EXPECT_TRUE(h[i].is_zero()) << name;
            }
            EXPECT_EQ(h[0], nef_oracle(f, d)) << name;
        }
    }
}

TEST(Cech, SurfacesAgree)
{
    for (const auto &[name, f] : surface_corpus()) {
        for (const auto &d : divisor_box(f.rays().size(), 2)) {
            EXPECT_EQ(equivariant_euler_char(f, d), cech_oracle(f, d)) << name;
        }
    }
}

TEST(Cech, ThreefoldsAgree)
{
    const auto a = p3();
    for (const auto &d : divisor_box(a.rays().size(), 1)) {
        EXPECT_EQ(equivariant_euler_char(a, d), cech_oracle(a, d));
    }
    const auto b = p1_cubed();
    // Six rays at range 1 is 729 divisors; the diagonal slice is enough here.
    for (std::int64_t k = -2; k <= 2; ++k) {
        for (std::int64_t j = -1; j <= 1; ++j) {
            const divisor d{{k, 0, j, 0, 0, k - j}};
            EXPECT_EQ(equivariant_euler_char(b, d), cech_oracle(b, d));
        }
    }
}

TEST(Nef, OracleRejectsNonNef)
{
    try {
        nef_oracle(p1(), divisor{{0, -1}});
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::not_nef);
    }
}

TEST(ToricChecks, SmallSweepPasses)
{
    toric_sweep_options opt;
    opt.range = 1;
    for (const auto &[name, f] : surface_corpus()) {
        for (const auto &row : toric_checks(f, opt)) {
            EXPECT_TRUE(row.passed()) << name << "/" << row.name << ": " << row.first_failure;
        }
    }
}

TEST(ToricChecks, SingularFanReported)
{
    const auto sing = make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}});
    const auto rows = toric_checks(sing, {});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].passed());
}
