#include "cyc/target.hpp"

#include <gtest/gtest.h>

#include <bit>

using namespace cyc;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

// n -> n^2 + popcount(n), a rank-4 sequence with no special structure
LinearRepresentation sample_rep()
{
    return learn_from_oracle([](std::uint64_t n) { return from_u64(n * n + std::popcount(n)); }, LearnOptions{}).rep;
}

Rational sample(std::uint64_t n) { return from_u64(n * n + std::popcount(n)); }

} // namespace

TEST(Target, Parses)
{
    auto t = parse_target("c(4n+3)-1/2c(2n)-c(2n+3)-1/2c(2n+4)");
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0], (AffineTerm{q(1), 4, 3}));
    EXPECT_EQ(t[1], (AffineTerm{q(-1, 2), 2, 0}));
    EXPECT_EQ(t[2], (AffineTerm{q(-1), 2, 3}));
    EXPECT_EQ(t[3], (AffineTerm{q(-1, 2), 2, 4}));
    EXPECT_EQ(to_string(t), "c(4n+3)-1/2c(2n)-c(2n+3)-1/2c(2n+4)");

    auto u = parse_target(" 3*c(n) + c( 8n + 1 ) ");
    ASSERT_EQ(u.size(), 2u);
    EXPECT_EQ(u[0], (AffineTerm{q(3), 1, 0}));
    EXPECT_EQ(u[1], (AffineTerm{q(1), 8, 1}));
    EXPECT_EQ(to_string(parse_target("c(n)")), "c(n)");
}

TEST(Target, RejectsBadSyntax)
{
    for (const char* s : {"", "c(3n)", "c(2n", "c(n)c(n)", "d(n)", "c(2n+)", "1/0c(n)", "c(2n-1)", "+"})
        EXPECT_THROW(parse_target(s), TargetSyntaxError) << s;
}

TEST(Target, Evaluates)
{
    auto t = parse_target("c(2n)-2c(n)");
    auto f = [](std::uint64_t n) { return from_u64(n * n); };
    EXPECT_EQ(evaluate_target(t, f, 5), q(50));
}

TEST(AffineTransform, MatchesDirectEvaluation)
{
    auto rep = sample_rep();
    for (auto [scale, offset] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
             {1, 0}, {1, 1}, {1, 4}, {2, 0}, {2, 3}, {4, 1}, {4, 3}, {4, 7}, {8, 21}, {16, 5}}) {
        auto t = affine_transform(rep, scale, offset);
        for (std::uint64_t n = 0; n < 200; ++n)
            ASSERT_EQ(t.evaluate(n), sample(scale * n + offset)) << scale << "n+" << offset << " at n=" << n;
    }
    EXPECT_THROW(affine_transform(rep, 3, 0), std::invalid_argument);
}

TEST(TargetRepresentation, MatchesDirectEvaluation)
{
    auto rep = sample_rep();
    for (const char* text : {"c(2n)-2c(n)", "c(4n+1)-2c(n+1)-c(2n+1)", "c(4n+3)-1/2c(2n)-c(2n+3)-1/2c(2n+4)"}) {
        auto t = parse_target(text);
        auto combined = target_representation(t, rep);
        auto m = minimize(combined);
        EXPECT_LE(m.rank(), combined.rank());
        for (std::uint64_t n = 0; n < 300; ++n)
            ASSERT_EQ(m.evaluate(n), evaluate_target(t, sample, n)) << text << " n=" << n;
    }
}
