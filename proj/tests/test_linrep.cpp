#include "cyc/linrep.hpp"
#include "cyc/polynomial.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <random>

using namespace cyc;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<RationalVector> r;
    for (auto row : rows) {
        RationalVector v;
        for (long x : row)
            v.push_back(q(x));
        r.push_back(std::move(v));
    }
    return RationalMatrix::from_rows(r);
}

// n -> n: row state (x, 1), digit d maps it to (2x + d, 1)
LinearRepresentation identity_rep()
{
    return LinearRepresentation({q(0), q(1)}, mat({{2, 0}, {0, 1}}), mat({{2, 0}, {1, 1}}), {q(1), q(0)});
}

// n -> number of 1 bits
LinearRepresentation popcount_rep()
{
    return LinearRepresentation({q(0), q(1)}, mat({{1, 0}, {0, 1}}), mat({{1, 0}, {1, 1}}), {q(1), q(0)});
}

LinearRepresentation random_rep(std::mt19937& rng, std::size_t r)
{
    std::uniform_int_distribution<int> dist(-2, 2);
    auto rv = [&] {
        RationalVector v(r);
        for (auto& x : v)
            x = dist(rng);
        return v;
    };
    auto rm = [&] {
        RationalMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                m(i, j) = make_rational(dist(rng), 2);
        return m;
    };
    auto v = rv(), w = rv();
    auto g0 = rm(), g1 = rm();
    return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w));
}

} // namespace

// ---------------------------------------------------------------------------
// rationals, matrices, polynomials

TEST(Rational, PqStringRoundTrip)
{
    EXPECT_EQ(to_pq_string(q(3)), "3/1");
    EXPECT_EQ(to_pq_string(q(-4, 6)), "-2/3");
    EXPECT_EQ(to_pq_string(q(0)), "0/1");
    for (const char* s : {"0/1", "7/1", "-1/2", "123456789012345678901234567891/7"})
        EXPECT_EQ(to_pq_string(parse_rational(s)), s);
    EXPECT_EQ(parse_rational("5"), q(5));
    EXPECT_EQ(parse_rational("+6/4"), q(3, 2));
    EXPECT_EQ(to_display_string(q(1, 3)), "1/3 (0.333333)");
    EXPECT_EQ(to_display_string(q(4)), "4");
}

TEST(Rational, RejectsMalformed)
{
    for (const char* s : {"", "1/0", "abc", "1/", "/2", "1.5", "1/2/3", "--1"})
        EXPECT_THROW(parse_rational(s), std::invalid_argument) << s;
}

TEST(Matrix, SolveAndRank)
{
    auto a = mat({{2, 1}, {1, 3}});
    auto x = solve(a, {q(3), q(5)});
    EXPECT_EQ(x, (RationalVector{q(4, 5), q(7, 5)}));
    EXPECT_EQ(rank(mat({{1, 2}, {2, 4}})), 1u);
    EXPECT_EQ(rank(RationalMatrix::identity(5)), 5u);
    EXPECT_THROW(solve(mat({{1, 2}, {2, 4}}), {q(1), q(1)}), SingularSystem);
}

TEST(Matrix, RowBasisCoordinates)
{
    RowBasis b(3);
    EXPECT_TRUE(b.insert({q(1), q(1), q(0)}));
    EXPECT_TRUE(b.insert({q(0), q(1), q(1)}));
    EXPECT_FALSE(b.insert({q(1), q(2), q(1)}));
    auto c = b.coordinates({q(2), q(5), q(3)});
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, (RationalVector{q(2), q(3)}));
    EXPECT_FALSE(b.coordinates({q(0), q(0), q(1)}));
}

TEST(Polynomial, ArithmeticAndRoots)
{
    auto p = Polynomial::from_roots({q(1), q(2)});
    EXPECT_EQ(p.to_string(), "X^2 - 3*X + 2");
    EXPECT_EQ(p(q(1)), q(0));
    auto [quot, rem] = Polynomial::divmod(p, Polynomial::from_roots({q(1)}));
    EXPECT_EQ(quot, Polynomial::from_roots({q(2)}));
    EXPECT_TRUE(rem.is_zero());
    EXPECT_EQ(Polynomial::gcd(p, Polynomial::from_roots({q(2), q(3)})), Polynomial::from_roots({q(2)}));
    EXPECT_EQ(Polynomial::lcm(p, Polynomial::from_roots({q(2), q(3)})).degree(), 3);
}

TEST(Polynomial, MinimalPolynomial)
{
    // Jordan block: (X-1)^2, while the identity has X-1
    EXPECT_EQ(minimal_polynomial(mat({{1, 1}, {0, 1}})), Polynomial::from_roots({q(1), q(1)}));
    EXPECT_EQ(minimal_polynomial(RationalMatrix::identity(4)), Polynomial::from_roots({q(1)}));
    auto m = mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 2}});
    auto mp = minimal_polynomial(m);
    EXPECT_EQ(mp, Polynomial::from_roots({q(0), q(0), q(2)}));
    EXPECT_TRUE(mp(m).is_zero());
}

// ---------------------------------------------------------------------------
// digits and evaluation

TEST(Digits, BinaryExpansion)
{
    EXPECT_TRUE(binary_digits(0).empty());
    EXPECT_EQ(digits_to_string(binary_digits(6)), "110");
    EXPECT_EQ(digits_value(parse_digits("0001011")), 11u);
    EXPECT_THROW(parse_digits("012"), std::invalid_argument);
}

TEST(LinearRepresentation, EvaluatesKnownSequences)
{
    auto id = identity_rep();
    auto pc = popcount_rep();
    for (std::uint64_t n = 0; n < 2000; ++n) {
        EXPECT_EQ(id.evaluate(n), from_u64(n));
        EXPECT_EQ(evaluate(pc, n), Rational(std::popcount(n)));
    }
    EXPECT_TRUE(id.leading_zero_invariant());
}

TEST(LinearRepresentation, RejectsBadShapes)
{
    EXPECT_THROW(LinearRepresentation({q(1)}, mat({{1, 0}, {0, 1}}), mat({{1}}), {q(1)}), ShapeError);
    EXPECT_THROW(LinearRepresentation({q(1), q(0)}, RationalMatrix::identity(2), RationalMatrix::identity(2), {q(1)}),
                 ShapeError);
}

TEST(LinearRepresentation, ZeroAndConstant)
{
    auto z = LinearRepresentation::zero();
    EXPECT_EQ(z.rank(), 0u);
    EXPECT_EQ(z.evaluate(12345), q(0));
    auto c = LinearRepresentation::constant(q(7, 2));
    EXPECT_EQ(c.evaluate(0), q(7, 2));
    EXPECT_EQ(c.evaluate(99), q(7, 2));
    EXPECT_EQ(minimize(z).rank(), 0u);
}

TEST(LinearRepresentation, EvaluateAllMatchesPointwise)
{
    std::mt19937 rng(7);
    auto rep = random_rep(rng, 3);
    auto all = evaluate_all(rep, 700);
    for (std::uint64_t n = 0; n < 700; ++n)
        ASSERT_EQ(all[n], rep.evaluate(n)) << n;
    EXPECT_TRUE(evaluate_all(rep, 0).empty());
}

TEST(LinearRepresentation, LeadingZeroInvarianceAfterCompletion)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        auto rep = random_rep(rng, 3);
        auto full = msd_complete(rep);
        ASSERT_TRUE(full.leading_zero_invariant());
        for (std::uint64_t n = 0; n <= (1u << 12); ++n) {
            Digits z = binary_digits(n);
            ASSERT_EQ(full.evaluate(n), rep.evaluate(n));
            for (int pad = 1; pad <= 3; ++pad) {
                z.insert(z.begin(), Digit{0});
                ASSERT_EQ(full.evaluate_digits(z), rep.evaluate(n)) << "n=" << n << " pad=" << pad;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// combination, minimization, equivalence

TEST(Minimize, RemovesRedundancy)
{
    auto id = identity_rep();
    auto doubled = linear_combine({{q(1, 2), id}, {q(1, 2), id}});
    EXPECT_EQ(doubled.rank(), 4u);
    auto m = minimize(doubled);
    EXPECT_EQ(m.rank(), 2u);
    EXPECT_TRUE(equivalent(m, id));
    auto cancel = linear_combine({{q(1), id}, {q(-1), id}});
    EXPECT_EQ(minimize(cancel).rank(), 0u);
    EXPECT_TRUE(equivalent(cancel, LinearRepresentation::zero()));
}

TEST(Minimize, PreservesValuesAndIsIdempotent)
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_rep(rng, 2), b = random_rep(rng, 3);
        // a + b + (a - a) is redundant by construction
        auto rep = linear_combine({{q(1), a}, {q(1), b}, {q(1), a}, {q(-1), a}});
        auto m = minimize(rep);
        ASSERT_LE(m.rank(), 5u);
        ASSERT_EQ(minimize(m).rank(), m.rank());
        for (std::uint64_t n = 0; n < 300; ++n)
            ASSERT_EQ(m.evaluate(n), rep.evaluate(n));
        // the raw series agrees too, leading zeros included
        for (const char* z : {"", "0", "00", "0101", "00110"})
            ASSERT_EQ(m.evaluate_digits(parse_digits(z)), rep.evaluate_digits(parse_digits(z)));
        ASSERT_TRUE(equivalent(m, rep));
    }
}

TEST(Equivalent, DetectsDifferences)
{
    auto id = identity_rep();
    auto pc = popcount_rep();
    EXPECT_FALSE(equivalent(id, pc));
    // agrees with n except at n = 5 = 101b: add the indicator of exactly "101"
    auto ind = LinearRepresentation({q(1), q(0), q(0), q(0)},
                                    mat({{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
                                    mat({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}),
                                    {q(0), q(0), q(0), q(1)});
    EXPECT_EQ(ind.evaluate(5), q(1));
    EXPECT_EQ(ind.evaluate(4), q(0));
    auto almost = linear_combine({{q(1), id}, {q(1), ind}});
    EXPECT_FALSE(equivalent(almost, id));
    EXPECT_TRUE(equivalent(almost, almost));
}

TEST(Equivalent, IgnoresLeadingZeroBehaviour)
{
    // same values on canonical expansions, different on "0"-prefixed strings
    std::mt19937 rng(5);
    auto rep = random_rep(rng, 3);
    auto full = msd_complete(rep);
    EXPECT_TRUE(equivalent(rep, full));
}

// ---------------------------------------------------------------------------
// transforms

TEST(Transforms, Suffix)
{
    auto pc = popcount_rep();
    auto s = suffix_transform(pc, parse_digits("011"));
    for (std::uint64_t n = 0; n < 500; ++n)
        ASSERT_EQ(s.evaluate(n), Rational(std::popcount(8 * n + 3))) << n;
    EXPECT_THROW(suffix_transform(pc, Digits{}), std::invalid_argument);
}

TEST(Transforms, Shift)
{
    std::mt19937 rng(99);
    auto rep = random_rep(rng, 2);
    for (std::uint64_t d : {1u, 2u, 3u, 5u, 8u, 13u, 40u}) {
        auto s = shift_transform(rep, d);
        for (std::uint64_t n = 0; n < 300; ++n)
            ASSERT_EQ(s.evaluate(n), rep.evaluate(n + d)) << "d=" << d << " n=" << n;
    }
    EXPECT_EQ(shift_transform(rep, 0), rep);
    EXPECT_THROW(shift_transform(rep, 5000), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// learning

TEST(Learn, RecoversMinimalRepresentations)
{
    auto id = identity_rep();
    auto learned = learn_from_oracle([&](std::uint64_t n) { return id.evaluate(n); }, LearnOptions{});
    EXPECT_EQ(learned.rep.rank(), 2u);
    EXPECT_TRUE(equivalent(learned.rep, id));
    EXPECT_TRUE(learned.rep.leading_zero_invariant());
    EXPECT_EQ(learned.basis_prefixes.front(), Digits{});
}

TEST(Learn, RoundTripThroughMinimize)
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        auto rep = random_rep(rng, 3);
        auto learned = learn_from_oracle([&](std::uint64_t n) { return rep.evaluate(n); }, LearnOptions{});
        auto target = minimize(msd_complete(rep));
        EXPECT_EQ(learned.rep.rank(), target.rank());
        EXPECT_TRUE(equivalent(learned.rep, rep));
        EXPECT_EQ(minimize(learned.rep).rank(), learned.rep.rank());
    }
}

TEST(Learn, ZeroAndErrors)
{
    auto zero = learn_from_oracle([](std::uint64_t) { return Rational(0); }, LearnOptions{});
    EXPECT_EQ(zero.rep.rank(), 0u);

    LearnOptions tight;
    tight.rank_cap = 1;
    auto id = identity_rep();
    EXPECT_THROW(learn_from_oracle([&](std::uint64_t n) { return id.evaluate(n); }, tight), LearnError);

    // a sequence of large rank exhausts a shallow training depth
    LearnOptions shallow;
    shallow.training_depth = 8;
    shallow.suffix_depth = 3;
    EXPECT_THROW(learn_from_oracle([](std::uint64_t n) { return Rational(std::has_single_bit(n + 7) ? 1 : 0) *
                                                              from_u64(n % 97); },
                                   shallow),
                 LearnError);
    LearnOptions bad;
    bad.training_depth = 4;
    bad.suffix_depth = 4;
    EXPECT_THROW(learn_from_oracle([](std::uint64_t) { return Rational(1); }, bad), std::invalid_argument);
}

TEST(Learn, SquaresHaveRankThree)
{
    auto learned = learn_from_oracle([](std::uint64_t n) { return from_u64(n * n); }, LearnOptions{});
    EXPECT_EQ(learned.rep.rank(), 3u);
    for (std::uint64_t n = 0; n < 5000; n += 7)
        ASSERT_EQ(learned.rep.evaluate(n), from_u64(n * n));
}
