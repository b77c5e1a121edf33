#include "fixtures.hpp"

#include "cyc/json_io.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cyc;
using cyc::test::learned_c;
using cyc::test::published_a0;
using cyc::test::tm_oracle;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

std::set<std::uint64_t> j_members(std::uint64_t limit)
{
    std::set<std::uint64_t> out;
    for (unsigned i = 1; (std::uint64_t{1} << (2 * i + 1)) + 1 <= limit; ++i)
        for (std::uint64_t n = (std::uint64_t{1} << (2 * i + 1)) + 1; n <= limit; n *= 2)
            out.insert(n);
    return out;
}

EvaluatorPtr brute() { return std::make_shared<OracleEvaluator>(tm_oracle()); }

EvaluatorPtr hybrid()
{
    static EvaluatorPtr e = std::make_shared<HybridEvaluator>(
        brute(), std::make_shared<RepresentationEvaluator>(learned_c().rep, "c"), 300);
    return e;
}

} // namespace

// ---------------------------------------------------------------------------
// exceptional sets, against direct enumeration

TEST(Sets, MembershipMatchesEnumeration)
{
    const std::uint64_t limit = 100'000;
    std::set<std::uint64_t> p2, a, b, d;
    for (unsigned k = 0; k < 17; ++k) {
        p2.insert(std::uint64_t{1} << k);
        if (k >= 1)
            a.insert((std::uint64_t{1} << k) - 1);
        if (k >= 2)
            b.insert((std::uint64_t{1} << k) + 1);
        d.insert(12 * (std::uint64_t{1} << k) - 3);
    }
    auto j = j_members(limit);
    for (std::uint64_t n = 0; n <= limit; ++n) {
        ASSERT_EQ(in_set(SetId::P2, n), p2.count(n) > 0) << n;
        ASSERT_EQ(in_set(SetId::A, n), a.count(n) > 0) << n;
        ASSERT_EQ(in_set(SetId::B, n), b.count(n) > 0) << n;
        ASSERT_EQ(in_set(SetId::D, n), d.count(n) > 0) << n;
        ASSERT_EQ(in_set(SetId::J, n), j.count(n) > 0) << n;
        ASSERT_EQ(in_set("4J+3", n), n >= 3 && (n - 3) % 4 == 0 && j.count((n - 3) / 4)) << n;
        ASSERT_EQ(in_set("2J+3", n), n >= 3 && (n - 3) % 2 == 0 && j.count((n - 3) / 2)) << n;
        ASSERT_EQ(in_set("2J-5", n), (n + 5) % 2 == 0 && j.count((n + 5) / 2)) << n;
    }
    EXPECT_TRUE(in_set(SetId::J, 9));
    EXPECT_TRUE(in_set(SetId::J, 66));
    EXPECT_FALSE(in_set(SetId::J, 17));
    EXPECT_THROW(parse_set_id("K"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// evaluators

TEST(Evaluators, LearnedRepresentationOfC)
{
    const auto& c = learned_c();
    EXPECT_TRUE(c.certificate.passed) << c.certificate.counterexamples.front();
    EXPECT_EQ(c.certificate.checked, 301u);
    EXPECT_LE(c.rep.rank(), 50u);
    EXPECT_EQ(c.rep.rank(), 10u);
    EXPECT_EQ(c.learned_rank, c.rep.rank());
}

TEST(Evaluators, HybridTableAgreesWithPointwise)
{
    auto e = hybrid();
    auto table = e->table(600);
    for (std::uint64_t n = 0; n < 600; n += 37)
        EXPECT_EQ(table[n], e->at(n));
    EXPECT_EQ(e->at(19), q(28));
    EXPECT_NE(e->description().find("brute:tm for n <= 300"), std::string::npos);
}

TEST(Evaluators, CertifyReportsDisagreement)
{
    auto wrong = std::make_shared<RepresentationEvaluator>(LinearRepresentation::constant(q(4)), "four");
    auto r = certify(*wrong, *brute(), 30);
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.checked, 31u);
    EXPECT_EQ(r.failures, 29u); // c(4) = c(5) = 4
    EXPECT_EQ(r.counterexamples.size(), VerificationReport::max_listed);
}

TEST(Witnesses, TightLowerBoundValues)
{
    auto c = brute();
    const std::pair<std::uint64_t, long> witnesses[] = {{9, 8}, {18, 20}, {36, 44}, {66, 84}, {72, 92}};
    for (auto [n, value] : witnesses) {
        EXPECT_EQ(c->at(n), q(value)) << n;
        EXPECT_TRUE(in_set(SetId::J, n));
        EXPECT_EQ(3 * c->at(n), from_u64(4 * n) - 12);
    }
}

// ---------------------------------------------------------------------------
// a0: published representation, learned representation, DFAO

TEST(A0, LearnedFromOracleMatchesPublished)
{
    auto target = parse_target("c(2n)-2c(n)");
    auto oracle = tm_oracle();
    auto f = [&](std::uint64_t n) { return from_u64(oracle->cyclic(n)); };
    auto learned = learn_from_oracle([&](std::uint64_t n) { return evaluate_target(target, f, n); }, LearnOptions{});
    auto m = minimize(learned.rep);
    EXPECT_EQ(m.rank(), 7u);
    EXPECT_TRUE(equivalent(m, published_a0()));
    for (std::uint64_t n = 0; n <= 300; ++n)
        ASSERT_EQ(published_a0().evaluate(n), evaluate_target(target, f, n)) << n;
}

TEST(A0, BuiltFromRepresentationOfC)
{
    auto rep = remainder_representation(learned_c().rep, "c(2n)-2c(n)");
    EXPECT_EQ(rep.rank(), 7u);
    EXPECT_TRUE(equivalent(rep, published_a0()));
    // unminimized, the combination is the sum of its transformed blocks
    auto combined = target_representation(parse_target("c(2n)-2c(n)"), learned_c().rep);
    EXPECT_EQ(combined.rank(), affine_transform(learned_c().rep, 2, 0).rank() +
                                   affine_transform(learned_c().rep, 1, 0).rank());
    EXPECT_GT(combined.rank(), rep.rank());
}

TEST(A0, SemigroupTrickGivesEightStates)
{
    auto d = dfao_minimize(semigroup_trick(published_a0()));
    EXPECT_EQ(d.state_count(), 8u);
    auto range = output_range(d, 3, 100'000);
    EXPECT_EQ(range.reachable, (std::set<Rational>{q(-2), q(-1), q(2), q(4), q(6)}));
    EXPECT_EQ(range.attained, (std::set<Rational>{q(2), q(4), q(6)}));
    for (std::uint64_t n = 0; n < 5000; ++n)
        ASSERT_EQ(d.evaluate(n), published_a0().evaluate(n));
}

TEST(A0, MinimalPolynomials)
{
    // the published a0 matrix has no root 2; the rank-10 representation of c does
    EXPECT_EQ(minimal_polynomial(published_a0().gamma(0)), Polynomial::from_roots({q(0), q(0), q(1), q(-1)}));
    EXPECT_EQ(minimal_polynomial(learned_c().rep.gamma(0)),
              Polynomial::from_roots({q(0), q(0), q(1), q(2), q(-1)}));
    EXPECT_EQ(gamma_minimal_polynomial(learned_c().rep, 1),
              Polynomial::from_roots({q(0), q(0), q(0), q(1), q(2), q(-1)}));
}

// ---------------------------------------------------------------------------
// closed-form fitting

TEST(DigitPattern, Expands)
{
    DigitPattern p("1 0^{2i} 1 0^{j-1} 11");
    EXPECT_EQ(digits_to_string(*p.expand(1, 2)), "1001011");
    EXPECT_FALSE(p.expand(1, 0));
    DigitPattern r("1 0^{2i+1} 1^{j-2} 011");
    EXPECT_EQ(digits_to_string(*r.expand(1, 3)), "10001011");
    EXPECT_THROW(DigitPattern("1 2^{i}"), std::invalid_argument);
    EXPECT_THROW(DigitPattern("1 0^{k}"), std::invalid_argument);
    EXPECT_THROW(DigitPattern(""), std::invalid_argument);
}

TEST(Fit, RecoversKnownForm)
{
    // n -> n on 1 0^{2i} 1 0^{j} is 2^(2i+j+1) + 2^j
    auto id = learn_from_oracle([](std::uint64_t n) { return from_u64(n); }, LearnOptions{}).rep;
    DigitPattern p("1 0^{2i} 1 0^{j}");
    auto terms = basis::two_parameter();
    auto samples = choose_samples(terms, 2, 3, 8);
    std::vector<ParamPoint> holdouts{{1, 0}, {3, 5}, {7, 7}};
    auto form = fit_closed_form(id, p, terms, samples, holdouts);
    EXPECT_EQ(form.coeffs, (RationalVector{q(2), q(1), q(0), q(0), q(0), q(0)}));
    EXPECT_EQ(form.to_string(), "2*2^(2i+j) + 1*2^j");
}

TEST(Fit, HoldoutMissIsReported)
{
    auto sq = learn_from_oracle([](std::uint64_t n) { return from_u64(n * n); }, LearnOptions{}).rep;
    DigitPattern p("1 0^{j}");
    std::vector<ExpTerm> terms{basis::pow_j(), basis::one()};
    // n^2 = 4^j is outside span{2^j, 1}
    EXPECT_THROW(fit_closed_form(sq, p, terms, {{0, 1}, {0, 2}}, {{0, 5}}), FitError);
    EXPECT_THROW(choose_samples({basis::one(), basis::one()}, 0, 0, 5), SingularSystem);
}

// ---------------------------------------------------------------------------
// suites on small ranges and with the learned representation

TEST(Suites, PowerFamiliesDetectThreshold)
{
    auto report = check_power_families(*hybrid(), 20);
    ASSERT_EQ(report.size(), 8u);
    EXPECT_TRUE(all_passed(report));
    const auto& seven = report[6];
    EXPECT_EQ(seven.id, "c(2^k-7)");
    EXPECT_EQ(seven.stated_threshold, 3);
    EXPECT_EQ(seven.detected_threshold, 5);
    ASSERT_EQ(seven.notes.size(), 3u);
    EXPECT_NE(seven.notes[0].find("c=2, formula 4"), std::string::npos);
    EXPECT_NE(seven.notes[1].find("c=8, formula 14"), std::string::npos);
    for (const auto& r : report) {
        if (r.id != "c(2^k-7)") {
            EXPECT_LE(*r.detected_threshold, *r.stated_threshold) << r.id;
        }
    }
    EXPECT_THROW(check_power_families(*hybrid(), 70), std::invalid_argument);
}

TEST(Suites, BruteForceBaseRanges)
{
    auto c = brute();
    EXPECT_TRUE(all_passed(check_upper_bound(*c, 200, 7)));
    EXPECT_TRUE(all_passed(check_lower_bound(*c, 191)));
    EXPECT_TRUE(all_passed(check_j_characterization(*c, 191)));
    EXPECT_THROW(check_upper_bound(*c, 44), std::invalid_argument);
    EXPECT_THROW(check_lower_bound(*c, 100), std::invalid_argument);
}

TEST(Suites, BoundsCatchAWrongEvaluator)
{
    // c + 1 beyond the base range violates the J characterization
    auto shifted = std::make_shared<RepresentationEvaluator>(
        minimize(linear_combine({{q(1), learned_c().rep}, {q(1), LinearRepresentation::constant(q(1))}})), "c+1");
    HybridEvaluator bad(brute(), shifted, 200);
    auto report = check_j_characterization(bad, 3000);
    EXPECT_FALSE(all_passed(report));
    EXPECT_FALSE(report[0].counterexamples.empty());
}

TEST(Suites, RecurrenceAutomata)
{
    auto automata = build_recurrence_automata(learned_c().rep);
    EXPECT_EQ(automata.a0.state_count(), 8u);
    EXPECT_EQ(automata.a0_rep.rank(), 7u);
    RecurrenceRanges ranges{400, 5000, 1 << 14};
    auto report = check_recurrences(*hybrid(), automata, ranges);
    EXPECT_TRUE(all_passed(report)) << text_summary(report);
    EXPECT_THROW(check_recurrences(*hybrid(), automata, RecurrenceRanges{100, 100, 100}), std::invalid_argument);
    EXPECT_THROW(automata.dfao("a2"), std::invalid_argument);
}

TEST(Suites, ExceptionalSets)
{
    auto report = check_exceptional_sets(*hybrid(), learned_c().rep, ExceptionalSetOptions{8, 30});
    EXPECT_TRUE(all_passed(report)) << text_summary(report);
    bool found = false;
    for (const auto& r : report)
        if (r.id == "exceptional.J") {
            found = true;
            EXPECT_EQ(r.notes.front(), "fitted: 8/3*2^(2i+j) + 4/3*2^j - 4");
        }
    EXPECT_TRUE(found);
}

TEST(Suites, PowersOfTwoWord)
{
    ComplexityOracle p(powers_of_two_word());
    auto report = check_powers2_word(p, Powers2Options{8, 6});
    EXPECT_TRUE(all_passed(report));
    ASSERT_EQ(report.size(), 2u);
    EXPECT_EQ(report[1].checked, 63u);
    EXPECT_THROW(check_powers2_word(p, Powers2Options{3, 3}), std::invalid_argument);
}
